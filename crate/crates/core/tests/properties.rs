use flatsolv_core::arith::{cyclotomic_poly, IntPolynomial};
use flatsolv_core::holonomy::{holonomy_of_spec, merge_blocks, FiniteAbelianGroup};
use flatsolv_core::lattice::{build_lattice, rotation_matrix, DEFAULT_TOLERANCE};
use flatsolv_core::lie_model::{Block, FlatLieAlgebra, SolvmanifoldSpec};
use flatsolv_core::spectrum::RotationSpectrum;
use flatsolv_core::ReducedFraction;
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// One complete orbit of fractions with denominator `q`.
fn orbit(q: i64) -> Vec<ReducedFraction> {
    if q == 2 {
        return vec![ReducedFraction::HALF];
    }
    (1..q).filter(|&p| 2 * p < q && gcd(p, q) == 1).map(|p| ReducedFraction::of(p, q)).collect()
}

fn slot(q: i64) -> usize {
    orbit(q).len() * 2
}

/// Spectra assembled from whole orbits, so certified by construction.
fn certified() -> impl Strategy<Value = RotationSpectrum> {
    (0usize..=3, prop::collection::vec(2i64..=30, 0..=4)).prop_filter_map("too large", |(s, qs)| {
        if qs.iter().map(|&q| slot(q)).sum::<usize>() > 10 {
            return None;
        }
        RotationSpectrum::new(s, qs.iter().flat_map(|&q| orbit(q))).ok()
    })
}

fn raw_fractions() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((2i64..=20).prop_flat_map(|q| (1..q, Just(q))), 1..=4)
}

fn small_block() -> impl Strategy<Value = Block> {
    prop_oneof![
        (1usize..=3).prop_map(Block::torus),
        prop::sample::select(vec![2i64, 3, 4, 6]).prop_map(|k| Block::e2(ReducedFraction::of(1, k))),
        certified()
            .prop_filter("needs a rotation", |sp| !sp.fractions().is_empty())
            .prop_map(Block::almost_abelian),
    ]
}

proptest! {
    #[test]
    fn verdict_ignores_order_and_conjugation(s in 0usize..=3, raw in raw_fractions(), flips in prop::collection::vec(any::<bool>(), 4)) {
        let a = RotationSpectrum::new(s, raw.iter().map(|&(p, q)| ReducedFraction::of(p, q))).unwrap();
        let mut other: Vec<ReducedFraction> = raw
            .iter()
            .zip(&flips)
            .map(|(&(p, q), &flip)| ReducedFraction::of(if flip { q - p } else { p }, q))
            .collect();
        other.reverse();
        let b = RotationSpectrum::new(s, other).unwrap();
        prop_assert_eq!(a.orbit_check().is_ok(), b.orbit_check().is_ok());
        prop_assert_eq!(a.orbit_check().ok(), b.orbit_check().ok());
    }

    #[test]
    fn order_is_smallest_clearing_multiple(s in 0usize..=2, raw in raw_fractions()) {
        let sp = RotationSpectrum::new(s, raw.iter().map(|&(p, q)| ReducedFraction::of(p, q))).unwrap();
        let d = (1..)
            .find(|d| raw.iter().all(|&(p, q)| (d * p) % q == 0))
            .unwrap();
        prop_assert_eq!(sp.order(), d as u64);
    }

    #[test]
    fn certificate_is_product_of_cyclotomics(sp in certified()) {
        let cert = sp.orbit_check().unwrap();
        let mut expected = IntPolynomial::linear(1).pow(sp.center_dim() as u32);
        for o in &cert.orbits {
            expected = &expected * &cyclotomic_poly(o.q).pow(o.multiplicity as u32);
        }
        prop_assert_eq!(&cert.char_poly, &expected);
        prop_assert_eq!(cert.char_poly.degree(), sp.ambient_dim());
    }

    #[test]
    fn lattice_invariants(sp in certified()) {
        let lat = build_lattice(&sp, DEFAULT_TOLERANCE).unwrap();
        prop_assert_eq!(lat.integer_model.char_poly(), lat.certificate.char_poly.clone());
        let tr: f64 = rotation_matrix(&sp, 1.0).trace();
        let te = lat.integer_model.trace();
        prop_assert!((tr - te.to_string().parse::<f64>().unwrap()).abs() <= 1e-9);
        prop_assert!(lat.residual <= DEFAULT_TOLERANCE);
        prop_assert_eq!(lat.integer_model.det(), 1.into());
        prop_assert!(lat.integer_model.pow(lat.order).is_identity());
    }

    #[test]
    fn merge_certificate_is_multiset_union(a in certified(), b in certified()) {
        let merged = merge_blocks(&[a.clone(), b.clone()]).unwrap();
        let cert = merged.orbit_check().unwrap();
        let (ca, cb) = (a.orbit_check().unwrap(), b.orbit_check().unwrap());
        let mut expected = std::collections::BTreeMap::new();
        for o in ca.orbits.iter().chain(&cb.orbits) {
            *expected.entry(o.q).or_insert(0) += o.multiplicity;
        }
        let got: std::collections::BTreeMap<u64, usize> = cert.orbits.iter().map(|o| (o.q, o.multiplicity)).collect();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(cert.center_dim, ca.center_dim + cb.center_dim);
    }

    #[test]
    fn products_add_dimension_and_holonomy(xs in prop::collection::vec(small_block(), 1..=3), ys in prop::collection::vec(small_block(), 1..=3)) {
        let x = SolvmanifoldSpec::new(xs).unwrap();
        let y = SolvmanifoldSpec::new(ys).unwrap();
        let xy = x.concat(&y);
        prop_assert_eq!(xy.dim(), x.dim() + y.dim());
        let (hx, hy) = (holonomy_of_spec(&x).unwrap(), holonomy_of_spec(&y).unwrap());
        prop_assert_eq!(holonomy_of_spec(&xy).unwrap(), hx.direct_sum(&hy));
    }

    #[test]
    fn e2_split_iff_square_table(
        center in 0usize..=2,
        b in 1usize..=3,
        extra in 0usize..=2,
        entries in prop::collection::vec((-4i64..=4, 1i64..=3), 15),
    ) {
        let m = b + extra;
        let table: Vec<Vec<ReducedFraction>> = (0..b)
            .map(|i| (0..m).map(|j| { let (p, q) = entries[i * m + j]; ReducedFraction::of(p, q) }).collect())
            .collect();
        // tables with dependent rows or idle planes are rejected; skip them
        let Ok(g) = FlatLieAlgebra::new(center, table) else { return Ok(()); };
        let split = g.split_e2().unwrap();
        prop_assert_eq!(split.is_some(), 2 * g.b_dim() == g.derived_dim());
        if let Some(s) = split {
            prop_assert!(s.is_standard());
            prop_assert_eq!(s.e2_count, b);
            // [e_i, f_{2i-1}] = -f_{2i} and [e_i, f_{2i}] = f_{2i-1}, nothing else
            let rel: Vec<(usize, usize, i64, usize)> = s
                .bracket_relations()
                .into_iter()
                .map(|(i, k, c, l)| (i, k, c.to_integer().try_into().unwrap(), l))
                .collect();
            let want: Vec<(usize, usize, i64, usize)> = (1..=b)
                .flat_map(|i| [(i, 2 * i - 1, -1, 2 * i), (i, 2 * i, 1, 2 * i - 1)])
                .collect();
            prop_assert_eq!(rel, want);
        }
        if g.is_almost_abelian() && g.plane_count() == 1 {
            prop_assert!(g.split_e2().unwrap().is_some());
        }
    }
}

#[test]
fn single_plane_algebra_is_center_times_e2() {
    let g = FlatLieAlgebra::almost_abelian(2, vec![ReducedFraction::of(3, 7)]).unwrap();
    let s = g.split_e2().unwrap().unwrap();
    assert_eq!((s.center_dim, s.e2_count), (2, 1));
    assert!(s.is_standard());
}

#[test]
fn torus_holonomy_is_trivial() {
    let spec = SolvmanifoldSpec::new(vec![Block::torus(4)]).unwrap();
    assert_eq!(holonomy_of_spec(&spec).unwrap(), FiniteAbelianGroup::trivial());
}
