//! Possible holonomy groups of flat solvmanifolds in low dimensions.
//!
//! Up to dimension 5 every flat solvmanifold is a quotient of an almost
//! abelian Lie group. In dimension 6 the remaining non-abelian case is
//! `e(2) × e(2)`, and the list closes by the classification of Kähler flat
//! 6-manifolds (the one extra group there, `D_8`, belongs to a manifold with
//! first Betti number 0, which no solvmanifold has). Beyond dimension 6 no
//! complete list is claimed, so reports stop there.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::ReducedFraction;
use crate::error::{Error, Result};
use crate::holonomy::{holonomy_of_spec, orbit_slot, FiniteAbelianGroup};
use crate::lie_model::{Block, SolvmanifoldSpec};
use crate::spectrum::RotationSpectrum;

/// Orders `q >= 2` realizable by one orbit within `ambient` dimensions.
fn orbit_orders(ambient: usize) -> Vec<u64> {
    let ambient = ambient as u64;
    (2..=2 * ambient * ambient + 2)
        .filter(|&q| orbit_slot(q) <= ambient)
        .collect()
}

/// One complete orbit of turn fractions with denominator `q`.
fn orbit_fractions(q: u64) -> Vec<ReducedFraction> {
    if q == 2 {
        return vec![ReducedFraction::HALF];
    }
    (1..=(q - 1) / 2)
        .filter(|p| p.gcd(&q) == 1)
        .map(|p| ReducedFraction::of(p as i64, q as i64))
        .collect()
}

/// Every spectrum of the given ambient dimension whose rotation is
/// conjugate to an integer matrix, built by packing whole orbits.
pub fn certified_spectra(ambient: usize) -> Vec<RotationSpectrum> {
    fn pack(
        orders: &[u64],
        budget: u64,
        chosen: &mut Vec<(u64, usize)>,
        ambient: usize,
        out: &mut Vec<RotationSpectrum>,
    ) {
        let Some((&q, rest)) = orders.split_first() else {
            let used: u64 = chosen.iter().map(|&(q, m)| orbit_slot(q) * m as u64).sum();
            let fractions = chosen
                .iter()
                .flat_map(|&(q, m)| std::iter::repeat_n(orbit_fractions(q), m).flatten());
            out.push(
                RotationSpectrum::new(ambient - used as usize, fractions).expect("nonzero fractions"),
            );
            return;
        };
        let slot = orbit_slot(q);
        for m in 0..=budget / slot {
            if m > 0 {
                chosen.push((q, m as usize));
            }
            pack(rest, budget - m * slot, chosen, ambient, out);
            if m > 0 {
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    pack(&orbit_orders(ambient), ambient as u64, &mut Vec::new(), ambient, &mut out);
    out
}

/// Cyclic holonomy groups of almost abelian solvmanifolds of dimension
/// `dim`, each with its lexicographically smallest witness spectrum.
pub fn enumerate_almost_abelian(dim: usize) -> Result<BTreeMap<FiniteAbelianGroup, RotationSpectrum>> {
    if dim < 3 {
        return Err(Error::invalid(
            "flat solvmanifolds of dimension at most 2 are tori; dimension must be at least 3",
        ));
    }
    let mut out: BTreeMap<FiniteAbelianGroup, RotationSpectrum> = BTreeMap::new();
    for sp in certified_spectra(dim - 1) {
        let group = FiniteAbelianGroup::cyclic(sp.order());
        match out.get(&group) {
            Some(best) if best.fractions() <= sp.fractions() => {}
            _ => {
                out.insert(group, sp);
            }
        }
    }
    Ok(out)
}

const E2_ORDERS: [u64; 4] = [2, 3, 4, 6];

/// Holonomy groups `Z_{k1} ⊕ ⋯ ⊕ Z_{kn}` of `T^center × Γ₁\E(2) × ⋯ × Γ_n\E(2)`
/// with every `k_i ∈ {2, 3, 4, 6}`.
pub fn enumerate_e2_products(n: usize, center: usize) -> Result<BTreeMap<FiniteAbelianGroup, SolvmanifoldSpec>> {
    if n == 0 {
        return Err(Error::invalid("at least one e(2) factor is required"));
    }
    fn multisets(n: usize, from: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for (i, &k) in E2_ORDERS.iter().enumerate().skip(from) {
            cur.push(k);
            multisets(n, i, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    multisets(n, 0, &mut Vec::new(), &mut all);

    let mut out = BTreeMap::new();
    for orders in all {
        let mut blocks: Vec<Block> = orders
            .iter()
            .map(|&k| Block::e2(ReducedFraction::of(1, k as i64)))
            .collect();
        if center > 0 {
            blocks.push(Block::torus(center));
        }
        let spec = SolvmanifoldSpec::new(blocks)?;
        out.entry(FiniteAbelianGroup::from_cyclic_orders(orders)).or_insert(spec);
    }
    Ok(out)
}

/// Holonomy groups of flat solvmanifolds in one dimension, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub dim: usize,
    /// Groups of almost abelian quotients (all cyclic).
    pub almost_abelian: BTreeMap<FiniteAbelianGroup, SolvmanifoldSpec>,
    /// Groups of `e(2)`-product quotients that are not almost abelian.
    pub products: BTreeMap<FiniteAbelianGroup, SolvmanifoldSpec>,
}

impl DimensionReport {
    pub fn almost_abelian_groups(&self) -> Vec<FiniteAbelianGroup> {
        self.almost_abelian.keys().cloned().collect()
    }

    pub fn product_groups(&self) -> Vec<FiniteAbelianGroup> {
        self.products.keys().cloned().collect()
    }

    /// Union of both lists, sorted and deduplicated.
    pub fn all_groups(&self) -> Vec<FiniteAbelianGroup> {
        let mut v: Vec<_> = self.almost_abelian.keys().chain(self.products.keys()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// One witness per group; the almost abelian witness wins ties.
    pub fn witnesses(&self) -> BTreeMap<FiniteAbelianGroup, SolvmanifoldSpec> {
        let mut w = self.products.clone();
        w.extend(self.almost_abelian.clone());
        w
    }

    /// Recomputes every witness's dimension and holonomy.
    pub fn verify(&self) -> Result<()> {
        for (group, spec) in self.almost_abelian.iter().chain(&self.products) {
            if spec.dim() != self.dim {
                return Err(Error::invalid(format!("witness {spec} has dimension {}", spec.dim())));
            }
            let hol = holonomy_of_spec(spec)?;
            if &hol != group {
                return Err(Error::invalid(format!("witness {spec} has holonomy {hol}, not {group}")));
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct GroupEntry<'a> {
    group: &'a FiniteAbelianGroup,
    witness: &'a SolvmanifoldSpec,
    witness_text: String,
}

fn entries(m: &BTreeMap<FiniteAbelianGroup, SolvmanifoldSpec>) -> Vec<GroupEntry<'_>> {
    m.iter()
        .map(|(group, witness)| GroupEntry {
            group,
            witness,
            witness_text: witness.to_string(),
        })
        .collect()
}

impl Serialize for DimensionReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DimensionReport", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("almost_abelian", &entries(&self.almost_abelian))?;
        st.serialize_field("products", &entries(&self.products))?;
        st.end()
    }
}

/// Report for `3 <= dim <= 6`, the range where the list is known complete.
pub fn dimension_report(dim: usize) -> Result<DimensionReport> {
    if !(3..=6).contains(&dim) {
        return Err(Error::invalid(format!(
            "dimension {dim} outside 3..=6; completeness is only established there"
        )));
    }
    let almost_abelian = enumerate_almost_abelian(dim)?
        .into_iter()
        .map(|(g, sp)| {
            let spec = SolvmanifoldSpec::new(vec![Block::almost_abelian(sp)]).expect("certified");
            (g, spec)
        })
        .collect();
    // e(2)^2 needs dim 6; e(2) × R^k is almost abelian and already covered
    let products = if dim == 6 {
        enumerate_e2_products(2, 0)?
    } else {
        BTreeMap::new()
    };
    let report = DimensionReport {
        dim,
        almost_abelian,
        products,
    };
    debug_assert!(report.verify().is_ok());
    Ok(report)
}

/// A compact flat 3-manifold and whether it is a flat solvmanifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Platycosm {
    pub wolf_name: &'static str,
    pub holonomy: FiniteAbelianGroup,
    /// First homology, as display text only.
    pub h1: &'static str,
    pub orientable: bool,
    pub symbol: &'static str,
    pub cosm_name: &'static str,
    pub realizable: bool,
    pub witness: Option<SolvmanifoldSpec>,
    pub note: &'static str,
}

/// The ten compact flat 3-manifolds. Exactly the five orientable ones with
/// cyclic holonomy are flat solvmanifolds, all quotients of `E(2)`.
pub fn platycosm_table() -> Vec<Platycosm> {
    let aa = |p: i64, q: i64| {
        let sp = RotationSpectrum::new(0, [ReducedFraction::of(p, q)]).expect("nonzero");
        Some(SolvmanifoldSpec::new(vec![Block::almost_abelian(sp)]).expect("certified"))
    };
    let group = |orders: &[u64]| FiniteAbelianGroup::from_cyclic_orders(orders.iter().copied());
    let realizable_note = "quotient of E(2)";
    let non_orientable = "not orientable; solvmanifolds are parallelizable";
    vec![
        Platycosm {
            wolf_name: "G1",
            holonomy: group(&[]),
            h1: "Z+Z+Z",
            orientable: true,
            symbol: "c1",
            cosm_name: "torocosm",
            realizable: true,
            witness: Some(SolvmanifoldSpec::new(vec![Block::torus(3)]).expect("torus")),
            note: "torus",
        },
        Platycosm {
            wolf_name: "G2",
            holonomy: group(&[2]),
            h1: "Z+Z2+Z2",
            orientable: true,
            symbol: "c2",
            cosm_name: "dicosm",
            realizable: true,
            witness: aa(1, 2),
            note: realizable_note,
        },
        Platycosm {
            wolf_name: "G3",
            holonomy: group(&[3]),
            h1: "Z+Z3",
            orientable: true,
            symbol: "c3",
            cosm_name: "tricosm",
            realizable: true,
            witness: aa(1, 3),
            note: realizable_note,
        },
        Platycosm {
            wolf_name: "G4",
            holonomy: group(&[4]),
            h1: "Z+Z2",
            orientable: true,
            symbol: "c4",
            cosm_name: "tetracosm",
            realizable: true,
            witness: aa(1, 4),
            note: realizable_note,
        },
        Platycosm {
            wolf_name: "G5",
            holonomy: group(&[6]),
            h1: "Z",
            orientable: true,
            symbol: "c6",
            cosm_name: "hexacosm",
            realizable: true,
            witness: aa(1, 6),
            note: realizable_note,
        },
        Platycosm {
            wolf_name: "G6",
            holonomy: group(&[2, 2]),
            h1: "Z4+Z4",
            orientable: true,
            symbol: "c22",
            cosm_name: "didicosm",
            realizable: false,
            witness: None,
            note: "holonomy is not cyclic, but every 3-dimensional flat solvmanifold is almost abelian",
        },
        Platycosm {
            wolf_name: "B1",
            holonomy: group(&[2]),
            h1: "Z+Z+Z2",
            orientable: false,
            symbol: "+a1",
            cosm_name: "first amphicosm",
            realizable: false,
            witness: None,
            note: non_orientable,
        },
        Platycosm {
            wolf_name: "B2",
            holonomy: group(&[2]),
            h1: "Z+Z",
            orientable: false,
            symbol: "-a1",
            cosm_name: "second amphicosm",
            realizable: false,
            witness: None,
            note: non_orientable,
        },
        Platycosm {
            wolf_name: "B3",
            holonomy: group(&[2, 2]),
            h1: "Z+Z2+Z2",
            orientable: false,
            symbol: "+a2",
            cosm_name: "first amphidicosm",
            realizable: false,
            witness: None,
            note: non_orientable,
        },
        Platycosm {
            wolf_name: "B4",
            holonomy: group(&[2, 2]),
            h1: "Z+Z4",
            orientable: false,
            symbol: "-a2",
            cosm_name: "second amphidicosm",
            realizable: false,
            witness: None,
            note: non_orientable,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups(list: &[&str]) -> Vec<FiniteAbelianGroup> {
        let mut v: Vec<FiniteAbelianGroup> = list.iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        v
    }

    const LOW: &[&str] = &["e", "Z2", "Z3", "Z4", "Z6"];
    const FIVE: &[&str] = &["e", "Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z10", "Z12"];
    const PRODUCTS: &[&str] = &[
        "Z2+Z2", "Z2+Z3", "Z2+Z4", "Z2+Z6", "Z3+Z3", "Z3+Z4", "Z3+Z6", "Z4+Z4", "Z4+Z6", "Z6+Z6",
    ];

    #[test]
    fn almost_abelian_lists() {
        let keys = |d| enumerate_almost_abelian(d).unwrap().into_keys().collect::<Vec<_>>();
        assert_eq!(keys(3), groups(LOW));
        assert_eq!(keys(4), groups(LOW));
        assert_eq!(keys(5), groups(FIVE));
        assert_eq!(keys(6), groups(FIVE));
        assert!(enumerate_almost_abelian(2).is_err());
    }

    #[test]
    fn almost_abelian_is_monotone() {
        for d in 3..9 {
            let a = enumerate_almost_abelian(d).unwrap();
            let b = enumerate_almost_abelian(d + 1).unwrap();
            assert!(a.keys().all(|g| b.contains_key(g)), "dim {d}");
        }
    }

    #[test]
    fn e2_products() {
        let p = enumerate_e2_products(2, 0).unwrap();
        assert_eq!(p.keys().cloned().collect::<Vec<_>>(), groups(PRODUCTS));
        assert!(p.values().all(|s| s.dim() == 6));
        let p = enumerate_e2_products(1, 0).unwrap();
        assert_eq!(p.into_keys().collect::<Vec<_>>(), groups(&["Z2", "Z3", "Z4", "Z6"]));
        let p = enumerate_e2_products(2, 1).unwrap();
        assert_eq!(p.keys().cloned().collect::<Vec<_>>(), groups(PRODUCTS));
        assert!(p.values().all(|s| s.dim() == 7));
        assert!(enumerate_e2_products(0, 1).is_err());
    }

    #[test]
    fn reports() {
        let r = dimension_report(3).unwrap();
        assert_eq!(r.almost_abelian_groups(), groups(LOW));
        assert!(r.products.is_empty());
        let r = dimension_report(5).unwrap();
        assert_eq!(r.all_groups(), groups(FIVE));
        let r = dimension_report(6).unwrap();
        assert_eq!(r.almost_abelian_groups(), groups(FIVE));
        assert_eq!(r.product_groups(), groups(PRODUCTS));
        assert_eq!(r.all_groups().len(), 17);
        r.verify().unwrap();
        assert!(dimension_report(7).is_err());
        assert!(dimension_report(2).is_err());
    }

    #[test]
    fn witness_choice_is_lexicographically_smallest() {
        let r = enumerate_almost_abelian(5).unwrap();
        let z12 = FiniteAbelianGroup::cyclic(12);
        assert_eq!(r[&z12].to_string(), "s=0;f=1/4,1/6");
        assert_eq!(r[&FiniteAbelianGroup::cyclic(2)].to_string(), "s=2;f=1/2");
        assert_eq!(r[&FiniteAbelianGroup::trivial()].to_string(), "s=4;f=");
    }

    #[test]
    fn platycosms() {
        let t = platycosm_table();
        assert_eq!(t.len(), 10);
        let realizable: Vec<_> = t.iter().filter(|p| p.realizable).map(|p| p.wolf_name).collect();
        assert_eq!(realizable, ["G1", "G2", "G3", "G4", "G5"]);
        let g4 = &t[3];
        assert_eq!((g4.cosm_name, g4.orientable), ("tetracosm", true));
        assert_eq!(g4.holonomy, FiniteAbelianGroup::cyclic(4));
        assert_eq!(g4.witness.as_ref().unwrap().to_string(), "AA[s=0;f=1/4]");
        assert!(!t[5].realizable && t[5].cosm_name == "didicosm");
        assert!(!t[6].orientable && !t[6].realizable);
        for p in t.iter().filter(|p| p.realizable) {
            let w = p.witness.as_ref().unwrap();
            assert_eq!(w.dim(), 3);
            assert_eq!(holonomy_of_spec(w).unwrap(), p.holonomy);
        }
    }
}
