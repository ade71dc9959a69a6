use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use flatsolv_core::arith::{cyclotomic_factorization, cyclotomic_poly, IntPolynomial};
use flatsolv_core::enumeration::{dimension_report, enumerate_almost_abelian};
use flatsolv_core::holonomy::minimal_cyclic_witness;
use flatsolv_core::lattice::{build_lattice, DEFAULT_TOLERANCE};
use flatsolv_core::spectrum::{admissible_pairs_dim5, RotationSpectrum};
use flatsolv_core::ReducedFraction;

fn arithmetic(c: &mut Criterion) {
    c.bench_function("cyclotomic_poly 1..=200", |b| {
        b.iter(|| (1..=200u64).map(|n| cyclotomic_poly(black_box(n)).degree()).sum::<usize>())
    });
    let p: IntPolynomial = [3u64, 4, 5, 8, 12].into_iter().map(cyclotomic_poly).product();
    c.bench_function("cyclotomic_factorization degree 14", |b| {
        b.iter(|| cyclotomic_factorization(black_box(&p)).unwrap())
    });
}

fn spectra(c: &mut Criterion) {
    let fractions: Vec<ReducedFraction> = (2..=20i64)
        .flat_map(|q| (1..=q / 2).map(move |p| ReducedFraction::of(p, q)))
        .collect();
    c.bench_function("orbit_check all pairs, denominators <= 20", |b| {
        b.iter(|| {
            let mut ok = 0;
            for (i, &x) in fractions.iter().enumerate() {
                for &y in &fractions[i..] {
                    ok += RotationSpectrum::new(1, [x, y]).unwrap().orbit_check().is_ok() as usize;
                }
            }
            ok
        })
    });
    c.bench_function("admissible_pairs_dim5", |b| b.iter(admissible_pairs_dim5));
}

fn lattices(c: &mut Criterion) {
    let sp: RotationSpectrum = "s=1;f=1/4,1/6,1/5,2/5".parse().unwrap();
    c.bench_function("build_lattice dim 9", |b| {
        b.iter(|| build_lattice(black_box(&sp), DEFAULT_TOLERANCE).unwrap())
    });
    let big = minimal_cyclic_witness(2 * 3 * 5 * 7).unwrap();
    c.bench_function("build_lattice Z210 witness", |b| {
        b.iter(|| build_lattice(black_box(&big), DEFAULT_TOLERANCE).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("dimension_report 3..=6", |b| {
        b.iter(|| (3..=6).map(|d| dimension_report(d).unwrap().all_groups().len()).sum::<usize>())
    });
    c.bench_function("enumerate_almost_abelian 10", |b| {
        b.iter(|| enumerate_almost_abelian(black_box(10)).unwrap().len())
    });
}

criterion_group!(benches, arithmetic, spectra, lattices, enumeration);
criterion_main!(benches);
