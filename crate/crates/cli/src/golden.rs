//! Golden values checked by `--seed-check`.

use serde::Serialize;

use flatsolv_core::arith::{cyclotomic_poly, euler_phi, hiller_phi};
use flatsolv_core::enumeration::{dimension_report, platycosm_table};
use flatsolv_core::holonomy::{holonomy_of_block, min_dim_solv};
use flatsolv_core::spectrum::{admissible_pairs_dim5, Obstruction, RotationSpectrum};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

const PHI: [u64; 12] = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
const HILLER_PHI: [u64; 12] = [0, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
// n = 2..=12
const MIN_DIM: [u64; 11] = [3, 3, 3, 5, 3, 7, 5, 7, 5, 11, 5];

const GROUPS: [(usize, &str); 4] = [
    (3, "e, Z2, Z3, Z4, Z6"),
    (4, "e, Z2, Z3, Z4, Z6"),
    (5, "e, Z2, Z3, Z4, Z5, Z6, Z8, Z10, Z12"),
    (
        6,
        "e, Z2, Z3, Z4, Z5, Z6, Z8, Z10, Z12, Z2+Z2, Z2+Z4, Z2+Z6, Z2+Z12, Z3+Z3, Z3+Z6, Z4+Z4, Z6+Z6",
    ),
];

fn check(name: &str, got: String, want: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: got == want,
        detail: format!("got {got}, expected {want}"),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn run_all() -> Vec<CheckResult> {
    let mut out = vec![
        check("euler phi 1..=12", join((1..=12).map(euler_phi)), &join(PHI)),
        check("hiller phi 1..=12", join((1..=12).map(hiller_phi)), &join(HILLER_PHI)),
        check(
            "minimal dimension 2..=12",
            join((2..=12).map(|n| min_dim_solv(n).map_or("error".into(), |d| d.to_string()))),
            &join(MIN_DIM),
        ),
        check("cyclotomic 12", cyclotomic_poly(12).to_string(), "x^4 - x^2 + 1"),
    ];
    for (dim, want) in GROUPS {
        let got = dimension_report(dim).map_or_else(|e| e.to_string(), |r| join(r.all_groups()));
        out.push(check(&format!("holonomy list in dimension {dim}"), got, want));
    }
    out.push(check("dimension-5 pairs", admissible_pairs_dim5().len().to_string(), "19"));
    out.push(check(
        "realizable platycosms",
        join(platycosm_table().iter().filter(|p| p.realizable).map(|p| p.wolf_name)),
        "G1, G2, G3, G4, G5",
    ));
    let quarter: RotationSpectrum = "s=0;f=1/4".parse().expect("literal");
    out.push(check(
        "tetracosm holonomy",
        holonomy_of_block(&quarter).map_or_else(|e| e.to_string(), |g| g.to_string()),
        "Z4",
    ));
    let fifth: RotationSpectrum = "s=0;f=1/5".parse().expect("literal");
    let missing = match fifth.orbit_check() {
        Err(Obstruction::IncompleteOrbit { q, missing, .. }) => format!("{q}: {}", join(missing)),
        other => format!("{other:?}"),
    };
    out.push(check("fifth-turn obstruction", missing, "5: 2, 3"));
    out
}
