use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::{divisors, euler_phi, IntPolynomial};
use crate::error::{Error, Result};

fn cache() -> &'static Mutex<HashMap<u64, IntPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by
/// `Φ_d` for every proper divisor `d` of `n`.
///
/// Results are memoized process-wide.
pub fn cyclotomic_poly(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic_poly expects a positive index");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPolynomial::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        p = p
            .div_exact(&cyclotomic_poly(d))
            .expect("Φ_d divides x^n - 1 for d | n");
    }
    cache().lock().unwrap().insert(n, p.clone());
    p
}

/// One factor `Φ_order^multiplicity` of a cyclotomic factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclotomicFactor {
    pub order: u64,
    pub multiplicity: u32,
}

/// Writes a monic integer polynomial as a product of cyclotomic polynomials.
///
/// Returns `Ok(None)` when the polynomial has a root that is not a root of
/// unity (or is not squarefree-compatible with any cyclotomic product).
/// Candidates are all `n <= 2 deg^2` with `φ(n) <= deg`, which contains
/// every `n` with `φ(n) <= deg`.
pub fn cyclotomic_factorization(p: &IntPolynomial) -> Result<Option<Vec<CyclotomicFactor>>> {
    if !p.is_monic() {
        return Err(Error::invalid(format!("polynomial `{p}` is not monic")));
    }
    let deg = p.degree() as u64;
    if deg == 0 {
        return Err(Error::invalid("polynomial must have degree at least 1"));
    }
    let bound = 2 * deg * deg;
    let mut rest = p.clone();
    let mut factors = Vec::new();
    for n in 1..=bound.max(2) {
        if euler_phi(n) > rest.degree() as u64 {
            continue;
        }
        let phi_n = cyclotomic_poly(n);
        let mut multiplicity = 0;
        while rest.degree() >= phi_n.degree() {
            match rest.div_exact(&phi_n) {
                Some(q) => {
                    rest = q;
                    multiplicity += 1;
                }
                None => break,
            }
        }
        if multiplicity > 0 {
            factors.push(CyclotomicFactor { order: n, multiplicity });
        }
        if rest.degree() == 0 {
            break;
        }
    }
    Ok((rest == IntPolynomial::one()).then_some(factors))
}
