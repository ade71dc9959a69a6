//! Integer arithmetic, turn fractions and cyclotomic polynomials.

mod cyclotomic;
mod fraction;
mod poly;

pub use cyclotomic::{cyclotomic_factorization, cyclotomic_poly, CyclotomicFactor};
pub use fraction::ReducedFraction;
pub use poly::IntPolynomial;
pub(crate) use poly::bigint_to_f64;

use num_integer::Integer;

/// Greatest common divisor and least common multiple of two positive integers.
pub fn gcd_lcm(a: u64, b: u64) -> (u64, u64) {
    assert!(a >= 1 && b >= 1, "gcd_lcm expects positive arguments");
    let g = a.gcd(&b);
    (g, a / g * b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    gcd_lcm(a, b).1
}

/// Least common multiple of a sequence; `1` for the empty sequence.
pub fn lcm_all<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    values.into_iter().fold(1, lcm)
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order of the prime. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize expects a positive argument");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Euler's totient, computed from the prime factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi expects a positive argument");
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Hiller's additive totient: `Φ(p^k) = φ(p^k)`, additive over coprime
/// factors, except that `Φ(2q) = Φ(q)` for odd `q >= 3`.
///
/// `Φ(n) + 1` is the minimal dimension of a compact flat manifold with
/// holonomy `Z_n`.
pub fn hiller_phi(n: u64) -> u64 {
    assert!(n >= 1, "hiller_phi expects a positive argument");
    if n == 2 {
        return 1;
    }
    factorize(n)
        .into_iter()
        // a lone factor 2 next to an odd part >= 3 contributes nothing
        .filter(|&(p, e)| !(p == 2 && e == 1))
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .sum()
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
