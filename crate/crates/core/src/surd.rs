use std::fmt;

use serde::Serialize;

use crate::arith::ReducedFraction;

/// A real quadratic number `rational + coefficient·√radicand` with a
/// squarefree radicand (radicand 1 only when the coefficient is zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticSurd {
    pub rational: ReducedFraction,
    pub coefficient: ReducedFraction,
    pub radicand: u64,
}

impl QuadraticSurd {
    pub fn rational(r: ReducedFraction) -> Self {
        QuadraticSurd {
            rational: r,
            coefficient: ReducedFraction::ZERO,
            radicand: 1,
        }
    }

    /// `(a + sign·√disc) / den` for a non-negative discriminant.
    pub fn from_quadratic_root(a: i64, disc: u64, sign: i64, den: i64) -> Self {
        let (outer, inner) = split_square(disc);
        if inner == 1 || outer == 0 {
            let num = a + sign * outer as i64;
            return Self::rational(ReducedFraction::of(num, den));
        }
        QuadraticSurd {
            rational: ReducedFraction::of(a, den),
            coefficient: ReducedFraction::of(sign * outer as i64, den),
            radicand: inner,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64() + self.coefficient.to_f64() * (self.radicand as f64).sqrt()
    }
}

/// Writes `n = outer^2 · inner` with `inner` squarefree.
fn split_square(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut outer = 1;
    let mut inner = 1;
    for (p, e) in crate::arith::factorize(n) {
        outer *= p.pow(e / 2);
        if e % 2 == 1 {
            inner *= p;
        }
    }
    (outer, inner)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let c = self.coefficient;
        let (sign, abs) = if c.numer() < 0 {
            ("-", ReducedFraction::of(-c.numer(), c.denom()))
        } else {
            ("+", c)
        };
        let root = if abs.numer() == 1 {
            format!("√{}", self.radicand)
        } else {
            format!("{}√{}", abs.numer(), self.radicand)
        };
        let root = if abs.denom() == 1 {
            root
        } else {
            format!("{root}/{}", abs.denom())
        };
        if self.rational.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            write!(f, "{lead}{root}")
        } else {
            write!(f, "{} {sign} {root}", self.rational)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplifies_square_factors() {
        // (0 + √8)/4 = √2/2
        let s = QuadraticSurd::from_quadratic_root(0, 8, 1, 4);
        assert_eq!(s.radicand, 2);
        assert_eq!(s.coefficient, ReducedFraction::of(1, 2));
        assert_eq!(s.to_string(), "√2/2");
        assert!((s.to_f64() - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn perfect_squares_collapse() {
        let s = QuadraticSurd::from_quadratic_root(1, 9, -1, 4);
        assert!(s.is_rational());
        assert_eq!(s.rational, ReducedFraction::of(-1, 2));
    }

    #[test]
    fn display_with_rational_part() {
        let s = QuadraticSurd::from_quadratic_root(-1, 5, 1, 4);
        assert_eq!(s.to_string(), "-1/4 + √5/4");
        let t = QuadraticSurd::from_quadratic_root(-1, 5, -1, 4);
        assert_eq!(t.to_string(), "-1/4 - √5/4");
    }
}
