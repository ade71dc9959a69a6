use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational `num/den` in lowest terms with `den >= 1`.
///
/// Zero is always stored as `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    num: i64,
    den: i64,
}

impl ReducedFraction {
    pub const ZERO: ReducedFraction = ReducedFraction { num: 0, den: 1 };
    pub const HALF: ReducedFraction = ReducedFraction { num: 1, den: 2 };
    pub const ONE: ReducedFraction = ReducedFraction { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(ReducedFraction { num, den })
    }

    /// Constructs from known-valid parts; panics on a zero denominator.
    pub fn of(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn integer(n: i64) -> Self {
        ReducedFraction { num: n, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        ReducedFraction {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        }
    }

    /// Folds a turn fraction into `[0, 1/2]`: reduces modulo 1, then maps
    /// `f` to `min(f, 1 - f)`. Rotations by `2πf` and `-2πf` are conjugate.
    pub fn fold_turn(&self) -> Self {
        let r = self.fract();
        if 2 * r.num > r.den {
            ReducedFraction {
                num: r.den - r.num,
                den: r.den,
            }
        } else {
            r
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ReducedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i64 = n
            .parse()
            .map_err(|_| Error::parse(format!("bad numerator in fraction `{s}`")))?;
        let den: i64 = d
            .parse()
            .map_err(|_| Error::parse(format!("bad denominator in fraction `{s}`")))?;
        if den <= 0 {
            return Err(Error::parse(format!("denominator must be positive in `{s}`")));
        }
        Self::new(num, den)
    }
}

impl Serialize for ReducedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ReducedFraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
