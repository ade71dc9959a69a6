//! Holonomy groups of flat solvmanifolds and witnesses realizing a given
//! finite abelian group.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, hiller_phi, is_prime, ReducedFraction};
use crate::error::{Error, Result};
use crate::lie_model::{Block, SolvmanifoldSpec};
use crate::spectrum::RotationSpectrum;

/// Finite abelian group in invariant-factor form `Z_{d1} ⊕ ⋯ ⊕ Z_{dk}` with
/// `d1 | d2 | ⋯ | dk` and every `di >= 2`. The trivial group has no factors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    invariant_factors: Vec<u64>,
    #[serde(default, skip_deserializing)]
    display: String,
}

impl TryFrom<GroupRepr> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(r: GroupRepr) -> Result<Self> {
        FiniteAbelianGroup::new(r.invariant_factors)
    }
}

impl From<FiniteAbelianGroup> for GroupRepr {
    fn from(g: FiniteAbelianGroup) -> Self {
        GroupRepr {
            display: g.to_string(),
            invariant_factors: g.invariant_factors,
        }
    }
}

impl FiniteAbelianGroup {
    /// Validates an invariant-factor list.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::invalid("invariant factors must be at least 2"));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid(format!(
                "invariant factors {invariant_factors:?} do not form a divisibility chain"
            )));
        }
        Ok(FiniteAbelianGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// `Z_n`; trivial for `n = 1`.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders([n])
    }

    /// Canonical form of `Z_{n1} ⊕ ⋯ ⊕ Z_{nr}` for arbitrary orders, by
    /// regrouping the prime-power parts.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for n in orders {
            assert!(n >= 1, "cyclic group order must be positive");
            for (p, e) in factorize(n) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            // the largest power joins the last invariant factor
            for (i, q) in powers.iter().enumerate() {
                factors[len - 1 - i] *= q;
            }
        }
        FiniteAbelianGroup {
            invariant_factors: factors,
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Exponent: the largest invariant factor, or 1.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Prime-power cyclic orders of the primary decomposition, ascending.
    pub fn primary_decomposition(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .invariant_factors
            .iter()
            .flat_map(|&d| factorize(d).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        Self::from_cyclic_orders(
            self.invariant_factors
                .iter()
                .chain(&other.invariant_factors)
                .copied(),
        )
    }
}

impl Ord for FiniteAbelianGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.invariant_factors
            .len()
            .cmp(&other.invariant_factors.len())
            .then_with(|| self.invariant_factors.cmp(&other.invariant_factors))
    }
}

impl PartialOrd for FiniteAbelianGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `e` for the trivial group, otherwise `Z2+Z12`-style.
impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `e`, `{e}` or a `+`-separated list of `Z<n>` in any order; the
/// result is canonicalized.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s == "{e}" {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            let n = part
                .strip_prefix('Z')
                .and_then(|n| n.parse::<u64>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::parse(format!("bad cyclic factor `{part}` in group `{s}`")))?;
            orders.push(n);
        }
        Ok(Self::from_cyclic_orders(orders))
    }
}

/// Holonomy of an almost abelian solvmanifold: `Z_d` with `d` the order of
/// `φ(t₀)`.
pub fn holonomy_of_block(sp: &RotationSpectrum) -> Result<FiniteAbelianGroup> {
    sp.orbit_check()?;
    Ok(FiniteAbelianGroup::cyclic(sp.order()))
}

/// Holonomy of a product: the direct sum of the factors' holonomy groups.
pub fn holonomy_of_spec(spec: &SolvmanifoldSpec) -> Result<FiniteAbelianGroup> {
    let mut orders = Vec::new();
    for block in spec.blocks() {
        match block {
            Block::AlmostAbelian { spectrum } => {
                orders.extend(holonomy_of_block(spectrum)?.invariant_factors().iter().copied())
            }
            Block::E2Factor { fraction } => orders.push(fraction.denom() as u64),
            Block::Torus { .. } => {}
        }
    }
    Ok(FiniteAbelianGroup::from_cyclic_orders(orders))
}

/// Spectrum whose rotation is a single orbit of primitive `p^k`-th roots
/// (or `2p^k`-th when `doubled`), giving holonomy `Z_{p^k}` (resp.
/// `Z_{2p^k}`) in dimension `(p-1)p^{k-1} + 1`.
///
/// `p = 2` needs `k >= 2` and cannot be doubled, since `φ(2^{k+1}) ≠ φ(2^k)`.
pub fn prime_power_witness(p: u64, k: u32, doubled: bool) -> Result<RotationSpectrum> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    if p == 2 && doubled {
        return Err(Error::invalid("the doubled construction needs an odd prime"));
    }
    if p == 2 && k < 2 {
        return Err(Error::invalid("for p = 2 the construction needs k >= 2"));
    }
    let pk = p
        .checked_pow(k)
        .filter(|&v| v <= i64::MAX as u64 / 2)
        .ok_or_else(|| Error::invalid("prime power too large"))? as i64;
    let fractions: Vec<ReducedFraction> = if doubled {
        (1..pk)
            .filter(|l| l % 2 == 1 && l % p as i64 != 0)
            .map(|l| ReducedFraction::of(l, 2 * pk))
            .collect()
    } else {
        (1..=(pk - 1) / 2)
            .filter(|l| l % p as i64 != 0)
            .map(|l| ReducedFraction::of(l, pk))
            .collect()
    };
    RotationSpectrum::new(0, fractions)
}

/// Concatenates rotation fractions and adds centers; the order of the result
/// is the lcm of the inputs' orders.
pub fn merge_blocks(spectra: &[RotationSpectrum]) -> Result<RotationSpectrum> {
    for sp in spectra {
        sp.orbit_check()?;
    }
    let center = spectra.iter().map(RotationSpectrum::center_dim).sum();
    RotationSpectrum::new(
        center,
        spectra.iter().flat_map(|sp| sp.fractions().iter().copied()),
    )
}

/// Minimal dimension of a flat solvmanifold with holonomy `Z_n`: 3 for
/// `n = 2`, otherwise `Φ(n) + 1`.
pub fn min_dim_solv(n: u64) -> Result<u64> {
    match n {
        0 | 1 => Err(Error::invalid("holonomy order must be at least 2")),
        2 => Ok(3),
        _ => Ok(hiller_phi(n) + 1),
    }
}

/// Spectrum of dimension `min_dim_solv(n)` with holonomy `Z_n`, merged from
/// prime-power witnesses. For `n = 2q` with `q` odd, the smallest odd prime
/// power takes the doubled construction.
pub fn minimal_cyclic_witness(n: u64) -> Result<RotationSpectrum> {
    if n < 2 {
        return Err(Error::invalid("holonomy order must be at least 2"));
    }
    if n == 2 {
        return RotationSpectrum::new(0, [ReducedFraction::HALF]);
    }
    let factors = factorize(n);
    let lone_two = factors.first() == Some(&(2, 1));
    let mut parts = Vec::new();
    let mut doubled_pending = lone_two;
    for (p, e) in factors {
        if p == 2 {
            if e >= 2 {
                parts.push(prime_power_witness(2, e, false)?);
            }
            continue;
        }
        parts.push(prime_power_witness(p, e, doubled_pending)?);
        doubled_pending = false;
    }
    merge_blocks(&parts)
}

/// A product of minimal cyclic witnesses, one per primary factor of `A`.
/// With `kahler`, odd total dimension is padded with a circle factor so the
/// manifold admits an invariant Kähler structure.
pub fn abelian_witness(group: &FiniteAbelianGroup, kahler: bool) -> SolvmanifoldSpec {
    let mut blocks: Vec<Block> = group
        .primary_decomposition()
        .into_iter()
        .map(|q| Block::almost_abelian(minimal_cyclic_witness(q).expect("prime power >= 2")))
        .collect();
    if blocks.is_empty() {
        blocks.push(Block::torus(1));
    }
    let mut spec = SolvmanifoldSpec::new(blocks).expect("witness blocks are certified");
    if kahler && spec.dim() % 2 == 1 {
        spec.push(Block::torus(1)).expect("torus block");
    }
    spec
}

/// Cost in ambient dimension of realizing rotation order `q` by one orbit.
pub(crate) fn orbit_slot(q: u64) -> u64 {
    if q == 2 {
        2
    } else {
        crate::arith::euler_phi(q)
    }
}
