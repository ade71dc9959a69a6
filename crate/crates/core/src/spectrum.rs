//! Exact model of the rotation part `φ(t₀)` of a flat almost abelian Lie
//! group `R ⋉_φ R^{s+2n}`.
//!
//! Each rotation block is stored as a turn fraction `f = a·t₀ / 2π`, folded
//! into `(0, 1/2]`. Lattice existence and holonomy depend only on these
//! fractions, so the scale of `a` and `t₀` is not modelled.
//!
//! `φ(t₀)` is conjugate to an integer matrix exactly when its eigenvalues
//! are roots of unity forming complete Galois orbits with uniform
//! multiplicity: then its characteristic polynomial is a product of
//! cyclotomic polynomials and, being semisimple, it is conjugate to the
//! direct sum of their companion matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{cyclotomic_poly, euler_phi, lcm_all, IntPolynomial, ReducedFraction};
use crate::error::{Error, Result};
use crate::surd::QuadraticSurd;

/// Center dimension plus a multiset of folded rotation fractions, kept
/// sorted in descending order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpectrumRepr", into = "SpectrumRepr")]
pub struct RotationSpectrum {
    center_dim: usize,
    fractions: Vec<ReducedFraction>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRepr {
    center_dim: usize,
    fractions: Vec<ReducedFraction>,
    #[serde(default, skip_deserializing)]
    text: String,
}

impl TryFrom<SpectrumRepr> for RotationSpectrum {
    type Error = Error;

    fn try_from(r: SpectrumRepr) -> Result<Self> {
        RotationSpectrum::new(r.center_dim, r.fractions)
    }
}

impl From<RotationSpectrum> for SpectrumRepr {
    fn from(sp: RotationSpectrum) -> Self {
        SpectrumRepr {
            text: sp.to_string(),
            center_dim: sp.center_dim,
            fractions: sp.fractions,
        }
    }
}

impl RotationSpectrum {
    /// Folds every fraction into `(0, 1/2]`. Fractions that are integers
    /// describe identity blocks and are rejected; they belong to the center.
    pub fn new<I>(center_dim: usize, fractions: I) -> Result<Self>
    where
        I: IntoIterator<Item = ReducedFraction>,
    {
        let mut folded = Vec::new();
        for f in fractions {
            let g = f.fold_turn();
            if g.is_zero() {
                return Err(Error::invalid(format!(
                    "rotation fraction {f} is an integer turn; add it to the center instead"
                )));
            }
            folded.push(g);
        }
        folded.sort_unstable_by(|a, b| b.cmp(a));
        Ok(RotationSpectrum {
            center_dim,
            fractions: folded,
        })
    }

    /// The abelian case: `φ` is the identity on `R^s`.
    pub fn torus(center_dim: usize) -> Self {
        RotationSpectrum {
            center_dim,
            fractions: Vec::new(),
        }
    }

    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    pub fn fractions(&self) -> &[ReducedFraction] {
        &self.fractions
    }

    pub fn rotation_count(&self) -> usize {
        self.fractions.len()
    }

    /// Dimension `s + 2n` of the normal abelian factor.
    pub fn ambient_dim(&self) -> usize {
        self.center_dim + 2 * self.fractions.len()
    }

    /// Dimension of the Lie group, `ambient_dim() + 1`.
    pub fn group_dim(&self) -> usize {
        self.ambient_dim() + 1
    }

    pub fn is_abelian(&self) -> bool {
        self.fractions.is_empty()
    }

    /// Same spectrum with extra center dimensions.
    pub fn with_center(&self, center_dim: usize) -> Self {
        RotationSpectrum {
            center_dim,
            fractions: self.fractions.clone(),
        }
    }

    /// Eigenvalues of `φ(t₀)` as exact root-of-unity labels.
    pub fn eigenvalue_multiset(&self) -> EigenvalueMultiset {
        let mut roots = BTreeMap::new();
        for f in &self.fractions {
            let (p, q) = (f.numer() as u64, f.denom() as u64);
            *roots.entry(RootLabel { p, q }).or_insert(0) += 1;
            *roots.entry(RootLabel { p: q - p, q }).or_insert(0) += 1;
        }
        EigenvalueMultiset {
            unit_multiplicity: self.center_dim,
            roots,
        }
    }

    /// Decides whether `φ(t₀)` is conjugate to an integer matrix.
    pub fn orbit_check(&self) -> std::result::Result<OrbitCertificate, Obstruction> {
        let mut by_order: BTreeMap<u64, BTreeMap<u64, usize>> = BTreeMap::new();
        for (label, mult) in self.eigenvalue_multiset().roots {
            *by_order.entry(label.q).or_default().entry(label.p).or_insert(0) += mult;
        }
        let mut orbits = Vec::new();
        for (&q, counts) in &by_order {
            let primitive: Vec<u64> = (1..q).filter(|r| r.gcd(&q) == 1).collect();
            let max = counts.values().copied().max().unwrap_or(0);
            let missing: Vec<u64> = primitive
                .iter()
                .copied()
                .filter(|r| counts.get(r).copied().unwrap_or(0) < max)
                .collect();
            if !missing.is_empty() {
                return Err(Obstruction::IncompleteOrbit {
                    q,
                    missing,
                    multiplicities: counts.clone(),
                });
            }
            orbits.push(OrbitMultiplicity {
                q,
                multiplicity: max,
            });
        }
        let char_poly = orbits.iter().fold(
            IntPolynomial::linear(1).pow(self.center_dim as u32),
            |acc, o| &acc * &cyclotomic_poly(o.q).pow(o.multiplicity as u32),
        );
        Ok(OrbitCertificate {
            center_dim: self.center_dim,
            orbits,
            char_poly,
        })
    }

    pub fn has_lattice(&self) -> bool {
        self.orbit_check().is_ok()
    }

    /// Order of `φ(t₀)`: the lcm of the fraction denominators.
    pub fn order(&self) -> u64 {
        lcm_all(self.fractions.iter().map(|f| f.denom() as u64))
    }
}

pub fn eigenvalue_multiset(sp: &RotationSpectrum) -> EigenvalueMultiset {
    sp.eigenvalue_multiset()
}

pub fn orbit_check(sp: &RotationSpectrum) -> std::result::Result<OrbitCertificate, Obstruction> {
    sp.orbit_check()
}

pub fn spectrum_order(sp: &RotationSpectrum) -> u64 {
    sp.order()
}

impl fmt::Display for RotationSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={};f=", self.center_dim)?;
        for (i, fr) in self.fractions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}/{}", fr.numer(), fr.denom())?;
        }
        Ok(())
    }
}

impl fmt::Debug for RotationSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RotationSpectrum({self})")
    }
}

/// Parses `s=<int>;f=<p>/<q>[,<p>/<q>...]`. The `f=` part may be empty or
/// omitted. Each fraction must lie strictly between 0 and 1 and is folded
/// into `(0, 1/2]`.
impl FromStr for RotationSpectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut center = None;
        let mut fractions = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("expected `key=value`, got `{part}`")))?;
            match key.trim() {
                "s" => {
                    let v = value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(format!("bad center dimension `{value}`")))?;
                    center = Some(v);
                }
                "f" => {
                    for item in value.split(',').map(str::trim).filter(|i| !i.is_empty()) {
                        let fr: ReducedFraction = item.parse()?;
                        if fr <= ReducedFraction::ZERO || fr >= ReducedFraction::ONE {
                            return Err(Error::parse(format!(
                                "fraction {item} must lie strictly between 0 and 1"
                            )));
                        }
                        fractions.push(fr);
                    }
                }
                other => return Err(Error::parse(format!("unknown spectrum key `{other}`"))),
            }
        }
        let center = center.ok_or_else(|| Error::parse("missing `s=<center dimension>`"))?;
        RotationSpectrum::new(center, fractions)
    }
}

/// The root of unity `exp(2πi·p/q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootLabel {
    pub p: u64,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueMultiset {
    /// Multiplicity of the eigenvalue 1.
    pub unit_multiplicity: usize,
    /// Remaining eigenvalues with their multiplicities.
    pub roots: BTreeMap<RootLabel, usize>,
}

impl EigenvalueMultiset {
    pub fn total(&self) -> usize {
        self.unit_multiplicity + self.roots.values().sum::<usize>()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitMultiplicity {
    pub q: u64,
    pub multiplicity: usize,
}

/// Witness that `φ(t₀)` is conjugate to an integer matrix: its nontrivial
/// eigenvalues split into complete orbits of primitive `q`-th roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCertificate {
    pub center_dim: usize,
    /// Sorted by `q`; every `q >= 2`.
    pub orbits: Vec<OrbitMultiplicity>,
    /// `(x - 1)^s · Π Φ_q^multiplicity`
    pub char_poly: IntPolynomial,
}

impl OrbitCertificate {
    /// Number of nontrivial eigenvalues, `Σ multiplicity·φ(q)`.
    pub fn rotation_dim(&self) -> usize {
        self.orbits
            .iter()
            .map(|o| o.multiplicity * euler_phi(o.q) as usize)
            .sum()
    }
}

/// Reason a spectrum admits no lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Obstruction {
    /// Some block angle is not a rational multiple of π. Turn fractions
    /// cannot express this, so it only arises from callers that work with
    /// real angles.
    IrrationalAngle { detail: String },
    /// The primitive `q`-th roots occur with unequal multiplicities.
    /// `missing` lists residues occurring fewer times than the most
    /// frequent one.
    IncompleteOrbit {
        q: u64,
        missing: Vec<u64>,
        multiplicities: BTreeMap<u64, usize>,
    },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::IrrationalAngle { detail } => write!(f, "irrational angle: {detail}"),
            Obstruction::IncompleteOrbit { q, missing, .. } => {
                let list: Vec<String> = missing.iter().map(u64::to_string).collect();
                write!(
                    f,
                    "incomplete orbit of primitive {q}-th roots of unity: missing residues {{{}}} mod {q}",
                    list.join(",")
                )
            }
        }
    }
}

impl std::error::Error for Obstruction {}

/// Which table of the dimension-5 classification a pair belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairCase {
    /// One block is the identity.
    IdentityBlock,
    /// Both blocks rotate by the same angle.
    EqualAngles,
    /// Distinct angles, each admissible on its own.
    CrystallographicPair,
    /// A single orbit of order 5, 8, 10 or 12 spread over both blocks.
    Sporadic,
}

impl PairCase {
    pub fn number(self) -> u8 {
        match self {
            PairCase::IdentityBlock => 1,
            PairCase::EqualAngles => 2,
            PairCase::CrystallographicPair => 3,
            PairCase::Sporadic => 4,
        }
    }
}

/// An admissible pair of turn fractions for two rotation planes in `R^4`.
///
/// Fractions lie in `[0, 1/2]`; a zero fraction is an identity block.
/// `first <= second`, so `cos_first >= cos_second`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    pub first: ReducedFraction,
    pub second: ReducedFraction,
    /// Characteristic polynomial `λ⁴ - mλ³ + (2+n)λ² - mλ + 1`,
    /// with `m = 2(x+y)` and `n = 4xy` for the block cosines `x, y`.
    pub m: i64,
    pub n: i64,
    pub cos_first: QuadraticSurd,
    pub cos_second: QuadraticSurd,
    pub case: PairCase,
    pub certificate: OrbitCertificate,
}

impl AdmissiblePair {
    /// The pair as a spectrum of ambient dimension 4; identity blocks move
    /// to the center.
    pub fn spectrum(&self) -> RotationSpectrum {
        pair_spectrum(self.first, self.second)
    }
}

fn pair_spectrum(a: ReducedFraction, b: ReducedFraction) -> RotationSpectrum {
    let zeros = [a, b].iter().filter(|f| f.is_zero()).count();
    RotationSpectrum::new(2 * zeros, [a, b].into_iter().filter(|f| !f.is_zero()))
        .expect("nonzero fractions")
}

/// Every pair of turn fractions `{f1, f2} ⊂ [0, 1/2]` for which the
/// block-diagonal rotation of `R^4` is conjugate to an integer matrix, with
/// the exact block cosines.
///
/// The search covers denominators up to `2·4² = 32`, which contains every
/// `q` with `φ(q) <= 4`.
pub fn admissible_pairs_dim5() -> Vec<AdmissiblePair> {
    const DEN_BOUND: i64 = 32;
    let mut candidates = vec![ReducedFraction::ZERO];
    for q in 1..=DEN_BOUND {
        for p in 1..=q / 2 {
            if p.gcd(&q) == 1 {
                candidates.push(ReducedFraction::of(p, q));
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    let mut out = Vec::new();
    for (i, &a) in candidates.iter().enumerate() {
        for &b in &candidates[i..] {
            let Ok(cert) = pair_spectrum(a, b).orbit_check() else {
                continue;
            };
            let m = -i64::try_from(cert.char_poly.coeff(3)).expect("small coefficient");
            let n = i64::try_from(cert.char_poly.coeff(2)).expect("small coefficient") - 2;
            let disc = u64::try_from(m * m - 4 * n).expect("real block cosines");
            let case = if a.is_zero() {
                PairCase::IdentityBlock
            } else if a == b {
                PairCase::EqualAngles
            } else if [a, b].iter().all(|f| matches!(f.denom(), 2 | 3 | 4 | 6)) {
                PairCase::CrystallographicPair
            } else {
                PairCase::Sporadic
            };
            out.push(AdmissiblePair {
                first: a,
                second: b,
                m,
                n,
                cos_first: QuadraticSurd::from_quadratic_root(m, disc, 1, 4),
                cos_second: QuadraticSurd::from_quadratic_root(m, disc, -1, 4),
                case,
                certificate: cert,
            });
        }
    }
    out
}
