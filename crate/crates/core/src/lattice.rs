//! Lattices `Γ = t₀Z ⋉_φ P·Z^m` in flat almost abelian Lie groups.
//!
//! A lattice exists exactly when `φ(t₀)` is conjugate to an integer matrix
//! `E`. With turn fractions the generator is normalized to `t₀ = 1`; `E` is
//! assembled from companion matrices of cyclotomic polynomials and the real
//! conjugator `P` from eigenvectors of `E`.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::{cyclotomic_poly, IntPolynomial};
use crate::error::{Error, Result};
use crate::spectrum::{OrbitCertificate, RotationSpectrum};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Square matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix is not square"));
        }
        Ok(IntMatrix { rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated low coefficients in the last column.
    pub fn companion(p: &IntPolynomial) -> Self {
        assert!(p.is_monic(), "companion matrix needs a monic polynomial");
        let n = p.degree();
        let mut m = Self::zeros(n);
        for i in 1..n {
            m.rows[i][i - 1] = BigInt::one();
        }
        for i in 0..n {
            m.rows[i][n - 1] = -p.coeff(i);
        }
        m
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum<'a, I: IntoIterator<Item = &'a IntMatrix>>(blocks: I) -> Self {
        let blocks: Vec<&IntMatrix> = blocks.into_iter().collect();
        let n = blocks.iter().map(|b| b.size()).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for (i, row) in b.rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    m.rows[off + i][off + j] = v.clone();
                }
            }
            off += b.size();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }

    pub fn trace(&self) -> BigInt {
        (0..self.size()).map(|i| &self.rows[i][i]).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.size();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.size());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Smallest `k >= 1` with `self^k = I`, searching up to `limit`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let id = Self::identity(self.size());
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc == id {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.size();
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// `det(xI - A)` by the Faddeev–LeVerrier recursion; every division is
    /// exact over the integers.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.size();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            for i in 0..n {
                m.rows[i][i] += &coeffs[n - k + 1];
            }
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / BigInt::from(k);
            m = am;
        }
        IntPolynomial::new(coeffs)
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| crate::arith::bigint_to_f64(&self.rows[i][j]))
    }

    pub fn max_abs(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .map(Signed::abs)
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(|r| {
            r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        }))
        .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[ {} ]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Row-major nested arrays of integers.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap_or(i64::MAX)).collect())
            .collect();
        rows.serialize(serializer)
    }
}

/// The block matrix `φ(t) = I_s ⊕ θ(2πf_1 t) ⊕ ⋯ ⊕ θ(2πf_n t)` with
/// `θ(a) = [[cos a, sin a], [-sin a, cos a]]`.
pub fn rotation_matrix(sp: &RotationSpectrum, t: f64) -> DMatrix<f64> {
    let s = sp.center_dim();
    let mut m = DMatrix::identity(sp.ambient_dim(), sp.ambient_dim());
    for (k, f) in sp.fractions().iter().enumerate() {
        let angle = TAU * f.to_f64() * t;
        let (sin, cos) = angle.sin_cos();
        let o = s + 2 * k;
        m[(o, o)] = cos;
        m[(o, o + 1)] = sin;
        m[(o + 1, o)] = -sin;
        m[(o + 1, o + 1)] = cos;
    }
    m
}

/// `I_s ⊕` (for each orbit `(q, m)`, `m` copies of the companion matrix of
/// `Φ_q`). Its characteristic polynomial is the certificate's.
pub fn build_integer_model(cert: &OrbitCertificate) -> IntMatrix {
    let mut blocks = vec![IntMatrix::identity(cert.center_dim)];
    for o in &cert.orbits {
        let c = IntMatrix::companion(&cyclotomic_poly(o.q));
        blocks.extend(std::iter::repeat_n(c, o.multiplicity));
    }
    IntMatrix::direct_sum(&blocks)
}

/// A certified lattice: `P⁻¹·φ(1)·P = E` up to `residual`.
#[derive(Clone, Debug)]
pub struct LatticeDescriptor {
    pub spectrum: RotationSpectrum,
    pub certificate: OrbitCertificate,
    pub order: u64,
    pub integer_model: IntMatrix,
    pub conjugator: DMatrix<f64>,
    pub residual: f64,
    pub tolerance: f64,
}

impl LatticeDescriptor {
    pub fn generators(&self) -> String {
        format!(
            "Γ = t₀Z ⋉_φ P·Z^{} with t₀ = 1 (one full unit of the turn parametrization)",
            self.spectrum.ambient_dim()
        )
    }
}

impl Serialize for LatticeDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let conj: Vec<Vec<f64>> = self
            .conjugator
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect();
        let mut st = serializer.serialize_struct("LatticeDescriptor", 8)?;
        st.serialize_field("spectrum", &self.spectrum)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("certificate", &self.certificate)?;
        st.serialize_field("integer_model", &self.integer_model)?;
        st.serialize_field("conjugator", &conj)?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("generators", &self.generators())?;
        st.end()
    }
}

/// Right eigenvector of the companion matrix of `p` for the root `λ`,
/// obtained by back substitution in `(C - λI)v = 0` with `v_{n-1} = 1`.
fn companion_eigenvector(p: &IntPolynomial, lambda: Complex64) -> Vec<Complex64> {
    let n = p.degree();
    let mut v = vec![Complex64::zero(); n];
    v[n - 1] = Complex64::one();
    for i in (1..n).rev() {
        v[i - 1] = lambda * v[i] + crate::arith::bigint_to_f64(&p.coeff(i));
    }
    v
}

/// Builds the lattice of a spectrum that passes the orbit check.
pub fn build_lattice(sp: &RotationSpectrum, tolerance: f64) -> Result<LatticeDescriptor> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let cert = sp.orbit_check()?;
    let integer_model = build_integer_model(&cert);
    let order = sp.order();
    assert!(integer_model.det().is_one(), "integer model must be unimodular");
    assert!(integer_model.pow(order).is_identity(), "E^d must be the identity");

    let n = sp.ambient_dim();
    let s = sp.center_dim();
    // Columns of Q = P⁻¹: E·Q = Q·φ(1).
    let mut q = DMatrix::<f64>::zeros(n, n);
    for i in 0..s {
        q[(i, i)] = 1.0;
    }

    // Offsets of the companion blocks, grouped by orbit order.
    let mut blocks: Vec<(u64, Vec<usize>)> = Vec::new();
    let mut off = s;
    for o in &cert.orbits {
        let deg = crate::arith::euler_phi(o.q) as usize;
        blocks.push((o.q, (0..o.multiplicity).map(|k| off + k * deg).collect()));
        off += deg * o.multiplicity;
    }
    let mut used: std::collections::HashMap<(u64, i64), usize> = Default::default();
    for (k, f) in sp.fractions().iter().enumerate() {
        let den = f.denom() as u64;
        let offsets = &blocks
            .iter()
            .find(|(qq, _)| *qq == den)
            .expect("certified orbit for every denominator")
            .1;
        let col = s + 2 * k;
        if den == 2 {
            // θ(π) = -I₂ pairs two 1×1 blocks of Φ₂
            let next = used.entry((2, 1)).or_insert(0);
            q[(offsets[*next], col)] = 1.0;
            q[(offsets[*next + 1], col + 1)] = 1.0;
            *next += 2;
            continue;
        }
        let next = used.entry((den, f.numer())).or_insert(0);
        let block = offsets[*next];
        *next += 1;
        let phi_q = cyclotomic_poly(den);
        let lambda = Complex64::from_polar(1.0, TAU * f.to_f64());
        for (i, v) in companion_eigenvector(&phi_q, lambda).into_iter().enumerate() {
            q[(block + i, col)] = v.re;
            q[(block + i, col + 1)] = v.im;
        }
    }

    let conjugator = q
        .clone()
        .try_inverse()
        .ok_or(Error::Numerical {
            residual: f64::INFINITY,
            tolerance,
        })?;
    let rot = rotation_matrix(sp, 1.0);
    let diff = &q * rot * &conjugator - integer_model.to_f64();
    let residual = diff.amax();
    if residual.is_nan() || residual > tolerance {
        return Err(Error::Numerical { residual, tolerance });
    }
    Ok(LatticeDescriptor {
        spectrum: sp.clone(),
        certificate: cert,
        order,
        integer_model,
        conjugator,
        residual,
        tolerance,
    })
}
