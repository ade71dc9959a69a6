//! Structure of flat Lie algebras `g = z(g) ⊕ b ⊕ [g,g]`, and of the
//! solvmanifolds assembled from almost abelian blocks, `e(2)` factors and
//! tori.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::ReducedFraction;
use crate::error::{Error, Result};
use crate::spectrum::RotationSpectrum;

/// A flat Lie algebra described by the action of `b` on the rotation planes
/// of `[g,g]`.
///
/// Row `i` of the rotation table holds `α_1(x_i), …, α_m(x_i)` for the
/// `i`-th basis vector `x_i` of `b`, where `ad_{x_i}` rotates plane `j` with
/// speed `α_j(x_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLieAlgebra {
    center_dim: usize,
    b_dim: usize,
    rotation_table: Vec<Vec<ReducedFraction>>,
}

impl FlatLieAlgebra {
    /// Checks the structural invariants: every row has the same number `m`
    /// of planes, `dim b <= m`, every plane is rotated by some element of
    /// `b`, and the rows are linearly independent (`ad` is injective on `b`).
    pub fn new(center_dim: usize, rotation_table: Vec<Vec<ReducedFraction>>) -> Result<Self> {
        let b_dim = rotation_table.len();
        let planes = rotation_table.first().map_or(0, Vec::len);
        if rotation_table.iter().any(|row| row.len() != planes) {
            return Err(Error::invalid("rotation table rows have different lengths"));
        }
        if b_dim > planes {
            return Err(Error::invalid(format!(
                "dim b = {b_dim} exceeds dim [g,g] / 2 = {planes}"
            )));
        }
        if (0..planes).any(|j| rotation_table.iter().all(|row| row[j].is_zero())) {
            return Err(Error::invalid("a rotation plane is not acted on by b"));
        }
        if rank(&to_big(&rotation_table)) != b_dim {
            return Err(dependent_rows());
        }
        Ok(FlatLieAlgebra {
            center_dim,
            b_dim,
            rotation_table,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        FlatLieAlgebra {
            center_dim: dim,
            b_dim: 0,
            rotation_table: Vec::new(),
        }
    }

    /// `R x ⋉ R^{s+2n}` with `ad_x` rotating the planes at the given speeds.
    pub fn almost_abelian(center_dim: usize, speeds: Vec<ReducedFraction>) -> Result<Self> {
        Self::new(center_dim, vec![speeds])
    }

    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    pub fn b_dim(&self) -> usize {
        self.b_dim
    }

    pub fn rotation_table(&self) -> &[Vec<ReducedFraction>] {
        &self.rotation_table
    }

    pub fn plane_count(&self) -> usize {
        self.rotation_table.first().map_or(0, Vec::len)
    }

    /// `dim [g,g]`, always even.
    pub fn derived_dim(&self) -> usize {
        2 * self.plane_count()
    }

    pub fn dim(&self) -> usize {
        self.center_dim + self.b_dim + self.derived_dim()
    }

    /// Almost abelian exactly when `dim b = 1`.
    pub fn is_almost_abelian(&self) -> bool {
        self.b_dim == 1 && self.plane_count() > 0
    }

    /// When `dim b = dim [g,g] / 2`, `g ≅ z(g) × e(2)^{dim b}`: the dual basis
    /// `{e_i}` of the forms `{α_i}` satisfies `[e_i, f_{2i-1}] = -f_{2i}`,
    /// `[e_i, f_{2i}] = f_{2i-1}` and nothing else.
    pub fn split_e2(&self) -> Result<Option<E2Splitting>> {
        if self.b_dim != self.plane_count() {
            return Ok(None);
        }
        let table = to_big(&self.rotation_table);
        let change_of_basis = inverse(&table).ok_or_else(dependent_rows)?;
        let transformed_table = mat_mul(&change_of_basis, &table);
        debug_assert!(is_identity(&transformed_table));
        Ok(Some(E2Splitting {
            center_dim: self.center_dim,
            e2_count: self.b_dim,
            change_of_basis,
            transformed_table,
        }))
    }
}

fn dependent_rows() -> Error {
    Error::invalid("rotation table rows are linearly dependent (ad is not injective on b)")
}

pub fn is_almost_abelian(g: &FlatLieAlgebra) -> bool {
    g.is_almost_abelian()
}

pub fn split_e2(g: &FlatLieAlgebra) -> Result<Option<E2Splitting>> {
    g.split_e2()
}

/// Result of [`FlatLieAlgebra::split_e2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Splitting {
    pub center_dim: usize,
    pub e2_count: usize,
    /// Row `i` expresses `e_i` in the original basis of `b`.
    pub change_of_basis: Vec<Vec<BigRational>>,
    /// The rotation table in the basis `{e_i}`; always the identity.
    pub transformed_table: Vec<Vec<BigRational>>,
}

impl E2Splitting {
    pub fn is_standard(&self) -> bool {
        is_identity(&self.transformed_table)
    }

    /// Nonzero brackets `[e_i, f_k] = c·f_l` read off the transformed table,
    /// with 1-based indices as `(i, k, c, l)`. Plane `j` is spanned by
    /// `f_{2j-1}, f_{2j}`.
    pub fn bracket_relations(&self) -> Vec<(usize, usize, BigRational, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.transformed_table.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.push((i + 1, 2 * j + 1, -c.clone(), 2 * j + 2));
                out.push((i + 1, 2 * j + 2, c.clone(), 2 * j + 1));
            }
        }
        out
    }
}

type Mat = Vec<Vec<BigRational>>;

fn to_big(rows: &[Vec<ReducedFraction>]) -> Mat {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|f| BigRational::new(BigInt::from(f.numer()), BigInt::from(f.denom())))
                .collect()
        })
        .collect()
}

fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let sub = &factor * &a[r][k];
                    a[i][k] -= sub;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Gauss–Jordan inverse over `Q`; `None` for singular input.
fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut a: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, pivot);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for k in 0..2 * n {
                    let sub = &factor * &a[c][k];
                    a[i][k] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn is_identity(m: &Mat) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len()
            && row
                .iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

/// One factor of a product solvmanifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Block {
    /// `Γ\(R ⋉_φ R^{s+2n})` with `φ(t₀)` given by the spectrum.
    AlmostAbelian { spectrum: RotationSpectrum },
    /// A quotient of `E(2)` by a lattice whose generator rotates by `2πf`.
    E2Factor { fraction: ReducedFraction },
    /// A flat torus `T^dim`.
    Torus { dim: usize },
}

impl Block {
    pub fn dim(&self) -> usize {
        match self {
            Block::AlmostAbelian { spectrum } => spectrum.group_dim(),
            Block::E2Factor { .. } => 3,
            Block::Torus { dim } => *dim,
        }
    }

    pub fn almost_abelian(spectrum: RotationSpectrum) -> Self {
        Block::AlmostAbelian { spectrum }
    }

    /// Folds the fraction into `(0, 1/2]`.
    pub fn e2(fraction: ReducedFraction) -> Self {
        Block::E2Factor {
            fraction: fraction.fold_turn(),
        }
    }

    pub fn torus(dim: usize) -> Self {
        Block::Torus { dim }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Block::AlmostAbelian { spectrum } => spectrum.orbit_check().map(|_| ()).map_err(Error::from),
            Block::E2Factor { fraction } => {
                if matches!(fraction.denom(), 2 | 3 | 4 | 6) && *fraction == fraction.fold_turn() {
                    Ok(())
                } else {
                    Err(Error::invalid(format!(
                        "E(2) lattice rotation {fraction} must have denominator 2, 3, 4 or 6"
                    )))
                }
            }
            Block::Torus { dim } if *dim == 0 => Err(Error::invalid("torus factor of dimension 0")),
            Block::Torus { .. } => Ok(()),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::AlmostAbelian { spectrum } => write!(f, "AA[{spectrum}]"),
            Block::E2Factor { fraction } => write!(f, "E2[{fraction}]"),
            Block::Torus { dim } => write!(f, "T{dim}"),
        }
    }
}

/// A product `Γ₁\G₁ × ⋯ × Γ_k\G_k` of flat solvmanifolds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SolvmanifoldSpec {
    blocks: Vec<Block>,
}

impl SolvmanifoldSpec {
    /// Every almost abelian block must admit a lattice and every `E(2)`
    /// rotation must be crystallographic.
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::invalid("a solvmanifold needs at least one block"));
        }
        for b in &blocks {
            b.validate()?;
        }
        Ok(SolvmanifoldSpec { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    /// Product with another spec.
    pub fn concat(&self, other: &SolvmanifoldSpec) -> SolvmanifoldSpec {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        SolvmanifoldSpec { blocks }
    }

    pub fn push(&mut self, block: Block) -> Result<()> {
        block.validate()?;
        self.blocks.push(block);
        Ok(())
    }
}

pub fn spec_dimension(spec: &SolvmanifoldSpec) -> usize {
    spec.dim()
}

impl fmt::Display for SolvmanifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(p: i64, q: i64) -> ReducedFraction {
        ReducedFraction::of(p, q)
    }

    fn int(n: i64) -> ReducedFraction {
        ReducedFraction::integer(n)
    }

    #[test]
    fn almost_abelian_predicate() {
        let g = FlatLieAlgebra::almost_abelian(0, vec![int(1)]).unwrap();
        assert!(g.is_almost_abelian());
        let g = FlatLieAlgebra::new(0, vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        assert!(!g.is_almost_abelian());
        assert!(!FlatLieAlgebra::abelian(3).is_almost_abelian());
    }

    #[test]
    fn split_examples() {
        let g = FlatLieAlgebra::new(0, vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        let s = g.split_e2().unwrap().unwrap();
        assert_eq!((s.center_dim, s.e2_count), (0, 2));
        assert_eq!(g.dim(), 6);

        let g = FlatLieAlgebra::almost_abelian(3, vec![int(1)]).unwrap();
        let s = g.split_e2().unwrap().unwrap();
        assert_eq!((s.center_dim, s.e2_count), (3, 1));

        let g = FlatLieAlgebra::almost_abelian(0, vec![int(1), fr(1, 2)]).unwrap();
        assert_eq!(g.split_e2().unwrap(), None);
    }

    #[test]
    fn split_of_mixed_table_is_standard() {
        let g = FlatLieAlgebra::new(
            1,
            vec![
                vec![int(2), fr(1, 3), int(0)],
                vec![int(1), int(1), int(5)],
                vec![fr(-1, 2), int(0), int(1)],
            ],
        )
        .unwrap();
        let s = g.split_e2().unwrap().unwrap();
        assert!(s.is_standard());
        assert_eq!(s.e2_count, 3);
        let one = BigRational::one();
        let expected: Vec<_> = (1..=3)
            .flat_map(|i| [(i, 2 * i - 1, -one.clone(), 2 * i), (i, 2 * i, one.clone(), 2 * i - 1)])
            .collect();
        assert_eq!(s.bracket_relations(), expected);
        assert_eq!(mat_mul(&s.change_of_basis, &to_big(g.rotation_table())), s.transformed_table);
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(FlatLieAlgebra::new(0, vec![vec![int(1), int(2)], vec![int(2), int(4)]]).is_err());
        assert!(FlatLieAlgebra::new(0, vec![vec![int(1)], vec![int(2)]]).is_err());
        assert!(FlatLieAlgebra::new(0, vec![vec![int(1), int(0)]]).is_err());
        assert!(FlatLieAlgebra::new(0, vec![vec![int(1), int(0)], vec![int(1)]]).is_err());
    }

    #[test]
    fn spec_dimensions() {
        let t = SolvmanifoldSpec::new(vec![Block::torus(3)]).unwrap();
        assert_eq!(spec_dimension(&t), 3);
        let sp: RotationSpectrum = "s=0;f=1/5,2/5".parse().unwrap();
        let a = SolvmanifoldSpec::new(vec![Block::almost_abelian(sp)]).unwrap();
        assert_eq!(a.dim(), 5);
        let e = SolvmanifoldSpec::new(vec![Block::e2(fr(1, 2)), Block::e2(fr(1, 3))]).unwrap();
        assert_eq!(e.dim(), 6);
        assert_eq!(a.concat(&e).dim(), a.dim() + e.dim());
    }

    #[test]
    fn invalid_blocks_rejected() {
        let sp: RotationSpectrum = "s=0;f=1/5".parse().unwrap();
        assert!(matches!(
            SolvmanifoldSpec::new(vec![Block::almost_abelian(sp)]),
            Err(Error::Obstruction(_))
        ));
        assert!(SolvmanifoldSpec::new(vec![Block::e2(fr(1, 5))]).is_err());
        assert!(SolvmanifoldSpec::new(vec![Block::torus(0)]).is_err());
        assert!(SolvmanifoldSpec::new(vec![]).is_err());
        let e = SolvmanifoldSpec::new(vec![Block::e2(fr(5, 6))]).unwrap();
        assert_eq!(e.blocks()[0], Block::E2Factor { fraction: fr(1, 6) });
    }
}
