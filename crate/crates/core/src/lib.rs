//! Exact computations on flat solvmanifolds.
//!
//! A flat solvmanifold is a compact quotient `Γ\G` of a simply connected
//! solvable Lie group with a flat left-invariant metric by a lattice `Γ`.
//! This crate models the almost abelian case `G = R ⋉_φ R^{s+2n}`, where
//! `φ(t)` is the identity on an `s`-dimensional center and rotates `n`
//! planes, and products of such groups with `E(2)` factors and tori.
//!
//! - [`arith`]: totients, Hiller's `Φ`, cyclotomic polynomials, fractions.
//! - [`spectrum`]: turn-fraction spectra and the exact lattice-existence
//!   test (complete Galois orbits of roots of unity).
//! - [`lie_model`]: flat Lie algebra structure and product specs.
//! - [`lattice`]: the integer model `E` and real conjugator `P` of a lattice.
//! - [`holonomy`]: holonomy groups and witnesses of minimal dimension.
//! - [`enumeration`]: complete holonomy lists in dimensions 3 to 6.
//!
//! All arithmetic that decides anything is exact; floating point is used
//! only for the conjugator `P`, which is checked against a residual bound.

pub mod arith;
pub mod enumeration;
pub mod error;
pub mod holonomy;
pub mod lattice;
pub mod lie_model;
pub mod spectrum;
pub mod surd;

pub use arith::{
    cyclotomic_factorization, cyclotomic_poly, euler_phi, gcd_lcm, hiller_phi, CyclotomicFactor,
    IntPolynomial, ReducedFraction,
};
pub use enumeration::{
    dimension_report, enumerate_almost_abelian, enumerate_e2_products, platycosm_table,
    DimensionReport, Platycosm,
};
pub use error::{Error, Result};
pub use holonomy::{
    abelian_witness, holonomy_of_block, holonomy_of_spec, merge_blocks, min_dim_solv,
    minimal_cyclic_witness, prime_power_witness, FiniteAbelianGroup,
};
pub use lattice::{build_integer_model, build_lattice, rotation_matrix, IntMatrix, LatticeDescriptor};
pub use lie_model::{Block, FlatLieAlgebra, SolvmanifoldSpec};
pub use spectrum::{
    admissible_pairs_dim5, AdmissiblePair, Obstruction, OrbitCertificate, RotationSpectrum,
};
pub use surd::QuadraticSurd;
