//! Exact computer algebra for parabosonic Fock modules of the Lie
//! superalgebra osp(1|2n).
//!
//! The lowest-weight module `L_n(p)` of order `p` is realized inside
//! polynomials valued in a Clifford algebra on `p` generators. Its canonical
//! basis is indexed by semistandard Young tableaux; this crate constructs
//! those basis vectors as explicit integer polynomials and computes the
//! integer matrix elements of the raising/lowering operators `X_i`, `D_i`
//! on `L_n(p)` and of the paraboson generators `B_i^±` on the corresponding
//! induced (Verma-type) module.
//!
//! Layer map:
//! - [`partition`], [`tableau`]: shapes, weights, the tableau total order,
//!   enumeration and Kostka numbers, horizontal-strip coordinates.
//! - [`clifford`]: signed Clifford monomials and word normalization.
//! - [`poly`]: Clifford-valued polynomials and the operators acting on them.
//! - [`basis`]: tableau basis vectors and their integer coefficients.
//! - [`action`]: weight-space contexts, unitriangular expansion, action
//!   tables, and the rank-two closed-form oracle.
//! - [`verify`]: self-check suites behind the CLI `verify` subcommand.
//!
//! All arithmetic is exact. The concrete aliases below fix
//! [`num_bigint::BigInt`] as the default scalar; every numeric type is
//! generic over [`Scalar`] for callers who prefer fixed-width integers.

pub mod action;
pub mod basis;
pub mod clifford;
pub mod error;
pub mod jsonio;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default exact scalar.
pub type Int = num_bigint::BigInt;
/// Clifford-valued polynomial over [`Int`].
pub type IntPoly = poly::CliffordPoly<Int>;
/// Tableau basis vector over [`Int`].
pub type IntTableauVector = basis::TableauVector<Int>;
/// Action table over [`Int`].
pub type IntActionTable = action::ActionTable<Int>;
/// Weight-space context over [`Int`].
pub type IntBasisContext = action::BasisContext<Int>;
