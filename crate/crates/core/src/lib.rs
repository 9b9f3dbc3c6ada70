//! Exact computation of rank-3 loci of quadrics through linearly normal
//! embeddings, and of their decomposition into images of Grassmannian
//! products.
//!
//! Everything is exact: coefficients live in the rationals, in odd prime
//! fields, or in their quadratic extensions. The main entry points are
//!
//! * [`embed`] — models of an embedded variety (Veronese embeddings of
//!   projective space, plus a hardcoded quintic elliptic curve), their
//!   quadric ideals, and the enumeration of square decompositions of the
//!   embedding bundle;
//! * [`ranklocus`] — the symmetric matrix of linear forms attached to a
//!   quadric ideal and exhaustive rank statistics over small finite fields;
//! * [`wab`] — the rank-3 construction `(s, t, h) -> phi(s^2 h) phi(t^2 h) -
//!   phi(s t h)^2`, its coefficient polynomials with their invariant-theory
//!   certificates, dimension/degree data, and the constructive membership
//!   test that recovers `(s, t, h)` from a rank-3 quadric on the line;
//! * [`golden`] — the self-contained verification matrix run by CI and by
//!   the `golden` CLI subcommand.

pub mod binary;
pub mod embed;
pub mod field;
pub mod golden;
pub mod matrix;
pub mod poly;
pub mod quadform;
pub mod ranklocus;
pub mod report;
pub mod wab;

pub use field::{FieldSpec, Scalar};
pub use matrix::DenseMatrix;
pub use poly::MultiPoly;
pub use quadform::SymmetricForm;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mixed-field input")]
    FieldMismatch,
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),
    #[error("characteristic {p} too small for this operation (need > {need})")]
    CharTooSmall { p: u64, need: u64 },
    #[error("dimension mismatch")]
    DimMismatch,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("expected a homogeneous binary form")]
    NotBinaryForm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a rank-3 form, found rank {0}")]
    RankMismatch(usize),
    #[error("zero vector where a projective point was expected")]
    ZeroVector,
    #[error("quadric does not lie in the span of the ideal basis")]
    NotInSpan,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("enumeration budget exceeded ({points} points, cap {cap}); use sampling")]
    BudgetExceeded { points: u128, cap: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}
