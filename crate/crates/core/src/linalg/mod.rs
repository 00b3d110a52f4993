//! Exact scalar arithmetic and dense matrix kernels.

pub mod field;
pub mod matrix;
pub mod random;
pub mod solve;
pub mod symplectic;

use thiserror::Error;

pub use field::{int, parse_rat, rat, rat_to_string, Field, FieldTag, Fp, PrimeField, Rat, Rationals, DEFAULT_PRIME};
pub use matrix::{Matrix, QMatrix, SkewMatrix, SymMatrix};
pub use solve::{rank, rank_kernel, rref, solve_affine, AffineSolutionSpace, AffineSolve, RankKernel, Rref};
pub use symplectic::{cayley, congruence, standard_symplectic, symplectic_framing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("operands live in different fields")]
    MixedField,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("skew form is degenerate")]
    Degenerate,
    #[error("symplectic size {0} is not a positive even number")]
    OddSize(usize),
    #[error("{0} is not a prime below 2^62")]
    BadPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
}
