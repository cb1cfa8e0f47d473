//! Dense symmetric eigendecomposition and Gram-matrix SVD.
//!
//! Sized for term-document matrices of a few hundred rows and columns. The
//! eigen solver is cyclic Jacobi, so results are deterministic and reproducible
//! bit for bit on a given platform.

mod jacobi;
mod matrix;
mod svd;

pub use jacobi::{jacobi_eigen, EigenDecomposition, JacobiState, JACOBI_TOLERANCE, MAX_SWEEPS};
pub use matrix::{Matrix, SymmetricMatrix};
pub use svd::{gram_cols, gram_rows, svd_via_gram, RankSpec, SvdFactors, ZERO_EIGEN_CUTOFF};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (max off-diagonal {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix has no eigenvalue above the zero cutoff")]
    RankDeficient,
    #[error("rank {requested} out of range 1..={available}")]
    BadRank { requested: usize, available: usize },
}
