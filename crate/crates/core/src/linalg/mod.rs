//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything downstream (boundary matrices, the intersection form, the
//! oracle) reduces to Smith normal form, integer kernels and cokernels.
//! All routines are deterministic: pivot choice is by smallest nonzero
//! absolute value, ties broken by lowest row-major index.

mod cokernel;
mod kernel;
mod matrix;
mod snf;
mod sparse;

pub use cokernel::{cokernel, AbelianPresentation, CokernelMap, QuotientCoords, QuotientCoordsDoc};
pub use kernel::{coords_in_lattice, in_column_lattice, kernel_basis, LatticeSolver};
pub use matrix::IntMatrix;
pub use snf::{snf, SnfDecomposition};
pub use sparse::SparseIntMatrix;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector is not in the column lattice")]
    NotInLattice,
    #[error("columns are not linearly independent")]
    DependentColumns,
}
