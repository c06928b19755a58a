//! Exact linear algebra over any [`Scalar`] backend.

mod echelon;
mod forms;
mod matrix;
mod subspace;

use thiserror::Error;

use crate::scalars::ScalarError;

pub use echelon::{inverse, rank, rref, solve_rank, Echelon, Solved};
pub use forms::{
    congruence_diagonalize, hermitian_definiteness, Definiteness, DefinitenessCertificate,
};
pub use matrix::{
    dot, to_scalar_vec, unit_vector, vec_add, vec_conj, vec_is_zero, vec_scale, vec_sub, Matrix,
};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix is not {0}")]
    NotSymmetric(&'static str),
    #[error("singular matrix")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
