//! L∞ structures: signs, brackets, generalized Jacobi identities and the coderivation form.
//!
//! Degrees are cohomological and `l_k` has degree `2 − k`.

mod algebra;
mod ce;
mod jacobi;
mod sign;

use thiserror::Error;

use crate::exactlin::LinAlgError;

pub use algebra::{BracketTable, LInftyAlgebra};
pub use ce::{chevalley_eilenberg, ChevalleyEilenberg, CoderivationPresentation, WordCombination};
pub use jacobi::{
    degree_violations, jacobi_residual, jacobi_residual_vectors, verify_structure,
    weight_violations, StructureReport, Violation,
};
pub use sign::koszul_sign;
pub(crate) use jacobi::for_each_tuple;
pub(crate) use sign::odd;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinfError {
    #[error("bracket undefined: arity {arity} exceeds the maximal arity {max_arity}")]
    BracketUndefined { arity: usize, max_arity: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("vector {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("{0}")]
    Structure(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
