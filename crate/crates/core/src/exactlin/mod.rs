//! Exact linear algebra over graded rational vector spaces.

mod cohomology;
pub mod elim;
mod map;
pub mod rational;
mod space;
mod vector;

use thiserror::Error;

pub use cohomology::{cohomology, cohomology_of, quotient_basis, CohomologyResult};
pub use map::{express_in, independent_span, solve_linear, solve_on, span_rank, LinearMap, SolveResult};
pub use rational::{
    bernoulli_numbers, format_rational, int, inv_factorial, parse_rational, rat, ParseRationalError,
    Rational,
};
pub use space::{BasisElement, GradedSpace};
pub use vector::Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a complex: the composite sends `{witness}` to {image}")]
    NotAComplex { witness: String, image: String },
}
