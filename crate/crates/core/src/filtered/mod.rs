//! Filtrations, truncation to nilpotent quotients and extension of scalars.

mod coefficients;
mod extend;

use thiserror::Error;

use crate::exactlin::{LinearMap, Vector};
use crate::linf::{weight_violations, LInftyAlgebra, LinfError, Violation};

pub use coefficients::{nilpotency_index, unit_term, CoefficientAlgebra, GradedCommutative};
pub use extend::{
    extend_scalars, tensor_add, tensor_add_scaled, tensor_pure, ExtendedAlgebra, Extension,
    TensorVector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilteredError {
    #[error("invalid coefficient algebra: {0}")]
    Coefficients(String),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("brackets are not compatible with the filtration: {0}")]
    NotFiltered(String),
    #[error("truncation order must be at least 1")]
    InvalidOrder,
    #[error(transparent)]
    Linf(#[from] LinfError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiltrationReport {
    pub violations: Vec<Violation>,
}

impl FiltrationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `l_1` preserves weight and every higher bracket raises it.
pub fn check_filtration(g: &LInftyAlgebra) -> FiltrationReport {
    FiltrationReport {
        violations: weight_violations(g),
    }
}

/// Basis indices of weight `< r`.
pub fn truncation_indices(g: &LInftyAlgebra, r: u32) -> Vec<usize> {
    (0..g.dim()).filter(|&i| g.space.weight(i) < r).collect()
}

/// The quotient `𝔤 / F_r 𝔤`, on the basis elements of weight `< r`.
pub fn truncate(g: &LInftyAlgebra, r: u32) -> Result<LInftyAlgebra, FilteredError> {
    if r == 0 {
        return Err(FilteredError::InvalidOrder);
    }
    let report = check_filtration(g);
    if let Some(v) = report.violations.first() {
        return Err(FilteredError::NotFiltered(v.to_string()));
    }
    Ok(truncate_unchecked(g, r))
}

/// Quotient by the span of basis elements of weight `≥ r`, assuming it is an ideal.
pub(crate) fn truncate_unchecked(g: &LInftyAlgebra, r: u32) -> LInftyAlgebra {
    let keep = truncation_indices(g, r);
    let mut pos = vec![None; g.dim()];
    for (k, &i) in keep.iter().enumerate() {
        pos[i] = Some(k);
    }
    let mut out = LInftyAlgebra::new(g.space.restrict(&keep), g.max_arity());
    for (_, tuple, v) in g.brackets.iter() {
        let Some(t) = tuple.iter().map(|&i| pos[i]).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let image = v.reindex(|i| pos[i]);
        out.set_bracket(&t, image).expect("restriction of a valid table");
    }
    out
}

/// The projection `𝔤 → 𝔤 / F_r 𝔤`.
pub fn truncation_projection(g: &LInftyAlgebra, r: u32) -> LinearMap {
    let keep = truncation_indices(g, r);
    let target = g.space.restrict(&keep);
    let columns = (0..g.dim())
        .map(|i| match keep.iter().position(|&k| k == i) {
            Some(p) => Vector::basis(p),
            None => Vector::zero(),
        })
        .collect();
    LinearMap {
        source: g.space.clone(),
        target,
        shift: 0,
        columns,
    }
}
