//! The gauge group of a nilpotent dg Lie algebra, its action on Maurer–Cartan elements and the
//! correspondence between gauge equivalences and homotopies.

mod action;
mod bch;
mod homotopy;
mod moduli;
mod path;

use thiserror::Error;

use crate::exactlin::{LinAlgError, Vector};
use crate::linf::{LInftyAlgebra, LinfError};
use crate::mc::McError;

pub use action::{ad_series, gauge_act, gauge_act_unchecked, orbit_differential};
pub use bch::bch;
pub use homotopy::{gauge_from_homotopy, homotopy_faces, homotopy_from_gauge};
pub use moduli::{moduli_set, orbit_membership, ModuliReport, ModuliStatus};
pub use path::{Homotopy, HomotopyViolation, PolynomialPath};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaugeError {
    #[error("the gauge action needs a dg Lie algebra (brackets of arity ≥ 3 are present)")]
    NotDgLie,
    #[error("expected a homogeneous element of degree {expected}, got {found}")]
    WrongDegree { expected: i32, found: String },
    #[error("series does not terminate within {steps} steps: {what}")]
    NotNilpotent { what: String, steps: usize },
    #[error("invalid homotopy: {0}")]
    InvalidHomotopy(String),
    #[error("gauge element from the homotopy misses the endpoint by {residual}")]
    MagnusResidual { residual: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    Linf(#[from] LinfError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

pub(crate) fn require_dg_lie(g: &LInftyAlgebra) -> Result<(), GaugeError> {
    if g.is_dg_lie() {
        Ok(())
    } else {
        Err(GaugeError::NotDgLie)
    }
}

pub(crate) fn require_degree(g: &LInftyAlgebra, v: &Vector, d: i32) -> Result<(), GaugeError> {
    crate::mc::require_degree(g, v, d).map_err(|_| GaugeError::WrongDegree {
        expected: d,
        found: g.show(v),
    })
}

/// Upper bound on the number of terms of a terminating series in `g`.
pub(crate) fn step_cap(g: &LInftyAlgebra) -> usize {
    g.dim() + 2
}
