//! The Maurer–Cartan equation, twisting, polynomial systems and order-by-order lifting.

mod lift;
mod polysys;
mod twist;

use thiserror::Error;

use crate::exactlin::{inv_factorial, LinAlgError, Vector};
use crate::filtered::FilteredError;
use crate::linf::{LInftyAlgebra, LinfError};

pub use lift::{
    lift_branch, lift_deformation, obstruction_at, FirstOrder, LiftBranch, Obstruction, QuadraticObstruction,
    DeformationLiftReport,
};
pub use polysys::{mc_polynomial_system, Monomial, Polynomial, PolynomialSystem};
pub use twist::{twist, twisted_differential, TwistedAlgebra};
pub(crate) use twist::twist_unchecked;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McError {
    #[error("expected a homogeneous element of degree {expected}, got {found}")]
    WrongDegree { expected: i32, found: String },
    #[error("not a Maurer–Cartan element: residual {residual}")]
    NotMaurerCartan { residual: String },
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Linf(#[from] LinfError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Filtered(#[from] FilteredError),
}

/// Checks that `v` is zero or homogeneous of the given degree.
pub fn require_degree(g: &LInftyAlgebra, v: &Vector, expected: i32) -> Result<(), McError> {
    match v.homogeneous_degree(&g.space) {
        Ok(None) => Ok(()),
        Ok(Some(d)) if d == expected => Ok(()),
        _ => Err(McError::WrongDegree {
            expected,
            found: g.show(v),
        }),
    }
}

/// `Σ_{k ≥ 1} (1/k!) l_k(τ, …, τ)` for `τ` of degree 1.
pub fn mc_residual(g: &LInftyAlgebra, tau: &Vector) -> Result<Vector, McError> {
    require_degree(g, tau, 1)?;
    Ok(curvature(g, tau))
}

pub(crate) fn curvature(g: &LInftyAlgebra, tau: &Vector) -> Vector {
    let mut out = Vector::zero();
    for k in 1..=g.brackets.effective_arity() {
        out.add_scaled(&inv_factorial(k), &g.power(k, tau));
    }
    out
}

/// A degree-1 element with vanishing Maurer–Cartan residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCElement {
    value: Vector,
}

impl MCElement {
    pub fn verify(g: &LInftyAlgebra, value: Vector) -> Result<Self, McError> {
        let r = mc_residual(g, &value)?;
        if !r.is_zero() {
            return Err(McError::NotMaurerCartan {
                residual: g.show(&r),
            });
        }
        Ok(Self { value })
    }

    pub fn zero() -> Self {
        Self {
            value: Vector::zero(),
        }
    }

    pub fn value(&self) -> &Vector {
        &self.value
    }

    pub fn into_value(self) -> Vector {
        self.value
    }
}
