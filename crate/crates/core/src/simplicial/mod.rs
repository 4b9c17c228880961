//! The simplicial set of Maurer–Cartan simplices `MC_•(𝔤) = MC(𝔤 ⊗ Ω_•)`.

mod fibration;
mod forms;
mod simplex;

use thiserror::Error;

use crate::gauge::GaugeError;
use crate::linf::LinfError;
use crate::exactlin::LinAlgError;

pub use fibration::{
    fibration_consequence_check, lift_mc_element, lift_path, pi0, FibrationReport, LiftCertificate,
    McLift, PathLift, WeightStep,
};
pub use forms::{form_add, omega, Form, FormMap, FormMono, FormSlice, SullivanForms, MAX_DIMENSION};
pub use simplex::{
    homotopy_to_simplex, mc_simplex_verify, simplex_to_homotopy, zero_simplex_value, McSimplex,
    SimplexVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Linf(#[from] LinfError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
