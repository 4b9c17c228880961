use super::action::gauge_act;
use super::{require_dg_lie, GaugeError};
use crate::exactlin::{cohomology_of, Vector};
use crate::filtered::{nilpotency_index, CoefficientAlgebra};
use crate::linf::LInftyAlgebra;
use crate::mc::{lift_deformation, twist, DeformationLiftReport, MCElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuliStatus {
    /// The orbit set is fully described by the representatives.
    Decided,
    /// Orbits tracked order by order; representatives are not canonical beyond order one.
    OrderByOrder,
    /// Outside the decidable scope.
    NotDecided(String),
}

/// Deformations of `φ` over `A` modulo gauge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliReport {
    pub coefficients: String,
    pub status: ModuliStatus,
    /// Dimension of the orbit set as a vector space when it is linear (square-zero ideal).
    pub dimension: Option<usize>,
    /// Representatives `(H¹ representative, basis element of m_A)` for square-zero ideals.
    pub representatives: Vec<(Vector, usize)>,
    pub lift: Option<DeformationLiftReport>,
}

fn is_truncated_polynomial(a: &CoefficientAlgebra) -> Option<usize> {
    let n = a.dim();
    if a.unit != 0 || a.has_differential() || (0..n).any(|i| a.space.degree(i) != 0) {
        return None;
    }
    for i in 1..n {
        for j in 1..n {
            let expected = if i + j < n {
                Vector::basis(i + j)
            } else {
                Vector::zero()
            };
            if *a.product(i, j) != expected {
                return None;
            }
        }
    }
    Some(n)
}

/// `MC(𝔤 ⊗ m_A)` based at `φ` modulo `exp(𝔤⁰ ⊗ m_A)`.
///
/// Decided when `m_A² = 0` (the orbit set is `H¹(𝔤^φ) ⊗ m_A`); tracked order by order for
/// `𝕂[t]/(t^n)`; otherwise reported as not decided.
pub fn moduli_set(
    g: &LInftyAlgebra,
    phi: &MCElement,
    a: &CoefficientAlgebra,
) -> Result<ModuliReport, GaugeError> {
    require_dg_lie(g)?;
    let name = a.name.clone();
    let concentrated_zero = (0..a.dim()).all(|i| a.space.degree(i) == 0) && !a.has_differential();
    let index = match nilpotency_index(a) {
        Ok(k) if concentrated_zero => k,
        _ => {
            return Ok(ModuliReport {
                coefficients: name,
                status: ModuliStatus::NotDecided(
                    "coefficients are not a local artinian algebra in degree 0".into(),
                ),
                dimension: None,
                representatives: Vec::new(),
                lift: None,
            })
        }
    };
    if index <= 2 {
        let tw = twist(g, phi)?.algebra;
        let h1 = cohomology_of(&tw.differential(), 1)?;
        let ideal = a.ideal();
        let mut representatives = Vec::new();
        for &m in &ideal {
            for r in &h1.representatives {
                representatives.push((r.clone(), m));
            }
        }
        return Ok(ModuliReport {
            coefficients: name,
            status: ModuliStatus::Decided,
            dimension: Some(h1.dimension * ideal.len()),
            representatives,
            lift: None,
        });
    }
    match is_truncated_polynomial(a) {
        Some(n) => Ok(ModuliReport {
            coefficients: name,
            status: ModuliStatus::OrderByOrder,
            dimension: None,
            representatives: Vec::new(),
            lift: Some(lift_deformation(g, phi, n)?),
        }),
        None => Ok(ModuliReport {
            coefficients: name,
            status: ModuliStatus::NotDecided(
                "orbit classification beyond square-zero and 𝕂[t]/(t^n) coefficients".into(),
            ),
            dimension: None,
            representatives: Vec::new(),
            lift: None,
        }),
    }
}

/// Whether `exp(ξ)·τ = τ'`.
pub fn orbit_membership(
    g: &LInftyAlgebra,
    tau: &MCElement,
    target: &MCElement,
    xi: &Vector,
) -> Result<bool, GaugeError> {
    Ok(gauge_act(g, xi, tau)?.value() == target.value())
}
