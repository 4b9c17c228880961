//! Tangent spaces of the Maurer–Cartan locus and the two-term tangent complex of the quotient
//! by the gauge group.

use thiserror::Error;

use crate::exactlin::{cohomology_of, span_rank, LinAlgError, LinearMap, Vector};
use crate::filtered::{tensor_add, CoefficientAlgebra, Extension, TensorVector};
use crate::gauge::{gauge_act_unchecked, orbit_differential, GaugeError};
use crate::linf::LInftyAlgebra;
use crate::mc::{lift_deformation, twisted_differential, MCElement, McError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangentError {
    /// Two computations that must agree did not.
    #[error("inconsistent tangent data: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// `Z¹(𝔤^φ)` with the dual-number cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentSpace {
    pub cocycles: Vec<Vector>,
    /// Every cocycle `z` makes `φ + z t` Maurer–Cartan over `𝕂[t]/(t²)`.
    pub cocycles_deform: bool,
    /// Every first-order deformation found directly lies in the span of the cocycles, and the
    /// dimensions agree.
    pub deformations_are_cocycles: bool,
}

/// The `t`-coefficient of the curvature of `φ + v t` over the dual numbers.
fn first_order_residual(g: &LInftyAlgebra, phi: &Vector, v: &Vector) -> Vector {
    let a = CoefficientAlgebra::dual_numbers();
    let ext = Extension::new(g, &a);
    let mut tau: TensorVector<usize> = TensorVector::new();
    for (i, c) in phi.iter() {
        tensor_add(&mut tau, (i, 0), c.clone());
    }
    for (i, c) in v.iter() {
        tensor_add(&mut tau, (i, 1), c.clone());
    }
    let res = ext.mc_residual(&tau);
    Vector::from_terms(
        res.into_iter()
            .filter(|((_, m), _)| *m == 1)
            .map(|((i, _), c)| (i, c)),
    )
}

/// `T_φ MC(𝔤) = Z¹(𝔤^φ)`.
pub fn tangent_mc(g: &LInftyAlgebra, phi: &MCElement) -> Result<TangentSpace, TangentError> {
    let phi = MCElement::verify(g, phi.value().clone())?;
    let d = twisted_differential(g, phi.value());
    let ones = g.space.indices_of_degree(1);
    let cocycles = d.kernel_on(&ones);
    let cocycles_deform = cocycles
        .iter()
        .all(|z| first_order_residual(g, phi.value(), z).is_zero());
    // the same solution space, read off residuals of φ + e t for basis vectors e
    let columns: Vec<Vector> = ones
        .iter()
        .map(|&e| first_order_residual(g, phi.value(), &Vector::basis(e)))
        .collect();
    let direct = LinearMap {
        source: g.space.restrict(&ones),
        target: g.space.clone(),
        shift: 1,
        columns,
    };
    let solutions: Vec<Vector> = direct
        .kernel()
        .into_iter()
        .map(|k| k.reindex(|p| Some(ones[p])))
        .collect();
    let n = g.dim();
    let base = span_rank(&cocycles, n);
    let deformations_are_cocycles = solutions.len() == cocycles.len()
        && solutions.iter().all(|s| {
            let mut with = cocycles.clone();
            with.push(s.clone());
            span_rank(&with, n) == base
        });
    Ok(TangentSpace {
        cocycles,
        cocycles_deform,
        deformations_are_cocycles,
    })
}

/// The complex `−d_φ: 𝔤⁰ → Z¹(𝔤^φ)` and its cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentComplexResult {
    pub phi: Vector,
    /// Basis indices of `𝔤⁰`.
    pub degree_minus1: Vec<usize>,
    /// Basis of `Z¹(𝔤^φ)`.
    pub degree0: Vec<Vector>,
    /// `−d_φ` on the basis of `𝔤⁰`.
    pub differential: Vec<Vector>,
    /// The orbit-map differential from the gauge formula over dual numbers.
    pub orbit_differential: Vec<Vector>,
    /// Representatives of a basis of `H⁰ = Z¹(𝔤^φ) / im(d_φ)`.
    pub h0: Vec<Vector>,
    /// `H⁻¹ = Z⁰(𝔤^φ)`.
    pub h_minus1: Vec<Vector>,
}

impl TangentComplexResult {
    pub fn differentials_agree(&self) -> bool {
        self.differential == self.orbit_differential
    }
}

/// Elements of `span` extending `sub` to a basis of `sub + span`.
fn extend_basis(sub: &[Vector], span: &[Vector], n: usize) -> Vec<Vector> {
    let mut acc = sub.to_vec();
    let mut rank = span_rank(&acc, n);
    let mut out = Vec::new();
    for v in span {
        acc.push(v.clone());
        let r = span_rank(&acc, n);
        if r > rank {
            rank = r;
            out.push(v.clone());
        } else {
            acc.pop();
        }
    }
    out
}

pub fn tangent_complex(
    g: &LInftyAlgebra,
    phi: &MCElement,
) -> Result<TangentComplexResult, TangentError> {
    let phi = MCElement::verify(g, phi.value().clone())?;
    let d = twisted_differential(g, phi.value());
    let zeros = g.space.indices_of_degree(0);
    let differential: Vec<Vector> = zeros.iter().map(|&i| d.columns[i].neg()).collect();
    let orbit = orbit_differential(g, &phi)?.columns;
    let ones = g.space.indices_of_degree(1);
    let degree0 = d.kernel_on(&ones);
    let n = g.dim();
    let image = crate::exactlin::independent_span(&differential, n);
    let h0 = extend_basis(&image, &degree0, n);
    let h_minus1 = d.kernel_on(&zeros);
    if span_rank(&image, n) + h0.len() != degree0.len() {
        return Err(TangentError::Inconsistent(
            "the image of d_φ on 𝔤⁰ is not contained in Z¹".into(),
        ));
    }
    Ok(TangentComplexResult {
        phi: phi.into_value(),
        degree_minus1: zeros,
        degree0,
        differential,
        orbit_differential: orbit,
        h0,
        h_minus1,
    })
}

/// The three computations of the tangent space of `[MC(𝔤)/exp(𝔤⁰)]` at `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentReport {
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub first_order_mod_gauge: usize,
    pub h_minus1_dim: usize,
    pub differentials_agree: bool,
    /// `exp(ξt)·φ = φ` over `𝕂[t]/(t²)` for every `ξ` in the `H⁻¹` basis.
    pub stabilizer_fixes_phi: bool,
    pub complex: TangentComplexResult,
}

impl TangentReport {
    pub fn passes(&self) -> bool {
        self.differentials_agree
            && self.stabilizer_fixes_phi
            && self.h0_dim == self.h1_dim
            && self.h1_dim == self.first_order_mod_gauge
    }
}

pub fn tangent_report(g: &LInftyAlgebra, phi: &MCElement) -> Result<TangentReport, TangentError> {
    let complex = tangent_complex(g, phi)?;
    let h1 = cohomology_of(&twisted_differential(g, phi.value()), 1)?;
    let first = lift_deformation(g, phi, 2)?.first_order;
    let a = CoefficientAlgebra::dual_numbers();
    let e = crate::filtered::extend_scalars(g, &a, false).map_err(McError::from)?;
    let phi_e = e.embed(phi.value(), 0);
    let mut stabilizer_fixes_phi = true;
    for xi in &complex.h_minus1 {
        let moved = gauge_act_unchecked(&e.algebra, &e.embed(xi, 1), &phi_e)?;
        stabilizer_fixes_phi &= moved == phi_e;
    }
    Ok(TangentReport {
        h0_dim: complex.h0.len(),
        h1_dim: h1.dimension,
        first_order_mod_gauge: first.mod_gauge_dim(),
        h_minus1_dim: complex.h_minus1.len(),
        differentials_agree: complex.differentials_agree(),
        stabilizer_fixes_phi,
        complex,
    })
}
