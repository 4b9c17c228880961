use num_traits::Zero;

use super::{require_degree, require_dg_lie, step_cap, GaugeError};
use crate::exactlin::{inv_factorial, LinearMap, Rational, Vector};
use crate::linf::LInftyAlgebra;
use crate::mc::{curvature, MCElement};

/// `Σ_{n ≥ 0} coeff(n) ad_ξ^n(v)`, stopping once `ad_ξ^n(v)` vanishes.
pub fn ad_series(
    g: &LInftyAlgebra,
    xi: &Vector,
    v: &Vector,
    coeff: impl Fn(usize) -> Rational,
) -> Result<Vector, GaugeError> {
    let mut out = Vector::zero();
    let mut term = v.clone();
    let cap = step_cap(g);
    for n in 0..=cap {
        if term.is_zero() {
            return Ok(out);
        }
        let c = coeff(n);
        if !c.is_zero() {
            out.add_scaled(&c, &term);
        }
        term = g.eval_unchecked(&[xi, &term]);
    }
    Err(GaugeError::NotNilpotent {
        what: format!("ad of {} is not nilpotent", g.show(xi)),
        steps: cap,
    })
}

/// `e^{ad ξ}(τ) − ((e^{ad ξ} − 1)/ad ξ)(δξ)` without Maurer–Cartan checks.
pub fn gauge_act_unchecked(
    g: &LInftyAlgebra,
    xi: &Vector,
    tau: &Vector,
) -> Result<Vector, GaugeError> {
    let mut out = ad_series(g, xi, tau, inv_factorial)?;
    let dxi = g.eval_unchecked(&[xi]);
    let corr = ad_series(g, xi, &dxi, |n| inv_factorial(n + 1))?;
    out.sub_assign(&corr);
    Ok(out)
}

/// The gauge action of `exp(ξ)` on a Maurer–Cartan element.
pub fn gauge_act(
    g: &LInftyAlgebra,
    xi: &Vector,
    tau: &MCElement,
) -> Result<MCElement, GaugeError> {
    require_dg_lie(g)?;
    require_degree(g, xi, 0)?;
    let out = gauge_act_unchecked(g, xi, tau.value())?;
    let r = curvature(g, &out);
    if !r.is_zero() {
        return Err(GaugeError::Internal(format!(
            "gauge image {} is not Maurer–Cartan (residual {})",
            g.show(&out),
            g.show(&r)
        )));
    }
    Ok(MCElement::verify(g, out)?)
}

/// Differential of the orbit map at `φ`: `ξ ↦` the `t`-coefficient of `exp(ξt)·φ − φ` in
/// `𝔤 ⊗ 𝕂[t]/(t²)`, as a map from the degree-0 slice to the whole space.
///
/// Over the dual numbers only the first-order terms survive, so this is computed from the
/// gauge formula on the materialized extension rather than from the twisted differential.
pub fn orbit_differential(g: &LInftyAlgebra, phi: &MCElement) -> Result<LinearMap, GaugeError> {
    use crate::filtered::{extend_scalars, CoefficientAlgebra};
    require_dg_lie(g)?;
    let a = CoefficientAlgebra::dual_numbers();
    let e = extend_scalars(g, &a, false).map_err(crate::mc::McError::from)?;
    let phi_e = e.embed(phi.value(), 0);
    let zero_slice = g.space.indices_of_degree(0);
    let source = g.space.restrict(&zero_slice);
    let mut columns = Vec::with_capacity(zero_slice.len());
    for &i in &zero_slice {
        let xi_e = e.embed(&Vector::basis(i), 1);
        let moved = gauge_act_unchecked(&e.algebra, &xi_e, &phi_e)?;
        let diff = moved.minus(&phi_e);
        if !e.component(&diff, 0).is_zero() {
            return Err(GaugeError::Internal(
                "infinitesimal gauge moved the constant term".into(),
            ));
        }
        columns.push(e.component(&diff, 1));
    }
    Ok(LinearMap {
        source,
        target: g.space.clone(),
        shift: 1,
        columns,
    })
}
