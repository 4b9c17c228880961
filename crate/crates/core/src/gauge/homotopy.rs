use num_traits::Zero;

use super::action::gauge_act_unchecked;
use super::path::{Homotopy, PolynomialPath};
use super::{require_degree, require_dg_lie, step_cap, GaugeError};
use crate::exactlin::{bernoulli_numbers, inv_factorial, Rational, Vector};
use crate::linf::LInftyAlgebra;
use crate::mc::MCElement;

/// The homotopy `f_0 = e^{t ad ξ}(τ) − ((e^{t ad ξ} − 1)/ad ξ)(δξ)`, `f_1 = ξ` from `τ` to
/// `exp(ξ)·τ`.
pub fn homotopy_from_gauge(
    g: &LInftyAlgebra,
    xi: &Vector,
    tau: &MCElement,
) -> Result<Homotopy, GaugeError> {
    require_dg_lie(g)?;
    require_degree(g, xi, 0)?;
    let mut f0 = PolynomialPath::zero();
    let cap = step_cap(g);
    let mut term = tau.value().clone();
    let mut n = 0;
    while !term.is_zero() {
        if n > cap {
            return Err(not_nilpotent(g, xi, cap));
        }
        f0.add_term(n, &inv_factorial(n), &term);
        term = g.eval_unchecked(&[xi, &term]);
        n += 1;
    }
    let mut term = g.eval_unchecked(&[xi]);
    let mut n = 0;
    while !term.is_zero() {
        if n > cap {
            return Err(not_nilpotent(g, xi, cap));
        }
        f0.add_term(n + 1, &-inv_factorial(n + 1), &term);
        term = g.eval_unchecked(&[xi, &term]);
        n += 1;
    }
    let h = Homotopy {
        f0,
        f1: PolynomialPath::constant(xi.clone()),
    };
    if let Some(v) = h.violations(g).first() {
        return Err(GaugeError::Internal(format!(
            "constructed homotopy is invalid: {v:?}"
        )));
    }
    Ok(h)
}

fn not_nilpotent(g: &LInftyAlgebra, xi: &Vector, steps: usize) -> GaugeError {
    GaugeError::NotNilpotent {
        what: format!("ad of {} is not nilpotent", g.show(xi)),
        steps,
    }
}

/// Endpoints `(f_0|_{t=0}, f_0|_{t=1})`, each verified Maurer–Cartan.
pub fn homotopy_faces(
    g: &LInftyAlgebra,
    h: &Homotopy,
) -> Result<(MCElement, MCElement), GaugeError> {
    if let Some(v) = h.violations(g).first() {
        return Err(GaugeError::InvalidHomotopy(format!("{v:?}")));
    }
    Ok((
        MCElement::verify(g, h.start())?,
        MCElement::verify(g, h.end())?,
    ))
}

/// A gauge element carrying the start of a homotopy to its end.
///
/// The flow `df_0/dt = [f_1, f_0] − δf_1` is linear in `f_0 + D` with `[D, x] = δx`, driven by
/// `ad f_1(t)`. Its solution is `exp(ad Ω(t))` where the Magnus generator satisfies
/// `Ω' = Σ_n (B_n/n!) ad_Ω^n f_1` (with `B_1 = −½`). `Ω` is found by Picard iteration with
/// exact polynomial integration, which stabilizes because all brackets are nilpotent.
pub fn gauge_from_homotopy(g: &LInftyAlgebra, h: &Homotopy) -> Result<Vector, GaugeError> {
    require_dg_lie(g)?;
    if let Some(v) = h.violations(g).first() {
        return Err(GaugeError::InvalidHomotopy(format!("{v:?}")));
    }
    let cap = step_cap(g);
    let bern = bernoulli_numbers(cap + 1);
    let coeff = |n: usize| -> Rational {
        bern.get(n).cloned().unwrap_or_else(Rational::zero) * inv_factorial(n)
    };
    let mut omega = PolynomialPath::zero();
    let mut stable = false;
    for _ in 0..=cap + h.f1.t_degree() + 1 {
        let mut integrand = PolynomialPath::zero();
        let mut term = h.f1.clone();
        let mut n = 0;
        while !term.is_zero() {
            if n > cap {
                return Err(GaugeError::NotNilpotent {
                    what: "Magnus series".into(),
                    steps: cap,
                });
            }
            integrand = integrand.plus(&term.scaled(&coeff(n)));
            term = PolynomialPath::bracket(g, &[&omega, &term]);
            n += 1;
        }
        let next = integrand.integral();
        if next == omega {
            stable = true;
            break;
        }
        omega = next;
    }
    if !stable {
        return Err(GaugeError::NotNilpotent {
            what: "Picard iteration for the Magnus generator".into(),
            steps: cap,
        });
    }
    let xi = omega.eval(&Rational::from_integer(1.into()));
    let reached = gauge_act_unchecked(g, &xi, &h.start())?;
    let miss = reached.minus(&h.end());
    if !miss.is_zero() {
        return Err(GaugeError::MagnusResidual {
            residual: g.show(&miss),
        });
    }
    Ok(xi)
}
