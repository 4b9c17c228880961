use std::collections::BTreeSet;

use super::{MCElement, McError};
use crate::exactlin::{inv_factorial, LinearMap, Vector};
use crate::linf::{for_each_tuple, LInftyAlgebra};

/// The twisted algebra `𝔤^φ` together with its base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedAlgebra {
    pub algebra: LInftyAlgebra,
    pub phi: Vector,
}

/// `l_k^φ(x_1, …, x_k) = Σ_{i ≥ 0} (1/i!) l_{i+k}(φ, …, φ, x_1, …, x_k)`.
pub fn twist(g: &LInftyAlgebra, phi: &MCElement) -> Result<TwistedAlgebra, McError> {
    // re-verify so that a stale element cannot be used with another algebra
    let phi = MCElement::verify(g, phi.value().clone())?;
    Ok(TwistedAlgebra {
        algebra: twist_unchecked(g, phi.value()),
        phi: phi.into_value(),
    })
}

/// The twist formula applied to any degree-1 `φ`, with no Maurer–Cartan requirement.
pub(crate) fn twist_unchecked(g: &LInftyAlgebra, phi: &Vector) -> LInftyAlgebra {
    let kmax = g.brackets.effective_arity();
    let mut out = LInftyAlgebra::new(g.space.clone(), g.max_arity());
    if phi.is_zero() {
        out.brackets = g.brackets.clone();
        return out;
    }
    let degrees: BTreeSet<i32> = g.space.degrees().into_iter().collect();
    for k in 1..=kmax {
        for_each_tuple(g, k, |t| {
            let target = t.iter().map(|&i| g.degree(i)).sum::<i32>() + 2 - k as i32;
            if !degrees.contains(&target) {
                return;
            }
            let basis: Vec<Vector> = t.iter().map(|&i| Vector::basis(i)).collect();
            let mut value = Vector::zero();
            for i in 0..=(kmax - k) {
                let mut args: Vec<&Vector> = vec![phi; i];
                args.extend(basis.iter());
                let term = g.eval_unchecked(&args);
                if !term.is_zero() {
                    value.add_scaled(&inv_factorial(i), &term);
                }
            }
            if !value.is_zero() {
                out.set_bracket(t, value).expect("canonical tuple");
            }
        });
    }
    out
}

/// `d_φ(x) = l_1(x) + Σ_{k ≥ 1} (1/k!) l_{k+1}(φ, …, φ, x)`, evaluated column by column.
pub fn twisted_differential(g: &LInftyAlgebra, phi: &Vector) -> LinearMap {
    let kmax = g.brackets.effective_arity();
    let columns = (0..g.dim())
        .map(|j| {
            let e = Vector::basis(j);
            let mut v = Vector::zero();
            for k in 0..kmax {
                let mut args: Vec<&Vector> = vec![phi; k];
                args.push(&e);
                let term = g.eval_unchecked(&args);
                if !term.is_zero() {
                    v.add_scaled(&inv_factorial(k), &term);
                }
            }
            v
        })
        .collect();
    LinearMap {
        source: g.space.clone(),
        target: g.space.clone(),
        shift: 1,
        columns,
    }
}
