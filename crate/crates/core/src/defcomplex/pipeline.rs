use std::collections::BTreeMap;

use num_traits::Zero;

use super::convolution::{build_convolution, ConvolutionComplex};
use super::{DefComplexError, FiniteAlgebraData};
use crate::exactlin::{Rational, Vector};
use crate::linf::{verify_structure, StructureReport};
use crate::mc::{lift_deformation, mc_residual, DeformationLiftReport, MCElement};
use crate::tangent::{tangent_report, TangentReport};

/// `μ(μ(e_a, e_b), e_c) − μ(e_a, μ(e_b, e_c))`, keyed by `(a, b, c)`.
pub fn associator(data: &FiniteAlgebraData) -> BTreeMap<(usize, usize, usize), Vec<Rational>> {
    let d = data.dim();
    let e = |i: usize| -> Vec<Rational> {
        (0..d)
            .map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect()
    };
    let mut out = BTreeMap::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let left = data.mul(&data.mul(&e(a), &e(b)), &e(c));
                let right = data.mul(&e(a), &data.mul(&e(b), &e(c)));
                let diff: Vec<Rational> = left.iter().zip(&right).map(|(l, r)| l - r).collect();
                out.insert((a, b, c), diff);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McVerdict {
    /// Arity bound of the complex used (at least 3, where associators live).
    pub arity_bound: usize,
    pub mu: Vector,
    pub residual: Vector,
    pub residual_text: String,
    pub associative: bool,
    /// Each residual coordinate at `e_a⊗e_b⊗e_c→e_d` equals the `e_d` coordinate of the
    /// associator of `(e_a, e_b, e_c)`.
    pub residual_is_associator: bool,
}

impl McVerdict {
    pub fn is_mc(&self) -> bool {
        self.residual.is_zero()
    }
}

fn verdict_in(cx: &ConvolutionComplex) -> Result<McVerdict, DefComplexError> {
    let data = &cx.data;
    let mu = cx.product_element(data);
    let residual = mc_residual(&cx.algebra, &mu)?;
    let assoc = associator(data);
    let mut expected = Vector::zero();
    for ((a, b, c), v) in &assoc {
        for (dd, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let i = cx.index_of(&[*a, *b, *c], dd).expect("arity 3 cochain");
                expected.add_term(i, x.clone());
            }
        }
    }
    Ok(McVerdict {
        arity_bound: cx.arity_bound,
        residual_text: cx.algebra.show(&residual),
        residual_is_associator: residual == expected,
        associative: data.is_associative(),
        mu,
        residual,
    })
}

/// The Maurer–Cartan residual of the product `μ` viewed in `𝔤_1`.
pub fn structure_as_mc(
    data: &FiniteAlgebraData,
    arity_bound: usize,
) -> Result<McVerdict, DefComplexError> {
    let cx = build_convolution(data, arity_bound.max(3))?;
    verdict_in(&cx)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationReport {
    pub verdict: McVerdict,
    /// Degree and Jacobi checks of the whole complex.
    pub structure: StructureReport,
    /// Full checks, including weights, on the part of arity `≥ 2`.
    pub filtered_structure: StructureReport,
    pub degree_one_dims: Vec<(u32, usize)>,
    pub tangent: TangentReport,
    pub lift: DeformationLiftReport,
}

impl DeformationReport {
    pub fn passes(&self) -> bool {
        self.verdict.is_mc()
            && self.structure.is_algebra()
            && self.filtered_structure.passes()
            && self.tangent.passes()
    }
}

/// Twists the convolution complex by `μ` and computes the tangent data and the order-by-order
/// deformations of `μ` over `𝕂[t]/(t^n)`.
pub fn deformation_pipeline(
    data: &FiniteAlgebraData,
    arity_bound: usize,
    order: usize,
) -> Result<DeformationReport, DefComplexError> {
    let cx = build_convolution(data, arity_bound.max(3))?;
    let verdict = verdict_in(&cx)?;
    if !verdict.is_mc() {
        return Err(DefComplexError::Data(format!(
            "the product is not associative: residual {}",
            verdict.residual_text
        )));
    }
    let phi = MCElement::verify(&cx.algebra, verdict.mu.clone())?;
    let structure = verify_structure(&cx.algebra, 3);
    let filtered_structure = verify_structure(&cx.filtered_part(), 3);
    let tangent = tangent_report(&cx.algebra, &phi)?;
    let lift = lift_deformation(&cx.algebra, &phi, order.max(2))?;
    Ok(DeformationReport {
        verdict,
        structure,
        filtered_structure,
        degree_one_dims: cx.degree_one_quotient_dims(),
        tangent,
        lift,
    })
}
