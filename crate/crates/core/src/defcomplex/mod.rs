//! The Hochschild-type convolution dg Lie algebra `⊕_s Hom(X^{⊗(s+1)}, X)` of a
//! finite-dimensional vector space `X`, whose Maurer–Cartan elements of weight 1 are the
//! associative products on `X`.

mod convolution;
mod pipeline;

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{LinAlgError, Rational};
use crate::linf::LinfError;
use crate::mc::McError;
use crate::tangent::TangentError;

pub use convolution::{build_convolution, build_convolution_with_budget, Cochain, ConvolutionComplex, DEFAULT_BUDGET};
pub use pipeline::{associator, deformation_pipeline, structure_as_mc, DeformationReport, McVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefComplexError {
    #[error("invalid algebra data: {0}")]
    Data(String),
    #[error("arity bound {0} is below 2")]
    ArityBound(usize),
    #[error("convolution complex would have {needed} basis elements, above the budget of {budget}")]
    Budget { needed: usize, budget: usize },
    #[error(transparent)]
    Linf(#[from] LinfError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    Tangent(#[from] TangentError),
}

/// Structure constants of a product on `X = 𝕂^d`, concentrated in degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebraData {
    pub names: Vec<String>,
    /// `products[a][b][c]` is the coefficient of `e_c` in `μ(e_a, e_b)`.
    pub products: Vec<Vec<Vec<Rational>>>,
}

impl FiniteAlgebraData {
    pub fn new(names: Vec<String>, products: Vec<Vec<Vec<Rational>>>) -> Result<Self, DefComplexError> {
        let d = names.len();
        if d == 0 {
            return Err(DefComplexError::Data("X must have positive dimension".into()));
        }
        let shape_ok = products.len() == d
            && products
                .iter()
                .all(|row| row.len() == d && row.iter().all(|v| v.len() == d));
        if !shape_ok {
            return Err(DefComplexError::Data(format!(
                "structure constants must form a {d}×{d}×{d} array"
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(DefComplexError::Data(format!("duplicate basis name `{n}`")));
            }
        }
        Ok(Self { names, products })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// `μ(x, y)` on coordinate vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for a in 0..d {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if y[b].is_zero() {
                    continue;
                }
                let s = &x[a] * &y[b];
                for (c, o) in out.iter_mut().enumerate() {
                    *o += &s * &self.products[a][b][c];
                }
            }
        }
        out
    }

    /// Brute-force associativity on basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let e = |i: usize| -> Vec<Rational> {
            (0..d)
                .map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() })
                .collect()
        };
        (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|c| {
                    self.mul(&self.mul(&e(a), &e(b)), &e(c)) == self.mul(&e(a), &self.mul(&e(b), &e(c)))
                })
            })
        })
    }

    pub fn zero(names: Vec<String>) -> Self {
        let d = names.len();
        Self {
            names,
            products: vec![vec![vec![Rational::zero(); d]; d]; d],
        }
    }

    /// `𝕂^d` with the coordinatewise product.
    pub fn diagonal(d: usize) -> Self {
        let mut a = Self::zero((0..d).map(|i| format!("e{i}")).collect());
        for i in 0..d {
            a.products[i][i][i] = Rational::from_integer(1.into());
        }
        a
    }

    /// `𝕂[ε]/(ε²)` on the basis `1, ε`.
    pub fn dual_numbers() -> Self {
        let one = Rational::from_integer(1.into());
        let mut a = Self::zero(vec!["1".into(), "ε".into()]);
        a.products[0][0][0] = one.clone();
        a.products[0][1][1] = one.clone();
        a.products[1][0][1] = one;
        a
    }
}
