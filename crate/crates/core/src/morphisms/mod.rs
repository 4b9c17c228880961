//! Strict filtered morphisms of L∞ algebras and the comparison theorems that can be checked
//! stage by stage on finite truncations.

mod goldman_millson;
mod stagewise;
mod twisting;

use std::fmt;

use thiserror::Error;

use crate::exactlin::{LinAlgError, LinearMap, Vector};
use crate::filtered::{truncate, truncation_indices, FilteredError};
use crate::linf::{for_each_tuple, LInftyAlgebra, LinfError};
use crate::mc::McError;

pub use goldman_millson::{
    goldman_millson_check, BranchCorrespondence, GoldmanMillsonReport, OrderComparison,
};
pub use stagewise::{
    induced_cohomology, stagewise_quasi_iso, Stage, StageReport, StagewiseReport,
    InducedCohomology,
};
pub use twisting::{twist_pushforward_check, TwistPushforwardReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("malformed morphism: {0}")]
    Malformed(String),
    #[error(transparent)]
    Linf(#[from] LinfError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Filtered(#[from] FilteredError),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    Gauge(#[from] crate::gauge::GaugeError),
}

/// A strict morphism `f: 𝔤 → 𝔥` given by the images of the basis of `𝔤`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredMorphism {
    pub source: LInftyAlgebra,
    pub target: LInftyAlgebra,
    pub map: LinearMap,
}

impl FilteredMorphism {
    pub fn new(
        source: LInftyAlgebra,
        target: LInftyAlgebra,
        images: Vec<Vector>,
    ) -> Result<Self, MorphismError> {
        let map = LinearMap::new(source.space.clone(), target.space.clone(), 0, images)?;
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: &LInftyAlgebra) -> Self {
        Self {
            source: g.clone(),
            target: g.clone(),
            map: LinearMap::identity(g.space.clone()),
        }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.map.apply(v)
    }

    /// The induced morphism `𝔤/F_r → 𝔥/F_r`.
    pub fn truncated(&self, r: u32) -> Result<Self, MorphismError> {
        let source = truncate(&self.source, r)?;
        let target = truncate(&self.target, r)?;
        Ok(self.restricted(source, target, r))
    }

    fn restricted(&self, source: LInftyAlgebra, target: LInftyAlgebra, r: u32) -> Self {
        let keep_s = truncation_indices(&self.source, r);
        let keep_t = truncation_indices(&self.target, r);
        let mut pos = vec![None; self.target.dim()];
        for (k, &i) in keep_t.iter().enumerate() {
            pos[i] = Some(k);
        }
        let columns = keep_s
            .iter()
            .map(|&i| self.map.columns[i].reindex(|j| pos[j]))
            .collect();
        let map = LinearMap {
            source: source.space.clone(),
            target: target.space.clone(),
            shift: 0,
            columns,
        };
        Self {
            source,
            target,
            map,
        }
    }

    /// The same linear map between other algebra structures on the same spaces.
    pub fn with_algebras(&self, source: LInftyAlgebra, target: LInftyAlgebra) -> Self {
        Self {
            source,
            target,
            map: self.map.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    Weight {
        input: String,
        image: String,
    },
    Bracket {
        inputs: String,
        image_of_bracket: String,
        bracket_of_images: String,
    },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Weight { input, image } => {
                write!(f, "f({input}) = {image} has a component of lower weight")
            }
            Self::Bracket {
                inputs,
                image_of_bracket,
                bracket_of_images,
            } => write!(
                f,
                "f(l({inputs})) = {image_of_bracket} but l(f({inputs})) = {bracket_of_images}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub arity_bound: usize,
    pub tuples_checked: usize,
    pub violations: Vec<MorphismViolation>,
}

impl MorphismReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f ∘ l_k = l_k ∘ f^{⊗k}` on canonical basis tuples of arity `≤ arity_bound` and that
/// `f` does not lower weight.
pub fn verify_morphism(f: &FilteredMorphism, arity_bound: usize) -> MorphismReport {
    let (g, h) = (&f.source, &f.target);
    let mut violations = Vec::new();
    for i in 0..g.dim() {
        let w = g.space.weight(i);
        let img = &f.map.columns[i];
        if img.support().any(|j| h.space.weight(j) < w) {
            violations.push(MorphismViolation::Weight {
                input: g.space.id(i).to_string(),
                image: h.show(img),
            });
        }
    }
    let mut tuples_checked = 0;
    let top = arity_bound.min(g.max_arity().max(h.max_arity()));
    for k in 1..=top {
        for_each_tuple(g, k, |t| {
            tuples_checked += 1;
            let lhs = if k <= g.max_arity() {
                f.apply(&g.bracket_basis(t))
            } else {
                Vector::zero()
            };
            let images: Vec<&Vector> = t.iter().map(|&i| &f.map.columns[i]).collect();
            let rhs = h.eval_unchecked(&images);
            if lhs != rhs {
                violations.push(MorphismViolation::Bracket {
                    inputs: g.ids(t),
                    image_of_bracket: h.show(&lhs),
                    bracket_of_images: h.show(&rhs),
                });
            }
        });
    }
    MorphismReport {
        arity_bound,
        tuples_checked,
        violations,
    }
}
