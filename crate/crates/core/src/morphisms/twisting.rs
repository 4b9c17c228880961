//! Pushing Maurer–Cartan elements forward and comparing the twisted algebras.

use super::stagewise::{stagewise_quasi_iso, StagewiseReport};
use super::{verify_morphism, FilteredMorphism, MorphismError, MorphismReport};
use crate::exactlin::Vector;
use crate::filtered::{check_filtration, truncation_projection};
use crate::mc::{mc_residual, twist_unchecked};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistPushforwardReport {
    pub truncation: u32,
    /// Hypotheses that fail; consequences are still computed where they make sense.
    pub hypothesis_failures: Vec<String>,
    pub phi_residual: Vector,
    pub image: Vector,
    /// Maurer–Cartan residual of `f(φ)` in the target.
    pub image_residual: Vector,
    /// `F(f(φ)) = f(F(φ))`.
    pub functorial: bool,
    pub twisted_morphism: MorphismReport,
    pub twisted_filtered: bool,
    pub twisted_stagewise: StagewiseReport,
}

impl TwistPushforwardReport {
    pub fn hypotheses_met(&self) -> bool {
        self.hypothesis_failures.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.hypotheses_met()
            && self.image_residual.is_zero()
            && self.functorial
            && self.twisted_morphism.passes()
            && self.twisted_filtered
            && self.twisted_stagewise.passes()
    }
}

/// Checks that `f` sends `φ` to a Maurer–Cartan element and induces a stagewise
/// quasi-isomorphism `(𝔤/F_R)^φ → (𝔥/F_R)^{f(φ)}`.
pub fn twist_pushforward_check(
    f: &FilteredMorphism,
    phi: &Vector,
    truncation: u32,
) -> Result<TwistPushforwardReport, MorphismError> {
    let arity = f.source.max_arity().max(f.target.max_arity()) + 1;
    let mut hypothesis_failures = Vec::new();
    let base = verify_morphism(f, arity);
    if let Some(v) = base.violations.first() {
        hypothesis_failures.push(format!("not a filtered morphism: {v}"));
    }
    let ft = f.truncated(truncation)?;
    let proj = truncation_projection(&f.source, truncation);
    let phi_t = proj.apply(phi);
    let phi_residual = mc_residual(&ft.source, &phi_t)?;
    if !phi_residual.is_zero() {
        hypothesis_failures.push(format!(
            "φ is not Maurer–Cartan: residual {}",
            ft.source.show(&phi_residual)
        ));
    }
    if base.passes() {
        let st = stagewise_quasi_iso(&ft, truncation)?;
        if !st.passes() {
            hypothesis_failures.push("f is not a stagewise quasi-isomorphism".into());
        }
    }
    let image = ft.apply(&phi_t);
    let image_residual = mc_residual(&ft.target, &image)?;
    let functorial = image_residual == ft.apply(&phi_residual);
    let tw_s = twist_unchecked(&ft.source, &phi_t);
    let tw_t = twist_unchecked(&ft.target, &image);
    let twisted_filtered = check_filtration(&tw_s).passes() && check_filtration(&tw_t).passes();
    let twisted = ft.with_algebras(tw_s, tw_t);
    let twisted_morphism = verify_morphism(&twisted, arity);
    let twisted_stagewise = stagewise_quasi_iso(&twisted, truncation)?;
    Ok(TwistPushforwardReport {
        truncation,
        hypothesis_failures,
        phi_residual,
        image,
        image_residual,
        functorial,
        twisted_morphism,
        twisted_filtered,
        twisted_stagewise,
    })
}
