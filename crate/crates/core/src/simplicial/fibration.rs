//! Lifting Maurer–Cartan elements and 1-simplices along a stagewise surjection.

use super::SimplicialError;
use crate::exactlin::{elim, span_rank, Rational, Vector};
use crate::filtered::{check_filtration, truncation_projection, CoefficientAlgebra};
use crate::gauge::{moduli_set, Homotopy, ModuliReport, PolynomialPath};
use crate::linf::LInftyAlgebra;
use crate::mc::{mc_residual, MCElement};
use crate::morphisms::{verify_morphism, FilteredMorphism};

/// Ranks at one weight for the lifting problem `ε ↦ (gr_w l_1 ε, gr_w f ε)` on degree-1
/// elements of weight `w`.
///
/// The image always lies in `P_w = {(a, b) ∈ gr_w 𝔤² ⊕ gr_w 𝔥¹ : f(a) = l_1(b)}`. When the map
/// is onto `P_w` for every weight, every Maurer–Cartan element of the target lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightStep {
    pub weight: u32,
    /// `dim gr_w 𝔥` in each degree against the rank of `gr_w f` there.
    pub graded_surjective: bool,
    pub fiber_dim: usize,
    pub rank: usize,
}

impl WeightStep {
    pub fn onto(&self) -> bool {
        self.rank == self.fiber_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate {
    pub steps: Vec<WeightStep>,
}

impl LiftCertificate {
    /// Every Maurer–Cartan element of `𝔥/F_R` lifts.
    pub fn universal(&self) -> bool {
        self.steps.iter().all(WeightStep::onto)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McLift {
    pub target: Vector,
    pub lift: Option<Vector>,
    /// Weight at which the linear system had no solution, with the right-hand side.
    pub obstruction: Option<(u32, String)>,
}

impl McLift {
    pub fn lifted(&self) -> bool {
        self.lift.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLift {
    pub start: Vector,
    pub lift: Option<Homotopy>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationReport {
    pub truncation: u32,
    pub hypothesis_failures: Vec<String>,
    pub certificate: Option<LiftCertificate>,
    pub mc_lifts: Vec<McLift>,
    pub path_lifts: Vec<PathLift>,
}

impl FibrationReport {
    pub fn hypotheses_met(&self) -> bool {
        self.hypothesis_failures.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.hypotheses_met()
            && self.certificate.as_ref().is_some_and(LiftCertificate::universal)
            && self.mc_lifts.iter().all(McLift::lifted)
            && self.path_lifts.iter().all(|p| p.lift.is_some())
    }
}

fn of_weight_degree(g: &LInftyAlgebra, w: u32, d: i32) -> Vec<usize> {
    (0..g.dim())
        .filter(|&i| g.space.weight(i) == w && g.degree(i) == d)
        .collect()
}

fn dense(v: &Vector, rows: &[usize]) -> Vec<Rational> {
    rows.iter().map(|&r| v.coeff(r)).collect()
}

/// Columns `(gr_w l_1 e, gr_w f e)` for the degree-1 weight-`w` basis elements `e` of `𝔤`.
fn step_columns(f: &FilteredMorphism, w: u32) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<Vec<Rational>>) {
    let (g, h) = (&f.source, &f.target);
    let unknowns = of_weight_degree(g, w, 1);
    let g2 = of_weight_degree(g, w, 2);
    let h1 = of_weight_degree(h, w, 1);
    let cols = unknowns
        .iter()
        .map(|&e| {
            let mut c = dense(&g.bracket_basis(&[e]), &g2);
            c.extend(dense(&f.map.columns[e], &h1));
            c
        })
        .collect();
    (unknowns, g2, h1, cols)
}

fn transpose(cols: &[Vec<Rational>], nrows: usize) -> Vec<Vec<Rational>> {
    (0..nrows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect()
}

fn weight_step(f: &FilteredMorphism, w: u32) -> WeightStep {
    let (g, h) = (&f.source, &f.target);
    let (_, g2, h1, cols) = step_columns(f, w);
    let rank = elim::rank(transpose(&cols, g2.len() + h1.len()), cols.len());
    // P_w is the kernel of (a, b) ↦ gr_w f(a) − gr_w l_1(b) into gr_w 𝔥²
    let h2 = of_weight_degree(h, w, 2);
    let mut constraint: Vec<Vec<Rational>> = g2
        .iter()
        .map(|&a| dense(&f.map.columns[a], &h2))
        .collect();
    constraint.extend(h1.iter().map(|&b| {
        dense(&h.bracket_basis(&[b]), &h2)
            .into_iter()
            .map(|x| -x)
            .collect()
    }));
    let crank = elim::rank(transpose(&constraint, h2.len()), constraint.len());
    let fiber_dim = g2.len() + h1.len() - crank;
    let graded_surjective = h.space.degrees().into_iter().all(|d| {
        let src = of_weight_degree(g, w, d);
        let tgt = of_weight_degree(h, w, d);
        let imgs: Vec<Vector> = src
            .iter()
            .map(|&i| f.map.columns[i].filter(|j| tgt.contains(&j)))
            .collect();
        span_rank(&imgs, h.dim()) == tgt.len()
    });
    WeightStep {
        weight: w,
        graded_surjective,
        fiber_dim,
        rank,
    }
}

fn weights(f: &FilteredMorphism, truncation: u32) -> std::ops::Range<u32> {
    let low = (0..f.source.dim())
        .map(|i| f.source.space.weight(i))
        .chain((0..f.target.dim()).map(|i| f.target.space.weight(i)))
        .min()
        .unwrap_or(1);
    low..truncation
}

/// Lifts a Maurer–Cartan element `τ` of `𝔥/F_R` through a morphism of truncations, weight by
/// weight.
pub fn lift_mc_element(
    f: &FilteredMorphism,
    tau: &Vector,
    truncation: u32,
) -> Result<McLift, SimplicialError> {
    let (g, h) = (&f.source, &f.target);
    let mut lift = Vector::zero();
    for w in weights(f, truncation) {
        let curvature = mc_residual(g, &lift).map_err(crate::gauge::GaugeError::from)?;
        let defect = tau.minus(&f.apply(&lift));
        let (unknowns, g2, h1, cols) = step_columns(f, w);
        let mut rhs: Vec<Rational> = dense(&curvature, &g2).into_iter().map(|x| -x).collect();
        rhs.extend(dense(&defect, &h1));
        let rows = transpose(&cols, rhs.len());
        match elim::solve(&rows, &rhs, unknowns.len()) {
            Some(eps) => {
                for (e, c) in unknowns.iter().zip(eps) {
                    lift.add_term(*e, c);
                }
            }
            None => {
                let witness = format!(
                    "curvature {} and defect {} at weight {w}",
                    g.show(&curvature.filter(|i| g.space.weight(i) == w)),
                    h.show(&defect.filter(|i| h.space.weight(i) == w))
                );
                return Ok(McLift {
                    target: tau.clone(),
                    lift: None,
                    obstruction: Some((w, witness)),
                });
            }
        }
    }
    let residual = mc_residual(g, &lift).map_err(crate::gauge::GaugeError::from)?;
    if !residual.is_zero() || f.apply(&lift) != *tau {
        return Err(SimplicialError::Hypothesis(format!(
            "weight-by-weight lift {} does not close up",
            g.show(&lift)
        )));
    }
    Ok(McLift {
        target: tau.clone(),
        lift: Some(lift),
        obstruction: None,
    })
}

/// Lifts a homotopy in `𝔥` starting at `f(start)`: `f_1` is lifted coefficientwise through the
/// degree-0 part of `f`, then `f_0` is obtained by transporting `start` along
/// `df_0/dt = −δf_1 + [f_1, f_0]`.
pub fn lift_path(
    f: &FilteredMorphism,
    path: &Homotopy,
    start: &Vector,
) -> Result<PathLift, SimplicialError> {
    let (g, h) = (&f.source, &f.target);
    let fail = |msg: String| PathLift {
        start: start.clone(),
        lift: None,
        failure: Some(msg),
    };
    if !g.is_dg_lie() {
        return Ok(fail("path lifting by transport needs a dg Lie source".into()));
    }
    if f.apply(start) != path.start() {
        return Ok(fail(format!(
            "f({}) differs from the start of the path",
            g.show(start)
        )));
    }
    let zeros = g.space.indices_of_degree(0);
    let rows_all: Vec<usize> = (0..h.dim()).collect();
    let cols: Vec<Vec<Rational>> = zeros
        .iter()
        .map(|&i| dense(&f.map.columns[i], &rows_all))
        .collect();
    let system = transpose(&cols, rows_all.len());
    let mut f1 = PolynomialPath::zero();
    for (r, v) in path.f1.coeffs().iter().enumerate() {
        let Some(x) = elim::solve(&system, &dense(v, &rows_all), zeros.len()) else {
            return Ok(fail(format!(
                "{} has no preimage in degree 0",
                h.show(v)
            )));
        };
        let u = Vector::from_terms(zeros.iter().copied().zip(x));
        f1.add_term(r, &Rational::from_integer(1.into()), &u);
    }
    let base = PolynomialPath::constant(start.clone());
    let drift = PolynomialPath::bracket(g, &[&f1]).neg();
    let mut f0 = base.clone();
    let cap = g.dim() + path.f1.t_degree() + 3;
    let mut stable = false;
    for _ in 0..=cap {
        let rhs = drift.plus(&PolynomialPath::bracket(g, &[&f1, &f0]));
        let next = base.plus(&rhs.integral());
        if next == f0 {
            stable = true;
            break;
        }
        f0 = next;
    }
    if !stable {
        return Ok(fail("transport did not stabilize".into()));
    }
    let lifted = Homotopy { f0, f1 };
    if let Some(v) = lifted.violations(g).first() {
        return Err(SimplicialError::Hypothesis(format!(
            "transported path is not a homotopy: {v:?}"
        )));
    }
    let projected = Homotopy {
        f0: lifted.f0.map(|v| f.apply(v)),
        f1: lifted.f1.map(|v| f.apply(v)),
    };
    if projected != *path {
        return Err(SimplicialError::Hypothesis(
            "transported path does not project onto the given one".into(),
        ));
    }
    Ok(PathLift {
        start: start.clone(),
        lift: Some(lifted),
        failure: None,
    })
}

/// Checks the hypotheses of the fibration statement for `f` on `𝔤/F_R → 𝔥/F_R` and lifts the
/// given Maurer–Cartan elements and homotopies of the target.
///
/// Targets and paths are given in coordinates of the untruncated `𝔥`. Each path is lifted from
/// the lift of its starting point.
pub fn fibration_consequence_check(
    f: &FilteredMorphism,
    truncation: u32,
    targets: &[Vector],
    paths: &[Homotopy],
) -> Result<FibrationReport, SimplicialError> {
    let mut report = FibrationReport {
        truncation,
        hypothesis_failures: Vec::new(),
        certificate: None,
        mc_lifts: Vec::new(),
        path_lifts: Vec::new(),
    };
    let arity = f.source.max_arity().max(f.target.max_arity()) + 1;
    if let Some(v) = verify_morphism(f, arity).violations.first() {
        report
            .hypothesis_failures
            .push(format!("not a filtered morphism: {v}"));
    }
    for (name, g) in [("source", &f.source), ("target", &f.target)] {
        if let Some(v) = check_filtration(g).violations.first() {
            report
                .hypothesis_failures
                .push(format!("{name} is not filtered: {v}"));
        }
    }
    if !report.hypothesis_failures.is_empty() {
        return Ok(report);
    }
    let ft = f
        .truncated(truncation)
        .map_err(|e| SimplicialError::Hypothesis(e.to_string()))?;
    let steps: Vec<WeightStep> = weights(&ft, truncation)
        .map(|w| weight_step(&ft, w))
        .collect();
    for s in &steps {
        if !s.graded_surjective {
            report.hypothesis_failures.push(format!(
                "f is not surjective on the weight {} piece",
                s.weight
            ));
        }
    }
    report.certificate = Some(LiftCertificate { steps });
    if !report.hypothesis_failures.is_empty() {
        return Ok(report);
    }
    let proj = truncation_projection(&f.target, truncation);
    for tau in targets {
        let t = proj.apply(tau);
        let residual = mc_residual(&ft.target, &t).map_err(crate::gauge::GaugeError::from)?;
        if !residual.is_zero() {
            return Err(SimplicialError::Hypothesis(format!(
                "{} is not Maurer–Cartan in the target",
                ft.target.show(&t)
            )));
        }
        report.mc_lifts.push(lift_mc_element(&ft, &t, truncation)?);
    }
    for path in paths {
        let p = Homotopy {
            f0: path.f0.map(|v| proj.apply(v)),
            f1: path.f1.map(|v| proj.apply(v)),
        };
        let start = lift_mc_element(&ft, &p.start(), truncation)?;
        match start.lift {
            Some(s) => report.path_lifts.push(lift_path(&ft, &p, &s)?),
            None => report.path_lifts.push(PathLift {
                start: Vector::zero(),
                lift: None,
                failure: Some("the starting point does not lift".into()),
            }),
        }
    }
    Ok(report)
}

/// `π_0 MC_•(𝔤 ⊗ m_A)` based at `φ`, through the identification with gauge orbits.
pub fn pi0(
    g: &LInftyAlgebra,
    phi: &MCElement,
    a: &CoefficientAlgebra,
) -> Result<ModuliReport, SimplicialError> {
    Ok(moduli_set(g, phi, a)?)
}
