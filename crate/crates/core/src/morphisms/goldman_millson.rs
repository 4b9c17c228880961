//! Finite-order evidence that a filtered quasi-isomorphism induces a bijection of
//! Maurer–Cartan moduli: the `H¹` isomorphism over dual numbers and the correspondence of lifts
//! and obstructions over `𝕂[t]/(t^n)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::stagewise::{induced_cohomology, stagewise_quasi_iso, InducedCohomology};
use super::{verify_morphism, FilteredMorphism, MorphismError};
use crate::exactlin::elim;
use crate::exactlin::{cohomology_of, CohomologyResult, Rational, Vector};
use crate::filtered::check_filtration;
use crate::linf::LInftyAlgebra;
use crate::mc::{lift_branch, lift_deformation, obstruction_at, MCElement, QuadraticObstruction};

/// How one lifting branch behaves on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCorrespondence {
    /// `true` for a branch started in the source and pushed forward, `false` for a branch
    /// started from a target class and pulled back through `H¹`.
    pub forward: bool,
    /// Index of the `H¹` basis class the branch starts from (source or target basis).
    pub class: usize,
    pub source_obstructed_at: Option<usize>,
    pub target_obstructed_at: Option<usize>,
    /// The pushed-forward terms satisfy the target curvature equations up to the order reached.
    pub pushforward_valid: bool,
    /// Obstruction classes are related by `H²(f)`.
    pub classes_correspond: bool,
}

impl BranchCorrespondence {
    pub fn consistent(&self) -> bool {
        self.pushforward_valid
            && self.classes_correspond
            && self.source_obstructed_at == self.target_obstructed_at
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComparison {
    /// Coefficients `𝕂[t]/(t^n)`.
    pub n: usize,
    pub h2: InducedCohomology,
    /// `H²(f) ∘ Q_𝔤 = Q_𝔥 ∘ H¹(f)` for the order-2 obstruction maps; present when `n ≥ 3`.
    pub quadratic_intertwined: Option<bool>,
    pub branches: Vec<BranchCorrespondence>,
}

impl OrderComparison {
    pub fn passes(&self) -> bool {
        self.h2.is_iso()
            && self.quadratic_intertwined != Some(false)
            && self.branches.iter().all(BranchCorrespondence::consistent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldmanMillsonReport {
    pub truncation: u32,
    pub max_order: usize,
    pub hypothesis_failures: Vec<String>,
    /// `H¹(𝔤/F_R) → H¹(𝔥/F_R)`.
    pub h1: Option<InducedCohomology>,
    /// Order-1 deformations modulo gauge, computed directly on each side.
    pub first_order_dims: Option<(usize, usize)>,
    pub orders: Vec<OrderComparison>,
}

impl GoldmanMillsonReport {
    pub fn hypotheses_met(&self) -> bool {
        self.hypothesis_failures.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.hypotheses_met()
            && self.h1.as_ref().is_some_and(InducedCohomology::is_iso)
            && self.first_order_dims.is_some_and(|(a, b)| a == b)
            && self.orders.iter().all(OrderComparison::passes)
    }
}

fn nonnegative(g: &LInftyAlgebra) -> bool {
    (0..g.dim()).all(|i| g.degree(i) >= 0)
}

/// Compares Maurer–Cartan deformation data of `𝔤/F_R` and `𝔥/F_R` at the base point 0 over
/// `𝕂[t]/(t^n)` for `2 ≤ n ≤ max_order`.
pub fn goldman_millson_check(
    f: &FilteredMorphism,
    truncation: u32,
    max_order: usize,
) -> Result<GoldmanMillsonReport, MorphismError> {
    let mut report = GoldmanMillsonReport {
        truncation,
        max_order,
        hypothesis_failures: Vec::new(),
        h1: None,
        first_order_dims: None,
        orders: Vec::new(),
    };
    let arity = f.source.max_arity().max(f.target.max_arity()) + 1;
    let m = verify_morphism(f, arity);
    if let Some(v) = m.violations.first() {
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
        if !nonnegative(g) {
            report
                .hypothesis_failures
                .push(format!("{name} has basis elements of negative degree"));
        }
    }
    if !report.hypothesis_failures.is_empty() {
        return Ok(report);
    }
    let ft = f.truncated(truncation)?;
    if !stagewise_quasi_iso(&ft, truncation)?.passes() {
        report
            .hypothesis_failures
            .push("f is not a stagewise quasi-isomorphism".into());
        return Ok(report);
    }
    let (g, h) = (&ft.source, &ft.target);
    let (dg, dh) = (g.differential(), h.differential());
    let h1 = induced_cohomology(&dg, &dh, &ft.map, 1)?;
    let zero = MCElement::zero();
    let first_g = lift_deformation(g, &zero, 2)?.first_order;
    let first_h = lift_deformation(h, &zero, 2)?.first_order;
    report.first_order_dims = Some((first_g.mod_gauge_dim(), first_h.mod_gauge_dim()));
    let h1_g = cohomology_of(&dg, 1)?;
    let h1_h = cohomology_of(&dh, 1)?;
    for n in 2..=max_order.max(2) {
        report
            .orders
            .push(compare_order(&ft, &h1, &h1_g, &h1_h, n)?);
    }
    report.h1 = Some(h1);
    Ok(report)
}

fn compare_order(
    f: &FilteredMorphism,
    h1: &InducedCohomology,
    h1_g: &CohomologyResult,
    h1_h: &CohomologyResult,
    n: usize,
) -> Result<OrderComparison, MorphismError> {
    let (g, h) = (&f.source, &f.target);
    let (dg, dh) = (g.differential(), h.differential());
    let zero = MCElement::zero();
    let lg = lift_deformation(g, &zero, n)?;
    let lh = lift_deformation(h, &zero, n)?;
    let h2 = induced_cohomology(&dg, &dh, &f.map, 2)?;
    let quadratic_intertwined = match (&lg.quadratic, &lh.quadratic) {
        (Some(qg), Some(qh)) => Some(intertwined(qg, qh, &h1.matrix, &h2.matrix)),
        _ => None,
    };
    let class_h2 = |v: &Vector| lh.h2.class_of(v);
    let mut branches = Vec::new();
    for (i, bg) in lg.branches.iter().enumerate() {
        let pushed: Vec<Vector> = bg.terms.iter().map(|v| f.apply(v)).collect();
        let (valid, tgt_obs, correspond) = match &bg.obstruction {
            None => (obstruction_at(h, &pushed).is_ok(), None, true),
            Some(o) => {
                let image = obstruction_at(h, &pushed);
                let valid = image.as_ref().is_ok_and(|v| *v == f.apply(&o.cocycle));
                let class = image.ok().and_then(|v| class_h2(&v));
                let expected = apply_matrix(&h2.matrix, &o.class, h2.target_dim);
                let obstructed = class.as_ref().is_some_and(|c| c.iter().any(|x| !x.is_zero()));
                (
                    valid,
                    obstructed.then_some(o.order),
                    class.as_deref() == Some(expected.as_slice()),
                )
            }
        };
        branches.push(BranchCorrespondence {
            forward: true,
            class: i,
            source_obstructed_at: bg.obstruction.as_ref().map(|o| o.order),
            target_obstructed_at: tgt_obs,
            pushforward_valid: valid,
            classes_correspond: correspond,
        });
    }
    // every target class comes from a source class; its branch must behave the same way
    for (a, bh) in lh.branches.iter().enumerate() {
        let Some(c) = preimage(&h1.matrix, a, h1.target_dim) else {
            branches.push(BranchCorrespondence {
                forward: false,
                class: a,
                source_obstructed_at: None,
                target_obstructed_at: bh.obstruction.as_ref().map(|o| o.order),
                pushforward_valid: false,
                classes_correspond: false,
            });
            continue;
        };
        let z = h1_g.lift_class(&c);
        let bg = lift_branch(g, &dg, &lg.h2, &z, n)?;
        let pushed: Vec<Vector> = bg.terms.iter().map(|v| f.apply(v)).collect();
        let valid = obstruction_at(h, &pushed).is_ok();
        // the order-2 obstruction class only depends on the H¹ class of the first term
        let correspond = if n >= 3 {
            let own = obstruction_at(h, &[h1_h.representatives[a].clone()])?;
            let via = obstruction_at(h, &pushed[..1])?;
            class_h2(&own) == class_h2(&via)
        } else {
            true
        };
        let src = bg.obstruction.as_ref().map(|o| o.order);
        let tgt = bh.obstruction.as_ref().map(|o| o.order);
        // beyond order 2 the branches depend on choices, so only order-2 status is compared
        let (src, tgt) = if src == Some(2) || tgt == Some(2) {
            (src.filter(|&k| k == 2), tgt.filter(|&k| k == 2))
        } else {
            (None, None)
        };
        branches.push(BranchCorrespondence {
            forward: false,
            class: a,
            source_obstructed_at: src,
            target_obstructed_at: tgt,
            pushforward_valid: valid,
            classes_correspond: correspond,
        });
    }
    Ok(OrderComparison {
        n,
        h2,
        quadratic_intertwined,
        branches,
    })
}

/// `Σ_j coords[j] · matrix[j]`.
fn apply_matrix(matrix: &[Vec<Rational>], coords: &[Rational], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (c, col) in coords.iter().zip(matrix) {
        for (o, x) in out.iter_mut().zip(col) {
            *o += c * x;
        }
    }
    out
}

/// Source coordinates `c` with `Σ_j c_j matrix[j] = e_a`.
fn preimage(matrix: &[Vec<Rational>], a: usize, dim: usize) -> Option<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|p| matrix.iter().map(|col| col[p].clone()).collect())
        .collect();
    let b: Vec<Rational> = (0..dim)
        .map(|p| if p == a { Rational::one() } else { Rational::zero() })
        .collect();
    elim::solve(&rows, &b, matrix.len())
}

type Quadric = BTreeMap<(usize, usize), Rational>;

fn add_quadric(q: &mut Quadric, i: usize, j: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    let key = (i.min(j), i.max(j));
    let e = q.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        q.remove(&key);
    }
}

/// Compares `H²(f)(Q_𝔤(c))` with `Q_𝔥(H¹(f) c)` as quadratic forms in `c`.
fn intertwined(
    qg: &QuadraticObstruction,
    qh: &QuadraticObstruction,
    m1: &[Vec<Rational>],
    m2: &[Vec<Rational>],
) -> bool {
    for p in 0..qh.h2_dim {
        let mut lhs = Quadric::new();
        for (q, form) in qg.coefficients.iter().enumerate() {
            let scale = &m2[q][p];
            if scale.is_zero() {
                continue;
            }
            for (&(i, j), c) in form {
                add_quadric(&mut lhs, i, j, scale * c);
            }
        }
        let mut rhs = Quadric::new();
        for (&(a, b), c) in &qh.coefficients[p] {
            for (i, col_i) in m1.iter().enumerate() {
                for (j, col_j) in m1.iter().enumerate() {
                    add_quadric(&mut rhs, i, j, c * &col_i[a] * &col_j[b]);
                }
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}
