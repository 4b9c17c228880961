use std::collections::BTreeSet;
use std::fmt;

use super::sign::odd;
use super::LInftyAlgebra;
use crate::exactlin::Vector;

/// Calls `f(subset, rest)` for every `(i, k−i)` unshuffle of `0..k`, with both parts increasing.
pub(crate) fn for_each_unshuffle(k: usize, i: usize, mut f: impl FnMut(&[usize], &[usize])) {
    let mut chosen = Vec::with_capacity(i);
    let mut rest = Vec::with_capacity(k - i);
    fn rec(
        pos: usize,
        k: usize,
        i: usize,
        chosen: &mut Vec<usize>,
        rest: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize], &[usize]),
    ) {
        if pos == k {
            if chosen.len() == i {
                f(chosen, rest);
            }
            return;
        }
        if chosen.len() < i {
            chosen.push(pos);
            rec(pos + 1, k, i, chosen, rest, f);
            chosen.pop();
        }
        if rest.len() < k - i {
            rest.push(pos);
            rec(pos + 1, k, i, chosen, rest, f);
            rest.pop();
        }
    }
    rec(0, k, i, &mut chosen, &mut rest, &mut f);
}

/// Parity of `ε(i) = i + Σ (|x_a||x_b| + 1)` over the pairs inverted by the unshuffle.
fn epsilon_odd(i: usize, chosen: &[usize], rest: &[usize], degrees: &[i32]) -> bool {
    let mut e = i % 2 == 1;
    for &b in chosen {
        for &a in rest {
            if a < b {
                e ^= !(odd(degrees[a]) && odd(degrees[b]));
            }
        }
    }
    e
}

/// The generalized Jacobi expression on homogeneous arguments with the given degrees.
pub fn jacobi_residual_vectors(g: &LInftyAlgebra, args: &[&Vector], degrees: &[i32]) -> Vector {
    let k = args.len();
    let kmax = g.brackets.effective_arity();
    let mut out = Vector::zero();
    for i in 1..=k {
        let j = k - i + 1;
        if i > kmax || j > kmax {
            continue;
        }
        for_each_unshuffle(k, i, |chosen, rest| {
            let inner_args: Vec<&Vector> = chosen.iter().map(|&p| args[p]).collect();
            let inner = g.eval_unchecked(&inner_args);
            if inner.is_zero() {
                return;
            }
            let mut outer_args: Vec<&Vector> = Vec::with_capacity(j);
            outer_args.push(&inner);
            outer_args.extend(rest.iter().map(|&p| args[p]));
            let term = g.eval_unchecked(&outer_args);
            if epsilon_odd(i, chosen, rest, degrees) {
                out.sub_assign(&term);
            } else {
                out.add_assign(&term);
            }
        });
    }
    out
}

/// The generalized Jacobi expression on a tuple of basis elements.
pub fn jacobi_residual(g: &LInftyAlgebra, args: &[usize]) -> Vector {
    let vs: Vec<Vector> = args.iter().map(|&i| Vector::basis(i)).collect();
    let refs: Vec<&Vector> = vs.iter().collect();
    let degrees: Vec<i32> = args.iter().map(|&i| g.degree(i)).collect();
    jacobi_residual_vectors(g, &refs, &degrees)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A table entry whose output has the wrong degree.
    Degree {
        arity: usize,
        inputs: String,
        component: String,
        expected: i32,
        found: i32,
    },
    /// A table entry whose output does not raise the filtration weight as required.
    Weight {
        arity: usize,
        inputs: String,
        component: String,
        required: u32,
        found: u32,
    },
    /// A nonzero generalized Jacobi expression.
    Jacobi {
        arity: usize,
        inputs: String,
        residual: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree {
                arity,
                inputs,
                component,
                expected,
                found,
            } => write!(
                f,
                "degree: l_{arity}({inputs}) has component {component} of degree {found}, expected {expected}"
            ),
            Violation::Weight {
                arity,
                inputs,
                component,
                required,
                found,
            } => write!(
                f,
                "weight: l_{arity}({inputs}) has component {component} of weight {found}, required at least {required}"
            ),
            Violation::Jacobi {
                arity,
                inputs,
                residual,
            } => write!(f, "jacobi: arity {arity} on ({inputs}) leaves {residual}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub arity_bound: usize,
    pub tuples_checked: usize,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    /// Passes when weight violations are ignored.
    pub fn is_algebra(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, Violation::Weight { .. }))
    }
}

/// Degree violations of every table entry: `l_k` must have degree `2 − k`.
pub fn degree_violations(g: &LInftyAlgebra) -> Vec<Violation> {
    let mut out = Vec::new();
    for (k, tuple, v) in g.brackets.iter() {
        let expected = tuple.iter().map(|&i| g.degree(i)).sum::<i32>() + 2 - k as i32;
        for i in v.support() {
            if g.degree(i) != expected {
                out.push(Violation::Degree {
                    arity: k,
                    inputs: g.ids(tuple),
                    component: g.space.id(i).to_string(),
                    expected,
                    found: g.degree(i),
                });
            }
        }
    }
    out
}

/// Weight violations: `l_1` must not lower weight, and `l_k` for `k ≥ 2` must land at weight
/// at least one more than the largest input weight.
pub fn weight_violations(g: &LInftyAlgebra) -> Vec<Violation> {
    let mut out = Vec::new();
    for (k, tuple, v) in g.brackets.iter() {
        let max_in = tuple.iter().map(|&i| g.space.weight(i)).max().unwrap_or(0);
        let required = if k == 1 { max_in } else { max_in + 1 };
        for i in v.support() {
            if g.space.weight(i) < required {
                out.push(Violation::Weight {
                    arity: k,
                    inputs: g.ids(tuple),
                    component: g.space.id(i).to_string(),
                    required,
                    found: g.space.weight(i),
                });
            }
        }
    }
    out
}

/// Visits every non-decreasing tuple of basis indices of length `k` that does not repeat an
/// even element (the others vanish by antisymmetry).
pub(crate) fn for_each_tuple(g: &LInftyAlgebra, k: usize, mut f: impl FnMut(&[usize])) {
    let n = g.dim();
    let mut t = Vec::with_capacity(k);
    fn rec(
        g: &LInftyAlgebra,
        n: usize,
        k: usize,
        t: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if t.len() == k {
            f(t);
            return;
        }
        let start = t.last().copied().unwrap_or(0);
        for i in start..n {
            if t.last() == Some(&i) && !odd(g.degree(i)) {
                continue;
            }
            t.push(i);
            rec(g, n, k, t, f);
            t.pop();
        }
    }
    rec(g, n, k, &mut t, &mut f);
}

/// Checks degrees and weights of the table and the generalized Jacobi identities on all
/// canonical basis tuples of arity `≤ arity_bound`.
pub fn verify_structure(g: &LInftyAlgebra, arity_bound: usize) -> StructureReport {
    let mut violations = degree_violations(g);
    let degrees_ok = violations.is_empty();
    violations.extend(weight_violations(g));
    let degrees: BTreeSet<i32> = g.space.degrees().into_iter().collect();
    let kmax = g.brackets.effective_arity();
    let mut tuples_checked = 0;
    for k in 1..=arity_bound {
        // every composite l_j ∘ l_i needs i, j ≤ K, so i + j − 1 = k ≤ 2K − 1
        if kmax == 0 || k > 2 * kmax - 1 {
            break;
        }
        for_each_tuple(g, k, |t| {
            let target = t.iter().map(|&i| g.degree(i)).sum::<i32>() + 3 - k as i32;
            if degrees_ok && !degrees.contains(&target) {
                return;
            }
            tuples_checked += 1;
            let r = jacobi_residual(g, t);
            if !r.is_zero() {
                violations.push(Violation::Jacobi {
                    arity: k,
                    inputs: g.ids(t),
                    residual: g.show(&r),
                });
            }
        });
    }
    StructureReport {
        arity_bound,
        tuples_checked,
        violations,
    }
}
