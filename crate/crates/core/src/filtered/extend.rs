//! Extension of scalars `𝔤 ⊗ A` by a graded commutative algebra.
//!
//! On pure tensors `l_k(x_1⊗a_1, …, x_k⊗a_k) = (−1)^{Σ_{i<j}|a_i||x_j|} l_k(x_1, …, x_k)⊗a_1⋯a_k`
//! and `l_1(x⊗a) = l_1(x)⊗a + (−1)^{|x|} x⊗da`. The weight of `x⊗a` is the weight of `x`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::coefficients::{CoefficientAlgebra, GradedCommutative};
use super::FilteredError;
use crate::exactlin::{inv_factorial, BasisElement, GradedSpace, Rational, Vector};
use crate::linf::{odd, LInftyAlgebra};

/// A vector of `𝔤 ⊗ A` keyed by (basis index of `𝔤`, monomial of `A`).
pub type TensorVector<M> = BTreeMap<(usize, M), Rational>;

pub fn tensor_add<M: Ord + Clone>(out: &mut TensorVector<M>, key: (usize, M), c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        out.remove(&key);
    }
}

pub fn tensor_add_scaled<M: Ord + Clone>(
    out: &mut TensorVector<M>,
    c: &Rational,
    other: &TensorVector<M>,
) {
    for (k, v) in other {
        tensor_add(out, k.clone(), c * v);
    }
}

/// `x ⊗ m` for a vector `x` of `𝔤`.
pub fn tensor_pure<M: Ord + Clone>(x: &Vector, m: &M) -> TensorVector<M> {
    x.iter().map(|(i, c)| ((i, m.clone()), c.clone())).collect()
}

/// Lazy bracket evaluation on `𝔤 ⊗ A` without materializing a table.
pub struct Extension<'a, A: GradedCommutative> {
    pub base: &'a LInftyAlgebra,
    pub coeffs: &'a A,
}

impl<'a, A: GradedCommutative> Extension<'a, A> {
    pub fn new(base: &'a LInftyAlgebra, coeffs: &'a A) -> Self {
        Self { base, coeffs }
    }

    pub fn key_degree(&self, key: &(usize, A::Mono)) -> i32 {
        self.base.degree(key.0) + self.coeffs.mono_degree(&key.1)
    }

    /// Degree of a homogeneous tensor; `None` for zero, error if mixed.
    pub fn degree_of(&self, v: &TensorVector<A::Mono>) -> Result<Option<i32>, ()> {
        let mut d = None;
        for k in v.keys() {
            let kd = self.key_degree(k);
            if d.is_some_and(|x| x != kd) {
                return Err(());
            }
            d = Some(kd);
        }
        Ok(d)
    }

    /// `l_k` with `k = args.len()`.
    pub fn bracket(&self, args: &[&TensorVector<A::Mono>]) -> TensorVector<A::Mono> {
        let k = args.len();
        let mut out = TensorVector::new();
        if k == 0 || k > self.base.max_arity() {
            return out;
        }
        if k == 1 {
            for ((i, m), c) in args[0] {
                for (j, cj) in self.base.bracket_basis(&[*i]).iter() {
                    tensor_add(&mut out, (j, m.clone()), c * cj);
                }
                let s = if odd(self.base.degree(*i)) { -c.clone() } else { c.clone() };
                for (dm, cd) in self.coeffs.mono_d(m) {
                    tensor_add(&mut out, (*i, dm), &s * &cd);
                }
            }
            return out;
        }
        if self.base.brackets.arity(k).next().is_none() {
            return out;
        }
        let mut picked: Vec<(usize, &A::Mono, &Rational)> = Vec::with_capacity(k);
        self.expand(args, &mut picked, &mut out);
        out
    }

    fn expand<'b>(
        &self,
        args: &[&'b TensorVector<A::Mono>],
        picked: &mut Vec<(usize, &'b A::Mono, &'b Rational)>,
        out: &mut TensorVector<A::Mono>,
    ) {
        if picked.len() == args.len() {
            let idx: Vec<usize> = picked.iter().map(|p| p.0).collect();
            let b = self.base.bracket_basis(&idx);
            if b.is_zero() {
                return;
            }
            let mut negative = false;
            for r in 0..picked.len() {
                if odd(self.coeffs.mono_degree(picked[r].1)) {
                    for s in r + 1..picked.len() {
                        negative ^= odd(self.base.degree(picked[s].0));
                    }
                }
            }
            let mut prod: Vec<(A::Mono, Rational)> = vec![(self.coeffs.unit(), Rational::one())];
            for p in picked.iter() {
                let mut next: BTreeMap<A::Mono, Rational> = BTreeMap::new();
                for (m, c) in &prod {
                    for (m2, c2) in self.coeffs.mono_mul(m, p.1) {
                        *next.entry(m2).or_insert_with(Rational::zero) += c * &c2;
                    }
                }
                prod = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if prod.is_empty() {
                    return;
                }
            }
            let mut coeff: Rational = picked.iter().map(|p| p.2.clone()).product();
            if negative {
                coeff = -coeff;
            }
            for (j, cj) in b.iter() {
                for (m, cm) in &prod {
                    tensor_add(out, (j, m.clone()), &coeff * cj * cm);
                }
            }
            return;
        }
        for ((i, m), c) in args[picked.len()].iter() {
            picked.push((*i, m, c));
            self.expand(args, picked, out);
            picked.pop();
        }
    }

    /// `Σ_{k ≥ 1} (1/k!) l_k(τ, …, τ)`.
    pub fn mc_residual(&self, tau: &TensorVector<A::Mono>) -> TensorVector<A::Mono> {
        let mut out = TensorVector::new();
        for k in 1..=self.base.brackets.effective_arity() {
            let args = vec![tau; k];
            let term = self.bracket(&args);
            tensor_add_scaled(&mut out, &inv_factorial(k), &term);
        }
        out
    }

    pub fn show(&self, v: &TensorVector<A::Mono>) -> String {
        let mut by_mono: BTreeMap<A::Mono, Vector> = BTreeMap::new();
        for ((i, m), c) in v {
            by_mono.entry(m.clone()).or_default().add_term(*i, c.clone());
        }
        if by_mono.is_empty() {
            return "0".into();
        }
        by_mono
            .iter()
            .map(|(m, x)| format!("({})⊗{}", self.base.show(x), self.coeffs.mono_name(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `𝔤 ⊗ A` (or `𝔤 ⊗ m_A`) materialized as an ordinary bracket table.
///
/// The basis element `x_i ⊗ a` sits at index `i · |coeff_basis| + position(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedAlgebra {
    pub algebra: LInftyAlgebra,
    pub base_dim: usize,
    /// Basis indices of `A` used as the second tensor factor.
    pub coeff_basis: Vec<usize>,
}

impl ExtendedAlgebra {
    pub fn index(&self, i: usize, a: usize) -> Option<usize> {
        let pos = self.coeff_basis.iter().position(|&b| b == a)?;
        Some(i * self.coeff_basis.len() + pos)
    }

    /// `x ⊗ a` as a vector of the extension.
    pub fn embed(&self, x: &Vector, a: usize) -> Vector {
        let mut v = Vector::zero();
        for (i, c) in x.iter() {
            if let Some(j) = self.index(i, a) {
                v.add_term(j, c.clone());
            }
        }
        v
    }

    /// Component of `v` along the coefficient basis element `a`, as a vector of `𝔤`.
    pub fn component(&self, v: &Vector, a: usize) -> Vector {
        let m = self.coeff_basis.len();
        let Some(pos) = self.coeff_basis.iter().position(|&b| b == a) else {
            return Vector::zero();
        };
        Vector::from_terms(
            v.iter()
                .filter(|(j, _)| j % m == pos)
                .map(|(j, c)| (j / m, c.clone())),
        )
    }
}

/// Materializes `𝔤 ⊗ A`, or `𝔤 ⊗ m_A` when `ideal_only` is set.
pub fn extend_scalars(
    g: &LInftyAlgebra,
    a: &CoefficientAlgebra,
    ideal_only: bool,
) -> Result<ExtendedAlgebra, FilteredError> {
    let coeff_basis: Vec<usize> = if ideal_only {
        if !a.is_local() {
            return Err(FilteredError::Coefficients(format!(
                "{} has no maximal ideal spanned by its non-unit basis",
                a.name
            )));
        }
        a.ideal()
    } else {
        (0..a.dim()).collect()
    };
    let m = coeff_basis.len();
    let mut basis = Vec::with_capacity(g.dim() * m);
    for x in g.space.basis() {
        for &c in &coeff_basis {
            basis.push(BasisElement::new(
                format!("{}⊗{}", x.id, a.space.id(c)),
                x.degree + a.space.degree(c),
                x.weight,
            ));
        }
    }
    let space = GradedSpace::new(basis).map_err(crate::linf::LinfError::from)?;
    let mut out = ExtendedAlgebra {
        algebra: LInftyAlgebra::new(space, g.max_arity()),
        base_dim: g.dim(),
        coeff_basis: coeff_basis.clone(),
    };
    let pos: BTreeMap<usize, usize> = coeff_basis.iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let to_index = |i: usize, b: usize| -> Result<usize, FilteredError> {
        pos.get(&b).map(|p| i * m + p).ok_or_else(|| {
            FilteredError::Coefficients(format!(
                "a product leaves the maximal ideal of {} (component `{}`)",
                a.name,
                a.space.id(b)
            ))
        })
    };
    let ext = Extension::new(g, a);
    // l_1 on every pure tensor, including the coefficient differential
    for i in 0..g.dim() {
        for &c in &coeff_basis {
            let x: TensorVector<usize> = [((i, c), Rational::one())].into_iter().collect();
            let v = ext.bracket(&[&x]);
            let mut image = Vector::zero();
            for ((j, b), coeff) in v {
                image.add_term(to_index(j, b)?, coeff);
            }
            out.algebra.set_bracket(&[to_index(i, c)?], image)?;
        }
    }
    for k in 2..=g.max_arity() {
        if m == 0 {
            break;
        }
        let tuples: Vec<Vec<usize>> = g.brackets.arity(k).map(|(t, _)| t.clone()).collect();
        for t in tuples {
            let mut choice = vec![0usize; k];
            loop {
                let args: Vec<TensorVector<usize>> = t
                    .iter()
                    .zip(&choice)
                    .map(|(&i, &p)| [((i, coeff_basis[p]), Rational::one())].into_iter().collect())
                    .collect();
                let refs: Vec<&TensorVector<usize>> = args.iter().collect();
                let v = ext.bracket(&refs);
                let inputs: Vec<usize> = t.iter().zip(&choice).map(|(&i, &p)| i * m + p).collect();
                let mut image = Vector::zero();
                for ((j, b), coeff) in v {
                    image.add_term(to_index(j, b)?, coeff);
                }
                out.algebra.set_bracket(&inputs, image)?;
                // next coefficient tuple
                let mut r = 0;
                while r < k {
                    choice[r] += 1;
                    if choice[r] < m {
                        break;
                    }
                    choice[r] = 0;
                    r += 1;
                }
                if r == k {
                    break;
                }
            }
        }
    }
    Ok(out)
}
