use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::sign::{antisym_swap_negates, canonicalize};
use super::LinfError;
use crate::exactlin::{GradedSpace, LinearMap, Rational, Vector};

/// Brackets `l_1, …, l_K` stored on non-decreasing basis tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    entries: Vec<BTreeMap<Vec<usize>, Vector>>,
}

impl BracketTable {
    pub fn new(max_arity: usize) -> Self {
        Self {
            entries: vec![BTreeMap::new(); max_arity],
        }
    }

    pub fn max_arity(&self) -> usize {
        self.entries.len()
    }

    /// Entries of `l_k` keyed by canonical tuple. Empty for `k` outside `1..=K`.
    pub fn arity(&self, k: usize) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.entries
            .get(k.wrapping_sub(1))
            .into_iter()
            .flat_map(|m| m.iter())
    }

    /// All entries as `(k, tuple, output)`, ordered by arity then tuple.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Vec<usize>, &Vector)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.iter().map(move |(t, v)| (i + 1, t, v)))
    }

    pub fn get(&self, tuple: &[usize]) -> Option<&Vector> {
        self.entries.get(tuple.len().checked_sub(1)?)?.get(tuple)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    /// Largest arity with a nonzero entry (0 for the abelian structure).
    pub fn effective_arity(&self) -> usize {
        self.entries
            .iter()
            .rposition(|m| !m.is_empty())
            .map_or(0, |i| i + 1)
    }

    /// Inserts a canonical entry, dropping it if the output is zero.
    pub(crate) fn insert_canonical(&mut self, tuple: Vec<usize>, output: Vector) {
        let slot = &mut self.entries[tuple.len() - 1];
        if output.is_zero() {
            slot.remove(&tuple);
        } else {
            slot.insert(tuple, output);
        }
    }

    pub(crate) fn add_canonical(&mut self, tuple: Vec<usize>, output: &Vector) {
        let slot = &mut self.entries[tuple.len() - 1];
        let e = slot.entry(tuple).or_default();
        e.add_assign(output);
        if e.is_zero() {
            slot.retain(|_, v| !v.is_zero());
        }
    }
}

/// A graded space with brackets. Structural axioms are checked by `verify_structure`, not on
/// construction, so that broken inputs can be reported with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LInftyAlgebra {
    pub space: GradedSpace,
    pub brackets: BracketTable,
}

impl LInftyAlgebra {
    pub fn new(space: GradedSpace, max_arity: usize) -> Self {
        Self {
            space,
            brackets: BracketTable::new(max_arity),
        }
    }

    /// The abelian structure (all brackets zero) with `K_max = max_arity`.
    pub fn abelian(space: GradedSpace, max_arity: usize) -> Self {
        Self::new(space, max_arity)
    }

    pub fn max_arity(&self) -> usize {
        self.brackets.max_arity()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.space.degree(i)
    }

    /// Sets `l_k(inputs) = output`, storing it on the canonical reordering.
    ///
    /// Fails if the arity exceeds `K_max`, an index is out of range, or the tuple is forced to
    /// vanish by antisymmetry while `output` is nonzero.
    pub fn set_bracket(&mut self, inputs: &[usize], output: Vector) -> Result<(), LinfError> {
        let (tuple, negative) = self.canonical_key(inputs, &output)?;
        let output = if negative { output.neg() } else { output };
        self.brackets.insert_canonical(tuple, output);
        Ok(())
    }

    /// Adds `output` to `l_k(inputs)`.
    pub fn add_bracket(&mut self, inputs: &[usize], output: &Vector) -> Result<(), LinfError> {
        let (tuple, negative) = self.canonical_key(inputs, output)?;
        let output = if negative { output.neg() } else { output.clone() };
        self.brackets.add_canonical(tuple, &output);
        Ok(())
    }

    fn canonical_key(
        &self,
        inputs: &[usize],
        output: &Vector,
    ) -> Result<(Vec<usize>, bool), LinfError> {
        let k = inputs.len();
        if k == 0 || k > self.max_arity() {
            return Err(LinfError::BracketUndefined {
                arity: k,
                max_arity: self.max_arity(),
            });
        }
        let n = self.dim();
        if let Some(&bad) = inputs.iter().chain(output.support().collect::<Vec<_>>().iter()).find(|&&i| i >= n) {
            return Err(LinfError::Structure(format!(
                "basis index {bad} out of range for a space of dimension {n}"
            )));
        }
        let mut tuple = inputs.to_vec();
        match canonicalize(&mut tuple, |a, b| {
            antisym_swap_negates(self.degree(a), self.degree(b))
        }) {
            Some(negative) => Ok((tuple, negative)),
            None if output.is_zero() => Ok((tuple, false)),
            None => Err(LinfError::Structure(format!(
                "l_{k}({}) must vanish by antisymmetry (repeated even element)",
                self.ids(inputs)
            ))),
        }
    }

    pub(crate) fn ids(&self, tuple: &[usize]) -> String {
        tuple
            .iter()
            .map(|&i| self.space.id(i))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// `l_k` on basis elements, resolving the order through antisymmetry.
    pub fn bracket_basis(&self, inputs: &[usize]) -> Vector {
        let mut tuple = inputs.to_vec();
        let Some(negative) = canonicalize(&mut tuple, |a, b| {
            antisym_swap_negates(self.degree(a), self.degree(b))
        }) else {
            return Vector::zero();
        };
        match self.brackets.get(&tuple) {
            Some(v) if negative => v.neg(),
            Some(v) => v.clone(),
            None => Vector::zero(),
        }
    }

    /// Multilinear evaluation of `l_k` on arbitrary vectors.
    pub fn eval_bracket(&self, k: usize, args: &[&Vector]) -> Result<Vector, LinfError> {
        if k == 0 || k > self.max_arity() {
            return Err(LinfError::BracketUndefined {
                arity: k,
                max_arity: self.max_arity(),
            });
        }
        if args.len() != k {
            return Err(LinfError::Structure(format!(
                "l_{k} applied to {} arguments",
                args.len()
            )));
        }
        Ok(self.eval_unchecked(args))
    }

    /// `l_{args.len()}` without arity checks; zero beyond `K_max`.
    pub(crate) fn eval_unchecked(&self, args: &[&Vector]) -> Vector {
        let k = args.len();
        let mut out = Vector::zero();
        if k == 0 || k > self.max_arity() || self.brackets.entries[k - 1].is_empty() {
            return out;
        }
        if args.iter().any(|a| a.is_zero()) {
            return out;
        }
        let mut tuple = Vec::with_capacity(k);
        self.expand(args, &mut tuple, Rational::one(), &mut out);
        out
    }

    fn expand(&self, args: &[&Vector], tuple: &mut Vec<usize>, coeff: Rational, out: &mut Vector) {
        if tuple.len() == args.len() {
            let v = self.bracket_basis(tuple);
            if !v.is_zero() {
                out.add_scaled(&coeff, &v);
            }
            return;
        }
        for (i, c) in args[tuple.len()].iter() {
            tuple.push(i);
            self.expand(args, tuple, &coeff * c, out);
            tuple.pop();
        }
    }

    /// `l_k(x, …, x)` with `k` copies of `x`.
    pub fn power(&self, k: usize, x: &Vector) -> Vector {
        let args = vec![x; k];
        self.eval_unchecked(&args)
    }

    /// `l_1` as a linear map of degree 1 (columns are not degree-checked).
    pub fn differential(&self) -> LinearMap {
        let columns = (0..self.dim())
            .map(|i| self.bracket_basis(&[i]))
            .collect();
        LinearMap {
            source: self.space.clone(),
            target: self.space.clone(),
            shift: 1,
            columns,
        }
    }

    /// True when all brackets of arity ≥ 3 vanish.
    pub fn is_dg_lie(&self) -> bool {
        self.brackets.effective_arity() <= 2
    }

    /// `[x, -]` as a linear map of degree `|x|`, for a dg Lie algebra and homogeneous `x`.
    pub fn ad(&self, x: &Vector, degree: i32) -> LinearMap {
        let columns = (0..self.dim())
            .map(|i| {
                let e = Vector::basis(i);
                self.eval_unchecked(&[x, &e])
            })
            .collect();
        LinearMap {
            source: self.space.clone(),
            target: self.space.clone(),
            shift: degree,
            columns,
        }
    }

    /// Restriction to a subset of basis elements that is closed under all brackets.
    pub fn restrict(&self, keep: &[usize]) -> Result<LInftyAlgebra, LinfError> {
        let mut pos = vec![None; self.dim()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = Some(k);
        }
        let mut out = LInftyAlgebra::new(self.space.restrict(keep), self.max_arity());
        for (_, tuple, v) in self.brackets.iter() {
            let Some(t) = tuple.iter().map(|&i| pos[i]).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let mut image = Vector::zero();
            for (i, c) in v.iter() {
                match pos[i] {
                    Some(j) => image.add_term(j, c.clone()),
                    None => {
                        return Err(LinfError::Structure(format!(
                            "l_{}({}) leaves the chosen subspace",
                            tuple.len(),
                            self.ids(tuple)
                        )))
                    }
                }
            }
            out.set_bracket(&t, image)?;
        }
        Ok(out)
    }

    /// Degree of a vector if it is homogeneous. The zero vector has any degree; `None` is
    /// returned for it.
    pub fn homogeneous_degree(&self, v: &Vector) -> Result<Option<i32>, LinfError> {
        v.homogeneous_degree(&self.space)
            .map_err(|()| LinfError::NotHomogeneous(v.display(&self.space)))
    }

    pub fn show(&self, v: &Vector) -> String {
        v.display(&self.space)
    }

    /// Scales every bracket coefficient by `factor(k)`.
    pub fn rescaled(&self, factor: impl Fn(usize) -> Rational) -> LInftyAlgebra {
        let mut out = LInftyAlgebra::new(self.space.clone(), self.max_arity());
        for (k, t, v) in self.brackets.iter() {
            let f = factor(k);
            if !f.is_zero() {
                out.brackets.insert_canonical(t.clone(), v.scaled(&f));
            }
        }
        out
    }
}
