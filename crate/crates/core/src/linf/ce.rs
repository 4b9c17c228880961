//! The coderivation presentation on the suspension and the Chevalley–Eilenberg differential.
//!
//! Suspension lowers degree by one, so `Q` has degree `+1` on `Sym(s𝔤)`. Components are
//! `Q^k(sx_1 ⊙ … ⊙ sx_k) = c_k (−1)^{Σ_i (k−i)|x_i|} s l_k(x_1, …, x_k)` with
//! `c_k = (−1)^{k(k−1)/2}`. With these signs `Q ∘ Q` on a word of length `k` projects to a sign
//! times the generalized Jacobi expression, and `Q(e^{sτ}) = 0` is the Maurer–Cartan equation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::jacobi::for_each_unshuffle;
use super::sign::{canonicalize, odd, sym_swap_negates};
use super::{BracketTable, LInftyAlgebra, LinfError};
use crate::exactlin::{BasisElement, GradedSpace, Rational, Vector};

/// Words are non-decreasing generator tuples; a linear combination of words.
pub type WordCombination = BTreeMap<Vec<usize>, Rational>;

pub(crate) fn ck_negative(k: usize) -> bool {
    (k * (k.saturating_sub(1)) / 2) % 2 == 1
}

fn decalage_negative(degrees: &[i32]) -> bool {
    let k = degrees.len();
    degrees
        .iter()
        .enumerate()
        .fold(false, |acc, (i, &d)| acc ^ (((k - 1 - i) % 2 == 1) && odd(d)))
}

/// `c_k (−1)^{Σ (k−i)|x_i|}` as a parity.
fn conversion_negative(degrees: &[i32]) -> bool {
    ck_negative(degrees.len()) ^ decalage_negative(degrees)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoderivationPresentation {
    /// The suspension: same identifiers and weights, degrees lowered by one.
    pub generators: GradedSpace,
    /// `components[k-1]` maps canonical words of length `k` to `Q^k` of the word.
    pub components: Vec<BTreeMap<Vec<usize>, Vector>>,
}

impl CoderivationPresentation {
    pub fn from_algebra(g: &LInftyAlgebra) -> Result<Self, LinfError> {
        let generators = GradedSpace::new(
            g.space
                .basis()
                .iter()
                .map(|b| BasisElement::new(b.id.clone(), b.degree - 1, b.weight))
                .collect(),
        )?;
        let mut components = vec![BTreeMap::new(); g.max_arity()];
        for (k, tuple, v) in g.brackets.iter() {
            let degrees: Vec<i32> = tuple.iter().map(|&i| g.degree(i)).collect();
            let out = if conversion_negative(&degrees) {
                v.neg()
            } else {
                v.clone()
            };
            components[k - 1].insert(tuple.clone(), out);
        }
        Ok(Self {
            generators,
            components,
        })
    }

    /// Recovers the brackets via `l_k = s⁻¹ ∘ Q^k ∘ s^{⊗k}`.
    pub fn to_brackets(&self) -> BracketTable {
        let mut t = BracketTable::new(self.components.len());
        for comp in &self.components {
            for (word, v) in comp {
                let degrees: Vec<i32> = word
                    .iter()
                    .map(|&i| self.generators.degree(i) + 1)
                    .collect();
                let out = if conversion_negative(&degrees) {
                    v.neg()
                } else {
                    v.clone()
                };
                t.insert_canonical(word.clone(), out);
            }
        }
        t
    }

    fn shifted_degree(&self, i: usize) -> i32 {
        self.generators.degree(i)
    }

    /// Sorts a word with graded symmetric signs; `None` if it vanishes.
    fn canonical_word(&self, word: &mut [usize]) -> Option<bool> {
        canonicalize(word, |a, b| {
            sym_swap_negates(self.shifted_degree(a), self.shifted_degree(b))
        })
    }

    fn component_on_word(&self, word: &[usize]) -> Vector {
        let k = word.len();
        if k == 0 || k > self.components.len() {
            return Vector::zero();
        }
        let mut w = word.to_vec();
        let Some(negative) = self.canonical_word(&mut w) else {
            return Vector::zero();
        };
        match self.components[k - 1].get(&w) {
            Some(v) if negative => v.neg(),
            Some(v) => v.clone(),
            None => Vector::zero(),
        }
    }

    /// `Q^k` evaluated multilinearly on vectors of `s𝔤`.
    pub fn eval_component(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::zero();
        let k = args.len();
        if k == 0 || k > self.components.len() || self.components[k - 1].is_empty() {
            return out;
        }
        let mut word = Vec::with_capacity(k);
        self.expand(args, &mut word, Rational::one(), &mut out);
        out
    }

    fn expand(&self, args: &[&Vector], word: &mut Vec<usize>, c: Rational, out: &mut Vector) {
        if word.len() == args.len() {
            let v = self.component_on_word(word);
            if !v.is_zero() {
                out.add_scaled(&c, &v);
            }
            return;
        }
        for (i, a) in args[word.len()].iter() {
            word.push(i);
            self.expand(args, word, &c * a, out);
            word.pop();
        }
    }

    /// Sign of the unshuffle moving `chosen` in front of `rest` inside a symmetric word.
    fn unshuffle_negative(&self, word: &[usize], chosen: &[usize], rest: &[usize]) -> bool {
        let mut neg = false;
        for &b in chosen {
            for &a in rest {
                if a < b {
                    neg ^= sym_swap_negates(
                        self.shifted_degree(word[a]),
                        self.shifted_degree(word[b]),
                    );
                }
            }
        }
        neg
    }

    /// The coderivation extension of `Q` applied to a word.
    pub fn apply(&self, word: &[usize]) -> WordCombination {
        let m = word.len();
        let mut out = WordCombination::new();
        for p in 1..=m.min(self.components.len()) {
            for_each_unshuffle(m, p, |chosen, rest| {
                let sub: Vec<usize> = chosen.iter().map(|&i| word[i]).collect();
                let q = self.component_on_word(&sub);
                if q.is_zero() {
                    return;
                }
                let neg = self.unshuffle_negative(word, chosen, rest);
                for (g, c) in q.iter() {
                    let mut w = Vec::with_capacity(rest.len() + 1);
                    w.push(g);
                    w.extend(rest.iter().map(|&i| word[i]));
                    let Some(n2) = self.canonical_word(&mut w) else {
                        continue;
                    };
                    let coeff = if neg ^ n2 { -c.clone() } else { c.clone() };
                    add_word(&mut out, w, coeff);
                }
            });
        }
        out
    }

    /// `Q ∘ Q` on a word, through the full coderivation extension.
    pub fn square(&self, word: &[usize]) -> WordCombination {
        let mut out = WordCombination::new();
        for (w, c) in self.apply(word) {
            for (w2, c2) in self.apply(&w) {
                add_word(&mut out, w2, &c * &c2);
            }
        }
        out
    }

    /// The length-one component of `Q ∘ Q` on a word:
    /// `Σ_p Σ_σ ± Q^{m−p+1}(Q^p(w_σ(1..p)) ⊙ w_σ(p+1..m))`.
    pub fn square_projection(&self, word: &[usize]) -> Vector {
        let m = word.len();
        let kq = self.effective_arity();
        let mut out = Vector::zero();
        for p in 1..=m {
            let j = m - p + 1;
            if p > kq || j > kq {
                continue;
            }
            for_each_unshuffle(m, p, |chosen, rest| {
                let sub: Vec<usize> = chosen.iter().map(|&i| word[i]).collect();
                let q = self.component_on_word(&sub);
                if q.is_zero() {
                    return;
                }
                let rest_v: Vec<Vector> = rest.iter().map(|&i| Vector::basis(word[i])).collect();
                let mut args: Vec<&Vector> = vec![&q];
                args.extend(rest_v.iter());
                let term = self.eval_component(&args);
                if self.unshuffle_negative(word, chosen, rest) {
                    out.sub_assign(&term);
                } else {
                    out.add_assign(&term);
                }
            });
        }
        out
    }

    pub fn effective_arity(&self) -> usize {
        self.components
            .iter()
            .rposition(|m| !m.is_empty())
            .map_or(0, |i| i + 1)
    }

    /// Visits canonical nonvanishing words of length `m`.
    pub fn for_each_word(&self, m: usize, mut f: impl FnMut(&[usize])) {
        let n = self.generators.dim();
        let mut w = Vec::with_capacity(m);
        fn rec(
            p: &CoderivationPresentation,
            n: usize,
            m: usize,
            w: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if w.len() == m {
                f(w);
                return;
            }
            let start = w.last().copied().unwrap_or(0);
            for i in start..n {
                if w.last() == Some(&i) && odd(p.shifted_degree(i)) {
                    continue;
                }
                w.push(i);
                rec(p, n, m, w, f);
                w.pop();
            }
        }
        rec(self, n, m, &mut w, &mut f);
    }

    /// Checks `Q ∘ Q = 0` on all words of length `≤ bound` via its length-one projection.
    ///
    /// `Q ∘ Q = ½[Q, Q]` is a coderivation, so it vanishes on words of length `≤ bound` exactly
    /// when its projection to generators does.
    pub fn square_zero_witnesses(&self, bound: usize) -> Vec<(Vec<usize>, Vector)> {
        let degrees: BTreeSet<i32> = self.generators.degrees().into_iter().collect();
        let kq = self.effective_arity();
        let mut out = Vec::new();
        for m in 1..=bound {
            if kq == 0 || m > 2 * kq - 1 {
                break;
            }
            self.for_each_word(m, |w| {
                let target: i32 = w.iter().map(|&i| self.shifted_degree(i)).sum::<i32>() + 2;
                if !degrees.contains(&target) {
                    return;
                }
                let r = self.square_projection(w);
                if !r.is_zero() {
                    out.push((w.to_vec(), r));
                }
            });
        }
        out
    }

    /// The dual differential on the free graded commutative algebra on `(s𝔤)*`: for each
    /// generator `e`, the words `w` with coefficient `⟨e*, Q(w)⟩`.
    pub fn dual_differential(&self) -> Vec<WordCombination> {
        let mut out = vec![WordCombination::new(); self.generators.dim()];
        for comp in &self.components {
            for (w, v) in comp {
                for (g, c) in v.iter() {
                    add_word(&mut out[g], w.clone(), c.clone());
                }
            }
        }
        out
    }

    pub fn display_word(&self, w: &[usize]) -> String {
        w.iter()
            .map(|&i| format!("s{}", self.generators.id(i)))
            .collect::<Vec<_>>()
            .join("⊙")
    }
}

fn add_word(out: &mut WordCombination, w: Vec<usize>, c: Rational) {
    let e = out.entry(w).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        out.retain(|_, v| !v.is_zero());
    }
}

/// Result of the Chevalley–Eilenberg construction.
#[derive(Debug, Clone)]
pub struct ChevalleyEilenberg {
    pub presentation: CoderivationPresentation,
    pub word_length_bound: usize,
    /// Words (up to the bound) on which `Q ∘ Q` does not vanish, with the projection.
    pub square_witnesses: Vec<(Vec<usize>, Vector)>,
    pub dual_differential: Vec<WordCombination>,
}

impl ChevalleyEilenberg {
    pub fn square_zero(&self) -> bool {
        self.square_witnesses.is_empty()
    }
}

pub fn chevalley_eilenberg(
    g: &LInftyAlgebra,
    word_length_bound: usize,
) -> Result<ChevalleyEilenberg, LinfError> {
    let presentation = CoderivationPresentation::from_algebra(g)?;
    let square_witnesses = presentation.square_zero_witnesses(word_length_bound);
    let dual_differential = presentation.dual_differential();
    Ok(ChevalleyEilenberg {
        presentation,
        word_length_bound,
        square_witnesses,
        dual_differential,
    })
}
