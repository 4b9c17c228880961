use std::collections::BTreeMap;

use num_traits::Zero;

use super::{DefComplexError, FiniteAlgebraData};
use crate::exactlin::{BasisElement, GradedSpace, Rational, Vector};
use crate::linf::LInftyAlgebra;

/// Default bound on the number of basis cochains.
pub const DEFAULT_BUDGET: usize = 20_000;

/// The elementary cochain sending `e_{inputs[0]} ⊗ … ⊗ e_{inputs[m-1]}` to `e_output` and every
/// other basis tensor to 0. It has degree `m − 1` and weight `max(m − 1, 1)`: the filtration
/// starts at `F_1 = 𝔤`, so `Hom(X, X)` shares weight 1 with `Hom(X^{⊗2}, X)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cochain {
    pub inputs: Vec<usize>,
    pub output: usize,
}

impl Cochain {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn degree(&self) -> i32 {
        self.inputs.len() as i32 - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionComplex {
    pub data: FiniteAlgebraData,
    pub arity_bound: usize,
    pub algebra: LInftyAlgebra,
    pub cochains: Vec<Cochain>,
    index: BTreeMap<Cochain, usize>,
}

/// `f ∘ g = Σ_i (−1)^{i|g|} f ∘_i g`, keeping only results of arity `≤ bound`.
fn pre_lie(f: &Cochain, g: &Cochain, bound: usize, out: &mut BTreeMap<Cochain, i64>) {
    if f.arity() + g.arity() - 1 > bound {
        return;
    }
    let q = g.degree();
    for i in 0..f.arity() {
        if f.inputs[i] != g.output {
            continue;
        }
        let mut inputs = f.inputs[..i].to_vec();
        inputs.extend(&g.inputs);
        inputs.extend(&f.inputs[i + 1..]);
        let sign = if (i as i32 * q) % 2 == 0 { 1 } else { -1 };
        *out.entry(Cochain {
            inputs,
            output: f.output,
        })
        .or_insert(0) += sign;
    }
}

fn enumerate_inputs(d: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Builds `⊕_{0 ≤ s < N} Hom(X^{⊗(s+1)}, X)` with the Gerstenhaber bracket
/// `[f, g] = f ∘ g − (−1)^{|f||g|} g ∘ f`, truncated at arity `N`.
pub fn build_convolution(
    data: &FiniteAlgebraData,
    arity_bound: usize,
) -> Result<ConvolutionComplex, DefComplexError> {
    build_convolution_with_budget(data, arity_bound, DEFAULT_BUDGET)
}

pub fn build_convolution_with_budget(
    data: &FiniteAlgebraData,
    arity_bound: usize,
    budget: usize,
) -> Result<ConvolutionComplex, DefComplexError> {
    if arity_bound < 2 {
        return Err(DefComplexError::ArityBound(arity_bound));
    }
    let d = data.dim();
    let needed: usize = (1..=arity_bound as u32).map(|m| d.pow(m + 1)).sum();
    if needed > budget {
        return Err(DefComplexError::Budget { needed, budget });
    }
    let mut cochains = Vec::with_capacity(needed);
    for m in 1..=arity_bound {
        for inputs in enumerate_inputs(d, m) {
            for output in 0..d {
                cochains.push(Cochain {
                    inputs: inputs.clone(),
                    output,
                });
            }
        }
    }
    let basis = cochains
        .iter()
        .map(|c| {
            let ins: Vec<&str> = c.inputs.iter().map(|&i| data.names[i].as_str()).collect();
            let id = format!("{}→{}", ins.join("⊗"), data.names[c.output]);
            BasisElement::new(id, c.degree(), c.degree().max(1) as u32)
        })
        .collect();
    let space = GradedSpace::new(basis)?;
    let index: BTreeMap<Cochain, usize> =
        cochains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut algebra = LInftyAlgebra::new(space, 2);
    for (i, f) in cochains.iter().enumerate() {
        for (j, g) in cochains.iter().enumerate().skip(i) {
            if f.arity() + g.arity() - 1 > arity_bound {
                continue;
            }
            let (p, q) = (f.degree(), g.degree());
            if i == j && p % 2 == 0 {
                continue;
            }
            let mut terms = BTreeMap::new();
            pre_lie(f, g, arity_bound, &mut terms);
            let mut rev = BTreeMap::new();
            pre_lie(g, f, arity_bound, &mut rev);
            let s = if (p * q) % 2 == 0 { -1 } else { 1 };
            for (c, k) in rev {
                *terms.entry(c).or_insert(0) += s * k;
            }
            let v = Vector::from_terms(
                terms
                    .into_iter()
                    .filter(|(_, k)| *k != 0)
                    .map(|(c, k)| (index[&c], Rational::from_integer(k.into()))),
            );
            if !v.is_zero() {
                algebra.set_bracket(&[i, j], v)?;
            }
        }
    }
    Ok(ConvolutionComplex {
        data: data.clone(),
        arity_bound,
        algebra,
        cochains,
        index,
    })
}

impl ConvolutionComplex {
    pub fn index_of(&self, inputs: &[usize], output: usize) -> Option<usize> {
        self.index
            .get(&Cochain {
                inputs: inputs.to_vec(),
                output,
            })
            .copied()
    }

    /// Basis indices of `𝔤_s = Hom(X^{⊗(s+1)}, X)`.
    pub fn piece(&self, s: usize) -> Vec<usize> {
        (0..self.cochains.len())
            .filter(|&i| self.cochains[i].arity() == s + 1)
            .collect()
    }

    /// A bilinear product as an element of `𝔤_1`.
    pub fn product_element(&self, data: &FiniteAlgebraData) -> Vector {
        let d = data.dim();
        let mut v = Vector::zero();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let x = &data.products[a][b][c];
                    if !x.is_zero() {
                        v.add_term(self.index_of(&[a, b], c).expect("arity 2 cochain"), x.clone());
                    }
                }
            }
        }
        v
    }

    /// A linear endomorphism `m[a][c]` (coefficient of `e_c` in `m(e_a)`) as an element of `𝔤_0`.
    pub fn endomorphism(&self, m: &[Vec<Rational>]) -> Vector {
        let mut v = Vector::zero();
        for (a, row) in m.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v.add_term(self.index_of(&[a], c).expect("arity 1 cochain"), x.clone());
                }
            }
        }
        v
    }

    /// The part of weight `≥ 1`, where every bracket raises weight.
    pub fn filtered_part(&self) -> LInftyAlgebra {
        let keep: Vec<usize> = (0..self.cochains.len())
            .filter(|&i| self.cochains[i].arity() >= 2)
            .collect();
        self.algebra
            .restrict(&keep)
            .expect("cochains of arity ≥ 2 are closed under the bracket")
    }

    /// `dim (𝔤/F_r)¹` for `1 ≤ r ≤ N`.
    pub fn degree_one_quotient_dims(&self) -> Vec<(u32, usize)> {
        (1..=self.arity_bound as u32)
            .map(|r| {
                let n = (0..self.algebra.dim())
                    .filter(|&i| self.algebra.degree(i) == 1 && self.algebra.space.weight(i) < r)
                    .count();
                (r, n)
            })
            .collect()
    }
}
