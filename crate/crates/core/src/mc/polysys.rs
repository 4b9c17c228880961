use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::McError;
use crate::exactlin::{format_rational, Rational, Vector};
use crate::linf::LInftyAlgebra;

/// Exponents per variable position.
pub type Monomial = Vec<u32>;

/// A polynomial in the coordinates of the degree-1 slice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // highest total degree first, then lexicographic
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{e}", names[i])
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    let _ = write!(out, "{}·", format_rational(&abs));
                }
                out.push_str(&vars.join("·"));
            }
        }
        out
    }
}

/// The Maurer–Cartan equation written in coordinates: one polynomial per degree-2 basis
/// element in the variables given by the degree-1 basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSystem {
    /// Basis indices of the degree-1 slice, one per variable.
    pub variables: Vec<usize>,
    pub variable_names: Vec<String>,
    /// Basis indices of the degree-2 slice, one per equation.
    pub equation_basis: Vec<usize>,
    pub equations: Vec<Polynomial>,
}

impl PolynomialSystem {
    /// Evaluates every equation at the point whose coordinates are read off `tau`.
    pub fn eval_vector(&self, tau: &Vector) -> Vec<Rational> {
        let point: Vec<Rational> = self.variables.iter().map(|&i| tau.coeff(i)).collect();
        self.equations.iter().map(|p| p.eval(&point)).collect()
    }

    /// Equations that are not identically zero.
    pub fn nonzero_equations(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.equation_basis
            .iter()
            .copied()
            .zip(&self.equations)
            .filter(|(_, p)| !p.is_zero())
    }
}

/// Coefficient of `Π x_v^{m_v}` in `Σ_k (1/k!) l_k(τ^k)` is `l_k(sorted tuple) / Π m_v!`,
/// since degree-1 arguments commute in every bracket.
pub fn mc_polynomial_system(g: &LInftyAlgebra) -> Result<PolynomialSystem, McError> {
    let variables = g.space.indices_of_degree(1);
    let equation_basis = g.space.indices_of_degree(2);
    let nv = variables.len();
    let mut equations = vec![Polynomial::default(); equation_basis.len()];
    let eq_pos: BTreeMap<usize, usize> = equation_basis.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let var_pos: BTreeMap<usize, usize> = variables.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    for (k, tuple, v) in g.brackets.iter() {
        let Some(mut m) = tuple
            .iter()
            .map(|i| var_pos.get(i).copied())
            .collect::<Option<Vec<usize>>>()
            .map(|_| vec![0u32; nv])
        else {
            continue;
        };
        for i in tuple {
            m[var_pos[i]] += 1;
        }
        let mut denom = Rational::one();
        for &e in &m {
            for f in 2..=e {
                denom *= Rational::from_integer(f.into());
            }
        }
        for (j, c) in v.iter() {
            let Some(&p) = eq_pos.get(&j) else {
                return Err(McError::Internal(format!(
                    "l_{k} of degree-1 elements has a component outside degree 2"
                )));
            };
            equations[p].add_term(m.clone(), c / &denom);
        }
    }
    Ok(PolynomialSystem {
        variable_names: variables.iter().map(|&i| g.space.id(i).to_string()).collect(),
        variables,
        equation_basis,
        equations,
    })
}
