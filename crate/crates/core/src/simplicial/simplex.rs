//! Maurer–Cartan simplices: elements of `(𝔤 ⊗ Ω_n)^1` satisfying the Maurer–Cartan equation.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::forms::{form_add, Form, FormMap, FormMono, SullivanForms};
use super::SimplicialError;
use crate::exactlin::Vector;
use crate::filtered::{tensor_add, Extension, TensorVector};
use crate::gauge::{Homotopy, PolynomialPath};
use crate::linf::LInftyAlgebra;

/// A degree 1 element of `𝔤 ⊗ Ω_n`, keyed by (basis index of `𝔤`, monomial of `Ω_n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McSimplex {
    pub n: usize,
    pub value: TensorVector<FormMono>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexVerdict {
    /// Every term has total degree 1.
    pub degree_ok: bool,
    /// Every form coefficient has weight at most the declared bound.
    pub within_bound: bool,
    pub residual: TensorVector<FormMono>,
    pub residual_text: String,
}

impl SimplexVerdict {
    pub fn passes(&self) -> bool {
        self.degree_ok && self.residual.is_empty()
    }
}

impl McSimplex {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            value: TensorVector::new(),
        }
    }

    /// `τ ⊗ 1` on the `n`-simplex.
    pub fn constant(tau: &Vector, n: usize) -> Self {
        let one = FormMono::one(n);
        Self {
            n,
            value: tau.iter().map(|(i, c)| ((i, one.clone()), c.clone())).collect(),
        }
    }

    /// Builds a simplex from a map `basis index ↦ form`.
    pub fn from_forms(n: usize, forms: &BTreeMap<usize, Form>) -> Self {
        let mut value = TensorVector::new();
        for (&i, f) in forms {
            for (m, c) in f {
                tensor_add(&mut value, (i, m.clone()), c.clone());
            }
        }
        Self { n, value }
    }

    /// The form coefficient of each basis element of `𝔤`.
    pub fn forms(&self) -> BTreeMap<usize, Form> {
        let mut out: BTreeMap<usize, Form> = BTreeMap::new();
        for ((i, m), c) in &self.value {
            form_add(out.entry(*i).or_default(), m.clone(), c.clone());
        }
        out
    }

    fn map_forms(&self, map: &FormMap) -> Self {
        let mut out = BTreeMap::new();
        for (i, f) in self.forms() {
            out.insert(i, map.apply(&f));
        }
        Self::from_forms(map.target.dimension(), &out)
    }

    pub fn face(&self, i: usize) -> Result<Self, SimplicialError> {
        Ok(self.map_forms(&FormMap::face(self.n, i)?))
    }

    pub fn degeneracy(&self, i: usize) -> Result<Self, SimplicialError> {
        Ok(self.map_forms(&FormMap::degeneracy(self.n, i)?))
    }

    /// Restriction to the vertex `e_i` of the standard simplex (`t_i = 1`, other coordinates 0).
    pub fn vertex(&self, i: usize) -> Result<Vector, SimplicialError> {
        if i > self.n {
            return Err(SimplicialError::Unsupported(format!(
                "vertex {i} of a {}-simplex",
                self.n
            )));
        }
        let mut v = Vector::zero();
        for ((j, m), c) in &self.value {
            if m.dts != 0 {
                continue;
            }
            let survives = m
                .exps
                .iter()
                .enumerate()
                .all(|(k, &e)| e == 0 || k + 1 == i);
            if survives {
                v.add_term(*j, c.clone());
            }
        }
        Ok(v)
    }

    /// Image under a linear map on `𝔤` given by basis images.
    pub fn map_algebra(&self, f: impl Fn(usize) -> Vector) -> Self {
        let mut value = TensorVector::new();
        for ((i, m), c) in &self.value {
            for (j, cj) in f(*i).iter() {
                tensor_add(&mut value, (j, m.clone()), c * cj);
            }
        }
        Self { n: self.n, value }
    }

    pub fn max_form_weight(&self) -> u32 {
        self.value.keys().map(|(_, m)| m.weight()).max().unwrap_or(0)
    }

    pub fn show(&self, g: &LInftyAlgebra) -> Result<String, SimplicialError> {
        let forms = SullivanForms::new(self.n)?;
        Ok(Extension::new(g, &forms).show(&self.value))
    }
}

/// Checks the Maurer–Cartan equation in `𝔤 ⊗ Ω_n` exactly.
pub fn mc_simplex_verify(
    g: &LInftyAlgebra,
    candidate: &McSimplex,
    bound: u32,
) -> Result<SimplexVerdict, SimplicialError> {
    let forms = SullivanForms::new(candidate.n)?;
    for (i, _) in candidate.value.keys() {
        if *i >= g.dim() {
            return Err(SimplicialError::Unsupported(format!(
                "basis index {i} outside an algebra of dimension {}",
                g.dim()
            )));
        }
    }
    let ext = Extension::new(g, &forms);
    let degree_ok = candidate.value.keys().all(|k| ext.key_degree(k) == 1);
    let residual = ext.mc_residual(&candidate.value);
    Ok(SimplexVerdict {
        degree_ok,
        within_bound: candidate.max_form_weight() <= bound,
        residual_text: ext.show(&residual),
        residual,
    })
}

/// `f_0 − f_1 ⊗ dt` as a 1-simplex.
pub fn homotopy_to_simplex(h: &Homotopy) -> McSimplex {
    let mut value = TensorVector::new();
    for (r, v) in h.f0.coeffs().iter().enumerate() {
        let m = FormMono {
            exps: vec![r as u32],
            dts: 0,
        };
        for (i, c) in v.iter() {
            tensor_add(&mut value, (i, m.clone()), c.clone());
        }
    }
    for (r, v) in h.f1.coeffs().iter().enumerate() {
        let m = FormMono {
            exps: vec![r as u32],
            dts: 1,
        };
        for (i, c) in v.iter() {
            tensor_add(&mut value, (i, m.clone()), -c.clone());
        }
    }
    McSimplex { n: 1, value }
}

/// Inverse of [`homotopy_to_simplex`].
pub fn simplex_to_homotopy(s: &McSimplex) -> Result<Homotopy, SimplicialError> {
    if s.n != 1 {
        return Err(SimplicialError::Unsupported(format!(
            "a homotopy is a 1-simplex, got a {}-simplex",
            s.n
        )));
    }
    let mut f0 = PolynomialPath::zero();
    let mut f1 = PolynomialPath::zero();
    for ((i, m), c) in &s.value {
        let r = m.exps[0] as usize;
        let v = Vector::basis(*i);
        if m.dts == 0 {
            f0.add_term(r, c, &v);
        } else {
            f1.add_term(r, &-c.clone(), &v);
        }
    }
    Ok(Homotopy { f0, f1 })
}

/// Coefficient of `1` in a 0-simplex.
pub fn zero_simplex_value(s: &McSimplex) -> Vector {
    let mut v = Vector::zero();
    for ((i, m), c) in &s.value {
        if m.exps.iter().all(Zero::is_zero) && m.dts == 0 {
            v.add_term(*i, c.clone());
        }
    }
    v
}
