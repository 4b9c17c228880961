//! Polynomial differential forms on the standard simplex, with `t_0 = 1 − Σ_{i≥1} t_i`
//! eliminated so that `Ω_n` is a free graded commutative algebra on `t_1, …, t_n` and
//! `dt_1, …, dt_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SimplicialError;
use crate::exactlin::{format_rational, Rational};
use crate::filtered::GradedCommutative;

/// Largest simplicial dimension that is materialized.
pub const MAX_DIMENSION: usize = 2;

/// `Π t_i^{exps[i-1]} · dt_{a_1} ⋯ dt_{a_m}` with `a_1 < … < a_m` read off the bit mask.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormMono {
    pub exps: Vec<u32>,
    pub dts: u8,
}

impl FormMono {
    pub fn one(n: usize) -> Self {
        Self {
            exps: vec![0; n],
            dts: 0,
        }
    }

    pub fn form_degree(&self) -> i32 {
        self.dts.count_ones() as i32
    }

    /// Polynomial degree counting each `dt_i` as 1.
    pub fn weight(&self) -> u32 {
        self.exps.iter().sum::<u32>() + self.dts.count_ones()
    }
}

pub type Form = BTreeMap<FormMono, Rational>;

pub fn form_add(f: &mut Form, m: FormMono, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = f.entry(m.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        f.remove(&m);
    }
}

/// `Ω_n` for `n ≤ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SullivanForms {
    n: usize,
}

impl SullivanForms {
    pub fn new(n: usize) -> Result<Self, SimplicialError> {
        if n > MAX_DIMENSION {
            return Err(SimplicialError::Unsupported(format!(
                "polynomial forms are materialized for n ≤ {MAX_DIMENSION}, got n = {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn constant(&self, c: Rational) -> Form {
        let mut f = Form::new();
        form_add(&mut f, FormMono::one(self.n), c);
        f
    }

    /// The barycentric coordinate `t_i`, `0 ≤ i ≤ n`.
    pub fn t(&self, i: usize) -> Form {
        assert!(i <= self.n, "coordinate t_{i} on the {}-simplex", self.n);
        if i == 0 {
            let mut f = self.constant(Rational::one());
            for j in 1..=self.n {
                for (m, c) in self.t(j) {
                    form_add(&mut f, m, -c);
                }
            }
            return f;
        }
        let mut m = FormMono::one(self.n);
        m.exps[i - 1] = 1;
        [(m, Rational::one())].into_iter().collect()
    }

    pub fn dt(&self, i: usize) -> Form {
        self.d(&self.t(i))
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        let mut out = Form::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                if let Some((m, neg)) = mono_mul(ma, mb) {
                    let c = ca * cb;
                    form_add(&mut out, m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn d(&self, f: &Form) -> Form {
        let mut out = Form::new();
        for (m, c) in f {
            for (m2, c2) in mono_d(m) {
                form_add(&mut out, m2, c * c2);
            }
        }
        out
    }

    /// All monomials of weight `≤ bound` (each `dt` counts 1), ordered by weight then
    /// lexicographically.
    pub fn slice_basis(&self, bound: u32) -> Vec<FormMono> {
        let mut out = Vec::new();
        let masks = 1u8 << self.n;
        for mask in 0..masks {
            let k = mask.count_ones();
            if k > bound {
                continue;
            }
            let mut exps = vec![0u32; self.n];
            enumerate_exps(&mut exps, 0, bound - k, &mut |e| {
                out.push(FormMono {
                    exps: e.to_vec(),
                    dts: mask,
                })
            });
        }
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.cmp(a)));
        out
    }

    pub fn show(&self, f: &Form) -> String {
        if f.is_empty() {
            return "0".into();
        }
        f.iter()
            .map(|(m, c)| {
                let name = self.mono_name(m);
                if name == "1" {
                    format_rational(c)
                } else if c.is_one() {
                    name
                } else {
                    format!("{}·{name}", format_rational(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn enumerate_exps(exps: &mut Vec<u32>, pos: usize, budget: u32, f: &mut dyn FnMut(&[u32])) {
    if pos == exps.len() {
        f(exps);
        return;
    }
    for e in 0..=budget {
        exps[pos] = e;
        enumerate_exps(exps, pos + 1, budget - e, f);
    }
    exps[pos] = 0;
}

/// Product of monomials and whether reordering the `dt`s introduced a sign.
fn mono_mul(a: &FormMono, b: &FormMono) -> Option<(FormMono, bool)> {
    if a.dts & b.dts != 0 {
        return None;
    }
    // sign of moving each dt of b past the dts of a with a larger index
    let mut neg = false;
    for j in 0..8 {
        if b.dts & (1 << j) != 0 {
            neg ^= (a.dts >> (j + 1)).count_ones() % 2 == 1;
        }
    }
    let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
    Some((
        FormMono {
            exps,
            dts: a.dts | b.dts,
        },
        neg,
    ))
}

fn mono_d(m: &FormMono) -> Vec<(FormMono, Rational)> {
    let mut out = Vec::new();
    for i in 0..m.exps.len() {
        let e = m.exps[i];
        if e == 0 || m.dts & (1 << i) != 0 {
            continue;
        }
        let mut exps = m.exps.clone();
        exps[i] -= 1;
        // dt_i placed in front, then moved past the dts with smaller index
        let neg = (m.dts & ((1 << i) - 1)).count_ones() % 2 == 1;
        let c = Rational::from_integer(BigInt::from(e));
        out.push((
            FormMono {
                exps,
                dts: m.dts | (1 << i),
            },
            if neg { -c } else { c },
        ));
    }
    out
}

impl GradedCommutative for SullivanForms {
    type Mono = FormMono;

    fn unit(&self) -> FormMono {
        FormMono::one(self.n)
    }

    fn mono_degree(&self, m: &FormMono) -> i32 {
        m.form_degree()
    }

    fn mono_mul(&self, a: &FormMono, b: &FormMono) -> Vec<(FormMono, Rational)> {
        match mono_mul(a, b) {
            Some((m, neg)) => vec![(m, if neg { -Rational::one() } else { Rational::one() })],
            None => Vec::new(),
        }
    }

    fn mono_d(&self, m: &FormMono) -> Vec<(FormMono, Rational)> {
        mono_d(m)
    }

    fn mono_name(&self, m: &FormMono) -> String {
        let var = |i: usize| if self.n == 1 { "t".to_string() } else { format!("t{}", i + 1) };
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(var(i)),
                _ => parts.push(format!("{}^{e}", var(i))),
            }
        }
        for i in 0..self.n {
            if m.dts & (1 << i) != 0 {
                parts.push(format!("d{}", var(i)));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

/// A finite slice of `Ω_n`: monomials of weight `≤ D` with the products and differentials that
/// stay inside the slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSlice {
    pub forms: SullivanForms,
    pub bound: u32,
    pub basis: Vec<FormMono>,
    /// `(i, j) ↦ (k, c)`: `basis[i]·basis[j] = c·basis[k]`; pairs leaving the slice are absent.
    pub products: BTreeMap<(usize, usize), (usize, Rational)>,
    /// `i ↦ d(basis[i])` in slice coordinates.
    pub differential: Vec<Vec<(usize, Rational)>>,
}

pub fn omega(n: usize, bound: u32) -> Result<FormSlice, SimplicialError> {
    let forms = SullivanForms::new(n)?;
    let basis = forms.slice_basis(bound);
    let pos: BTreeMap<&FormMono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut products = BTreeMap::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            if let Some((m, neg)) = mono_mul(a, b) {
                if let Some(&k) = pos.get(&m) {
                    let c = if neg { -Rational::one() } else { Rational::one() };
                    products.insert((i, j), (k, c));
                }
            }
        }
    }
    let differential = basis
        .iter()
        .map(|m| {
            mono_d(m)
                .into_iter()
                .map(|(m2, c)| (pos[&m2], c))
                .collect()
        })
        .collect();
    Ok(FormSlice {
        forms,
        bound,
        basis,
        products,
        differential,
    })
}

impl FormSlice {
    pub fn names(&self) -> Vec<String> {
        self.basis.iter().map(|m| self.forms.mono_name(m)).collect()
    }
}

/// The cdga map `Ω_n → Ω_m` determined by the images of `t_1, …, t_n`.
#[derive(Debug, Clone)]
pub struct FormMap {
    pub source: SullivanForms,
    pub target: SullivanForms,
    pub images: Vec<Form>,
}

impl FormMap {
    pub fn apply(&self, f: &Form) -> Form {
        let tgt = &self.target;
        let dimages: Vec<Form> = self.images.iter().map(|x| tgt.d(x)).collect();
        let mut out = Form::new();
        for (m, c) in f {
            let mut term = tgt.constant(c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    term = tgt.mul(&term, &self.images[i]);
                }
            }
            for (i, di) in dimages.iter().enumerate() {
                if m.dts & (1 << i) != 0 {
                    term = tgt.mul(&term, di);
                }
            }
            for (m2, c2) in term {
                form_add(&mut out, m2, c2);
            }
        }
        out
    }

    /// Pullback along the coface of the standard simplex that omits vertex `k`.
    fn coface(n: usize, k: usize) -> Result<Self, SimplicialError> {
        let source = SullivanForms::new(n)?;
        let target = SullivanForms::new(n - 1)?;
        let images = (1..=n)
            .map(|j| match j.cmp(&k) {
                std::cmp::Ordering::Less => target.t(j),
                std::cmp::Ordering::Equal => Form::new(),
                std::cmp::Ordering::Greater => target.t(j - 1),
            })
            .collect();
        Ok(Self {
            source,
            target,
            images,
        })
    }

    /// Pullback along the codegeneracy merging vertices `k` and `k + 1`.
    fn codegeneracy(n: usize, k: usize) -> Result<Self, SimplicialError> {
        let source = SullivanForms::new(n)?;
        let target = SullivanForms::new(n + 1)?;
        let images = (1..=n)
            .map(|j| match j.cmp(&k) {
                std::cmp::Ordering::Less => target.t(j),
                std::cmp::Ordering::Equal => {
                    let mut f = target.t(k);
                    for (m, c) in target.t(k + 1) {
                        form_add(&mut f, m, c);
                    }
                    f
                }
                std::cmp::Ordering::Greater => target.t(j + 1),
            })
            .collect();
        Ok(Self {
            source,
            target,
            images,
        })
    }

    /// Face `d_i: Ω_n → Ω_{n−1}`, the pullback along the coface omitting vertex `n − i`. On
    /// `Ω_1` this makes `d_0` evaluation at `t = 0` and `d_1` evaluation at `t = 1`.
    pub fn face(n: usize, i: usize) -> Result<Self, SimplicialError> {
        if n == 0 || i > n {
            return Err(SimplicialError::Unsupported(format!("face d_{i} on Ω_{n}")));
        }
        Self::coface(n, n - i)
    }

    /// Degeneracy `s_i: Ω_n → Ω_{n+1}`, the pullback along the codegeneracy merging vertices
    /// `n − i` and `n − i + 1`.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self, SimplicialError> {
        if i > n {
            return Err(SimplicialError::Unsupported(format!("degeneracy s_{i} on Ω_{n}")));
        }
        Self::codegeneracy(n, n - i)
    }
}
