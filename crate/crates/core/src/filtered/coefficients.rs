use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::FilteredError;
use crate::exactlin::{span_rank, BasisElement, GradedSpace, Rational, Vector};
use crate::linf::odd;

/// A graded commutative algebra with differential, presented on monomials.
///
/// Used both for finite coefficient algebras and for polynomial forms on simplices, where the
/// monomials are unbounded.
pub trait GradedCommutative {
    type Mono: Ord + Clone + std::fmt::Debug;

    fn unit(&self) -> Self::Mono;
    fn mono_degree(&self, m: &Self::Mono) -> i32;
    /// Product of two monomials as a combination of monomials.
    fn mono_mul(&self, a: &Self::Mono, b: &Self::Mono) -> Vec<(Self::Mono, Rational)>;
    /// Differential of a monomial.
    fn mono_d(&self, m: &Self::Mono) -> Vec<(Self::Mono, Rational)>;
    fn mono_name(&self, m: &Self::Mono) -> String;
}

/// A finite-dimensional unital graded commutative algebra with a chosen basis, the unit as a
/// basis element and an optional differential.
///
/// For local artinian algebras the maximal ideal is spanned by the non-unit basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientAlgebra {
    pub name: String,
    pub space: GradedSpace,
    pub unit: usize,
    products: Vec<Vec<Vector>>,
    differential: Vec<Vector>,
}

impl CoefficientAlgebra {
    /// Builds and validates an algebra from products of non-unit basis pairs; products with
    /// the unit are implied. Missing products are zero.
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        unit: usize,
        products: &BTreeMap<(usize, usize), Vector>,
        differential: Option<Vec<Vector>>,
    ) -> Result<Self, FilteredError> {
        let n = space.dim();
        if unit >= n {
            return Err(FilteredError::Coefficients("unit index out of range".into()));
        }
        if space.degree(unit) != 0 {
            return Err(FilteredError::Coefficients("the unit must have degree 0".into()));
        }
        let mut table = vec![vec![Vector::zero(); n]; n];
        for i in 0..n {
            table[unit][i] = Vector::basis(i);
            table[i][unit] = Vector::basis(i);
        }
        for (&(a, b), v) in products {
            if a >= n || b >= n || v.support().any(|i| i >= n) {
                return Err(FilteredError::Coefficients(format!(
                    "product ({a}, {b}) references an index outside the algebra"
                )));
            }
            if a == unit || b == unit {
                if *v != table[a][b] {
                    return Err(FilteredError::Coefficients(format!(
                        "product with the unit is not the identity on `{}`",
                        space.id(if a == unit { b } else { a })
                    )));
                }
                continue;
            }
            table[a][b] = v.clone();
        }
        let differential = differential.unwrap_or_else(|| vec![Vector::zero(); n]);
        if differential.len() != n {
            return Err(FilteredError::Coefficients(
                "differential must have one column per basis element".into(),
            ));
        }
        let a = Self {
            name: name.into(),
            space,
            unit,
            products: table,
            differential,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), FilteredError> {
        let n = self.dim();
        let id = |i: usize| self.space.id(i).to_string();
        for a in 0..n {
            for b in 0..n {
                let p = &self.products[a][b];
                let deg = self.space.degree(a) + self.space.degree(b);
                if p.support().any(|i| self.space.degree(i) != deg) {
                    return Err(FilteredError::Coefficients(format!(
                        "{}·{} is not of degree {deg}",
                        id(a),
                        id(b)
                    )));
                }
                let swapped = if odd(self.space.degree(a)) && odd(self.space.degree(b)) {
                    self.products[b][a].neg()
                } else {
                    self.products[b][a].clone()
                };
                if *p != swapped {
                    return Err(FilteredError::Coefficients(format!(
                        "{}·{} violates graded commutativity",
                        id(a),
                        id(b)
                    )));
                }
                for c in 0..n {
                    let left = self.mul(&self.mul(&Vector::basis(a), &Vector::basis(b)), &Vector::basis(c));
                    let right = self.mul(&Vector::basis(a), &self.mul(&Vector::basis(b), &Vector::basis(c)));
                    if left != right {
                        return Err(FilteredError::Coefficients(format!(
                            "({0}·{1})·{2} ≠ {0}·({1}·{2})",
                            id(a),
                            id(b),
                            id(c)
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            let da = &self.differential[a];
            if da.support().any(|i| self.space.degree(i) != self.space.degree(a) + 1) {
                return Err(FilteredError::Coefficients(format!("d({}) has the wrong degree", id(a))));
            }
            if !self.d(da).is_zero() {
                return Err(FilteredError::Coefficients(format!("d²({}) ≠ 0", id(a))));
            }
            for b in 0..n {
                let ab = &self.products[a][b];
                let mut rhs = self.mul(da, &Vector::basis(b));
                let t = self.mul(&Vector::basis(a), &self.differential[b]);
                if odd(self.space.degree(a)) {
                    rhs.sub_assign(&t);
                } else {
                    rhs.add_assign(&t);
                }
                if self.d(ab) != rhs {
                    return Err(FilteredError::Coefficients(format!(
                        "the differential is not a derivation on {}·{}",
                        id(a),
                        id(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `𝕂[t]/(t^n)` with basis `1, t, …, t^{n−1}` in degree 0.
    pub fn truncated_polynomial(n: usize) -> Self {
        assert!(n >= 1, "𝕂[t]/(t^n) needs n ≥ 1");
        let space = GradedSpace::new(
            (0..n)
                .map(|i| BasisElement::new(monomial_name("t", i), 0, 1))
                .collect(),
        )
        .expect("distinct names");
        let mut products = BTreeMap::new();
        for i in 1..n {
            for j in 1..n {
                if i + j < n {
                    products.insert((i, j), Vector::basis(i + j));
                }
            }
        }
        Self::new(format!("K[t]/(t^{n})"), space, 0, &products, None).expect("valid algebra")
    }

    pub fn dual_numbers() -> Self {
        Self::truncated_polynomial(2)
    }

    /// The ground field.
    pub fn ground_field() -> Self {
        Self::truncated_polynomial(1)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Basis indices spanning the maximal ideal.
    pub fn ideal(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| i != self.unit).collect()
    }

    pub fn product(&self, a: usize, b: usize) -> &Vector {
        &self.products[a][b]
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&(ca * cb), &self.products[a][b]);
            }
        }
        out
    }

    pub fn d(&self, x: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (a, c) in x.iter() {
            out.add_scaled(c, &self.differential[a]);
        }
        out
    }

    pub fn differential_column(&self, a: usize) -> &Vector {
        &self.differential[a]
    }

    pub fn has_differential(&self) -> bool {
        self.differential.iter().any(|v| !v.is_zero())
    }

    /// Whether the non-unit basis elements span an ideal with no unit component in products.
    pub fn is_local(&self) -> bool {
        let m = self.ideal();
        m.iter().all(|&a| {
            m.iter()
                .all(|&b| self.products[a][b].coeff(self.unit).is_zero())
        }) && self.differential.iter().all(|v| v.coeff(self.unit).is_zero())
    }
}

fn monomial_name(var: &str, i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => var.into(),
        _ => format!("{var}^{i}"),
    }
}

/// Smallest `n` with `m_A^n = 0`.
pub fn nilpotency_index(a: &CoefficientAlgebra) -> Result<usize, FilteredError> {
    if !a.is_local() {
        return Err(FilteredError::NotNilpotent(format!(
            "{}: the non-unit basis elements do not span an ideal",
            a.name
        )));
    }
    let n = a.dim();
    let m: Vec<Vector> = a.ideal().into_iter().map(Vector::basis).collect();
    let mut power = m.clone();
    let mut rank = span_rank(&power, n);
    let mut k = 1;
    while rank > 0 {
        let mut next = Vec::new();
        for p in &power {
            for g in &m {
                let v = a.mul(p, g);
                if !v.is_zero() {
                    next.push(v);
                }
            }
        }
        let next = crate::exactlin::independent_span(&next, n);
        let r = next.len();
        if r >= rank {
            return Err(FilteredError::NotNilpotent(format!(
                "{}: m^{} has the same dimension {r} as m^{k}",
                a.name,
                k + 1
            )));
        }
        power = next;
        rank = r;
        k += 1;
    }
    Ok(k)
}

impl GradedCommutative for CoefficientAlgebra {
    type Mono = usize;

    fn unit(&self) -> usize {
        self.unit
    }

    fn mono_degree(&self, m: &usize) -> i32 {
        self.space.degree(*m)
    }

    fn mono_mul(&self, a: &usize, b: &usize) -> Vec<(usize, Rational)> {
        self.products[*a][*b]
            .iter()
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    fn mono_d(&self, m: &usize) -> Vec<(usize, Rational)> {
        self.differential[*m]
            .iter()
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    fn mono_name(&self, m: &usize) -> String {
        self.space.id(*m).to_string()
    }
}

/// Unit of a generic algebra as a one-term combination.
pub fn unit_term<A: GradedCommutative>(a: &A) -> Vec<(A::Mono, Rational)> {
    vec![(a.unit(), Rational::one())]
}
