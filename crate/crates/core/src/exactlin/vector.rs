use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use super::GradedSpace;

/// Sparse vector keyed by basis index. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    coeffs: BTreeMap<usize, Rational>,
}

impl Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn from_dense(dense: &[Rational]) -> Self {
        Self::from_terms(dense.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (&i, c) in &self.coeffs {
            out[i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.coeffs {
            self.add_term(i, c * x);
        }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        for (&i, x) in &other.coeffs {
            self.add_term(i, x.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Vector) {
        for (&i, x) in &other.coeffs {
            self.add_term(i, -x.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            coeffs: self.coeffs.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            coeffs: self.coeffs.iter().map(|(&i, x)| (i, -x.clone())).collect(),
        }
    }

    pub fn plus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.sub_assign(other);
        v
    }

    /// Keeps only the coordinates selected by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> Vector {
        Vector {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&i, _)| keep(i))
                .map(|(&i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// Re-indexes coordinates through `f`; coordinates mapped to `None` are dropped.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> Option<usize>) -> Vector {
        let mut v = Vector::zero();
        for (&i, c) in &self.coeffs {
            if let Some(j) = f(i) {
                v.add_term(j, c.clone());
            }
        }
        v
    }

    /// The single degree of the support, `None` for the zero vector, `Err` if mixed.
    pub fn homogeneous_degree(&self, space: &GradedSpace) -> Result<Option<i32>, ()> {
        let mut deg = None;
        for i in self.support() {
            let d = space.degree(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(()),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Smallest weight in the support (`None` for zero).
    pub fn min_weight(&self, space: &GradedSpace) -> Option<u32> {
        self.support().map(|i| space.weight(i)).min()
    }

    /// Human-readable form such as `1/2·y - x`.
    pub fn display(&self, space: &GradedSpace) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (&i, c)) in self.coeffs.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(space.id(i));
            } else {
                let _ = write!(out, "{}·{}", format_rational(&abs), space.id(i));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{int, rat};
    use crate::exactlin::BasisElement;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut v = Vector::term(0, int(2));
        v.add_term(0, int(-2));
        assert!(v.is_zero());
        v.add_term(3, int(0));
        assert!(v.is_zero());
    }

    #[test]
    fn display_uses_coordinates() {
        let s = GradedSpace::new(vec![BasisElement::new("x", 1, 1), BasisElement::new("y", 2, 2)])
            .unwrap();
        let v = Vector::from_terms([(1, rat(1, 2)), (0, int(-1))]);
        assert_eq!(v.display(&s), "-x + 1/2·y");
        assert_eq!(Vector::term(1, rat(1, 2)).display(&s), "1/2·y");
    }
}
