use std::collections::HashMap;

use super::LinAlgError;

/// One basis vector of a graded space: a name, a cohomological degree and a filtration weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub id: String,
    pub degree: i32,
    pub weight: u32,
}

impl BasisElement {
    pub fn new(id: impl Into<String>, degree: i32, weight: u32) -> Self {
        Self {
            id: id.into(),
            degree,
            weight,
        }
    }
}

/// A finite-dimensional graded vector space with an ordered basis.
///
/// The basis order is significant: it fixes canonical bracket tuples and pivoting order.
/// Weights are at least 1, so the first filtration stage is the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self, LinAlgError> {
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if b.weight == 0 {
                return Err(LinAlgError::Structure(format!(
                    "basis element `{}` has weight 0; weights start at 1",
                    b.id
                )));
            }
            if index.insert(b.id.clone(), i).is_some() {
                return Err(LinAlgError::Structure(format!(
                    "duplicate basis identifier `{}`",
                    b.id
                )));
            }
        }
        Ok(Self { basis, index })
    }

    pub fn empty() -> Self {
        Self {
            basis: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.basis[i].weight
    }

    pub fn id(&self, i: usize) -> &str {
        &self.basis[i].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Basis indices of the given degree, in basis order.
    pub fn indices_of_degree(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    pub fn dim_of_degree(&self, degree: i32) -> usize {
        self.basis.iter().filter(|b| b.degree == degree).count()
    }

    /// Sorted list of degrees that occur.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_weight(&self) -> u32 {
        self.basis.iter().map(|b| b.weight).max().unwrap_or(0)
    }

    /// Subspace spanned by the listed basis indices (kept in the given order).
    pub fn restrict(&self, indices: &[usize]) -> GradedSpace {
        let basis: Vec<_> = indices.iter().map(|&i| self.basis[i].clone()).collect();
        let index = basis
            .iter()
            .enumerate()
            .map(|(k, b)| (b.id.clone(), k))
            .collect();
        GradedSpace { basis, index }
    }
}
