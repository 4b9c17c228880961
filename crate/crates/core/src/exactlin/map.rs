use num_traits::Zero;

use super::elim;
use super::rational::Rational;
use super::{GradedSpace, LinAlgError, Vector};

/// A linear map between graded spaces given by its columns (images of source basis vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub shift: i32,
    pub columns: Vec<Vector>,
}

impl LinearMap {
    /// Builds a map and checks that every column is homogeneous of degree `deg(source) + shift`.
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        shift: i32,
        columns: Vec<Vector>,
    ) -> Result<Self, LinAlgError> {
        if columns.len() != source.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: source.dim(),
                found: columns.len(),
            });
        }
        for (j, col) in columns.iter().enumerate() {
            for i in col.support() {
                if i >= target.dim() {
                    return Err(LinAlgError::Structure(format!(
                        "column `{}` references target index {i} outside the target space",
                        source.id(j)
                    )));
                }
                if target.degree(i) != source.degree(j) + shift {
                    return Err(LinAlgError::Structure(format!(
                        "image of `{}` has a component `{}` of degree {}, expected {}",
                        source.id(j),
                        target.id(i),
                        target.degree(i),
                        source.degree(j) + shift
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            shift,
            columns,
        })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, shift: i32) -> Self {
        let columns = vec![Vector::zero(); source.dim()];
        Self {
            source,
            target,
            shift,
            columns,
        }
    }

    pub fn identity(space: GradedSpace) -> Self {
        let columns = (0..space.dim()).map(Vector::basis).collect();
        Self {
            source: space.clone(),
            target: space,
            shift: 0,
            columns,
        }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            out.add_scaled(c, &self.columns[j]);
        }
        out
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap, LinAlgError> {
        if first.target.dim() != self.source.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.source.dim(),
                found: first.target.dim(),
            });
        }
        Ok(LinearMap {
            source: first.source.clone(),
            target: self.target.clone(),
            shift: self.shift + first.shift,
            columns: first.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    /// Dense matrix restricted to the given source columns and target rows.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.columns[c].coeff(r)).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<usize> = (0..self.target.dim()).collect();
        let cols: Vec<usize> = (0..self.source.dim()).collect();
        elim::rank(self.block(&rows, &cols), cols.len())
    }

    /// Kernel restricted to the listed source indices, as vectors in the full source.
    pub fn kernel_on(&self, cols: &[usize]) -> Vec<Vector> {
        let rows = self.support_rows(cols);
        let e = elim::rref(self.block(&rows, cols), cols.len());
        e.kernel()
            .into_iter()
            .map(|k| Vector::from_terms(cols.iter().copied().zip(k)))
            .collect()
    }

    pub fn kernel(&self) -> Vec<Vector> {
        let cols: Vec<usize> = (0..self.source.dim()).collect();
        self.kernel_on(&cols)
    }

    /// Independent spanning set of the image of the listed source indices.
    pub fn image_on(&self, cols: &[usize]) -> Vec<Vector> {
        let vs: Vec<Vector> = cols.iter().map(|&c| self.columns[c].clone()).collect();
        independent_span(&vs, self.target.dim())
    }

    fn support_rows(&self, cols: &[usize]) -> Vec<usize> {
        let mut rows: Vec<usize> = cols
            .iter()
            .flat_map(|&c| self.columns[c].support())
            .collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }
}

/// Row-reduced basis of the span of `vs` inside an ambient space of dimension `n`.
pub fn independent_span(vs: &[Vector], n: usize) -> Vec<Vector> {
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.to_dense(n)).collect();
    let e = elim::rref(rows, n);
    e.rows.iter().map(|r| Vector::from_dense(r)).collect()
}

/// Dimension of the span of `vs`.
pub fn span_rank(vs: &[Vector], n: usize) -> usize {
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.to_dense(n)).collect();
    elim::rank(rows, n)
}

/// Coordinates of `v` in terms of `vs` (`v = Σ c_i vs_i`), if `v` lies in their span.
pub fn express_in(vs: &[Vector], v: &Vector, n: usize) -> Option<Vec<Rational>> {
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|r| vs.iter().map(|c| c.coeff(r)).collect())
        .collect();
    let b: Vec<Rational> = (0..n).map(|r| v.coeff(r)).collect();
    if vs.is_empty() {
        return if v.is_zero() { Some(Vec::new()) } else { None };
    }
    elim::solve(&a, &b, vs.len())
}

/// One preimage of `target` and a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub solution: Option<Vector>,
    pub kernel: Vec<Vector>,
}

/// Solves `map(x) = target` exactly.
pub fn solve_linear(map: &LinearMap, target: &Vector) -> Result<SolveResult, LinAlgError> {
    if let Some(i) = target.support().find(|&i| i >= map.target.dim()) {
        return Err(LinAlgError::DimensionMismatch {
            expected: map.target.dim(),
            found: i + 1,
        });
    }
    let n = map.source.dim();
    let rows: Vec<usize> = (0..map.target.dim()).collect();
    let cols: Vec<usize> = (0..n).collect();
    let a = map.block(&rows, &cols);
    let b: Vec<Rational> = rows.iter().map(|&r| target.coeff(r)).collect();
    let solution = if n == 0 {
        target.is_zero().then(Vector::zero)
    } else {
        elim::solve(&a, &b, n).map(|x| Vector::from_dense(&x))
    };
    Ok(SolveResult {
        solution,
        kernel: map.kernel(),
    })
}

/// Solves `map(x) = target` with `x` restricted to the listed source indices.
pub fn solve_on(map: &LinearMap, cols: &[usize], target: &Vector) -> Option<Vector> {
    let mut rows: Vec<usize> = cols
        .iter()
        .flat_map(|&c| map.columns[c].support())
        .chain(target.support())
        .collect();
    rows.sort_unstable();
    rows.dedup();
    if cols.is_empty() {
        return target.is_zero().then(Vector::zero);
    }
    let a = map.block(&rows, cols);
    let b: Vec<Rational> = rows.iter().map(|&r| target.coeff(r)).collect();
    elim::solve(&a, &b, cols.len()).map(|x| {
        Vector::from_terms(cols.iter().copied().zip(x).filter(|(_, c)| !c.is_zero()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{int, rat};
    use crate::exactlin::BasisElement;

    fn plane() -> GradedSpace {
        GradedSpace::new(vec![BasisElement::new("a", 0, 1), BasisElement::new("b", 0, 1)]).unwrap()
    }

    #[test]
    fn zero_map_solution_and_kernel() {
        let m = LinearMap::zero(plane(), plane(), 0);
        let r = solve_linear(&m, &Vector::zero()).unwrap();
        assert_eq!(r.solution, Some(Vector::zero()));
        assert_eq!(r.kernel.len(), 2);
    }

    #[test]
    fn identity_solution() {
        let m = LinearMap::identity(plane());
        let t = Vector::from_terms([(0, int(3)), (1, rat(-1, 2))]);
        let r = solve_linear(&m, &t).unwrap();
        assert_eq!(r.solution, Some(t));
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn rank_one_map() {
        // rows (1,2),(2,4): columns are (1,2) and (2,4)
        let cols = vec![
            Vector::from_terms([(0, int(1)), (1, int(2))]),
            Vector::from_terms([(0, int(2)), (1, int(4))]),
        ];
        let m = LinearMap::new(plane(), plane(), 0, cols).unwrap();
        let r = solve_linear(&m, &Vector::from_terms([(0, int(1)), (1, int(2))])).unwrap();
        let x = r.solution.unwrap();
        assert_eq!(m.apply(&x), Vector::from_terms([(0, int(1)), (1, int(2))]));
        assert_eq!(r.kernel, vec![Vector::from_terms([(0, int(-2)), (1, int(1))])]);
        assert!(solve_linear(&m, &Vector::basis(0)).unwrap().solution.is_none());
    }

    #[test]
    fn degree_checked_columns() {
        let src = GradedSpace::new(vec![BasisElement::new("a", 0, 1)]).unwrap();
        let tgt = GradedSpace::new(vec![BasisElement::new("b", 0, 1)]).unwrap();
        assert!(LinearMap::new(src, tgt, 1, vec![Vector::basis(0)]).is_err());
    }

    #[test]
    fn mismatched_target_is_structural_error() {
        let m = LinearMap::identity(plane());
        assert!(matches!(
            solve_linear(&m, &Vector::basis(5)),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }
}
