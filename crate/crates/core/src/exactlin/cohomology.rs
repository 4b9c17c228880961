use num_traits::Zero;

use super::map::{express_in, LinearMap};
use super::rational::Rational;
use super::{elim, GradedSpace, LinAlgError, Vector};

/// Cohomology of `A --d_in--> B --d_out--> C` at `B`, restricted to one degree slice of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degree: i32,
    pub cocycles: Vec<Vector>,
    pub coboundaries: Vec<Vector>,
    /// Cocycles completing the coboundary basis to a cocycle basis.
    pub representatives: Vec<Vector>,
    pub dimension: usize,
    ambient_dim: usize,
}

impl CohomologyResult {
    /// Coordinates of a cocycle's class in the basis of representatives.
    ///
    /// Returns `None` if `z` is not a cocycle of this slice.
    pub fn class_of(&self, z: &Vector) -> Option<Vec<Rational>> {
        let mut basis = self.coboundaries.clone();
        basis.extend(self.representatives.iter().cloned());
        let c = express_in(&basis, z, self.ambient_dim)?;
        Some(c[self.coboundaries.len()..].to_vec())
    }

    pub fn is_exact(&self, z: &Vector) -> bool {
        self.class_of(z)
            .is_some_and(|c| c.iter().all(|x| x.is_zero()))
    }

    pub fn is_cocycle(&self, z: &Vector) -> bool {
        self.class_of(z).is_some()
    }

    /// The representative combination with the given class coordinates.
    pub fn lift_class(&self, coords: &[Rational]) -> Vector {
        let mut v = Vector::zero();
        for (c, r) in coords.iter().zip(&self.representatives) {
            v.add_scaled(c, r);
        }
        v
    }
}

/// Computes `ker(d_out) / im(d_in)` in the given degree of the middle space.
///
/// `d_in` must have its target equal (as a based space) to the source of `d_out`.
pub fn cohomology(
    d_in: &LinearMap,
    d_out: &LinearMap,
    degree: i32,
) -> Result<CohomologyResult, LinAlgError> {
    if d_in.target != d_out.source {
        return Err(LinAlgError::Structure(
            "incoming differential does not land in the source of the outgoing one".into(),
        ));
    }
    let mid = &d_in.target;
    // the incoming slice is everything mapping into `degree`
    let in_cols = d_in.source.indices_of_degree(degree - d_in.shift);
    for &j in &in_cols {
        let img = d_out.apply(&d_in.columns[j]);
        if !img.is_zero() {
            return Err(LinAlgError::NotAComplex {
                witness: d_in.source.id(j).to_string(),
                image: img.display(&d_out.target),
            });
        }
    }
    let slice = mid.indices_of_degree(degree);
    let cocycles = d_out.kernel_on(&slice);
    let coboundaries = d_in.image_on(&in_cols);
    Ok(finish(mid, degree, cocycles, coboundaries))
}

/// Cohomology of a single degree-1 self-map `d` of a space at `degree`.
pub fn cohomology_of(d: &LinearMap, degree: i32) -> Result<CohomologyResult, LinAlgError> {
    cohomology(d, d, degree)
}

fn finish(
    mid: &GradedSpace,
    degree: i32,
    cocycles: Vec<Vector>,
    coboundaries: Vec<Vector>,
) -> CohomologyResult {
    let n = mid.dim();
    let representatives = complement(&coboundaries, &cocycles, n);
    let dimension = representatives.len();
    CohomologyResult {
        degree,
        cocycles,
        coboundaries,
        representatives,
        dimension,
        ambient_dim: n,
    }
}

/// Elements of `span` (in order) that extend `sub` to a basis of `sub + span`.
fn complement(sub: &[Vector], span: &[Vector], n: usize) -> Vec<Vector> {
    let mut acc: Vec<Vector> = sub.to_vec();
    let mut rank = elim::rank(acc.iter().map(|v| v.to_dense(n)).collect(), n);
    let mut out = Vec::new();
    for v in span {
        acc.push(v.clone());
        let r = elim::rank(acc.iter().map(|v| v.to_dense(n)).collect(), n);
        if r > rank {
            rank = r;
            out.push(v.clone());
        } else {
            acc.pop();
        }
    }
    out
}

/// Basis of `space / span(subspace)` with the projection.
///
/// The quotient basis consists of the non-pivot basis elements of the reduced subspace, so
/// degrees and weights are inherited. The subspace vectors must be homogeneous.
pub fn quotient_basis(
    space: &GradedSpace,
    subspace: &[Vector],
) -> Result<(GradedSpace, LinearMap), LinAlgError> {
    let n = space.dim();
    for v in subspace {
        if v.support().any(|i| i >= n) {
            return Err(LinAlgError::Structure(
                "subspace vector outside the ambient space".into(),
            ));
        }
        if v.homogeneous_degree(space).is_err() {
            return Err(LinAlgError::Structure(format!(
                "subspace vector {} is not homogeneous",
                v.display(space)
            )));
        }
    }
    let e = elim::rref(subspace.iter().map(|v| v.to_dense(n)).collect(), n);
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
    let quotient = space.restrict(&kept);
    let pos: Vec<Option<usize>> = {
        let mut p = vec![None; n];
        for (k, &i) in kept.iter().enumerate() {
            p[i] = Some(k);
        }
        p
    };
    // a pivot basis vector e_p is congruent to -Σ_{free f} R[p][f] e_f
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        if let Some(k) = pos[i] {
            columns.push(Vector::basis(k));
        } else {
            let r = e.pivots.iter().position(|&p| p == i).expect("pivot row");
            let mut v = Vector::zero();
            for (f, c) in e.rows[r].iter().enumerate() {
                if f != i && !c.is_zero() {
                    v.add_term(pos[f].expect("free column"), -c.clone());
                }
            }
            columns.push(v);
        }
    }
    let proj = LinearMap::new(space.clone(), quotient.clone(), 0, columns)?;
    Ok((quotient, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::int;
    use crate::exactlin::BasisElement;

    fn line(names: &[&str], deg: i32) -> GradedSpace {
        GradedSpace::new(names.iter().map(|n| BasisElement::new(*n, deg, 1)).collect()).unwrap()
    }

    #[test]
    fn zero_differential() {
        let s = line(&["a", "b", "c"], 1);
        let d = LinearMap::zero(s.clone(), s, 1);
        assert_eq!(cohomology_of(&d, 1).unwrap().dimension, 3);
    }

    #[test]
    fn identity_two_term() {
        let a = line(&["a"], 0);
        let b = line(&["b"], 1);
        let d_in = LinearMap::new(a, b.clone(), 1, vec![Vector::basis(0)]).unwrap();
        let d_out = LinearMap::zero(b, GradedSpace::empty(), 1);
        let h = cohomology(&d_in, &d_out, 1).unwrap();
        assert_eq!(h.dimension, 0);
    }

    #[test]
    fn not_a_complex_has_witness() {
        let a = line(&["a"], 0);
        let b = line(&["b"], 1);
        let c = line(&["c"], 2);
        let d_in = LinearMap::new(a, b.clone(), 1, vec![Vector::basis(0)]).unwrap();
        let d_out = LinearMap::new(b, c, 1, vec![Vector::basis(0)]).unwrap();
        match cohomology(&d_in, &d_out, 1) {
            Err(LinAlgError::NotAComplex { witness, .. }) => assert_eq!(witness, "a"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn class_coordinates() {
        let s = line(&["a", "b"], 1);
        let d = LinearMap::zero(s.clone(), s, 1);
        let h = cohomology_of(&d, 1).unwrap();
        let z = Vector::from_terms([(0, int(2)), (1, int(-1))]);
        assert_eq!(h.class_of(&z).unwrap(), vec![int(2), int(-1)]);
        assert_eq!(h.lift_class(&[int(2), int(-1)]), z);
    }

    #[test]
    fn quotient_edges() {
        let s = line(&["a", "b", "c"], 0);
        let (q, p) = quotient_basis(&s, &[]).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(p, LinearMap::identity(s.clone()));
        let all: Vec<Vector> = (0..3).map(Vector::basis).collect();
        assert_eq!(quotient_basis(&s, &all).unwrap().0.dim(), 0);
        let v = Vector::from_terms([(0, int(1)), (1, int(1))]);
        let (q, p) = quotient_basis(&s, &[v.clone()]).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(p.apply(&v).is_zero());
    }
}
