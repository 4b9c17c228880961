use std::collections::BTreeMap;

use num_traits::Zero;

use super::twist::twist;
use super::{MCElement, McError};
use crate::exactlin::{
    cohomology_of, solve_on, span_rank, CohomologyResult, LinearMap, Rational, Vector,
};
use crate::filtered::{
    extend_scalars, tensor_add, CoefficientAlgebra, Extension, TensorVector,
};
use crate::linf::LInftyAlgebra;

/// First-order deformations at `φ`, computed twice: through the cohomology of `𝔤^φ`, and
/// directly in `𝔤 ⊗ 𝕂[t]/(t²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrder {
    /// `Z¹(𝔤^φ)`.
    pub cocycles: Vec<Vector>,
    /// `B¹(𝔤^φ)`.
    pub coboundaries: Vec<Vector>,
    /// Representatives of a basis of `H¹(𝔤^φ)`.
    pub representatives: Vec<Vector>,
    pub h1_dim: usize,
    /// Dimension of `{φ_1 : φ + φ_1 t is Maurer–Cartan}`, from residuals in the extension.
    pub direct_solutions_dim: usize,
    /// Dimension of the tangent space to the gauge orbit through `φ`.
    pub direct_gauge_dim: usize,
}

impl FirstOrder {
    /// Order-1 deformations modulo gauge, from the direct computation.
    pub fn mod_gauge_dim(&self) -> usize {
        self.direct_solutions_dim - self.direct_gauge_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    /// Power of `t` at which lifting failed.
    pub order: usize,
    /// The degree-2 cocycle `o_k` of `𝔤^φ`.
    pub cocycle: Vector,
    /// Its coordinates in the chosen basis of `H²(𝔤^φ)`.
    pub class: Vec<Rational>,
}

/// One attempted lift `Φ = Σ φ_k t^k` starting from a first-order term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftBranch {
    /// `φ_1, φ_2, …` for the orders reached.
    pub terms: Vec<Vector>,
    pub obstruction: Option<Obstruction>,
}

impl LiftBranch {
    pub fn reached_order(&self) -> usize {
        self.terms.len()
    }
}

/// The order-2 obstruction as a quadratic map `H¹ → H²`:
/// `c ↦ [½ l_2^φ(z(c), z(c))]` with `z(c) = Σ c_i r_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticObstruction {
    pub h1_dim: usize,
    pub h2_dim: usize,
    /// For each `H²` coordinate, the coefficients of `c_i c_j` for `i ≤ j`.
    pub coefficients: Vec<BTreeMap<(usize, usize), Rational>>,
}

impl QuadraticObstruction {
    pub fn eval(&self, c: &[Rational]) -> Vec<Rational> {
        self.coefficients
            .iter()
            .map(|q| {
                q.iter()
                    .map(|(&(i, j), v)| v * &c[i] * &c[j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(BTreeMap::is_empty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationLiftReport {
    /// Coefficients `𝕂[t]/(t^n)`.
    pub n: usize,
    pub first_order: FirstOrder,
    pub h2: CohomologyResult,
    /// Present when `n ≥ 3`.
    pub quadratic: Option<QuadraticObstruction>,
    /// One branch per `H¹` representative.
    pub branches: Vec<LiftBranch>,
}

/// Order-by-order deformations of `φ` over `𝕂[t]/(t^n)`.
pub fn lift_deformation(
    g: &LInftyAlgebra,
    phi: &MCElement,
    n: usize,
) -> Result<DeformationLiftReport, McError> {
    if n < 2 {
        return Err(McError::Internal("lifting needs 𝕂[t]/(t^n) with n ≥ 2".into()));
    }
    let tw = twist(g, phi)?.algebra;
    let d = tw.differential();
    let h1 = cohomology_of(&d, 1)?;
    let h2 = cohomology_of(&d, 2)?;
    let (direct_solutions_dim, direct_gauge_dim) = first_order_direct(g, phi)?;
    let first_order = FirstOrder {
        cocycles: h1.cocycles.clone(),
        coboundaries: h1.coboundaries.clone(),
        representatives: h1.representatives.clone(),
        h1_dim: h1.dimension,
        direct_solutions_dim,
        direct_gauge_dim,
    };
    let quadratic = if n >= 3 {
        Some(quadratic_obstruction(&tw, &h1, &h2)?)
    } else {
        None
    };
    let mut branches = Vec::with_capacity(h1.representatives.len());
    for r in &h1.representatives {
        branches.push(lift_branch(&tw, &d, &h2, r, n)?);
    }
    Ok(DeformationLiftReport {
        n,
        first_order,
        h2,
        quadratic,
        branches,
    })
}

/// Dimensions of the first-order solution space and of the infinitesimal gauge orbit, both
/// read off the materialized extension `𝔤 ⊗ 𝕂[t]/(t²)`.
fn first_order_direct(g: &LInftyAlgebra, phi: &MCElement) -> Result<(usize, usize), McError> {
    let a = CoefficientAlgebra::dual_numbers();
    let e = extend_scalars(g, &a, false)?;
    let phi_e = e.embed(phi.value(), 0);
    let ones = g.space.indices_of_degree(1);
    // F(φ + e_v t) = F(φ) + (d_φ e_v) t, and F(φ) = 0
    let cols: Vec<Vector> = ones
        .iter()
        .map(|&v| {
            let tau = phi_e.plus(&e.embed(&Vector::basis(v), 1));
            e.component(&super::curvature(&e.algebra, &tau), 1)
        })
        .collect();
    let map = LinearMap {
        source: g.space.restrict(&ones),
        target: g.space.clone(),
        shift: 1,
        columns: cols,
    };
    let solutions = map.kernel().len();
    let gauge = if g.is_dg_lie() {
        let od = crate::gauge::orbit_differential(g, phi)
            .map_err(|err| McError::Internal(err.to_string()))?;
        span_rank(&od.columns, g.dim())
    } else {
        // outside the Lie case the infinitesimal action is ξ ↦ −d_φ ξ
        let tw = super::twist::twist_unchecked(&e.algebra, &phi_e);
        let zeros = g.space.indices_of_degree(0);
        let imgs: Vec<Vector> = zeros
            .iter()
            .map(|&i| e.component(&tw.bracket_basis(&[e.index(i, 1).expect("t")]), 1))
            .collect();
        span_rank(&imgs, g.dim())
    };
    Ok((solutions, gauge))
}

fn quadratic_obstruction(
    tw: &LInftyAlgebra,
    h1: &CohomologyResult,
    h2: &CohomologyResult,
) -> Result<QuadraticObstruction, McError> {
    let reps = &h1.representatives;
    let mut coefficients = vec![BTreeMap::new(); h2.dimension];
    let half = Rational::new(1.into(), 2.into());
    for i in 0..reps.len() {
        for j in i..reps.len() {
            // c_i c_j appears with l_2(r_i, r_j) for i < j and ½ l_2(r_i, r_i) for i = j
            let mut v = tw.eval_unchecked(&[&reps[i], &reps[j]]);
            if i == j {
                v = v.scaled(&half);
            }
            let class = h2.class_of(&v).ok_or_else(|| {
                McError::Internal("order-2 obstruction is not a cocycle".into())
            })?;
            for (p, c) in class.into_iter().enumerate() {
                if !c.is_zero() {
                    coefficients[p].insert((i, j), c);
                }
            }
        }
    }
    Ok(QuadraticObstruction {
        h1_dim: reps.len(),
        h2_dim: h2.dimension,
        coefficients,
    })
}

/// The `t^k` coefficient of the curvature of `Σ_{j<k} φ_j t^j` in `tw ⊗ 𝕂[t]/(t^{k+1})`, after
/// checking that lower coefficients vanish.
pub fn obstruction_at(tw: &LInftyAlgebra, terms: &[Vector]) -> Result<Vector, McError> {
    let k = terms.len() + 1;
    let a = CoefficientAlgebra::truncated_polynomial(k + 1);
    let ext = Extension::new(tw, &a);
    let mut big: TensorVector<usize> = TensorVector::new();
    for (j, v) in terms.iter().enumerate() {
        for (i, c) in v.iter() {
            tensor_add(&mut big, (i, j + 1), c.clone());
        }
    }
    let res = ext.mc_residual(&big);
    let mut top = Vector::zero();
    for ((i, p), c) in res {
        if p < k {
            return Err(McError::Internal(format!(
                "curvature does not vanish below order {k} (component at t^{p})"
            )));
        }
        top.add_term(i, c);
    }
    Ok(top)
}

/// Lifts the first-order term `start` as far as `𝕂[t]/(t^n)` allows, choosing at each order the
/// particular solution from elimination.
pub fn lift_branch(
    tw: &LInftyAlgebra,
    d: &LinearMap,
    h2: &CohomologyResult,
    start: &Vector,
    n: usize,
) -> Result<LiftBranch, McError> {
    let ones = tw.space.indices_of_degree(1);
    let mut terms = vec![start.clone()];
    for k in 2..n {
        let o = obstruction_at(tw, &terms)?;
        match solve_on(d, &ones, &o.neg()) {
            Some(x) => terms.push(x),
            None => {
                let class = h2.class_of(&o).ok_or_else(|| {
                    McError::Internal(format!("obstruction at order {k} is not a cocycle"))
                })?;
                return Ok(LiftBranch {
                    terms,
                    obstruction: Some(Obstruction {
                        order: k,
                        cocycle: o,
                        class,
                    }),
                });
            }
        }
    }
    // the final curvature must vanish modulo t^n
    obstruction_at(tw, &terms)?;
    Ok(LiftBranch {
        terms,
        obstruction: None,
    })
}
