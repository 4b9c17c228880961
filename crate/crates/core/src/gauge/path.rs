use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactlin::{inv_factorial, Rational, Vector};
use crate::linf::LInftyAlgebra;

/// A polynomial `Σ_r c_r t^r` with coefficients in `𝔤`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolynomialPath {
    coeffs: Vec<Vector>,
}

impl PolynomialPath {
    pub fn new(coeffs: Vec<Vector>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn constant(v: Vector) -> Self {
        Self::new(vec![v])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Vector::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Vector] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> Vector {
        self.coeffs.get(r).cloned().unwrap_or_default()
    }

    /// Polynomial degree in `t` (0 for the zero path).
    pub fn t_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, r: usize, c: &Rational, v: &Vector) {
        if self.coeffs.len() <= r {
            self.coeffs.resize(r + 1, Vector::zero());
        }
        self.coeffs[r].add_scaled(c, v);
        self.normalize();
    }

    pub fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|r| self.coeff(r).plus(&other.coeff(r))).collect())
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(Vector::neg).collect())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v.scaled(c)).collect())
    }

    pub fn eval(&self, t: &Rational) -> Vector {
        let mut out = Vector::zero();
        for v in self.coeffs.iter().rev() {
            out = out.scaled(t);
            out.add_assign(v);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(r, v)| v.scaled(&Rational::from_integer(BigInt::from(r))))
                .collect(),
        )
    }

    /// `∫_0^t`.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![Vector::zero()];
        for (r, v) in self.coeffs.iter().enumerate() {
            coeffs.push(v.scaled(&Rational::new(BigInt::from(1), BigInt::from(r + 1))));
        }
        Self::new(coeffs)
    }

    /// Coefficientwise image under a linear operation on `𝔤`.
    pub fn map(&self, f: impl Fn(&Vector) -> Vector) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    /// `l_k` of polynomial arguments, multiplied out in `t`.
    pub fn bracket(g: &LInftyAlgebra, args: &[&PolynomialPath]) -> Self {
        let mut out = Self::zero();
        if args.iter().any(|a| a.is_zero()) {
            return out;
        }
        let mut idx = vec![0usize; args.len()];
        loop {
            let vs: Vec<&Vector> = args.iter().zip(&idx).map(|(a, &r)| &a.coeffs[r]).collect();
            let v = g.eval_unchecked(&vs);
            if !v.is_zero() {
                out.add_term(idx.iter().sum(), &Rational::from_integer(1.into()), &v);
            }
            let mut p = 0;
            while p < args.len() {
                idx[p] += 1;
                if idx[p] < args[p].coeffs.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == args.len() {
                return out;
            }
        }
    }

    pub fn display(&self, g: &LInftyAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(r, v)| match r {
                0 => format!("({})", g.show(v)),
                1 => format!("({})·t", g.show(v)),
                _ => format!("({})·t^{r}", g.show(v)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A homotopy `f_0 + f_1 dt` between Maurer–Cartan elements in the dg Lie case.
///
/// The defining equations are `δf_0 + ½[f_0, f_0] = 0` and `df_0/dt = −δf_1 + [f_1, f_0]`. As an
/// element of `𝔤 ⊗ Ω_1` with the sign conventions of the extension of scalars it is
/// `f_0 − f_1 ⊗ dt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    pub f0: PolynomialPath,
    pub f1: PolynomialPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyViolation {
    /// `δf_0 + ½[f_0, f_0]` as a polynomial.
    Curvature(String),
    /// `df_0/dt + δf_1 − [f_1, f_0]`.
    Flow(String),
    Degree(String),
}

impl Homotopy {
    pub fn constant(tau: Vector) -> Self {
        Self {
            f0: PolynomialPath::constant(tau),
            f1: PolynomialPath::zero(),
        }
    }

    /// `δf_0 + ½[f_0, f_0]`, computed with all brackets of `g`.
    pub fn curvature(&self, g: &LInftyAlgebra) -> PolynomialPath {
        let mut out = PolynomialPath::zero();
        for k in 1..=g.brackets.effective_arity() {
            let args = vec![&self.f0; k];
            out = out.plus(&PolynomialPath::bracket(g, &args).scaled(&inv_factorial(k)));
        }
        out
    }

    /// `df_0/dt + δf_1 − [f_1, f_0]`.
    pub fn flow_defect(&self, g: &LInftyAlgebra) -> PolynomialPath {
        let d1 = PolynomialPath::bracket(g, &[&self.f1]);
        let br = PolynomialPath::bracket(g, &[&self.f1, &self.f0]);
        self.f0.derivative().plus(&d1).minus(&br)
    }

    pub fn violations(&self, g: &LInftyAlgebra) -> Vec<HomotopyViolation> {
        let mut out = Vec::new();
        for (p, d) in [(&self.f0, 1), (&self.f1, 0)] {
            for v in p.coeffs() {
                if !v.is_zero() && v.homogeneous_degree(&g.space) != Ok(Some(d)) {
                    out.push(HomotopyViolation::Degree(format!(
                        "coefficient {} should have degree {d}",
                        g.show(v)
                    )));
                }
            }
        }
        let c = self.curvature(g);
        if !c.is_zero() {
            out.push(HomotopyViolation::Curvature(c.display(g)));
        }
        let f = self.flow_defect(g);
        if !f.is_zero() {
            out.push(HomotopyViolation::Flow(f.display(g)));
        }
        out
    }

    pub fn is_valid(&self, g: &LInftyAlgebra) -> bool {
        self.violations(g).is_empty()
    }

    pub fn start(&self) -> Vector {
        self.f0.eval(&Rational::zero())
    }

    pub fn end(&self) -> Vector {
        self.f0.eval(&Rational::from_integer(1.into()))
    }
}
