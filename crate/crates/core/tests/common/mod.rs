#![allow(dead_code)]

use linfty_core::exactlin::{int, parse_rational, BasisElement, GradedSpace, Vector};
use linfty_core::linf::LInftyAlgebra;

pub fn space(basis: &[(&str, i32, u32)]) -> GradedSpace {
    GradedSpace::new(basis.iter().map(|&(n, d, w)| BasisElement::new(n, d, w)).collect()).unwrap()
}

/// Parses "x:1,y:-1/2".
pub fn vec_of(s: &GradedSpace, lit: &str) -> Vector {
    let mut v = Vector::zero();
    for part in lit.split(',').filter(|p| !p.trim().is_empty()) {
        let (id, c) = part.split_once(':').unwrap();
        v.add_term(s.index_of(id.trim()).unwrap(), parse_rational(c).unwrap());
    }
    v
}

pub fn algebra(basis: &[(&str, i32, u32)], kmax: usize, brackets: &[(&[&str], &str)]) -> LInftyAlgebra {
    let s = space(basis);
    let mut g = LInftyAlgebra::new(s.clone(), kmax);
    for (inputs, out) in brackets {
        let idx: Vec<usize> = inputs.iter().map(|i| s.index_of(i).unwrap()).collect();
        g.add_bracket(&idx, &vec_of(&s, out)).unwrap();
    }
    g
}

pub fn abelian() -> LInftyAlgebra {
    algebra(&[("u", 0, 1), ("v", 1, 1), ("w", 1, 1)], 2, &[(&["u"], "v:1")])
}

pub fn nil2() -> LInftyAlgebra {
    algebra(&[("x", 1, 1), ("y", 2, 2)], 2, &[(&["x", "x"], "y:1")])
}

pub fn heis0() -> LInftyAlgebra {
    algebra(
        &[
            ("p", 0, 1),
            ("q", 0, 1),
            ("z", 0, 2),
            ("a", 1, 1),
            ("b", 1, 2),
            ("c", 1, 2),
            ("e", 1, 3),
        ],
        2,
        &[
            (&["p", "q"], "z:1"),
            (&["p", "a"], "b:1"),
            (&["q", "a"], "c:1"),
            (&["p", "c"], "e:1"),
            (&["z", "a"], "e:-1"),
            (&["q", "b"], "e:2"),
            (&["p"], "a:1"),
            (&["z"], "c:-1"),
        ],
    )
}

pub fn twistable() -> LInftyAlgebra {
    algebra(
        &[("g", 0, 1), ("x", 1, 1), ("u", 1, 2), ("h", 1, 2), ("y", 2, 2)],
        2,
        &[(&["u"], "y:-1/2"), (&["x", "x"], "y:1"), (&["g", "x"], "h:1")],
    )
}

pub fn one() -> linfty_core::exactlin::Rational {
    int(1)
}

pub mod random {
    use linfty_core::exactlin::{rat, BasisElement, GradedSpace, Rational, Vector};
    use linfty_core::linf::LInftyAlgebra;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
        let n = rng.gen_range(-3i64..=3);
        let d = rng.gen_range(1i64..=3);
        rat(n, d)
    }

    pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
        loop {
            let q = rational(rng);
            if q != Rational::default() {
                return q;
            }
        }
    }

    /// A random combination of the given basis indices, each kept with probability `p`.
    pub fn combination(rng: &mut ChaCha8Rng, indices: &[usize], p: f64) -> Vector {
        let mut v = Vector::zero();
        for &i in indices {
            if rng.gen_bool(p) {
                v.add_term(i, nonzero_rational(rng));
            }
        }
        v
    }

    pub fn space(rng: &mut ChaCha8Rng, n: usize, degrees: std::ops::RangeInclusive<i32>) -> GradedSpace {
        GradedSpace::new(
            (0..n)
                .map(|i| BasisElement::new(format!("e{i}"), rng.gen_range(degrees.clone()), rng.gen_range(1..=3)))
                .collect(),
        )
        .unwrap()
    }

    /// Non-decreasing tuples of length `k` over `0..n`.
    pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(n, k, i, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, k, 0, &mut Vec::new(), &mut out);
        out
    }

    /// Random degree-correct brackets with no Jacobi or weight constraints.
    pub fn table(rng: &mut ChaCha8Rng, space: GradedSpace, kmax: usize, p: f64) -> LInftyAlgebra {
        let mut g = LInftyAlgebra::new(space.clone(), kmax);
        for k in 1..=kmax {
            for t in tuples(space.dim(), k) {
                // a repeated entry of even degree forces the bracket to vanish
                if t.windows(2).any(|w| w[0] == w[1] && space.degree(w[0]).rem_euclid(2) == 0) {
                    continue;
                }
                let d: i32 = t.iter().map(|&i| space.degree(i)).sum::<i32>() + 2 - k as i32;
                let targets = space.indices_of_degree(d);
                let v = combination(rng, &targets, p);
                if !v.is_zero() {
                    g.set_bracket(&t, v).unwrap();
                }
            }
        }
        g
    }
}
