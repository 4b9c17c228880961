mod common;

use std::collections::BTreeMap;

use common::random;
use common::*;
use linfty_core::exactlin::{BasisElement, GradedSpace, Vector};
use linfty_core::filtered::{
    check_filtration, extend_scalars, truncate, truncation_projection, CoefficientAlgebra, Extension,
    TensorVector,
};
use linfty_core::linf::{verify_structure, LInftyAlgebra};
use linfty_core::mc::{twist, MCElement};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<LInftyAlgebra> {
    vec![abelian(), nil2(), heis0(), twistable()]
}

/// `𝕂[s, e]/(s², e²)` with `|s| = −1`, `|e| = 0` and `ds = e`.
fn koszul_cdga() -> CoefficientAlgebra {
    let space = GradedSpace::new(vec![
        BasisElement::new("1", 0, 1),
        BasisElement::new("s", -1, 1),
        BasisElement::new("e", 0, 1),
        BasisElement::new("se", -1, 1),
    ])
    .unwrap();
    let mut products = BTreeMap::new();
    products.insert((1, 2), Vector::basis(3));
    products.insert((2, 1), Vector::basis(3));
    let d = vec![Vector::zero(), Vector::basis(2), Vector::zero(), Vector::zero()];
    CoefficientAlgebra::new("K[s,e]/(s²,e²)", space, 0, &products, Some(d)).unwrap()
}

#[test]
fn corpus_is_filtered() {
    for g in corpus() {
        assert!(check_filtration(&g).passes());
    }
}

#[test]
fn truncated_algebras_are_nilpotent() {
    for g in [heis0(), twistable(), nil2()] {
        for r in 1..=4 {
            let t = truncate(&g, r).unwrap();
            assert!(verify_structure(&t, 4).is_algebra());
            // any r-fold nested bracket raises weight to at least r + 1 and so vanishes
            for x in 0..t.dim() {
                for y in 0..t.dim() {
                    let mut v = Vector::basis(y);
                    for _ in 0..r {
                        v = t.eval_bracket(2, &[&Vector::basis(x), &v]).unwrap();
                    }
                    assert!(v.is_zero(), "ad^{r} nonzero in truncation of order {r}");
                }
            }
        }
    }
}

#[test]
fn truncation_projection_is_a_strict_morphism() {
    for g in corpus() {
        for r in 1..=3 {
            let t = truncate(&g, r).unwrap();
            let p = truncation_projection(&g, r);
            for (k, tuple, v) in g.brackets.iter() {
                let images: Vec<Vector> = tuple.iter().map(|&i| p.apply(&Vector::basis(i))).collect();
                let refs: Vec<&Vector> = images.iter().collect();
                assert_eq!(p.apply(v), t.eval_bracket(k, &refs).unwrap());
            }
        }
    }
}

#[test]
fn truncation_commutes_with_extension() {
    let coeffs = [
        CoefficientAlgebra::dual_numbers(),
        CoefficientAlgebra::truncated_polynomial(3),
        koszul_cdga(),
    ];
    for g in corpus() {
        for a in &coeffs {
            for r in 1..=3 {
                let before = extend_scalars(&truncate(&g, r).unwrap(), a, false).unwrap().algebra;
                let after = truncate(&extend_scalars(&g, a, false).unwrap().algebra, r).unwrap();
                assert_eq!(before, after);
            }
        }
    }
}

#[test]
fn extensions_are_filtered_algebras() {
    let coeffs = [
        CoefficientAlgebra::ground_field(),
        CoefficientAlgebra::dual_numbers(),
        CoefficientAlgebra::truncated_polynomial(3),
        koszul_cdga(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut algebras = corpus();
    // a random abelian algebra with a differential in several degrees
    let s = random::space(&mut rng, 5, -1..=2);
    algebras.push(LInftyAlgebra::abelian(s, 3));
    for g in &algebras {
        for a in &coeffs {
            for ideal_only in [false, true] {
                let e = extend_scalars(g, a, ideal_only).unwrap().algebra;
                let r = verify_structure(&e, 4);
                assert!(r.passes(), "{} ⊗ {}: {:?}", g.dim(), a.name, r.violations);
            }
        }
    }
}

#[test]
fn extension_by_ground_field_is_the_identity() {
    for g in corpus() {
        let e = extend_scalars(&g, &CoefficientAlgebra::ground_field(), false).unwrap();
        assert_eq!(e.algebra.brackets, g.brackets);
        assert_eq!(e.algebra.space.degrees(), g.space.degrees());
    }
}

#[test]
fn koszul_signs_with_odd_coefficients() {
    let g = nil2();
    let a = koszul_cdga();
    let ext = Extension::new(&g, &a);
    let x = g.space.index_of("x").unwrap();
    let y = g.space.index_of("y").unwrap();
    let pure = |i: usize, m: usize| -> TensorVector<usize> { [((i, m), one())].into_iter().collect() };
    let single = |i: usize, m: usize, c: i64| -> TensorVector<usize> {
        [((i, m), linfty_core::exactlin::int(c))].into_iter().collect()
    };
    // l(x⊗1, x⊗s) = l(x, x)⊗s and l(x⊗s, x⊗1) = (−1)^{|s||x|} l(x, x)⊗s
    assert_eq!(ext.bracket(&[&pure(x, 0), &pure(x, 1)]), single(y, 1, 1));
    assert_eq!(ext.bracket(&[&pure(x, 1), &pure(x, 0)]), single(y, 1, -1));
    // l_1(x⊗s) = (−1)^{|x|} x⊗ds = −x⊗e
    assert_eq!(ext.bracket(&[&pure(x, 1)]), single(x, 2, -1));
    assert_eq!(ext.bracket(&[&pure(y, 1)]), single(y, 2, 1));
    assert!(ext.bracket(&[&pure(x, 3)]).is_empty());
    assert!(One::is_one(&one()));
}

#[test]
fn dual_number_extension_keeps_the_ideal_square_zero() {
    let g = twistable();
    let e = extend_scalars(&g, &CoefficientAlgebra::dual_numbers(), true).unwrap();
    assert_eq!(e.algebra.dim(), g.dim());
    for (k, _, _) in e.algebra.brackets.iter() {
        assert_eq!(k, 1, "higher brackets vanish on 𝔤 ⊗ m_A when m_A² = 0");
    }
}

#[test]
fn twisting_by_zero_is_the_identity() {
    for g in corpus() {
        let t = twist(&g, &MCElement::zero()).unwrap();
        assert_eq!(t.algebra, g);
    }
}

#[test]
fn unfiltered_brackets_are_not_truncated() {
    let g = algebra(&[("x", 1, 2), ("y", 2, 1)], 2, &[(&["x", "x"], "y:1")]);
    assert!(!check_filtration(&g).passes());
    assert!(truncate(&g, 2).is_err());
}
