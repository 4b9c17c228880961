mod common;

use common::random;
use common::*;
use linfty_core::exactlin::{cohomology_of, Vector};
use linfty_core::gauge::homotopy_from_gauge;
use linfty_core::linf::LInftyAlgebra;
use linfty_core::mc::{mc_residual, MCElement};
use linfty_core::morphisms::{
    goldman_millson_check, stagewise_quasi_iso, twist_pushforward_check, verify_morphism,
    FilteredMorphism,
};
use linfty_core::simplicial::fibration_consequence_check;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `twistable ⊕ (a → b)` projecting onto `twistable`.
fn gm_pair() -> FilteredMorphism {
    let src = algebra(
        &[("g", 0, 1), ("x", 1, 1), ("u", 1, 2), ("h", 1, 2), ("y", 2, 2), ("a", 0, 1), ("b", 1, 1)],
        2,
        &[(&["u"], "y:-1/2"), (&["x", "x"], "y:1"), (&["g", "x"], "h:1"), (&["a"], "b:1")],
    );
    let imgs = (0..7).map(|i| if i < 5 { Vector::basis(i) } else { Vector::zero() }).collect();
    FilteredMorphism::new(src, twistable(), imgs).unwrap()
}

fn nil2_plus_acyclic() -> LInftyAlgebra {
    algebra(
        &[("x", 1, 1), ("y", 2, 2), ("u", 0, 1), ("v", 1, 1)],
        2,
        &[(&["x", "x"], "y:1"), (&["u"], "v:1")],
    )
}

fn projection() -> FilteredMorphism {
    let imgs = vec![Vector::basis(0), Vector::basis(1), Vector::zero(), Vector::zero()];
    FilteredMorphism::new(nil2_plus_acyclic(), nil2(), imgs).unwrap()
}

fn inclusion() -> FilteredMorphism {
    FilteredMorphism::new(nil2(), nil2_plus_acyclic(), vec![Vector::basis(0), Vector::basis(1)]).unwrap()
}

fn scaling(c: &linfty_core::exactlin::Rational, e: &linfty_core::exactlin::Rational) -> FilteredMorphism {
    FilteredMorphism::new(nil2(), nil2(), vec![Vector::term(0, c.clone()), Vector::term(1, e.clone())]).unwrap()
}

/// `f(l_k(e_I)) = l_k(f(e_I))` on every basis tuple, computed directly.
fn strict_on_basis(f: &FilteredMorphism) -> bool {
    f.source.brackets.iter().all(|(k, t, v)| {
        let imgs: Vec<Vector> = t.iter().map(|&i| f.apply(&Vector::basis(i))).collect();
        let refs: Vec<&Vector> = imgs.iter().collect();
        f.apply(v) == f.target.eval_bracket(k, &refs).unwrap()
    }) && random::tuples(f.source.dim(), 2)
        .into_iter()
        .all(|t| {
            // tuples with no recorded bracket must map to zero brackets
            let imgs: Vec<Vector> = t.iter().map(|&i| f.apply(&Vector::basis(i))).collect();
            let refs: Vec<&Vector> = imgs.iter().collect();
            f.source.brackets.get(&t).is_some() || f.target.eval_bracket(2, &refs).unwrap().is_zero()
        })
}

#[test]
fn strict_morphisms_agree_with_the_direct_check() {
    for f in [gm_pair(), projection(), inclusion()] {
        assert!(strict_on_basis(&f));
        assert!(verify_morphism(&f, 3).passes());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..30 {
        let c = random::nonzero_rational(&mut rng);
        let e = random::nonzero_rational(&mut rng);
        let f = scaling(&c, &e);
        // x ↦ cx, y ↦ ey is strict exactly when e = c²
        assert_eq!(verify_morphism(&f, 3).passes(), e == &c * &c);
        assert_eq!(strict_on_basis(&f), e == &c * &c);
    }
}

#[test]
fn doubling_is_reported_with_a_witness() {
    let f = scaling(&linfty_core::exactlin::int(1), &linfty_core::exactlin::int(2));
    let r = verify_morphism(&f, 3);
    assert!(!r.passes());
    let text = r.violations[0].to_string();
    assert!(text.contains("2·y") && text.contains("x, x"), "{text}");
}

#[test]
fn stagewise_cohomology() {
    for f in [gm_pair(), projection(), inclusion()] {
        let st = stagewise_quasi_iso(&f, 4).unwrap();
        assert!(st.passes());
        // the untruncated cohomology dimensions agree in every degree
        for d in -1..=3 {
            let hs = cohomology_of(&f.source.differential(), d).unwrap().dimension;
            let ht = cohomology_of(&f.target.differential(), d).unwrap().dimension;
            assert_eq!(hs, ht, "degree {d}");
        }
    }
    let zero = FilteredMorphism::new(nil2(), nil2(), vec![Vector::zero(), Vector::zero()]).unwrap();
    assert!(verify_morphism(&zero, 3).passes());
    assert!(!stagewise_quasi_iso(&zero, 4).unwrap().passes());
    let gm = goldman_millson_check(&zero, 4, 3).unwrap();
    assert!(!gm.hypotheses_met());
}

#[test]
fn goldman_millson_on_the_pair() {
    let gm = goldman_millson_check(&gm_pair(), 4, 3).unwrap();
    assert!(gm.passes(), "{:?}", gm.hypothesis_failures);
    let h1 = gm.h1.as_ref().unwrap();
    assert!(h1.is_iso());
    assert_eq!(h1.source_dim, 2);
    for o in &gm.orders {
        assert!(o.h2.is_iso());
        assert!(o.branches.iter().all(|b| b.consistent()));
    }
}

#[test]
fn goldman_millson_matches_obstructions() {
    let gm = goldman_millson_check(&projection(), 4, 3).unwrap();
    assert!(gm.passes());
    let obstructed: Vec<_> = gm
        .orders
        .iter()
        .flat_map(|o| o.branches.iter())
        .filter_map(|b| b.source_obstructed_at.zip(b.target_obstructed_at))
        .collect();
    assert!(!obstructed.is_empty());
    assert!(obstructed.iter().all(|&(s, t)| s == 2 && t == 2));
}

#[test]
fn twisting_commutes_with_pushforward() {
    let f = gm_pair();
    for p in ["x:1,u:1", "x:2,u:4,h:1", "x:1,u:1,b:3"] {
        let phi = vec_of(&f.source.space, p);
        let r = twist_pushforward_check(&f, &phi, 4).unwrap();
        assert!(r.passes(), "{p}: {:?}", r.hypothesis_failures);
        assert_eq!(r.image, f.apply(&phi));
        assert!(mc_residual(&f.target, &r.image).unwrap().is_zero());
    }
    let r = twist_pushforward_check(&f, &vec_of(&f.source.space, "x:1"), 4).unwrap();
    assert!(!r.passes());
}

#[test]
fn fibration_lifts_points_and_paths() {
    let f = gm_pair();
    let t = &f.target;
    let targets: Vec<Vector> = ["x:1,u:1", "x:2,u:4,h:1", ""].iter().map(|p| vec_of(&t.space, p)).collect();
    let tau = MCElement::verify(t, targets[0].clone()).unwrap();
    let path = homotopy_from_gauge(t, &vec_of(&t.space, "g:2"), &tau).unwrap();
    let r = fibration_consequence_check(&f, 4, &targets, &[path]).unwrap();
    assert!(r.passes());
    assert!(r.certificate.as_ref().unwrap().universal());
    for l in &r.mc_lifts {
        let lift = l.lift.as_ref().unwrap();
        assert_eq!(f.apply(lift), l.target);
        assert!(mc_residual(&f.source, lift).unwrap().is_zero());
    }
    for p in &r.path_lifts {
        let h = p.lift.as_ref().unwrap();
        assert!(h.is_valid(&f.source));
    }
}

#[test]
fn inclusion_is_not_a_fibration() {
    let f = inclusion();
    let r = fibration_consequence_check(&f, 3, &[], &[]).unwrap();
    assert!(!r.hypotheses_met());
    assert!(r.hypothesis_failures.iter().any(|m| m.contains("not surjective")));
}
