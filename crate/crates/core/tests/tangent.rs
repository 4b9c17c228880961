mod common;

use common::*;
use linfty_core::exactlin::{span_rank, LinearMap, Vector};
use linfty_core::filtered::{extend_scalars, CoefficientAlgebra};
use linfty_core::gauge::gauge_act;
use linfty_core::linf::LInftyAlgebra;
use linfty_core::mc::{mc_residual, MCElement};
use linfty_core::tangent::{tangent_complex, tangent_mc, tangent_report};

fn corpus_points() -> Vec<(LInftyAlgebra, Vec<&'static str>)> {
    vec![
        (abelian(), vec!["", "v:1", "v:2,w:-1/3"]),
        (nil2(), vec![""]),
        (heis0(), vec!["", "a:1", "a:1,b:-1/2,e:3", "c:2"]),
        (twistable(), vec!["", "x:1,u:1", "x:2,u:4,h:1", "x:-1/2,u:1/4,h:-3"]),
    ]
}

/// `dim {v : φ + v ε is Maurer–Cartan over 𝕂[ε]/(ε²)}`, from residuals in the extension.
fn dual_number_solutions(g: &LInftyAlgebra, phi: &Vector) -> usize {
    let e = extend_scalars(g, &CoefficientAlgebra::dual_numbers(), false).unwrap();
    let base = e.embed(phi, 0);
    let ones = g.space.indices_of_degree(1);
    let columns: Vec<Vector> = ones
        .iter()
        .map(|&i| {
            let tau = base.plus(&e.embed(&Vector::basis(i), 1));
            let r = mc_residual(&e.algebra, &tau).unwrap();
            assert!(e.component(&r, 0).is_zero());
            e.component(&r, 1)
        })
        .collect();
    let source = g.space.restrict(&ones);
    let map = LinearMap::new(source, g.space.clone(), 1, columns).unwrap();
    map.kernel().len()
}

/// `rank (ξ ↦ [ξ, φ] − δξ)` on the degree-0 slice.
fn orbit_rank(g: &LInftyAlgebra, phi: &Vector) -> usize {
    let images: Vec<Vector> = g
        .space
        .indices_of_degree(0)
        .into_iter()
        .map(|i| {
            let xi = Vector::basis(i);
            let mut v = g.eval_bracket(2, &[&xi, phi]).unwrap();
            v.sub_assign(&g.eval_bracket(1, &[&xi]).unwrap());
            v
        })
        .collect();
    span_rank(&images, g.dim())
}

#[test]
fn three_tangent_computations_agree() {
    for (g, points) in corpus_points() {
        for p in points {
            let phi = MCElement::verify(&g, vec_of(&g.space, p)).unwrap();
            let r = tangent_report(&g, &phi).unwrap();
            assert!(r.passes(), "{p}");
            let solutions = dual_number_solutions(&g, phi.value());
            let ts = tangent_mc(&g, &phi).unwrap();
            assert!(ts.cocycles_deform && ts.deformations_are_cocycles);
            assert_eq!(ts.cocycles.len(), solutions);
            assert_eq!(r.h0_dim, solutions - orbit_rank(&g, phi.value()));
            assert_eq!(r.h_minus1_dim, g.space.dim_of_degree(0) - orbit_rank(&g, phi.value()));
        }
    }
}

#[test]
fn known_tangent_dimensions() {
    let expected = [
        (twistable(), "", 2, 1),
        (twistable(), "x:1,u:1", 1, 0),
        (heis0(), "", 2, 1),
        (heis0(), "a:1", 1, 0),
        (nil2(), "", 1, 0),
    ];
    for (g, p, h0, hm1) in expected {
        let phi = MCElement::verify(&g, vec_of(&g.space, p)).unwrap();
        let r = tangent_report(&g, &phi).unwrap();
        assert_eq!((r.h0_dim, r.h_minus1_dim), (h0, hm1), "{p}");
    }
}

#[test]
fn tangent_dimensions_are_gauge_invariant() {
    for (g, points, xis) in [
        (heis0(), vec!["", "a:1", "c:2"], vec!["p:1", "q:-1", "p:1,q:-2,z:1/3"]),
        (twistable(), vec!["", "x:1,u:1"], vec!["g:1", "g:-1/3"]),
    ] {
        for p in points {
            let phi = MCElement::verify(&g, vec_of(&g.space, p)).unwrap();
            let base = tangent_report(&g, &phi).unwrap();
            for x in &xis {
                let moved = gauge_act(&g, &vec_of(&g.space, x), &phi).unwrap();
                let r = tangent_report(&g, &moved).unwrap();
                assert_eq!(
                    (r.h0_dim, r.h1_dim, r.h_minus1_dim),
                    (base.h0_dim, base.h1_dim, base.h_minus1_dim)
                );
            }
        }
    }
}

#[test]
fn stabilizer_is_the_degree_zero_cocycles() {
    let g = twistable();
    let phi = MCElement::verify(&g, Vector::zero()).unwrap();
    let c = tangent_complex(&g, &phi).unwrap();
    assert!(c.differentials_agree());
    assert_eq!(c.h_minus1, vec![vec_of(&g.space, "g:1")]);
}
