//! Subcommand implementations. Each returns a report whose verdict decides the exit code.

use serde_json::{json, Value};

use linfty_core::defcomplex::{build_convolution, deformation_pipeline, structure_as_mc, FiniteAlgebraData};
use linfty_core::exactlin::{parse_rational, GradedSpace, Vector};
use linfty_core::filtered::{check_filtration, truncate, truncation_indices, CoefficientAlgebra};
use linfty_core::gauge::{
    bch, gauge_act, gauge_from_homotopy, homotopy_from_gauge, Homotopy, ModuliStatus,
};
use linfty_core::linf::{chevalley_eilenberg, verify_structure, LInftyAlgebra, StructureReport};
use linfty_core::mc::{
    lift_deformation, mc_polynomial_system, mc_residual, twist, twisted_differential, MCElement,
};
use linfty_core::morphisms::{
    goldman_millson_check, stagewise_quasi_iso, twist_pushforward_check, verify_morphism,
    FilteredMorphism, InducedCohomology, Stage, StagewiseReport,
};
use linfty_core::simplicial::{
    fibration_consequence_check, homotopy_to_simplex, mc_simplex_verify, pi0, FormMono, McSimplex,
};
use linfty_core::tangent::{tangent_mc, tangent_report, TangentReport};

use crate::document::{parse_element, AlgebraBlock, Document, DocumentError};
use crate::report::{rational, rationals, vector, vector_in, vectors, Report};
use crate::CliError;

/// Options shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Options {
    pub truncation: u32,
    pub arity_bound: Option<usize>,
    pub order: usize,
    pub t_degree: Option<usize>,
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn computation(e: impl std::fmt::Display) -> CliError {
    CliError::Computation(e.to_string())
}

/// An algebra together with its working quotient `𝔤/F_R`.
pub struct Working {
    pub full: LInftyAlgebra,
    pub g: LInftyAlgebra,
    keep: Vec<usize>,
}

impl Working {
    pub fn new(full: LInftyAlgebra, r: u32) -> Result<Self, CliError> {
        let g = truncate(&full, r).map_err(input)?;
        let keep = truncation_indices(&full, r);
        Ok(Self { full, g, keep })
    }

    pub fn project(&self, v: &Vector) -> Vector {
        v.reindex(|i| self.keep.iter().position(|&k| k == i))
    }

    /// Lifts a vector of the quotient along the basis inclusion.
    pub fn embed(&self, v: &Vector) -> Vector {
        v.reindex(|i| Some(self.keep[i]))
    }
}

/// The elements a command runs on: an explicit `--element` (a literal `x:1,y:-1/2` or `@name`
/// of a corpus point) or every corpus point of the given list.
fn points(
    doc: &Document,
    space: &GradedSpace,
    element: Option<&str>,
    list: &[crate::document::NamedTerms],
    what: &str,
) -> Result<Vec<(String, Vector)>, CliError> {
    let named = doc.named(space, list, what).map_err(input)?;
    match element {
        Some(lit) => Ok(vec![(lit.to_string(), element_value(doc, space, lit, Point::Mc)?)]),
        None => Ok(named),
    }
}

/// Which list of named points an `@name` is looked up in first.
#[derive(Clone, Copy)]
enum Point {
    Mc,
    Gauge,
}

fn element_value(doc: &Document, space: &GradedSpace, lit: &str, kind: Point) -> Result<Vector, CliError> {
    if let Some(name) = lit.strip_prefix('@') {
        let order = match kind {
            Point::Mc => [&doc.mc_elements, &doc.gauge_elements],
            Point::Gauge => [&doc.gauge_elements, &doc.mc_elements],
        };
        for list in order {
            if let Some(p) = list.iter().find(|p| p.name == name) {
                return crate::document::vector_from_terms(space, &p.value, name).map_err(input);
            }
        }
        return Err(input(format!("no corpus point named `{name}`")));
    }
    parse_element(space, lit).map_err(input)
}

fn require(lit: &Option<String>, flag: &str) -> Result<String, CliError> {
    lit.clone().ok_or_else(|| input(format!("missing --{flag}")))
}

fn mc_element(g: &LInftyAlgebra, v: &Vector) -> Result<Result<MCElement, Vector>, CliError> {
    let r = mc_residual(g, v).map_err(input)?;
    if r.is_zero() {
        Ok(Ok(MCElement::verify(g, v.clone()).map_err(computation)?))
    } else {
        Ok(Err(r))
    }
}

fn default_arity(g: &LInftyAlgebra, opts: &Options) -> usize {
    opts.arity_bound.unwrap_or(g.max_arity() + 1)
}

fn structure_json(r: &StructureReport) -> Value {
    json!({
        "arity_bound": r.arity_bound,
        "tuples_checked": r.tuples_checked,
        "passes": r.passes(),
        "violations": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })
}

fn structure_checks(g: &LInftyAlgebra, arity: usize) -> Result<(Value, bool), CliError> {
    let s = verify_structure(g, arity);
    let filt = check_filtration(g);
    let ce = chevalley_eilenberg(g, arity).map_err(computation)?;
    let ce_witnesses: Vec<Value> = ce
        .square_witnesses
        .iter()
        .map(|(w, v)| json!({ "word": ce.presentation.display_word(w), "projection": g.show(v) }))
        .collect();
    let jacobi_ok = s.is_algebra();
    let ok = s.passes() && filt.passes() && ce.square_zero() && jacobi_ok == ce.square_zero();
    Ok((
        json!({
            "dimension": g.dim(),
            "structure": structure_json(&s),
            "filtration": {
                "passes": filt.passes(),
                "violations": filt.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            },
            "ce_square_zero": ce.square_zero(),
            "ce_witnesses": ce_witnesses,
            "ce_agrees_with_jacobi": jacobi_ok == ce.square_zero(),
        }),
        ok,
    ))
}

pub fn verify(doc: &Document, opts: &Options, rep: &mut Report) -> Result<(), CliError> {
    if let Some(a) = &doc.algebra {
        let g = a.build("algebra").map_err(input)?;
        let (v, ok) = structure_checks(&g, default_arity(&g, opts))?;
        rep.set("algebra", v);
        rep.check("algebra_passes", ok);
    }
    if doc.morphism.is_some() {
        let f = doc.morphism().map_err(input)?;
        for (key, g) in [("source", &f.source), ("target", &f.target)] {
            let (v, ok) = structure_checks(g, default_arity(g, opts))?;
            rep.set(key, v);
            rep.check(&format!("{key}_passes"), ok);
        }
    }
    if doc.associative.is_some() {
        let data = doc.associative().map_err(input)?;
        let n = hochschild_arity(doc, opts);
        let cx = build_convolution(&data, n).map_err(input)?;
        let full = verify_structure(&cx.algebra, 3);
        let filtered = verify_structure(&cx.filtered_part(), 3);
        rep.set("convolution", json!({
            "arity_bound": n,
            "dimension": cx.algebra.dim(),
            "structure": structure_json(&full),
            "filtered_part": structure_json(&filtered),
        }));
        rep.check("convolution_is_algebra", full.is_algebra());
        rep.check("filtered_part_passes", filtered.passes());
    }
    if doc.algebra.is_none() && doc.morphism.is_none() && doc.associative.is_none() {
        return Err(input("document has nothing to verify"));
    }
    Ok(())
}

pub fn truncate_cmd(doc: &Document, opts: &Options, rep: &mut Report) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    rep.set("truncation", json!(opts.truncation));
    rep.set("dimension", json!(w.g.dim()));
    let mut out = Document {
        format: doc.format,
        name: doc.name.as_ref().map(|n| format!("{n}/F{}", opts.truncation)),
        algebra: Some(AlgebraBlock::from_algebra(&w.g)),
        morphism: None,
        associative: None,
        coefficients: Vec::new(),
        mc_elements: Vec::new(),
        gauge_elements: Vec::new(),
    };
    let project = |list: &[crate::document::NamedTerms]| -> Result<Vec<crate::document::NamedTerms>, DocumentError> {
        doc.named(&w.full.space, list, "points")?
            .into_iter()
            .map(|(name, v)| {
                Ok(crate::document::NamedTerms {
                    name,
                    value: crate::document::terms_from_vector(&w.g.space, &w.project(&v)),
                })
            })
            .collect()
    };
    out.mc_elements = project(&doc.mc_elements).map_err(input)?;
    out.gauge_elements = project(&doc.gauge_elements).map_err(input)?;
    rep.set("document", serde_json::to_value(&out).expect("documents serialize"));
    Ok(())
}

pub fn mc_residual_cmd(doc: &Document, element: Option<&str>, rep: &mut Report) -> Result<(), CliError> {
    let g = doc.algebra().map_err(input)?;
    let pts = points(doc, &g.space, element, &doc.mc_elements, "mc_elements")?;
    let mut out = Vec::new();
    for (name, v) in pts {
        let r = mc_residual(&g, &v).map_err(input)?;
        if !r.is_zero() {
            rep.fail();
        }
        out.push(json!({
            "element": name,
            "value": vector_in(&g, &v),
            "maurer_cartan": r.is_zero(),
            "residual": vector_in(&g, &r),
        }));
    }
    rep.set("elements", Value::Array(out));
    Ok(())
}

pub fn mc_system(doc: &Document, opts: &Options, rep: &mut Report) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let sys = mc_polynomial_system(&w.g).map_err(computation)?;
    let eqs: Vec<Value> = sys
        .nonzero_equations()
        .map(|(k, p)| {
            json!({
                "component": w.g.space.id(k),
                "equation": format!("{} = 0", p.display(&sys.variable_names)),
            })
        })
        .collect();
    rep.set("truncation", json!(opts.truncation));
    rep.set("variables", json!(sys.variable_names));
    rep.set("equations", Value::Array(eqs));
    Ok(())
}

pub fn twist_cmd(doc: &Document, opts: &Options, element: Option<&str>, rep: &mut Report) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let pts = points(doc, &w.full.space, element, &doc.mc_elements, "mc_elements")?;
    let mut out = Vec::new();
    for (name, v) in pts {
        let v = w.project(&v);
        let phi = match mc_element(&w.g, &v)? {
            Ok(phi) => phi,
            Err(r) => {
                rep.fail();
                out.push(json!({ "element": name, "maurer_cartan": false, "residual": vector_in(&w.g, &r) }));
                continue;
            }
        };
        let tw = twist(&w.g, &phi).map_err(computation)?.algebra;
        let s = verify_structure(&tw, default_arity(&tw, opts));
        let filt = check_filtration(&tw);
        let d = twisted_differential(&w.g, phi.value());
        let d2 = d.compose(&d).map_err(computation)?;
        let ok = s.passes() && filt.passes() && d2.is_zero();
        if !ok {
            rep.fail();
        }
        out.push(json!({
            "element": name,
            "value": vector_in(&w.g, phi.value()),
            "maurer_cartan": true,
            "twisted": serde_json::to_value(AlgebraBlock::from_algebra(&tw)).expect("blocks serialize"),
            "structure": structure_json(&s),
            "filtration_passes": filt.passes(),
            "differential_squares_to_zero": d2.is_zero(),
        }));
    }
    rep.set("truncation", json!(opts.truncation));
    rep.set("elements", Value::Array(out));
    Ok(())
}

pub fn lift(doc: &Document, opts: &Options, element: Option<&str>, rep: &mut Report) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let lit = element.unwrap_or("");
    let v = w.project(&element_value(doc, &w.full.space, lit, Point::Mc)?);
    let phi = match mc_element(&w.g, &v)? {
        Ok(p) => p,
        Err(r) => {
            rep.fail();
            rep.set("maurer_cartan", json!(false));
            rep.set("residual", vector_in(&w.g, &r));
            return Ok(());
        }
    };
    let report = lift_deformation(&w.g, &phi, opts.order.max(2)).map_err(computation)?;
    let fo = &report.first_order;
    rep.set("element", vector_in(&w.g, phi.value()));
    rep.set("coefficients", json!(format!("K[t]/(t^{})", report.n)));
    rep.set("first_order", json!({
        "h1": fo.h1_dim,
        "cocycles": fo.cocycles.len(),
        "coboundaries": fo.coboundaries.len(),
        "direct_solutions": fo.direct_solutions_dim,
        "direct_gauge": fo.direct_gauge_dim,
        "mod_gauge": fo.mod_gauge_dim(),
        "representatives": vectors(&w.g, &fo.representatives),
    }));
    rep.set("h2", json!(report.h2.dimension));
    if let Some(q) = &report.quadratic {
        let comps: Vec<Value> = q
            .coefficients
            .iter()
            .map(|m| {
                Value::Array(
                    m.iter()
                        .map(|((i, j), c)| json!({ "monomial": format!("c{i}·c{j}"), "coefficient": rational(c) }))
                        .collect(),
                )
            })
            .collect();
        rep.set("quadratic_obstruction", json!({ "zero": q.is_zero(), "components": comps }));
    }
    let mut branches = Vec::new();
    for (k, b) in report.branches.iter().enumerate() {
        let obstruction = b.obstruction.as_ref().map(|o| {
            json!({ "order": o.order, "cocycle": vector_in(&w.g, &o.cocycle), "class": rationals(&o.class) })
        });
        if obstruction.is_some() {
            rep.fail();
        }
        branches.push(json!({
            "branch": k,
            "reached_order": b.reached_order(),
            "terms": vectors(&w.g, &b.terms),
            "obstruction": obstruction,
        }));
    }
    rep.set("branches", Value::Array(branches));
    Ok(())
}

fn gauge_inputs(
    doc: &Document,
    w: &Working,
    xi: &Option<String>,
    element: Option<&str>,
) -> Result<(Vector, Vector), CliError> {
    let xi = w.project(&element_value(doc, &w.full.space, &require(xi, "xi")?, Point::Gauge)?);
    let tau = w.project(&element_value(doc, &w.full.space, element.unwrap_or(""), Point::Mc)?);
    Ok((xi, tau))
}

pub fn gauge_act_cmd(
    doc: &Document,
    opts: &Options,
    xi: &Option<String>,
    element: Option<&str>,
    rep: &mut Report,
) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let (xi, tau) = gauge_inputs(doc, &w, xi, element)?;
    let tau = match mc_element(&w.g, &tau)? {
        Ok(t) => t,
        Err(r) => {
            rep.fail();
            rep.set("maurer_cartan", json!(false));
            rep.set("residual", vector_in(&w.g, &r));
            return Ok(());
        }
    };
    let out = gauge_act(&w.g, &xi, &tau).map_err(input)?;
    rep.set("truncation", json!(opts.truncation));
    rep.set("xi", vector_in(&w.g, &xi));
    rep.set("tau", vector_in(&w.g, tau.value()));
    rep.set("result", vector_in(&w.g, out.value()));
    Ok(())
}

fn homotopy_json(g: &LInftyAlgebra, h: &Homotopy) -> Value {
    json!({
        "f0": h.f0.display(g),
        "f1": h.f1.display(g),
        "t_degree": h.f0.t_degree().max(h.f1.t_degree()),
        "start": g.show(&h.start()),
        "end": g.show(&h.end()),
    })
}

pub fn gauge_connect(
    doc: &Document,
    opts: &Options,
    xi: &Option<String>,
    element: Option<&str>,
    rep: &mut Report,
) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let (xi, tau) = gauge_inputs(doc, &w, xi, element)?;
    let tau = match mc_element(&w.g, &tau)? {
        Ok(t) => t,
        Err(r) => {
            rep.fail();
            rep.set("maurer_cartan", json!(false));
            rep.set("residual", vector_in(&w.g, &r));
            return Ok(());
        }
    };
    let bound = opts.t_degree.unwrap_or(opts.truncation.saturating_sub(1) as usize);
    let moved = gauge_act(&w.g, &xi, &tau).map_err(input)?;
    let h = homotopy_from_gauge(&w.g, &xi, &tau).map_err(input)?;
    let violations: Vec<String> = h.violations(&w.g).iter().map(|v| format!("{v:?}")).collect();
    let xi2 = gauge_from_homotopy(&w.g, &h).map_err(computation)?;
    let moved2 = gauge_act(&w.g, &xi2, &tau).map_err(computation)?;
    rep.set("truncation", json!(opts.truncation));
    rep.set("xi", vector_in(&w.g, &xi));
    rep.set("tau", vector_in(&w.g, tau.value()));
    rep.set("gauge_image", vector_in(&w.g, moved.value()));
    rep.set("homotopy", homotopy_json(&w.g, &h));
    rep.set("violations", json!(violations));
    rep.check("homotopy_valid", violations.is_empty());
    rep.check("starts_at_tau", h.start() == *tau.value());
    rep.check("ends_at_gauge_image", h.end() == *moved.value());
    rep.check(
        "within_t_degree",
        h.f0.t_degree().max(h.f1.t_degree()) <= bound,
    );
    rep.set("recovered_xi", vector_in(&w.g, &xi2));
    rep.check("round_trip", moved2.value() == moved.value());
    Ok(())
}

pub fn bch_cmd(
    doc: &Document,
    opts: &Options,
    x: &str,
    y: &str,
    rep: &mut Report,
) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let xv = w.project(&element_value(doc, &w.full.space, x, Point::Gauge)?);
    let yv = w.project(&element_value(doc, &w.full.space, y, Point::Gauge)?);
    let z = bch(&w.g, &xv, &yv).map_err(input)?;
    rep.set("truncation", json!(opts.truncation));
    rep.set("x", vector_in(&w.g, &xv));
    rep.set("y", vector_in(&w.g, &yv));
    rep.set("bch", vector_in(&w.g, &z));
    let mut laws = Vec::new();
    for (name, tau) in doc.named(&w.full.space, &doc.mc_elements, "mc_elements").map_err(input)? {
        let tau = w.project(&tau);
        let Ok(tau) = mc_element(&w.g, &tau)? else { continue };
        let lhs = gauge_act(&w.g, &z, &tau).map_err(computation)?;
        let inner = gauge_act(&w.g, &yv, &tau).map_err(computation)?;
        let rhs = gauge_act(&w.g, &xv, &inner).map_err(computation)?;
        let ok = lhs == rhs;
        if !ok {
            rep.fail();
        }
        laws.push(json!({
            "tau": name,
            "composite": vector_in(&w.g, lhs.value()),
            "iterated": vector_in(&w.g, rhs.value()),
            "group_law": ok,
        }));
    }
    rep.set("group_law", Value::Array(laws));
    Ok(())
}

/// Parses `"x:1; h:2:t; g:-1:dt"` (terms `id:coefficient[:monomial]`, monomial factors
/// `t`, `t2^3`, `dt1` joined by `*` or `·`).
pub fn parse_simplex(space: &GradedSpace, n: usize, lit: &str) -> Result<McSimplex, CliError> {
    let mut s = McSimplex::zero(n);
    for term in lit.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = term.split(':').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(input(format!("simplex term `{term}` is not id:coefficient[:monomial]")));
        }
        let i = space
            .index_of(parts[0])
            .ok_or_else(|| input(format!("simplex term `{term}`: unknown basis identifier `{}`", parts[0])))?;
        let c = parse_rational(parts[1]).map_err(|e| input(format!("simplex term `{term}`: {e}")))?;
        let m = match parts.get(2) {
            Some(m) => parse_form_mono(n, m).map_err(|e| input(format!("simplex term `{term}`: {e}")))?,
            None => FormMono::one(n),
        };
        linfty_core::filtered::tensor_add(&mut s.value, (i, m), c);
    }
    Ok(s)
}

fn parse_form_mono(n: usize, lit: &str) -> Result<FormMono, String> {
    let mut m = FormMono::one(n);
    let var = |name: &str| -> Result<usize, String> {
        let idx = if name.is_empty() && n == 1 {
            1
        } else {
            name.parse::<usize>().map_err(|_| format!("bad variable `t{name}`"))?
        };
        if idx == 0 || idx > n {
            return Err(format!("variable t{idx} outside 1..={n}"));
        }
        Ok(idx)
    };
    for f in lit.split(['*', '·']).map(str::trim).filter(|f| !f.is_empty() && *f != "1") {
        if let Some(rest) = f.strip_prefix("dt") {
            let i = var(rest)?;
            if m.dts & (1 << (i - 1)) != 0 {
                return Err(format!("repeated factor {f}"));
            }
            m.dts |= 1 << (i - 1);
        } else if let Some(rest) = f.strip_prefix('t') {
            let (name, e) = match rest.split_once('^') {
                Some((a, e)) => (a, e.parse::<u32>().map_err(|_| format!("bad exponent in `{f}`"))?),
                None => (rest, 1),
            };
            m.exps[var(name)? - 1] += e;
        } else {
            return Err(format!("unknown factor `{f}`"));
        }
    }
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
pub fn simplex_verify(
    doc: &Document,
    opts: &Options,
    simplex: &Option<String>,
    dim: usize,
    from_gauge: bool,
    xi: &Option<String>,
    element: Option<&str>,
    rep: &mut Report,
) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let s = if from_gauge {
        let (xi, tau) = gauge_inputs(doc, &w, xi, element)?;
        let tau = match mc_element(&w.g, &tau)? {
            Ok(t) => t,
            Err(r) => {
                rep.fail();
                rep.set("maurer_cartan", json!(false));
                rep.set("residual", vector_in(&w.g, &r));
                return Ok(());
            }
        };
        homotopy_to_simplex(&homotopy_from_gauge(&w.g, &xi, &tau).map_err(input)?)
    } else {
        let lit = require(simplex, "simplex")?;
        let full = parse_simplex(&w.full.space, dim, &lit)?;
        let keep: Vec<usize> = truncation_indices(&w.full, opts.truncation);
        McSimplex {
            n: full.n,
            value: full
                .value
                .into_iter()
                .filter_map(|((i, m), c)| keep.iter().position(|&k| k == i).map(|p| ((p, m), c)))
                .collect(),
        }
    };
    let bound = opts.t_degree.unwrap_or(opts.truncation.saturating_sub(1) as usize) as u32;
    let verdict = mc_simplex_verify(&w.g, &s, bound).map_err(input)?;
    rep.set("truncation", json!(opts.truncation));
    rep.set("dimension", json!(s.n));
    rep.set("simplex", json!(s.show(&w.g).map_err(input)?));
    rep.check("degree_ok", verdict.degree_ok);
    rep.set("within_bound", json!(verdict.within_bound));
    rep.set("residual", json!(verdict.residual_text));
    rep.check("maurer_cartan", verdict.residual.is_empty());
    let mut vertices = Vec::new();
    for i in 0..=s.n {
        let v = s.vertex(i).map_err(computation)?;
        let r = mc_residual(&w.g, &v).map_err(computation)?;
        vertices.push(json!({ "vertex": i, "value": vector_in(&w.g, &v), "maurer_cartan": r.is_zero() }));
    }
    rep.set("vertices", Value::Array(vertices));
    if s.n >= 1 {
        let mut faces = Vec::new();
        for i in 0..=s.n {
            let f = s.face(i).map_err(computation)?;
            let fv = mc_simplex_verify(&w.g, &f, bound).map_err(computation)?;
            faces.push(json!({ "face": i, "value": f.show(&w.g).map_err(computation)?, "maurer_cartan": fv.passes() }));
        }
        rep.set("faces", Value::Array(faces));
    }
    Ok(())
}

fn coefficient_algebra(doc: &Document, spec: &str) -> Result<CoefficientAlgebra, CliError> {
    if spec == "dual" {
        return Ok(CoefficientAlgebra::dual_numbers());
    }
    if let Some(n) = spec.strip_prefix("poly:") {
        let n: usize = n.parse().map_err(|_| input(format!("bad coefficient spec `{spec}`")))?;
        if n < 1 {
            return Err(input("poly:n needs n ≥ 1"));
        }
        return Ok(CoefficientAlgebra::truncated_polynomial(n));
    }
    for (i, c) in doc.coefficients.iter().enumerate() {
        if c.name == spec {
            return c.build(&format!("coefficients[{i}]")).map_err(input);
        }
    }
    Err(input(format!(
        "unknown coefficients `{spec}` (use dual, poly:n or a name from the document)"
    )))
}

pub fn pi0_cmd(
    doc: &Document,
    opts: &Options,
    element: Option<&str>,
    coefficients: &str,
    rep: &mut Report,
) -> Result<(), CliError> {
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let a = coefficient_algebra(doc, coefficients)?;
    let v = w.project(&element_value(doc, &w.full.space, element.unwrap_or(""), Point::Mc)?);
    let phi = match mc_element(&w.g, &v)? {
        Ok(p) => p,
        Err(r) => {
            rep.fail();
            rep.set("maurer_cartan", json!(false));
            rep.set("residual", vector_in(&w.g, &r));
            return Ok(());
        }
    };
    let m = pi0(&w.g, &phi, &a).map_err(input)?;
    rep.set("truncation", json!(opts.truncation));
    rep.set("base_point", vector_in(&w.g, phi.value()));
    rep.set("coefficients", json!(m.coefficients));
    let status = match &m.status {
        ModuliStatus::Decided => "decided".to_string(),
        ModuliStatus::OrderByOrder => "order-by-order".to_string(),
        ModuliStatus::NotDecided(why) => format!("not decided: {why}"),
    };
    rep.set("status", json!(status));
    rep.set("dimension", json!(m.dimension));
    let reps: Vec<Value> = m
        .representatives
        .iter()
        .map(|(r, i)| json!(format!("({})⊗{}", w.g.show(r), a.space.id(*i))))
        .collect();
    rep.set("representatives", Value::Array(reps));
    if let Some(l) = &m.lift {
        rep.set("lift", json!({
            "h1": l.first_order.h1_dim,
            "h2": l.h2.dimension,
            "branches": l.branches.iter().map(|b| json!({
                "reached_order": b.reached_order(),
                "obstructed_at": b.obstruction.as_ref().map(|o| o.order),
            })).collect::<Vec<_>>(),
        }));
    }
    if matches!(m.status, ModuliStatus::NotDecided(_)) {
        rep.fail();
    }
    Ok(())
}

fn induced_json(c: &InducedCohomology) -> Value {
    json!({
        "degree": c.degree,
        "source_dim": c.source_dim,
        "target_dim": c.target_dim,
        "rank": c.rank,
        "iso": c.is_iso(),
        "matrix": c.matrix.iter().map(|col| rationals(col)).collect::<Vec<_>>(),
    })
}

fn stagewise_json(s: &StagewiseReport) -> Value {
    json!({
        "truncation": s.truncation,
        "graded_quasi_iso": s.graded_quasi_iso(),
        "quotients_quasi_iso": s.quotients_quasi_iso(),
        "stages": s.stages.iter().map(|st| {
            let stage = match st.stage {
                Stage::Graded(w) => format!("gr_{w}"),
                Stage::Quotient(r) => format!("quotient F{r}"),
            };
            json!({
                "stage": stage,
                "quasi_iso": st.quasi_iso(),
                "degrees": st.degrees.iter().map(induced_json).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

/// Homotopies in the target obtained by flowing each target point along each gauge element.
fn target_paths(doc: &Document, f: &FilteredMorphism, r: u32) -> Result<Vec<Homotopy>, CliError> {
    let block = doc.morphism.as_ref().expect("morphism present");
    let w = Working::new(f.target.clone(), r)?;
    let taus = doc.named(&f.target.space, &block.target_mc_elements, "morphism.target_mc_elements").map_err(input)?;
    let xis = doc.named(&f.target.space, &block.target_gauge_elements, "morphism.target_gauge_elements").map_err(input)?;
    let mut out = Vec::new();
    for (_, tau) in &taus {
        let Ok(tau) = mc_element(&w.g, &w.project(tau))? else { continue };
        for (_, xi) in &xis {
            let h = homotopy_from_gauge(&w.g, &w.project(xi), &tau).map_err(input)?;
            out.push(Homotopy {
                f0: h.f0.map(|v| w.embed(v)),
                f1: h.f1.map(|v| w.embed(v)),
            });
        }
    }
    Ok(out)
}

pub fn morphism_verify(
    doc: &Document,
    opts: &Options,
    fibration: bool,
    twist_element: Option<&str>,
    rep: &mut Report,
) -> Result<(), CliError> {
    let f = doc.morphism().map_err(input)?;
    let arity = opts
        .arity_bound
        .unwrap_or(f.source.max_arity().max(f.target.max_arity()) + 1);
    let m = verify_morphism(&f, arity);
    rep.set("arity_bound", json!(arity));
    rep.set("tuples_checked", json!(m.tuples_checked));
    rep.set("violations", json!(m.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    rep.check("morphism", m.passes());
    let stages = stagewise_quasi_iso(&f, opts.truncation).map_err(input)?;
    rep.set("stagewise", stagewise_json(&stages));
    if fibration {
        let targets: Vec<Vector> = doc
            .named(&f.target.space, &doc.morphism.as_ref().expect("morphism").target_mc_elements, "morphism.target_mc_elements")
            .map_err(input)?
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let paths = target_paths(doc, &f, opts.truncation)?;
        let fib = fibration_consequence_check(&f, opts.truncation, &targets, &paths).map_err(input)?;
        let hypotheses = fib.hypotheses_met();
        let (source_q, target_q) = {
            let ws = Working::new(f.source.clone(), opts.truncation)?;
            let wt = Working::new(f.target.clone(), opts.truncation)?;
            (ws.g, wt.g)
        };
        let certificate = fib.certificate.as_ref().map(|c| {
            json!({
                "universal": c.universal(),
                "steps": c.steps.iter().map(|s| json!({
                    "weight": s.weight,
                    "graded_surjective": s.graded_surjective,
                    "fiber_dim": s.fiber_dim,
                    "rank": s.rank,
                })).collect::<Vec<_>>(),
            })
        });
        let lifts: Vec<Value> = fib
            .mc_lifts
            .iter()
            .map(|l| {
                json!({
                    "target": target_q.show(&l.target),
                    "lift": l.lift.as_ref().map(|v| source_q.show(v)),
                    "obstruction": l.obstruction.as_ref().map(|(w, s)| json!({ "weight": w, "witness": s })),
                })
            })
            .collect();
        let path_lifts: Vec<Value> = fib
            .path_lifts
            .iter()
            .map(|p| {
                json!({
                    "start": target_q.show(&p.start),
                    "lift": p.lift.as_ref().map(|h| homotopy_json(&source_q, h)),
                    "failure": p.failure,
                })
            })
            .collect();
        rep.set("fibration", json!({
            "status": if hypotheses { "hypotheses met" } else { "hypotheses not met" },
            "hypothesis_failures": fib.hypothesis_failures,
            "certificate": certificate,
            "mc_lifts": lifts,
            "path_lifts": path_lifts,
        }));
        rep.check("fibration_hypotheses", hypotheses);
        rep.check("fibration_lifts", fib.passes());
    }
    if let Some(lit) = twist_element {
        let phi = element_value(doc, &f.source.space, lit, Point::Mc)?;
        let t = twist_pushforward_check(&f, &phi, opts.truncation).map_err(input)?;
        rep.set("twist", json!({
            "phi": vector_in(&f.source, &phi),
            "hypothesis_failures": t.hypothesis_failures,
            "phi_residual": vector_in(&f.source, &t.phi_residual),
            "image": vector_in(&f.target, &t.image),
            "image_residual": vector_in(&f.target, &t.image_residual),
            "functorial": t.functorial,
            "twisted_morphism": t.twisted_morphism.passes(),
            "twisted_filtered": t.twisted_filtered,
            "twisted_stagewise": stagewise_json(&t.twisted_stagewise),
        }));
        rep.check("twist_pushforward", t.passes());
    }
    Ok(())
}

pub fn gm_check(doc: &Document, opts: &Options, rep: &mut Report) -> Result<(), CliError> {
    let f = doc.morphism().map_err(input)?;
    let order = opts.order.max(2);
    let gm = goldman_millson_check(&f, opts.truncation, order).map_err(input)?;
    rep.set("truncation", json!(gm.truncation));
    rep.set("max_order", json!(gm.max_order));
    rep.set("status", json!(if gm.hypotheses_met() { "hypotheses met" } else { "hypotheses not met" }));
    rep.set("hypothesis_failures", json!(gm.hypothesis_failures));
    rep.set("h1", gm.h1.as_ref().map(induced_json).unwrap_or(Value::Null));
    rep.set(
        "first_order_mod_gauge",
        gm.first_order_dims.map(|(a, b)| json!({ "source": a, "target": b })).unwrap_or(Value::Null),
    );
    let orders: Vec<Value> = gm
        .orders
        .iter()
        .map(|o| {
            json!({
                "n": o.n,
                "h2": induced_json(&o.h2),
                "quadratic_intertwined": o.quadratic_intertwined,
                "branches": o.branches.iter().map(|b| json!({
                    "direction": if b.forward { "forward" } else { "backward" },
                    "class": b.class,
                    "source_obstructed_at": b.source_obstructed_at,
                    "target_obstructed_at": b.target_obstructed_at,
                    "pushforward_valid": b.pushforward_valid,
                    "classes_correspond": b.classes_correspond,
                    "consistent": b.consistent(),
                })).collect::<Vec<_>>(),
                "passes": o.passes(),
            })
        })
        .collect();
    rep.set("orders", Value::Array(orders));
    rep.check("goldman_millson", gm.passes());
    Ok(())
}

fn tangent_json(g: &LInftyAlgebra, t: &TangentReport) -> Value {
    json!({
        "h0_tangent_complex": t.h0_dim,
        "h1_twisted": t.h1_dim,
        "first_order_mod_gauge": t.first_order_mod_gauge,
        "h_minus1_tangent_complex": t.h_minus1_dim,
        "orbit_differential_is_minus_d_phi": t.differentials_agree,
        "stabilizer_fixes_phi": t.stabilizer_fixes_phi,
        "h0_basis": vectors(g, &t.complex.h0),
        "h_minus1_basis": vectors(g, &t.complex.h_minus1),
    })
}

fn hochschild_arity(doc: &Document, opts: &Options) -> usize {
    opts.arity_bound
        .or(doc.associative.as_ref().and_then(|a| a.arity_bound))
        .unwrap_or(3)
}

pub fn tangent_cmd(doc: &Document, opts: &Options, element: Option<&str>, rep: &mut Report) -> Result<(), CliError> {
    if doc.algebra.is_none() && doc.morphism.is_none() {
        let data = doc.associative().map_err(input)?;
        let n = hochschild_arity(doc, opts);
        let d = deformation_pipeline(&data, n, opts.order.max(2)).map_err(input)?;
        let g = build_convolution(&data, n.max(3)).map_err(input)?.algebra;
        rep.set("arity_bound", json!(d.verdict.arity_bound));
        rep.set("mu", vector_in(&g, &d.verdict.mu));
        rep.set("tangent", tangent_json(&g, &d.tangent));
        rep.set("lift", json!({
            "coefficients": format!("K[t]/(t^{})", d.lift.n),
            "h2": d.lift.h2.dimension,
            "branches": d.lift.branches.iter().map(|b| json!({
                "terms": vectors(&g, &b.terms),
                "obstruction": b.obstruction.as_ref().map(|o| json!({
                    "order": o.order,
                    "cocycle": g.show(&o.cocycle),
                    "class": rationals(&o.class),
                })),
            })).collect::<Vec<_>>(),
        }));
        let t = &d.tangent;
        rep.check("three_dimensions_agree", t.h0_dim == t.h1_dim && t.h1_dim == t.first_order_mod_gauge);
        rep.check("pipeline", d.passes());
        return Ok(());
    }
    let w = Working::new(doc.algebra().map_err(input)?, opts.truncation)?;
    let mut pts = points(doc, &w.full.space, element, &doc.mc_elements, "mc_elements")?;
    if element.is_none() && !pts.iter().any(|(_, v)| v.is_zero()) {
        pts.insert(0, ("0".into(), Vector::zero()));
    }
    let mut out = Vec::new();
    for (name, v) in pts {
        let v = w.project(&v);
        let phi = match mc_element(&w.g, &v)? {
            Ok(p) => p,
            Err(r) => {
                rep.fail();
                out.push(json!({ "element": name, "maurer_cartan": false, "residual": vector_in(&w.g, &r) }));
                continue;
            }
        };
        let t = tangent_report(&w.g, &phi).map_err(computation)?;
        let ts = tangent_mc(&w.g, &phi).map_err(computation)?;
        let agree = t.h0_dim == t.h1_dim && t.h1_dim == t.first_order_mod_gauge;
        let ok = t.passes() && agree && ts.cocycles_deform && ts.deformations_are_cocycles;
        if !ok {
            rep.fail();
        }
        let mut obj = serde_json::Map::new();
        obj.insert("element".into(), json!(name));
        if let Value::Object(m) = tangent_json(&w.g, &t) {
            obj.extend(m);
        }
        obj.insert("cocycles_deform".into(), json!(ts.cocycles_deform));
        obj.insert("deformations_are_cocycles".into(), json!(ts.deformations_are_cocycles));
        obj.insert("three_dimensions_agree".into(), json!(agree));
        out.push(Value::Object(obj));
    }
    rep.set("truncation", json!(opts.truncation));
    rep.set("elements", Value::Array(out));
    Ok(())
}

pub fn hochschild(doc: &Document, opts: &Options, rep: &mut Report) -> Result<(), CliError> {
    let data: FiniteAlgebraData = doc.associative().map_err(input)?;
    let n = hochschild_arity(doc, opts);
    let cx = build_convolution(&data, n).map_err(input)?;
    rep.set("arity_bound", json!(n));
    rep.set("dimension", json!(cx.algebra.dim()));
    let pieces: Vec<Value> = (0..n)
        .map(|s| json!({ "s": s, "arity": s + 1, "dimension": cx.piece(s).len() }))
        .collect();
    rep.set("pieces", Value::Array(pieces));
    rep.set(
        "degree_one_quotients",
        Value::Array(
            cx.degree_one_quotient_dims()
                .into_iter()
                .map(|(r, d)| json!({ "r": r, "dimension": d }))
                .collect(),
        ),
    );
    rep.check("filtered_part_passes", verify_structure(&cx.filtered_part(), 3).passes());
    let v = structure_as_mc(&data, n).map_err(input)?;
    let g = build_convolution(&data, v.arity_bound).map_err(input)?.algebra;
    rep.set("mu", vector_in(&g, &v.mu));
    rep.set("residual", vector(&g.space, &v.residual));
    rep.set("associative", json!(v.associative));
    rep.set("residual_is_associator", json!(v.residual_is_associator));
    rep.check("maurer_cartan", v.is_mc());
    Ok(())
}
