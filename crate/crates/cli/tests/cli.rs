use linfty_cli::document::{load_document, parse_document, to_json, DocumentError};
use linfty_cli::run;
use serde_json::Value;

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn all_corpus() -> Vec<String> {
    let dir = format!("{}/../../corpus", env!("CARGO_MANIFEST_DIR"));
    let mut out: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path().display().to_string())
        .filter(|p| p.ends_with(".json"))
        .collect();
    out.sort();
    out
}

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).unwrap()
}

#[test]
fn verify_nil2_passes() {
    let out = run(["linfty", "--no-timing", "verify", &corpus("nil2.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json(&out.stdout)["verdict"], "pass");
}

#[test]
fn mc_residual_of_x_in_nil2() {
    let out = run(["linfty", "mc-residual", &corpus("nil2.json"), "--element", "x:1"]);
    assert_eq!(out.code, 1);
    let v = json(&out.stdout);
    assert_eq!(v["verdict"], "fail");
    assert!(out.stdout.contains("\"1/2·y\""), "{}", out.stdout);
}

#[test]
fn tangent_of_diagonal_product() {
    let out = run(["linfty", "tangent", &corpus("hochschild-k2-diagonal.json")]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    let t = &json(&out.stdout)["tangent"];
    let dims = [&t["h0_tangent_complex"], &t["h1_twisted"], &t["first_order_mod_gauge"]];
    assert!(dims.iter().all(|d| *d == dims[0]), "{t}");
}

#[test]
fn every_corpus_document_verifies() {
    for path in all_corpus() {
        let out = run(["linfty", "verify", path.as_str()]);
        assert_eq!(out.code, 0, "{path}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn documents_round_trip_through_the_canonical_form() {
    for path in all_corpus() {
        let doc = load_document(&path).unwrap();
        let canon = doc.canonical().unwrap();
        let text = to_json(&canon);
        let again = parse_document(&text, "memory").unwrap();
        assert_eq!(again, canon, "{path}");
        assert_eq!(to_json(&again.canonical().unwrap()), text, "{path}");
    }
}

#[test]
fn truncate_emits_a_loadable_document() {
    let out = run(["linfty", "--no-timing", "truncate", &corpus("heis0.json"), "--truncation", "2"]);
    assert_eq!(out.code, 0);
    let v = json(&out.stdout);
    let doc = parse_document(&serde_json::to_string(&v["document"]).unwrap(), "memory").unwrap();
    let g = doc.algebra().unwrap();
    assert!(g.space.basis().iter().all(|b| b.weight < 2));
}

#[test]
fn floats_are_rejected_with_a_position() {
    let text = "{\"format\": 1, \"name\": \"f\", \"algebra\": {\"max_arity\": 2,\n\"basis\": [{\"id\": \"x\", \"degree\": 1, \"weight\": 1}],\n\"brackets\": [{\"inputs\": [\"x\", \"x\"], \"output\": [[\"x\", 0.5]]}]}}";
    match parse_document(text, "f.json") {
        Err(DocumentError::Syntax { line, column, message, .. }) => {
            assert_eq!(line, 3);
            assert!(column > 0);
            assert!(message.contains("floating point"), "{message}");
        }
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn semantic_errors_carry_a_path() {
    let text = r#"{"format": 1, "name": "f", "algebra": {"max_arity": 2,
        "basis": [{"id": "x", "degree": 1, "weight": 1}],
        "brackets": [{"inputs": ["x", "z"], "output": []}]}}"#;
    let e = parse_document(text, "f.json").unwrap_err().to_string();
    assert!(e.contains("algebra.brackets[0].inputs[1]") && e.contains("`z`"), "{e}");
    let text = r#"{"format": 1, "name": "f", "algebra": {"max_arity": 2,
        "basis": [{"id": "x", "degree": 1, "weight": 1}],
        "brackets": [{"inputs": ["x", "x"], "output": [["x", "1/0"]]}]}}"#;
    assert!(parse_document(text, "f.json").is_err());
    let text = r#"{"format": 2, "name": "f"}"#;
    assert!(parse_document(text, "f.json").unwrap_err().to_string().contains("format"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(["linfty", "frobnicate"]).code, 2);
    assert_eq!(run(["linfty", "verify", "/nonexistent/doc.json"]).code, 2);
    assert_eq!(run(["linfty", "mc-residual", &corpus("nil2.json"), "--element", "x:0.5"]).code, 2);
    assert_eq!(run(["linfty", "mc-residual", &corpus("nil2.json"), "--element", "@missing"]).code, 2);
    assert_eq!(run(["linfty", "--help"]).code, 0);
}

#[test]
fn failing_verdicts_exit_with_one() {
    let out = run(["linfty", "morphism-verify", &corpus("nil2-doubling.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("2·y"));
    let out = run(["linfty", "morphism-verify", "--fibration", &corpus("nil2-acyclic-inclusion.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("hypotheses not met"));
    let out = run(["linfty", "hochschild", &corpus("hochschild-k2-nonassociative.json")]);
    assert_eq!(out.code, 1);
}

#[test]
fn text_format_and_timing_field() {
    let out = run(["linfty", "--format", "text", "--no-timing", "verify", &corpus("abelian.json")]);
    assert!(out.stdout.contains("verdict: pass"));
    assert!(!out.stdout.contains("elapsed_us"));
    let out = run(["linfty", "verify", &corpus("abelian.json")]);
    assert!(json(&out.stdout)["elapsed_us"].is_u64());
}

#[test]
fn command_outputs_on_small_examples() {
    let out = run(["linfty", "--no-timing", "mc-system", &corpus("twistable.json")]);
    assert!(out.stdout.contains("1/2·x^2 - 1/2·u = 0"), "{}", out.stdout);
    let out = run(["linfty", "--no-timing", "gauge-act", &corpus("twistable.json"), "--xi", "@g2", "--element", "@phi"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("x + u + 2·h"), "{}", out.stdout);
    let out = run(["linfty", "--no-timing", "bch", &corpus("heis0.json"), "--x", "p:1", "--y", "q:1", "--truncation", "3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("p + q + 1/2·z"), "{}", out.stdout);
    let out = run(["linfty", "--no-timing", "simplex-verify", &corpus("twistable.json"), "--simplex", "x:1; u:1; h:2:t; g:-2:dt1"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    let out = run(["linfty", "--no-timing", "simplex-verify", &corpus("twistable.json"), "--simplex", "x:1; u:1; h:3:t; g:-2:dt1"]);
    assert_eq!(out.code, 1);
    let out = run(["linfty", "--no-timing", "pi0", &corpus("twistable.json"), "--element", "@phi"]);
    assert_eq!(out.code, 0);
    let out = run(["linfty", "--no-timing", "lift", &corpus("nil2.json"), "--order", "3"]);
    assert_eq!(out.code, 1);
}

#[test]
fn names_resolve_in_the_list_matching_the_flag() {
    // heis0 has both a Maurer–Cartan point and a gauge element called `mixed`
    let out = run(["linfty", "--no-timing", "gauge-connect", &corpus("heis0.json"), "--xi", "@mixed", "--element", "@mixed"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    let out = run(["linfty", "--no-timing", "bch", &corpus("heis0.json"), "--x", "@mixed", "--y", "@p"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
}
