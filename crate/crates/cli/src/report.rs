//! Report documents and their JSON and text renderings.

use serde_json::{json, Map, Value};

use linfty_core::exactlin::{format_rational, GradedSpace, Rational, Vector};
use linfty_core::linf::LInftyAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: Vec<String>,
    pub verdict: Verdict,
    pub body: Map<String, Value>,
    /// Wall-clock time in microseconds; omitted from the output when `None`.
    pub elapsed_us: Option<u128>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            verdict: Verdict::Pass,
            body: Map::new(),
            elapsed_us: None,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.body.insert(key.to_string(), value);
    }

    /// Records a named check and folds it into the verdict.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.set(key, Value::Bool(ok));
        if !ok {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn fail(&mut self) {
        self.verdict = Verdict::Fail;
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("verdict".into(), json!(self.verdict.as_str()));
        for (k, v) in &self.body {
            out.insert(k.clone(), v.clone());
        }
        if let Some(t) = self.elapsed_us {
            out.insert("elapsed_us".into(), json!(t as u64));
        }
        Value::Object(out)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                render_text(&self.to_value(), 0, &mut s);
                s
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => {
            if let Some(s) = scalar(other) {
                out.push_str(&format!("{pad}{s}\n"));
            }
        }
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rationals(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

/// A vector as readable text plus exact coordinates.
pub fn vector(space: &GradedSpace, v: &Vector) -> Value {
    let coords: Vec<Value> = v
        .iter()
        .map(|(i, c)| json!([space.id(i), format_rational(c)]))
        .collect();
    json!({ "text": v.display(space), "coordinates": coords })
}

pub fn vector_in(g: &LInftyAlgebra, v: &Vector) -> Value {
    vector(&g.space, v)
}

pub fn vectors(g: &LInftyAlgebra, vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| Value::String(g.show(v))).collect())
}
