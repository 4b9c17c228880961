//! JSON documents describing algebras, morphisms, coefficient algebras, associative products
//! and named corpus points. Rationals are written as strings (`"-3/4"`, `"2"`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use linfty_core::defcomplex::FiniteAlgebraData;
use linfty_core::exactlin::{format_rational, parse_rational, BasisElement, GradedSpace, Rational, Vector};
use linfty_core::filtered::CoefficientAlgebra;
use linfty_core::linf::LInftyAlgebra;
use linfty_core::morphisms::FilteredMorphism;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: malformed JSON at line {line}, column {column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn invalid(at: &str, msg: impl std::fmt::Display) -> DocumentError {
    DocumentError::Invalid(format!("{at}: {msg}"))
}

/// `[[identifier, rational], …]`.
pub type Terms = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub id: String,
    pub degree: i32,
    #[serde(default = "one")]
    pub weight: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub inputs: Vec<String>,
    pub output: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub max_arity: usize,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedTerms {
    pub name: String,
    pub value: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageEntry {
    pub input: String,
    pub output: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismBlock {
    pub source: AlgebraBlock,
    pub target: AlgebraBlock,
    /// Images of source basis elements; omitted ones map to zero.
    pub images: Vec<ImageEntry>,
    /// Maurer–Cartan elements of the target (for lifting checks).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub target_mc_elements: Vec<NamedTerms>,
    /// Degree-0 elements of the target (for homotopies to lift).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub target_gauge_elements: Vec<NamedTerms>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub output: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientBlock {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    pub unit: String,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<ImageEntry>,
}

/// A product on `X = 𝕂^d` in degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssociativeBlock {
    pub basis: Vec<String>,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associative: Option<AssociativeBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coefficients: Vec<CoefficientBlock>,
    /// Maurer–Cartan elements of the algebra (or of the morphism source).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mc_elements: Vec<NamedTerms>,
    /// Degree-0 elements used as gauge parameters.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gauge_elements: Vec<NamedTerms>,
}

pub fn parse_document(text: &str, path: &str) -> Result<Document, DocumentError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: {
            let m = e.to_string();
            m.rsplit_once(" at line ").map_or(m.clone(), |(head, _)| head.to_string())
        },
    })?;
    if doc.format != FORMAT_VERSION {
        return Err(invalid(
            "format",
            format!("unsupported format version {} (expected {FORMAT_VERSION})", doc.format),
        ));
    }
    // build everything once so that semantic errors surface at load time
    if let Some(a) = &doc.algebra {
        a.build("algebra")?;
    }
    if let Some(m) = &doc.morphism {
        m.build()?;
    }
    if let Some(a) = &doc.associative {
        a.build()?;
    }
    for (i, c) in doc.coefficients.iter().enumerate() {
        c.build(&format!("coefficients[{i}]"))?;
    }
    Ok(doc)
}

pub fn load_document(path: &str) -> Result<Document, DocumentError> {
    let text = std::fs::read_to_string(path).map_err(|e| DocumentError::Io {
        path: path.to_string(),
        message: {
            let m = e.to_string();
            m.rsplit_once(" at line ").map_or(m.clone(), |(head, _)| head.to_string())
        },
    })?;
    parse_document(&text, path)
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn rational_at(at: &str, lit: &str) -> Result<Rational, DocumentError> {
    parse_rational(lit).map_err(|e| invalid(at, format!("`{lit}`: {e}")))
}

fn index_at(space: &GradedSpace, at: &str, id: &str) -> Result<usize, DocumentError> {
    space
        .index_of(id)
        .ok_or_else(|| invalid(at, format!("unknown basis identifier `{id}`")))
}

/// Parses terms against a space, summing repeated identifiers.
pub fn vector_from_terms(space: &GradedSpace, terms: &Terms, at: &str) -> Result<Vector, DocumentError> {
    let mut v = Vector::zero();
    for (k, (id, c)) in terms.iter().enumerate() {
        let here = format!("{at}[{k}]");
        let i = index_at(space, &here, id)?;
        v.add_term(i, rational_at(&here, c)?);
    }
    Ok(v)
}

/// Canonical terms in basis order with reduced rationals.
pub fn terms_from_vector(space: &GradedSpace, v: &Vector) -> Terms {
    v.iter()
        .map(|(i, c)| (space.id(i).to_string(), format_rational(c)))
        .collect()
}

/// Parses `"x:1, y:-1/2"` against a space.
pub fn parse_element(space: &GradedSpace, lit: &str) -> Result<Vector, DocumentError> {
    let mut v = Vector::zero();
    for part in lit.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (id, c) = part
            .split_once(':')
            .ok_or_else(|| invalid("element", format!("`{part}` is not of the form id:rational")))?;
        let i = index_at(space, "element", id.trim())?;
        v.add_term(i, rational_at("element", c.trim())?);
    }
    Ok(v)
}

fn space_from(basis: &[BasisEntry], at: &str) -> Result<GradedSpace, DocumentError> {
    GradedSpace::new(
        basis
            .iter()
            .map(|b| BasisElement::new(b.id.clone(), b.degree, b.weight))
            .collect(),
    )
    .map_err(|e| invalid(&format!("{at}.basis"), e))
}

fn basis_entries(space: &GradedSpace) -> Vec<BasisEntry> {
    space
        .basis()
        .iter()
        .map(|b| BasisEntry {
            id: b.id.clone(),
            degree: b.degree,
            weight: b.weight,
        })
        .collect()
}

impl AlgebraBlock {
    pub fn build(&self, at: &str) -> Result<LInftyAlgebra, DocumentError> {
        if self.max_arity == 0 {
            return Err(invalid(&format!("{at}.max_arity"), "must be at least 1"));
        }
        let space = space_from(&self.basis, at)?;
        let mut g = LInftyAlgebra::new(space.clone(), self.max_arity);
        for (k, b) in self.brackets.iter().enumerate() {
            let here = format!("{at}.brackets[{k}]");
            let inputs = b
                .inputs
                .iter()
                .enumerate()
                .map(|(j, id)| index_at(&space, &format!("{here}.inputs[{j}]"), id))
                .collect::<Result<Vec<_>, _>>()?;
            let out = vector_from_terms(&space, &b.output, &format!("{here}.output"))?;
            g.add_bracket(&inputs, &out).map_err(|e| invalid(&here, e))?;
        }
        Ok(g)
    }

    /// The canonical block of an algebra: basis order kept, brackets on canonical tuples.
    pub fn from_algebra(g: &LInftyAlgebra) -> Self {
        let brackets = g
            .brackets
            .iter()
            .map(|(_, t, v)| BracketEntry {
                inputs: t.iter().map(|&i| g.space.id(i).to_string()).collect(),
                output: terms_from_vector(&g.space, v),
            })
            .collect();
        Self {
            max_arity: g.max_arity(),
            basis: basis_entries(&g.space),
            brackets,
        }
    }
}

impl MorphismBlock {
    pub fn build(&self) -> Result<FilteredMorphism, DocumentError> {
        let source = self.source.build("morphism.source")?;
        let target = self.target.build("morphism.target")?;
        let mut images = vec![Vector::zero(); source.dim()];
        for (k, e) in self.images.iter().enumerate() {
            let here = format!("morphism.images[{k}]");
            let i = index_at(&source.space, &format!("{here}.input"), &e.input)?;
            images[i] = vector_from_terms(&target.space, &e.output, &format!("{here}.output"))?;
        }
        let f = FilteredMorphism::new(source, target, images)
            .map_err(|e| invalid("morphism.images", e))?;
        for (k, p) in self.target_mc_elements.iter().enumerate() {
            vector_from_terms(&f.target.space, &p.value, &format!("morphism.target_mc_elements[{k}].value"))?;
        }
        for (k, p) in self.target_gauge_elements.iter().enumerate() {
            vector_from_terms(&f.target.space, &p.value, &format!("morphism.target_gauge_elements[{k}].value"))?;
        }
        Ok(f)
    }

    pub fn from_morphism(f: &FilteredMorphism) -> Self {
        let images = (0..f.source.dim())
            .filter(|&i| !f.map.columns[i].is_zero())
            .map(|i| ImageEntry {
                input: f.source.space.id(i).to_string(),
                output: terms_from_vector(&f.target.space, &f.map.columns[i]),
            })
            .collect();
        Self {
            source: AlgebraBlock::from_algebra(&f.source),
            target: AlgebraBlock::from_algebra(&f.target),
            images,
            target_mc_elements: Vec::new(),
            target_gauge_elements: Vec::new(),
        }
    }
}

impl CoefficientBlock {
    pub fn build(&self, at: &str) -> Result<CoefficientAlgebra, DocumentError> {
        let space = space_from(&self.basis, at)?;
        let unit = index_at(&space, &format!("{at}.unit"), &self.unit)?;
        let mut products = BTreeMap::new();
        for (k, p) in self.products.iter().enumerate() {
            let here = format!("{at}.products[{k}]");
            let a = index_at(&space, &format!("{here}.left"), &p.left)?;
            let b = index_at(&space, &format!("{here}.right"), &p.right)?;
            products.insert((a, b), vector_from_terms(&space, &p.output, &format!("{here}.output"))?);
        }
        let differential = if self.differential.is_empty() {
            None
        } else {
            let mut cols = vec![Vector::zero(); space.dim()];
            for (k, e) in self.differential.iter().enumerate() {
                let here = format!("{at}.differential[{k}]");
                let i = index_at(&space, &format!("{here}.input"), &e.input)?;
                cols[i] = vector_from_terms(&space, &e.output, &format!("{here}.output"))?;
            }
            Some(cols)
        };
        CoefficientAlgebra::new(self.name.clone(), space, unit, &products, differential)
            .map_err(|e| invalid(at, e))
    }
}

impl AssociativeBlock {
    pub fn build(&self) -> Result<FiniteAlgebraData, DocumentError> {
        let d = self.basis.len();
        let pos = |at: &str, id: &str| {
            self.basis
                .iter()
                .position(|b| b == id)
                .ok_or_else(|| invalid(at, format!("unknown basis identifier `{id}`")))
        };
        let mut products = vec![vec![vec![Rational::default(); d]; d]; d];
        for (k, p) in self.products.iter().enumerate() {
            let here = format!("associative.products[{k}]");
            let a = pos(&format!("{here}.left"), &p.left)?;
            let b = pos(&format!("{here}.right"), &p.right)?;
            for (j, (id, c)) in p.output.iter().enumerate() {
                let at = format!("{here}.output[{j}]");
                let out = pos(&at, id)?;
                products[a][b][out] += rational_at(&at, c)?;
            }
        }
        FiniteAlgebraData::new(self.basis.clone(), products).map_err(|e| invalid("associative", e))
    }
}

impl Document {
    pub fn algebra(&self) -> Result<LInftyAlgebra, DocumentError> {
        match (&self.algebra, &self.morphism) {
            (Some(a), _) => a.build("algebra"),
            (None, Some(m)) => m.source.build("morphism.source"),
            (None, None) => Err(DocumentError::Invalid(
                "document has no `algebra` or `morphism` block".into(),
            )),
        }
    }

    pub fn morphism(&self) -> Result<FilteredMorphism, DocumentError> {
        self.morphism
            .as_ref()
            .ok_or_else(|| DocumentError::Invalid("document has no `morphism` block".into()))?
            .build()
    }

    pub fn associative(&self) -> Result<FiniteAlgebraData, DocumentError> {
        self.associative
            .as_ref()
            .ok_or_else(|| DocumentError::Invalid("document has no `associative` block".into()))?
            .build()
    }

    pub fn named(&self, space: &GradedSpace, list: &[NamedTerms], what: &str) -> Result<Vec<(String, Vector)>, DocumentError> {
        list.iter()
            .enumerate()
            .map(|(k, p)| {
                Ok((p.name.clone(), vector_from_terms(space, &p.value, &format!("{what}[{k}].value"))?))
            })
            .collect()
    }

    /// The canonical form: every block rebuilt from the parsed objects.
    pub fn canonical(&self) -> Result<Document, DocumentError> {
        let mut out = self.clone();
        if let Some(a) = &self.algebra {
            let g = a.build("algebra")?;
            out.algebra = Some(AlgebraBlock::from_algebra(&g));
            out.mc_elements = canonical_points(&g.space, &self.mc_elements, "mc_elements")?;
            out.gauge_elements = canonical_points(&g.space, &self.gauge_elements, "gauge_elements")?;
        }
        if let Some(m) = &self.morphism {
            let f = m.build()?;
            let mut block = MorphismBlock::from_morphism(&f);
            block.target_mc_elements =
                canonical_points(&f.target.space, &m.target_mc_elements, "morphism.target_mc_elements")?;
            block.target_gauge_elements =
                canonical_points(&f.target.space, &m.target_gauge_elements, "morphism.target_gauge_elements")?;
            out.morphism = Some(block);
            if self.algebra.is_none() {
                out.mc_elements = canonical_points(&f.source.space, &self.mc_elements, "mc_elements")?;
                out.gauge_elements =
                    canonical_points(&f.source.space, &self.gauge_elements, "gauge_elements")?;
            }
        }
        if let Some(a) = &self.associative {
            let data = a.build()?;
            let mut products = Vec::new();
            for (i, l) in data.names.iter().enumerate() {
                for (j, r) in data.names.iter().enumerate() {
                    let output: Terms = data.products[i][j]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != Rational::default())
                        .map(|(k, c)| (data.names[k].clone(), format_rational(c)))
                        .collect();
                    if !output.is_empty() {
                        products.push(ProductEntry {
                            left: l.clone(),
                            right: r.clone(),
                            output,
                        });
                    }
                }
            }
            out.associative = Some(AssociativeBlock {
                basis: data.names.clone(),
                products,
                arity_bound: a.arity_bound,
            });
        }
        Ok(out)
    }
}

fn canonical_points(space: &GradedSpace, list: &[NamedTerms], what: &str) -> Result<Vec<NamedTerms>, DocumentError> {
    list.iter()
        .enumerate()
        .map(|(k, p)| {
            let v = vector_from_terms(space, &p.value, &format!("{what}[{k}].value"))?;
            Ok(NamedTerms {
                name: p.name.clone(),
                value: terms_from_vector(space, &v),
            })
        })
        .collect()
}
