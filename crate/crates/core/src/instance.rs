//! The textual interface shared by the library and the command line:
//! instance documents describing a graph product, the `vertex:element` word
//! syntax, quotient documents for the separation pipeline, and certificate
//! documents.
//!
//! All documents are JSON. Serialization uses fixed field order and sorted
//! maps, so identical inputs always produce identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::Transformation;
use crate::gp::{GpError, GraphProductSpec};
use crate::graph::{CommutationGraph, GraphError};
use crate::monoid::{FiniteMonoid, MonoidError, VertexMorphism};
use crate::normalform::NormalForm;
use crate::separation::{PipelineData, SeparationCertificate};
use crate::word::{Letter, Word};

pub const CERTIFICATE_FORMAT: &str = "graph-product-separation/v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("label {label:?} is invalid: {reason}")]
    BadLabel { label: String, reason: &'static str },
    #[error("unknown vertex label {label:?}")]
    UnknownVertex { label: String },
    #[error("no monoid given for vertex {label:?}")]
    MissingMonoid { label: String },
    #[error("unknown element label {label:?} at vertex {vertex:?}")]
    UnknownElement { vertex: String, label: String },
    #[error("bad word token {token:?}; expected vertex:element")]
    BadWordToken { token: String },
    #[error("quotient map at vertex {vertex:?} is missing source element {label:?}")]
    IncompleteQuotientMap { vertex: String, label: String },
    #[error("certificate declares format {found:?}, expected {expected:?}")]
    CertificateFormat { expected: String, found: String },
    #[error("certificate was produced for a different instance (hash {found} vs {expected})")]
    SpecHashMismatch { expected: String, found: String },
    #[error("certificate pipeline does not cover vertex {label:?} exactly once")]
    PipelineCoverage { label: String },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gp(#[from] GpError),
}

fn parse_error(err: serde_json::Error) -> InstanceError {
    InstanceError::Parse {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

// Labels travel through colon-separated tokens and bracketed block syntax,
// so the separator characters are reserved.
fn check_label(label: &str) -> Result<(), InstanceError> {
    let bad = |reason| InstanceError::BadLabel {
        label: label.to_string(),
        reason,
    };
    if label.is_empty() {
        return Err(bad("empty"));
    }
    if label.chars().any(char::is_whitespace) {
        return Err(bad("contains whitespace"));
    }
    if label.contains([':', '[', ']']) {
        return Err(bad("contains one of the reserved characters : [ ]"));
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
struct InstanceDoc {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    monoids: BTreeMap<String, MonoidDoc>,
}

#[derive(Debug, Deserialize)]
struct MonoidDoc {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
}

fn monoid_from_doc(vertex: &str, doc: &MonoidDoc) -> Result<FiniteMonoid, InstanceError> {
    for label in &doc.elements {
        check_label(label)?;
    }
    let resolve = |label: &str| -> Result<usize, InstanceError> {
        doc.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| InstanceError::UnknownElement {
                vertex: vertex.to_string(),
                label: label.to_string(),
            })
    };
    let mut table = Vec::with_capacity(doc.table.len());
    for row in &doc.table {
        let mut indices = Vec::with_capacity(row.len());
        for label in row {
            indices.push(resolve(label)?);
        }
        table.push(indices);
    }
    // the identity is the first listed element by convention
    Ok(FiniteMonoid::validate(table, 0, doc.elements.clone())?)
}

/// Parses and validates an instance document into a graph product.
pub fn parse_instance(text: &str) -> Result<GraphProductSpec, InstanceError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(parse_error)?;
    for label in &doc.vertices {
        check_label(label)?;
    }
    let vertex_index = |label: &str| -> Result<usize, InstanceError> {
        doc.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| InstanceError::UnknownVertex {
                label: label.to_string(),
            })
    };
    for key in doc.monoids.keys() {
        vertex_index(key)?;
    }
    let mut monoids = Vec::with_capacity(doc.vertices.len());
    for vertex in &doc.vertices {
        let monoid_doc = doc
            .monoids
            .get(vertex)
            .ok_or_else(|| InstanceError::MissingMonoid {
                label: vertex.clone(),
            })?;
        monoids.push(monoid_from_doc(vertex, monoid_doc)?);
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (a, b) in &doc.edges {
        edges.push((vertex_index(a)?, vertex_index(b)?));
    }
    if doc.vertices.is_empty() {
        return Err(InstanceError::Graph(GraphError::EmptyVertexSet));
    }
    let graph = CommutationGraph::new(doc.vertices.len(), &edges)?;
    Ok(GraphProductSpec::with_vertex_labels(
        graph,
        monoids,
        doc.vertices,
    )?)
}

/// Parses a word given as whitespace-separated `vertex:element` tokens.
/// Square brackets are treated as whitespace, so printed normal forms parse
/// back directly.
pub fn parse_word(spec: &GraphProductSpec, text: &str) -> Result<Word, InstanceError> {
    let cleaned: String = text
        .chars()
        .map(|c| if c == '[' || c == ']' { ' ' } else { c })
        .collect();
    let mut letters = Vec::new();
    for token in cleaned.split_whitespace() {
        let (vertex_label, element_label) =
            token
                .split_once(':')
                .ok_or_else(|| InstanceError::BadWordToken {
                    token: token.to_string(),
                })?;
        let vertex =
            spec.vertex_of_label(vertex_label)
                .ok_or_else(|| InstanceError::UnknownVertex {
                    label: vertex_label.to_string(),
                })?;
        let element = spec
            .monoid(vertex)
            .index_of_label(element_label)
            .ok_or_else(|| InstanceError::UnknownElement {
                vertex: vertex_label.to_string(),
                label: element_label.to_string(),
            })?;
        letters.push(Letter::new(vertex, element));
    }
    Ok(Word::new(letters))
}

fn token(spec: &GraphProductSpec, letter: Letter) -> String {
    format!(
        "{}:{}",
        spec.vertex_label(letter.vertex),
        spec.monoid(letter.vertex).label(letter.element)
    )
}

/// A word as space-separated tokens.
pub fn format_word(spec: &GraphProductSpec, word: &Word) -> String {
    word.letters()
        .iter()
        .map(|&l| token(spec, l))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A normal form as bracketed blocks, e.g. `[0:a 1:c][2:b]`; the empty form
/// prints as `[]`.
pub fn format_normal_form(spec: &GraphProductSpec, nf: &NormalForm) -> String {
    if nf.is_empty() {
        return "[]".to_string();
    }
    nf.blocks()
        .iter()
        .map(|block| {
            let inner = block
                .letters()
                .map(|l| token(spec, l))
                .collect::<Vec<_>>()
                .join(" ");
            format!("[{inner}]")
        })
        .collect()
}

/// A word as label-pair tokens, for machine output.
pub fn word_tokens(spec: &GraphProductSpec, word: &Word) -> Vec<(String, String)> {
    word.letters()
        .iter()
        .map(|l| {
            (
                spec.vertex_label(l.vertex).to_string(),
                spec.monoid(l.vertex).label(l.element).to_string(),
            )
        })
        .collect()
}

/// A word back from label-pair tokens.
pub fn word_from_tokens(
    spec: &GraphProductSpec,
    tokens: &[(String, String)],
) -> Result<Word, InstanceError> {
    let mut letters = Vec::with_capacity(tokens.len());
    for (vertex_label, element_label) in tokens {
        let vertex =
            spec.vertex_of_label(vertex_label)
                .ok_or_else(|| InstanceError::UnknownVertex {
                    label: vertex_label.clone(),
                })?;
        let element = spec
            .monoid(vertex)
            .index_of_label(element_label)
            .ok_or_else(|| InstanceError::UnknownElement {
                vertex: vertex_label.clone(),
                label: element_label.clone(),
            })?;
        letters.push(Letter::new(vertex, element));
    }
    Ok(Word::new(letters))
}

/// Blocks of a normal form as label-pair tokens, for machine output.
pub fn normal_form_blocks(spec: &GraphProductSpec, nf: &NormalForm) -> Vec<Vec<(String, String)>> {
    nf.blocks()
        .iter()
        .map(|block| {
            block
                .letters()
                .map(|l| {
                    (
                        spec.vertex_label(l.vertex).to_string(),
                        spec.monoid(l.vertex).label(l.element).to_string(),
                    )
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Deserialize)]
struct QuotientsDoc {
    quotients: BTreeMap<String, QuotientDoc>,
}

#[derive(Debug, Deserialize)]
struct QuotientDoc {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
    map: BTreeMap<String, String>,
}

fn quotient_from_parts(
    spec: &GraphProductSpec,
    vertex: usize,
    elements: &[String],
    table: &[Vec<String>],
    map: &BTreeMap<String, String>,
) -> Result<VertexMorphism, InstanceError> {
    let vertex_label = spec.vertex_label(vertex);
    let target = monoid_from_doc(
        vertex_label,
        &MonoidDoc {
            elements: elements.to_vec(),
            table: table.to_vec(),
        },
    )?;
    let source = spec.monoid(vertex);
    let mut indices = Vec::with_capacity(source.size());
    for source_label in source.labels() {
        let target_label =
            map.get(source_label)
                .ok_or_else(|| InstanceError::IncompleteQuotientMap {
                    vertex: vertex_label.to_string(),
                    label: source_label.clone(),
                })?;
        let index =
            target
                .index_of_label(target_label)
                .ok_or_else(|| InstanceError::UnknownElement {
                    vertex: vertex_label.to_string(),
                    label: target_label.clone(),
                })?;
        indices.push(index);
    }
    Ok(VertexMorphism::validate(source.clone(), target, indices)?)
}

/// Parses a quotient document into one vertex morphism per vertex. Vertices
/// absent from the document get the identity morphism.
pub fn parse_quotients(
    spec: &GraphProductSpec,
    text: &str,
) -> Result<Vec<VertexMorphism>, InstanceError> {
    let doc: QuotientsDoc = serde_json::from_str(text).map_err(parse_error)?;
    for key in doc.quotients.keys() {
        if spec.vertex_of_label(key).is_none() {
            return Err(InstanceError::UnknownVertex { label: key.clone() });
        }
    }
    let mut out = Vec::with_capacity(spec.vertex_count());
    for vertex in 0..spec.vertex_count() {
        let label = spec.vertex_label(vertex);
        match doc.quotients.get(label) {
            None => out.push(VertexMorphism::identity(spec.monoid(vertex))),
            Some(q) => out.push(quotient_from_parts(
                spec,
                vertex,
                &q.elements,
                &q.table,
                &q.map,
            )?),
        }
    }
    Ok(out)
}

/// Serialized form of a separation certificate.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateDoc {
    pub format: String,
    pub spec_hash: String,
    pub u: Vec<(String, String)>,
    pub v: Vec<(String, String)>,
    pub pipeline: Option<PipelineDoc>,
    pub k: usize,
    pub fk_size: usize,
    pub image_u: Vec<usize>,
    pub image_v: Vec<usize>,
    pub witness_state: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PipelineDoc {
    pub quotients: Vec<QuotientEntryDoc>,
    pub retained_vertices: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuotientEntryDoc {
    pub vertex: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub map: BTreeMap<String, String>,
}

/// Renders a certificate as its document form.
pub fn certificate_to_doc(cert: &SeparationCertificate) -> CertificateDoc {
    let spec = cert.u().spec();
    let pipeline = cert.pipeline().map(|pipeline| PipelineDoc {
        quotients: pipeline
            .quotients
            .iter()
            .enumerate()
            .map(|(vertex, q)| {
                let target = q.target();
                QuotientEntryDoc {
                    vertex: spec.vertex_label(vertex).to_string(),
                    elements: target.labels().to_vec(),
                    table: target
                        .table_rows()
                        .into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|e| target.label(e).to_string())
                                .collect()
                        })
                        .collect(),
                    map: q
                        .source()
                        .labels()
                        .iter()
                        .enumerate()
                        .map(|(i, l)| (l.clone(), target.label(q.apply(i)).to_string()))
                        .collect(),
                }
            })
            .collect(),
        retained_vertices: pipeline
            .retained_vertices
            .iter()
            .map(|&v| spec.vertex_label(v).to_string())
            .collect(),
    });
    CertificateDoc {
        format: CERTIFICATE_FORMAT.to_string(),
        spec_hash: spec.content_hash().to_string(),
        u: word_tokens(spec, &cert.u().canonical_word()),
        v: word_tokens(spec, &cert.v().canonical_word()),
        pipeline,
        k: cert.k(),
        fk_size: cert.fk_size(),
        image_u: cert.image_u().images().to_vec(),
        image_v: cert.image_v().images().to_vec(),
        witness_state: cert.witness_state(),
    }
}

/// Rebuilds a certificate from its document form against a given instance.
/// Only structural consistency is checked here; semantic validity is the
/// job of certificate verification.
pub fn certificate_from_doc(
    spec: &GraphProductSpec,
    doc: &CertificateDoc,
) -> Result<SeparationCertificate, InstanceError> {
    if doc.format != CERTIFICATE_FORMAT {
        return Err(InstanceError::CertificateFormat {
            expected: CERTIFICATE_FORMAT.to_string(),
            found: doc.format.clone(),
        });
    }
    if doc.spec_hash != spec.content_hash() {
        return Err(InstanceError::SpecHashMismatch {
            expected: spec.content_hash().to_string(),
            found: doc.spec_hash.clone(),
        });
    }
    let u = spec.element_of(&word_from_tokens(spec, &doc.u)?)?;
    let v = spec.element_of(&word_from_tokens(spec, &doc.v)?)?;
    let pipeline = match &doc.pipeline {
        None => None,
        Some(pipeline_doc) => {
            let mut quotients: Vec<Option<VertexMorphism>> = vec![None; spec.vertex_count()];
            for entry in &pipeline_doc.quotients {
                let vertex = spec.vertex_of_label(&entry.vertex).ok_or_else(|| {
                    InstanceError::UnknownVertex {
                        label: entry.vertex.clone(),
                    }
                })?;
                if quotients[vertex].is_some() {
                    return Err(InstanceError::PipelineCoverage {
                        label: entry.vertex.clone(),
                    });
                }
                quotients[vertex] = Some(quotient_from_parts(
                    spec,
                    vertex,
                    &entry.elements,
                    &entry.table,
                    &entry.map,
                )?);
            }
            let quotients: Vec<VertexMorphism> = quotients
                .into_iter()
                .enumerate()
                .map(|(vertex, q)| {
                    q.ok_or_else(|| InstanceError::PipelineCoverage {
                        label: spec.vertex_label(vertex).to_string(),
                    })
                })
                .collect::<Result<_, _>>()?;
            let mut retained = Vec::with_capacity(pipeline_doc.retained_vertices.len());
            for label in &pipeline_doc.retained_vertices {
                retained.push(spec.vertex_of_label(label).ok_or_else(|| {
                    InstanceError::UnknownVertex {
                        label: label.clone(),
                    }
                })?);
            }
            Some(PipelineData {
                quotients,
                retained_vertices: retained,
            })
        }
    };
    Ok(SeparationCertificate::from_parts(
        u,
        v,
        pipeline,
        doc.k,
        doc.fk_size,
        Transformation::from_images(doc.image_u.clone()),
        Transformation::from_images(doc.image_v.clone()),
        doc.witness_state,
    ))
}
