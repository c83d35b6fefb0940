//! Separating morphisms into finite monoids, packaged as re-verifiable
//! certificates.
//!
//! For a fully finite product, two distinct elements are separated by the
//! transformation morphism on F_k with k the larger of their block lengths;
//! the identity state is always a witness. For vertex monoids standing in
//! for larger ones, the user supplies per-vertex quotient morphisms; the
//! pipeline quotients letterwise, retracts to the joint support, and then
//! runs the finite construction.

use thiserror::Error;

use crate::action::{enumerate_fk, ActionError, Transformation, DEFAULT_STATE_LIMIT};
use crate::gp::{GPElement, GpError, GraphProductSpec, InducedMorphism, Retraction};
use crate::monoid::VertexMorphism;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparationError {
    #[error("the two elements are equal; nothing to separate")]
    ElementsEqual,
    #[error("element belongs to a different graph product")]
    SpecMismatch,
    #[error("{count} vertex quotients given for a graph with {vertex_count} vertices")]
    QuotientCountMismatch { count: usize, vertex_count: usize },
    #[error("the quotient at vertex {vertex} does not have the vertex monoid as its source")]
    QuotientSourceMismatch { vertex: usize },
    #[error("the quotient at vertex {vertex} merges the relevant letters {x:?} and {y:?}")]
    QuotientInsufficient { vertex: usize, x: String, y: String },
    #[error("the quotiented images of the two elements coincide; the supplied quotients are insufficient")]
    QuotientImagesEqual,
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Gp(#[from] GpError),
}

/// The pipeline stages recorded inside a certificate: the per-vertex
/// quotients applied first, and the vertex subset retained by the
/// retraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineData {
    pub quotients: Vec<VertexMorphism>,
    pub retained_vertices: Vec<usize>,
}

/// A self-contained witness that two elements map differently into a finite
/// transformation monoid. Certificates can be re-verified from scratch
/// without trusting their producer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    u: GPElement,
    v: GPElement,
    pipeline: Option<PipelineData>,
    k: usize,
    fk_size: usize,
    image_u: Transformation,
    image_v: Transformation,
    witness_state: usize,
}

impl SeparationCertificate {
    pub fn u(&self) -> &GPElement {
        &self.u
    }

    pub fn v(&self) -> &GPElement {
        &self.v
    }

    pub fn pipeline(&self) -> Option<&PipelineData> {
        self.pipeline.as_ref()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fk_size(&self) -> usize {
        self.fk_size
    }

    pub fn image_u(&self) -> &Transformation {
        &self.image_u
    }

    pub fn image_v(&self) -> &Transformation {
        &self.image_v
    }

    pub fn witness_state(&self) -> usize {
        self.witness_state
    }

    /// Builds a certificate from raw parts, for deserialized documents.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        u: GPElement,
        v: GPElement,
        pipeline: Option<PipelineData>,
        k: usize,
        fk_size: usize,
        image_u: Transformation,
        image_v: Transformation,
        witness_state: usize,
    ) -> Self {
        SeparationCertificate {
            u,
            v,
            pipeline,
            k,
            fk_size,
            image_u,
            image_v,
            witness_state,
        }
    }
}

/// Separates two distinct elements of a fully finite product directly.
pub fn separate_finite(
    spec: &GraphProductSpec,
    u: &GPElement,
    v: &GPElement,
) -> Result<SeparationCertificate, SeparationError> {
    separate_finite_with_limit(spec, u, v, DEFAULT_STATE_LIMIT)
}

pub fn separate_finite_with_limit(
    spec: &GraphProductSpec,
    u: &GPElement,
    v: &GPElement,
    state_limit: usize,
) -> Result<SeparationCertificate, SeparationError> {
    if !u.spec().same_spec(spec) || !v.spec().same_spec(spec) {
        return Err(SeparationError::SpecMismatch);
    }
    if u == v {
        return Err(SeparationError::ElementsEqual);
    }
    let (k, fk_size, image_u, image_v) = separate_in(spec, u, v, state_limit)?;
    Ok(SeparationCertificate {
        u: u.clone(),
        v: v.clone(),
        pipeline: None,
        k,
        fk_size,
        image_u,
        image_v,
        witness_state: 0,
    })
}

// The finite stage shared by both entry points: k is exactly the larger
// block length, and the identity state separates because it recovers each
// element's own state.
fn separate_in(
    spec: &GraphProductSpec,
    u: &GPElement,
    v: &GPElement,
    state_limit: usize,
) -> Result<(usize, usize, Transformation, Transformation), SeparationError> {
    // distinct elements cannot both be the identity, so k >= 1
    let k = u.block_length().max(v.block_length());
    let table = enumerate_fk(spec, k, state_limit)?;
    let image_u = table.transformation_of(u)?;
    let image_v = table.transformation_of(v)?;
    debug_assert_ne!(image_u.apply(0), image_v.apply(0));
    Ok((k, table.len(), image_u, image_v))
}

/// Runs the full three-stage separation: per-vertex quotients, retraction to
/// the joint support, then the finite construction on the restricted
/// product.
///
/// Each quotient must separate, within its vertex monoid, the letters of
/// `u` and `v` from each other and from the identity; this is checked
/// eagerly per vertex.
pub fn separate_pipeline(
    spec: &GraphProductSpec,
    u: &GPElement,
    v: &GPElement,
    vertex_quotients: Vec<VertexMorphism>,
) -> Result<SeparationCertificate, SeparationError> {
    separate_pipeline_with_limit(spec, u, v, vertex_quotients, DEFAULT_STATE_LIMIT)
}

pub fn separate_pipeline_with_limit(
    spec: &GraphProductSpec,
    u: &GPElement,
    v: &GPElement,
    vertex_quotients: Vec<VertexMorphism>,
    state_limit: usize,
) -> Result<SeparationCertificate, SeparationError> {
    if !u.spec().same_spec(spec) || !v.spec().same_spec(spec) {
        return Err(SeparationError::SpecMismatch);
    }
    if u == v {
        return Err(SeparationError::ElementsEqual);
    }
    check_quotients(spec, u, v, &vertex_quotients)?;
    let stages = run_pipeline_stages(spec, u, v, &vertex_quotients)?;
    let (k, fk_size, image_u, image_v) = separate_in(
        stages.restricted.target(),
        &stages.u2,
        &stages.v2,
        state_limit,
    )?;
    Ok(SeparationCertificate {
        u: u.clone(),
        v: v.clone(),
        pipeline: Some(PipelineData {
            quotients: vertex_quotients,
            retained_vertices: stages.restricted.retained_vertices().to_vec(),
        }),
        k,
        fk_size,
        image_u,
        image_v,
        witness_state: 0,
    })
}

struct PipelineStages {
    restricted: Retraction,
    u2: GPElement,
    v2: GPElement,
}

fn check_quotients(
    spec: &GraphProductSpec,
    u: &GPElement,
    v: &GPElement,
    quotients: &[VertexMorphism],
) -> Result<(), SeparationError> {
    if quotients.len() != spec.vertex_count() {
        return Err(SeparationError::QuotientCountMismatch {
            count: quotients.len(),
            vertex_count: spec.vertex_count(),
        });
    }
    for (vertex, quotient) in quotients.iter().enumerate() {
        if quotient.source() != spec.monoid(vertex) {
            return Err(SeparationError::QuotientSourceMismatch { vertex });
        }
    }
    // The relevant letters at each vertex: those of u and v, plus the vertex
    // identity. The quotient must keep them pairwise distinct.
    for (vertex, quotient) in quotients.iter().enumerate() {
        let monoid = spec.monoid(vertex);
        let mut relevant: Vec<usize> = vec![monoid.identity()];
        for word in [u.canonical_word(), v.canonical_word()] {
            for letter in word.letters() {
                if letter.vertex == vertex && !relevant.contains(&letter.element) {
                    relevant.push(letter.element);
                }
            }
        }
        relevant.sort_unstable();
        for (i, &x) in relevant.iter().enumerate() {
            for &y in &relevant[i + 1..] {
                if quotient.apply(x) == quotient.apply(y) {
                    return Err(SeparationError::QuotientInsufficient {
                        vertex,
                        x: monoid.label(x).to_string(),
                        y: monoid.label(y).to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn run_pipeline_stages(
    spec: &GraphProductSpec,
    u: &GPElement,
    v: &GPElement,
    quotients: &[VertexMorphism],
) -> Result<PipelineStages, SeparationError> {
    // quotient stage: replace every vertex monoid by its quotient target
    let quotient_monoids = quotients.iter().map(|q| q.target().clone()).collect();
    let quotient_spec = GraphProductSpec::with_vertex_labels(
        spec.graph().clone(),
        quotient_monoids,
        spec.vertex_labels().to_vec(),
    )
    .map_err(SeparationError::Gp)?;
    let morphism = InducedMorphism::new(spec, &quotient_spec, quotients.to_vec())?;
    let u1 = morphism.apply(u)?;
    let v1 = morphism.apply(v)?;
    // valid quotients keep the canonical words reduced letter for letter
    debug_assert_eq!(u1.canonical_word().len(), u.canonical_word().len());
    debug_assert_eq!(v1.canonical_word().len(), v.canonical_word().len());
    if u1 == v1 {
        return Err(SeparationError::QuotientImagesEqual);
    }
    // retraction stage: keep only the vertices supporting either element
    let mut retained: Vec<usize> = u1.support().union(&v1.support()).copied().collect();
    retained.sort_unstable();
    let restricted = Retraction::new(&quotient_spec, &retained)?;
    let u2 = restricted.apply(&u1)?;
    let v2 = restricted.apply(&v1)?;
    Ok(PipelineStages { restricted, u2, v2 })
}

/// Independently re-runs every stage of a certificate and checks it against
/// the recorded data. Returns false on any mismatch; never errors.
pub fn verify_certificate(spec: &GraphProductSpec, cert: &SeparationCertificate) -> bool {
    if !cert.u.spec().same_spec(spec) || !cert.v.spec().same_spec(spec) {
        return false;
    }
    if cert.u == cert.v {
        return false;
    }
    let (final_spec, u_final, v_final) = match &cert.pipeline {
        None => (spec.clone(), cert.u.clone(), cert.v.clone()),
        Some(pipeline) => {
            if check_quotients(spec, &cert.u, &cert.v, &pipeline.quotients).is_err() {
                return false;
            }
            let stages = match run_pipeline_stages(spec, &cert.u, &cert.v, &pipeline.quotients) {
                Ok(stages) => stages,
                Err(_) => return false,
            };
            if stages.restricted.retained_vertices() != pipeline.retained_vertices {
                return false;
            }
            (stages.restricted.target().clone(), stages.u2, stages.v2)
        }
    };
    if cert.k != u_final.block_length().max(v_final.block_length()) {
        return false;
    }
    let table = match enumerate_fk(&final_spec, cert.k, DEFAULT_STATE_LIMIT) {
        Ok(table) => table,
        Err(_) => return false,
    };
    if table.len() != cert.fk_size {
        return false;
    }
    let image_u = match table.transformation_of(&u_final) {
        Ok(t) => t,
        Err(_) => return false,
    };
    let image_v = match table.transformation_of(&v_final) {
        Ok(t) => t,
        Err(_) => return false,
    };
    if image_u != cert.image_u || image_v != cert.image_v {
        return false;
    }
    cert.witness_state < cert.fk_size
        && cert.image_u.apply(cert.witness_state) != cert.image_v.apply(cert.witness_state)
}
