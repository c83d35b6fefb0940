//! The graph product itself: the defining data, its elements in canonical
//! form, multiplication, vertex embeddings, induced morphisms, and
//! retractions onto vertex subsets.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{CommutationGraph, GraphError};
use crate::monoid::{FiniteMonoid, VertexMorphism};
use crate::normalform::{self, NormalForm};
use crate::word::{Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GpError {
    #[error("elements belong to different graph products")]
    SpecMismatch,
    #[error("the two graph products have different commutation graphs")]
    GraphMismatch,
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("element {element} out of range for the monoid at vertex {vertex} (size {size})")]
    ElementOutOfRange {
        vertex: usize,
        element: usize,
        size: usize,
    },
    #[error("{count} monoids given for a graph with {vertex_count} vertices")]
    MonoidCountMismatch { count: usize, vertex_count: usize },
    #[error("{count} vertex labels given for a graph with {vertex_count} vertices")]
    VertexLabelCountMismatch { count: usize, vertex_count: usize },
    #[error("duplicate vertex label {label:?}")]
    DuplicateVertexLabel { label: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    NormalForm(#[from] crate::normalform::NormalFormError),
}

struct SpecInner {
    graph: CommutationGraph,
    monoids: Vec<FiniteMonoid>,
    vertex_labels: Vec<String>,
    content_hash: String,
}

/// A graph product of finite monoids: a commutation graph together with one
/// monoid per vertex.
///
/// Cheap to clone (shared internally); immutable after construction. Two
/// specs are considered the same product iff their content hashes agree.
#[derive(Clone)]
pub struct GraphProductSpec {
    inner: Arc<SpecInner>,
}

impl fmt::Debug for GraphProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphProductSpec")
            .field("vertices", &self.vertex_count())
            .field("hash", &&self.content_hash()[..8])
            .finish()
    }
}

fn content_hash(
    graph: &CommutationGraph,
    monoids: &[FiniteMonoid],
    vertex_labels: &[String],
) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"graph-product-spec/v1\0");
    hasher.update((graph.vertex_count() as u64).to_le_bytes());
    for a in 0..graph.vertex_count() {
        for b in 0..graph.vertex_count() {
            hasher.update([graph.adjacent(a, b) as u8]);
        }
    }
    for (label, monoid) in vertex_labels.iter().zip(monoids) {
        hasher.update((label.len() as u64).to_le_bytes());
        hasher.update(label.as_bytes());
        hasher.update((monoid.size() as u64).to_le_bytes());
        hasher.update((monoid.identity() as u64).to_le_bytes());
        for row in monoid.table_rows() {
            for entry in row {
                hasher.update((entry as u64).to_le_bytes());
            }
        }
        for element_label in monoid.labels() {
            hasher.update((element_label.len() as u64).to_le_bytes());
            hasher.update(element_label.as_bytes());
        }
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

impl GraphProductSpec {
    /// Builds a spec with default vertex labels `"0"`, `"1"`, ...
    pub fn new(graph: CommutationGraph, monoids: Vec<FiniteMonoid>) -> Result<Self, GpError> {
        let labels = (0..graph.vertex_count()).map(|v| v.to_string()).collect();
        Self::with_vertex_labels(graph, monoids, labels)
    }

    pub fn with_vertex_labels(
        graph: CommutationGraph,
        monoids: Vec<FiniteMonoid>,
        vertex_labels: Vec<String>,
    ) -> Result<Self, GpError> {
        if monoids.len() != graph.vertex_count() {
            return Err(GpError::MonoidCountMismatch {
                count: monoids.len(),
                vertex_count: graph.vertex_count(),
            });
        }
        if vertex_labels.len() != graph.vertex_count() {
            return Err(GpError::VertexLabelCountMismatch {
                count: vertex_labels.len(),
                vertex_count: graph.vertex_count(),
            });
        }
        for (i, label) in vertex_labels.iter().enumerate() {
            if vertex_labels[..i].contains(label) {
                return Err(GpError::DuplicateVertexLabel {
                    label: label.clone(),
                });
            }
        }
        let hash = content_hash(&graph, &monoids, &vertex_labels);
        Ok(GraphProductSpec {
            inner: Arc::new(SpecInner {
                graph,
                monoids,
                vertex_labels,
                content_hash: hash,
            }),
        })
    }

    pub fn graph(&self) -> &CommutationGraph {
        &self.inner.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.graph.vertex_count()
    }

    pub fn monoid(&self, vertex: usize) -> &FiniteMonoid {
        &self.inner.monoids[vertex]
    }

    pub fn monoids(&self) -> &[FiniteMonoid] {
        &self.inner.monoids
    }

    pub fn vertex_label(&self, vertex: usize) -> &str {
        &self.inner.vertex_labels[vertex]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.inner.vertex_labels
    }

    pub fn vertex_of_label(&self, label: &str) -> Option<usize> {
        self.inner.vertex_labels.iter().position(|l| l == label)
    }

    /// Hex digest identifying this product's full content (graph, tables,
    /// labels). Stable across runs and platforms.
    pub fn content_hash(&self) -> &str {
        &self.inner.content_hash
    }

    pub fn same_spec(&self, other: &GraphProductSpec) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || self.inner.content_hash == other.inner.content_hash
    }

    pub fn check_letter(&self, letter: Letter) -> Result<(), WordError> {
        if letter.vertex >= self.vertex_count()
            || letter.element >= self.monoid(letter.vertex).size()
        {
            return Err(WordError::InvalidLetter {
                vertex: letter.vertex,
                element: letter.element,
            });
        }
        Ok(())
    }

    pub fn check_word(&self, word: &Word) -> Result<(), WordError> {
        word.letters()
            .iter()
            .try_for_each(|&l| self.check_letter(l))
    }

    pub fn is_identity_letter(&self, letter: Letter) -> bool {
        self.monoid(letter.vertex).is_identity(letter.element)
    }

    /// All letters with a non-identity element, in (vertex, element) order.
    pub fn non_identity_letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for vertex in 0..self.vertex_count() {
            for element in self.monoid(vertex).non_identity_elements() {
                out.push(Letter::new(vertex, element));
            }
        }
        out
    }

    /// The identity element of the product.
    pub fn identity_element(&self) -> GPElement {
        GPElement {
            spec: self.clone(),
            nf: NormalForm::empty(),
        }
    }

    /// The element represented by a word, in canonical normal form.
    pub fn element_of(&self, word: &Word) -> Result<GPElement, GpError> {
        let nf = normalform::lfnf(self, word)?;
        Ok(GPElement {
            spec: self.clone(),
            nf,
        })
    }

    /// The copy of one vertex monoid element inside the product.
    pub fn embed_vertex(&self, vertex: usize, element: usize) -> Result<GPElement, GpError> {
        if vertex >= self.vertex_count() {
            return Err(GpError::VertexOutOfRange {
                vertex,
                vertex_count: self.vertex_count(),
            });
        }
        let size = self.monoid(vertex).size();
        if element >= size {
            return Err(GpError::ElementOutOfRange {
                vertex,
                element,
                size,
            });
        }
        self.element_of(&Word::new(vec![Letter::new(vertex, element)]))
    }
}

/// An element of a graph product, stored as its canonical normal form.
/// Equality is structural, which decides the word problem.
#[derive(Debug, Clone)]
pub struct GPElement {
    spec: GraphProductSpec,
    nf: NormalForm,
}

impl PartialEq for GPElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.same_spec(&other.spec) && self.nf == other.nf
    }
}

impl Eq for GPElement {}

impl std::hash::Hash for GPElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.inner.content_hash.hash(state);
        self.nf.hash(state);
    }
}

impl GPElement {
    pub fn from_normal_form(spec: &GraphProductSpec, nf: NormalForm) -> Result<Self, GpError> {
        nf.check_valid(spec)?;
        Ok(GPElement {
            spec: spec.clone(),
            nf,
        })
    }

    pub fn spec(&self) -> &GraphProductSpec {
        &self.spec
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.nf
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    pub fn block_length(&self) -> usize {
        self.nf.block_count()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.nf.support()
    }

    /// The canonical reduced word: blocks flattened in vertex order.
    pub fn canonical_word(&self) -> Word {
        self.nf.flatten()
    }

    /// Product in the graph product, by folding the right factor's canonical
    /// letters into the left factor's normal form.
    pub fn multiply(&self, other: &GPElement) -> Result<GPElement, GpError> {
        if !self.spec.same_spec(&other.spec) {
            return Err(GpError::SpecMismatch);
        }
        let mut nf = self.nf.clone();
        for &letter in other.canonical_word().letters() {
            nf = normalform::append_letter(&self.spec, &nf, letter)?;
        }
        Ok(GPElement {
            spec: self.spec.clone(),
            nf,
        })
    }
}

/// The morphism of graph products induced by one vertex morphism per vertex
/// over a common commutation graph.
#[derive(Debug, Clone)]
pub struct InducedMorphism {
    source: GraphProductSpec,
    target: GraphProductSpec,
    vertex_maps: Vec<VertexMorphism>,
}

impl InducedMorphism {
    pub fn new(
        source: &GraphProductSpec,
        target: &GraphProductSpec,
        vertex_maps: Vec<VertexMorphism>,
    ) -> Result<Self, GpError> {
        if source.graph() != target.graph() {
            return Err(GpError::GraphMismatch);
        }
        if vertex_maps.len() != source.vertex_count() {
            return Err(GpError::MonoidCountMismatch {
                count: vertex_maps.len(),
                vertex_count: source.vertex_count(),
            });
        }
        for (vertex, map) in vertex_maps.iter().enumerate() {
            if map.source() != source.monoid(vertex) || map.target() != target.monoid(vertex) {
                return Err(GpError::SpecMismatch);
            }
        }
        Ok(InducedMorphism {
            source: source.clone(),
            target: target.clone(),
            vertex_maps,
        })
    }

    pub fn source(&self) -> &GraphProductSpec {
        &self.source
    }

    pub fn target(&self) -> &GraphProductSpec {
        &self.target
    }

    pub fn vertex_maps(&self) -> &[VertexMorphism] {
        &self.vertex_maps
    }

    /// Applies the morphism: letterwise image, then re-normalization.
    pub fn apply(&self, element: &GPElement) -> Result<GPElement, GpError> {
        if !element.spec().same_spec(&self.source) {
            return Err(GpError::SpecMismatch);
        }
        let word: Word = element
            .canonical_word()
            .letters()
            .iter()
            .map(|l| Letter::new(l.vertex, self.vertex_maps[l.vertex].apply(l.element)))
            .collect();
        self.target.element_of(&word)
    }
}

/// The retraction onto the sub-product over a vertex subset: letters outside
/// the subset are sent to the identity, letters inside are kept.
#[derive(Debug, Clone)]
pub struct Retraction {
    source: GraphProductSpec,
    target: GraphProductSpec,
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl Retraction {
    pub fn new(spec: &GraphProductSpec, vertex_subset: &[usize]) -> Result<Self, GpError> {
        let sub = spec.graph().induced_subgraph(vertex_subset)?;
        let monoids = sub
            .new_to_old
            .iter()
            .map(|&old| spec.monoid(old).clone())
            .collect();
        let labels = sub
            .new_to_old
            .iter()
            .map(|&old| spec.vertex_label(old).to_string())
            .collect();
        let target = GraphProductSpec::with_vertex_labels(sub.graph, monoids, labels)?;
        Ok(Retraction {
            source: spec.clone(),
            target,
            old_to_new: sub.old_to_new,
            new_to_old: sub.new_to_old,
        })
    }

    pub fn source(&self) -> &GraphProductSpec {
        &self.source
    }

    /// The restricted graph product the retraction maps onto.
    pub fn target(&self) -> &GraphProductSpec {
        &self.target
    }

    pub fn retained_vertices(&self) -> &[usize] {
        &self.new_to_old
    }

    /// Maps an element of the full product into the restricted product.
    pub fn apply(&self, element: &GPElement) -> Result<GPElement, GpError> {
        if !element.spec().same_spec(&self.source) {
            return Err(GpError::SpecMismatch);
        }
        let word: Word = element
            .canonical_word()
            .letters()
            .iter()
            .filter_map(|l| self.old_to_new[l.vertex].map(|v| Letter::new(v, l.element)))
            .collect();
        self.target.element_of(&word)
    }

    /// The same collapse viewed as a self-map of the full product: letters
    /// at dropped vertices become identities, everything else is fixed.
    pub fn endomorphism(&self, element: &GPElement) -> Result<GPElement, GpError> {
        if !element.spec().same_spec(&self.source) {
            return Err(GpError::SpecMismatch);
        }
        let word: Word = element
            .canonical_word()
            .letters()
            .iter()
            .filter(|l| self.old_to_new[l.vertex].is_some())
            .copied()
            .collect();
        self.source.element_of(&word)
    }

    /// Embeds an element of the restricted product back into the full one.
    pub fn embed(&self, element: &GPElement) -> Result<GPElement, GpError> {
        if !element.spec().same_spec(&self.target) {
            return Err(GpError::SpecMismatch);
        }
        let word: Word = element
            .canonical_word()
            .letters()
            .iter()
            .map(|l| Letter::new(self.new_to_old[l.vertex], l.element))
            .collect();
        self.source.element_of(&word)
    }
}
