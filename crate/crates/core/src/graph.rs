//! Simple commutation graphs: adjacency queries, completeness tests, and
//! induced subgraphs.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("edge ({vertex}, {vertex}) is a loop; graphs here are simple")]
    LoopEdge { vertex: usize },
    #[error("the vertex set must be non-empty")]
    EmptyVertexSet,
}

/// An undirected simple graph over vertices `0..vertex_count`.
///
/// An edge between two vertices means the monoids attached to them commute
/// elementwise in the graph product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommutationGraph {
    vertex_count: usize,
    // flattened symmetric matrix with false diagonal
    adjacency: Vec<bool>,
}

impl CommutationGraph {
    /// Builds a graph from an edge list. Duplicate and reversed duplicate
    /// edges are accepted and deduplicated; loops are rejected.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut adjacency = vec![false; vertex_count * vertex_count];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::LoopEdge { vertex: a });
            }
            adjacency[a * vertex_count + b] = true;
            adjacency[b * vertex_count + a] = true;
        }
        Ok(CommutationGraph {
            vertex_count,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.vertex_count + b]
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }

    /// True iff every pair of distinct vertices in the set is adjacent.
    /// The empty set and singletons are complete vacuously.
    pub fn is_complete_subset(&self, vertex_set: &[usize]) -> Result<bool, GraphError> {
        for &v in vertex_set {
            self.check_vertex(v)?;
        }
        for (i, &a) in vertex_set.iter().enumerate() {
            for &b in &vertex_set[i + 1..] {
                if a != b && !self.adjacent(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The subgraph induced by a non-empty vertex subset, together with the
    /// old-to-new index maps. The subset is deduplicated and sorted.
    pub fn induced_subgraph(&self, vertex_subset: &[usize]) -> Result<InducedSubgraph, GraphError> {
        for &v in vertex_subset {
            self.check_vertex(v)?;
        }
        let mut new_to_old: Vec<usize> = vertex_subset.to_vec();
        new_to_old.sort_unstable();
        new_to_old.dedup();
        if new_to_old.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut old_to_new = vec![None; self.vertex_count];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let n = new_to_old.len();
        let mut adjacency = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                adjacency[i * n + j] = self.adjacent(new_to_old[i], new_to_old[j]);
            }
        }
        Ok(InducedSubgraph {
            graph: CommutationGraph {
                vertex_count: n,
                adjacency,
            },
            old_to_new,
            new_to_old,
        })
    }

    /// Edges as sorted pairs (a < b), in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count {
            for b in a + 1..self.vertex_count {
                if self.adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Result of restricting a graph to a vertex subset.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: CommutationGraph,
    /// old vertex index -> new index, `None` for dropped vertices
    pub old_to_new: Vec<Option<usize>>,
    /// new vertex index -> old index (sorted)
    pub new_to_old: Vec<usize>,
}
