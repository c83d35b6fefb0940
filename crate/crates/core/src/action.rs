//! The finite action: enumerate all elements of block length at most k,
//! act on them by letters (freezing when the length bound would be
//! exceeded), and turn whole elements into explicit transformations.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::gp::{GPElement, GraphProductSpec};
use crate::normalform::{self, NormalForm};
use crate::word::{Letter, WordError};

/// Default cap on the number of enumerated states.
pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(
        "state limit {limit} exceeded during enumeration ({frontier_size} states on the frontier)"
    )]
    StateLimitExceeded { limit: usize, frontier_size: usize },
    #[error("element belongs to a different graph product than the table")]
    SpecMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// All elements of block length <= k over one graph product, in a canonical
/// deterministic order, with constant-time lookup by normal form.
///
/// State 0 is always the identity element.
#[derive(Debug, Clone)]
pub struct FkTable {
    spec: GraphProductSpec,
    k: usize,
    states: Vec<NormalForm>,
    index: HashMap<NormalForm, usize>,
}

/// Enumerates F_k by breadth-first closure from the identity under appending
/// non-identity letters, then freezes the state order: block count first,
/// then lexicographic flattened letter sequence.
pub fn enumerate_fk(
    spec: &GraphProductSpec,
    k: usize,
    state_limit: usize,
) -> Result<FkTable, ActionError> {
    assert!(k >= 1, "the block length bound must be at least 1");
    assert!(state_limit >= 1, "the state limit must be at least 1");
    let letters = spec.non_identity_letters();
    let mut seen: HashMap<NormalForm, ()> = HashMap::new();
    let mut queue: VecDeque<NormalForm> = VecDeque::new();
    seen.insert(NormalForm::empty(), ());
    queue.push_back(NormalForm::empty());
    while let Some(nf) = queue.pop_front() {
        for &letter in &letters {
            let next = normalform::append_letter(spec, &nf, letter)
                .expect("enumeration letters are valid by construction");
            if next.block_count() > k || seen.contains_key(&next) {
                continue;
            }
            if seen.len() == state_limit {
                return Err(ActionError::StateLimitExceeded {
                    limit: state_limit,
                    frontier_size: queue.len() + 1,
                });
            }
            seen.insert(next.clone(), ());
            queue.push_back(next);
        }
    }
    let mut states: Vec<NormalForm> = seen.into_keys().collect();
    states.sort_by_cached_key(|nf| (nf.block_count(), nf.flatten()));
    let index = states
        .iter()
        .enumerate()
        .map(|(i, nf)| (nf.clone(), i))
        .collect();
    Ok(FkTable {
        spec: spec.clone(),
        k,
        states,
        index,
    })
}

impl FkTable {
    pub fn spec(&self) -> &GraphProductSpec {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false // state 0 (the identity) always exists
    }

    pub fn states(&self) -> &[NormalForm] {
        &self.states
    }

    pub fn state(&self, id: usize) -> &NormalForm {
        &self.states[id]
    }

    pub fn id_of(&self, nf: &NormalForm) -> Option<usize> {
        self.index.get(nf).copied()
    }

    /// One letter acting on one state. If appending would push the block
    /// length past k the state is frozen (returned unchanged).
    pub fn act_letter(&self, state_id: usize, letter: Letter) -> Result<usize, ActionError> {
        let next = normalform::append_letter(&self.spec, &self.states[state_id], letter)?;
        if next.block_count() > self.k {
            return Ok(state_id);
        }
        Ok(self
            .id_of(&next)
            .expect("appending within the bound stays inside the enumerated set"))
    }

    /// The transformation of F_k induced by a whole element: the letter
    /// action composed over its canonical word. Well-definedness across
    /// representatives is established once per table by
    /// [`FkTable::check_well_defined`].
    pub fn transformation_of(&self, element: &GPElement) -> Result<Transformation, ActionError> {
        if !element.spec().same_spec(&self.spec) {
            return Err(ActionError::SpecMismatch);
        }
        let word = element.canonical_word();
        let mut images = Vec::with_capacity(self.states.len());
        for start in 0..self.states.len() {
            let mut current = start;
            for &letter in word.letters() {
                current = self.act_letter(current, letter)?;
            }
            images.push(current);
        }
        Ok(Transformation { images })
    }

    /// Exhaustively verifies that the letter action respects all three
    /// defining relation families: identity letters act trivially,
    /// same-vertex letters compose through the vertex monoid, and letters at
    /// adjacent vertices commute. Any failure is a library bug.
    pub fn check_well_defined(&self) -> ActionReport {
        let mut report = ActionReport {
            identity_checks: 0,
            same_vertex_checks: 0,
            commuting_checks: 0,
            counterexample: None,
        };
        for state in 0..self.states.len() {
            for vertex in 0..self.spec.vertex_count() {
                let monoid = self.spec.monoid(vertex);
                let identity = Letter::new(vertex, monoid.identity());
                report.identity_checks += 1;
                if self.act_letter(state, identity).unwrap() != state {
                    report.counterexample =
                        Some(ActionCounterexample::IdentityMoved { state, vertex });
                    return report;
                }
                for x in 0..monoid.size() {
                    for y in 0..monoid.size() {
                        report.same_vertex_checks += 1;
                        let step = self
                            .act_letter(state, Letter::new(vertex, x))
                            .and_then(|s| self.act_letter(s, Letter::new(vertex, y)))
                            .unwrap();
                        let direct = self
                            .act_letter(state, Letter::new(vertex, monoid.mul(x, y)))
                            .unwrap();
                        if step != direct {
                            report.counterexample =
                                Some(ActionCounterexample::SameVertexIncompatible {
                                    state,
                                    vertex,
                                    x,
                                    y,
                                });
                            return report;
                        }
                    }
                }
            }
            for (alpha, beta) in self.spec.graph().edges() {
                for x in 0..self.spec.monoid(alpha).size() {
                    for y in 0..self.spec.monoid(beta).size() {
                        report.commuting_checks += 1;
                        let xy = self
                            .act_letter(state, Letter::new(alpha, x))
                            .and_then(|s| self.act_letter(s, Letter::new(beta, y)))
                            .unwrap();
                        let yx = self
                            .act_letter(state, Letter::new(beta, y))
                            .and_then(|s| self.act_letter(s, Letter::new(alpha, x)))
                            .unwrap();
                        if xy != yx {
                            report.counterexample =
                                Some(ActionCounterexample::CommutingIncompatible {
                                    state,
                                    alpha,
                                    beta,
                                    x,
                                    y,
                                });
                            return report;
                        }
                    }
                }
            }
        }
        report
    }
}

/// A self-map of the state set, as an image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn identity(degree: usize) -> Self {
        Transformation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        Transformation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, state: usize) -> usize {
        self.images[state]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition in diagram order: `self` first, then `other`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        Transformation {
            images: self.images.iter().map(|&s| other.images[s]).collect(),
        }
    }
}

/// Outcome of [`FkTable::check_well_defined`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub identity_checks: usize,
    pub same_vertex_checks: usize,
    pub commuting_checks: usize,
    pub counterexample: Option<ActionCounterexample>,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionCounterexample {
    IdentityMoved {
        state: usize,
        vertex: usize,
    },
    SameVertexIncompatible {
        state: usize,
        vertex: usize,
        x: usize,
        y: usize,
    },
    CommutingIncompatible {
        state: usize,
        alpha: usize,
        beta: usize,
        x: usize,
        y: usize,
    },
}
