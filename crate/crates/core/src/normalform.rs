//! Reduction and left Foata normal forms.
//!
//! The canonical form of a graph-product element is a sequence of complete
//! blocks in which each block is prevented from merging leftward: every
//! vertex of block i+1 has a non-neighbour in block i. This module computes
//! that form incrementally, one appended letter at a time, which is enough
//! to normalize arbitrary words, multiply elements, and read off the block
//! length.

use std::collections::BTreeSet;
use thiserror::Error;

use crate::gp::GraphProductSpec;
use crate::word::{Letter, Word, WordError};

/// Why a purported normal form is not one.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("block {block} is not sorted by vertex")]
    UnsortedBlock { block: usize },
    #[error("block {block} contains the invalid letter (vertex {vertex}, element {element})")]
    InvalidEntry {
        block: usize,
        vertex: usize,
        element: usize,
    },
    #[error("block {block} contains an identity letter at vertex {vertex}")]
    IdentityEntry { block: usize, vertex: usize },
    #[error("the support of block {block} is not complete")]
    IncompleteBlock { block: usize },
    #[error(
        "vertex {vertex} of block {block} is adjacent to all of block {}",
        block - 1
    )]
    NotLeftBlocked { block: usize, vertex: usize },
    #[error(
        "the letters at vertex {vertex} in blocks {earlier_block} and {block} can meet and merge"
    )]
    NotReduced {
        vertex: usize,
        earlier_block: usize,
        block: usize,
    },
}

/// One complete block: at most one non-identity letter per vertex of a
/// clique, stored sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    entries: Vec<(usize, usize)>,
}

impl Block {
    pub fn singleton(vertex: usize, element: usize) -> Self {
        Block {
            entries: vec![(vertex, element)],
        }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, vertex: usize) -> Option<usize> {
        self.entries
            .binary_search_by_key(&vertex, |&(v, _)| v)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(v, _)| v)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.entries.iter().map(|&(v, e)| Letter::new(v, e))
    }

    fn insert(&mut self, vertex: usize, element: usize) {
        match self.entries.binary_search_by_key(&vertex, |&(v, _)| v) {
            Ok(_) => unreachable!("insert into a block that already holds the vertex"),
            Err(pos) => self.entries.insert(pos, (vertex, element)),
        }
    }

    fn set(&mut self, vertex: usize, element: usize) {
        let pos = self
            .entries
            .binary_search_by_key(&vertex, |&(v, _)| v)
            .expect("set on a vertex missing from the block");
        self.entries[pos].1 = element;
    }

    fn remove(&mut self, vertex: usize) {
        let pos = self
            .entries
            .binary_search_by_key(&vertex, |&(v, _)| v)
            .expect("remove on a vertex missing from the block");
        self.entries.remove(pos);
    }
}

/// A left Foata normal form: the unique canonical representative of a
/// graph-product element. The number of blocks is the block length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    blocks: Vec<Block>,
}

impl NormalForm {
    pub fn empty() -> Self {
        NormalForm { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.blocks.iter().flat_map(|b| b.support()).collect()
    }

    /// Concatenates the blocks, each in vertex order.
    pub fn flatten(&self) -> Word {
        self.blocks.iter().flat_map(|b| b.letters()).collect()
    }

    /// Full structural check: valid letters, no identity entries, complete
    /// supports, and the left-blocking condition between consecutive blocks.
    pub fn check_valid(&self, spec: &GraphProductSpec) -> Result<(), NormalFormError> {
        for (bi, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(NormalFormError::EmptyBlock { block: bi });
            }
            for window in block.entries.windows(2) {
                if window[0].0 >= window[1].0 {
                    return Err(NormalFormError::UnsortedBlock { block: bi });
                }
            }
            for &(vertex, element) in &block.entries {
                if spec.check_letter(Letter::new(vertex, element)).is_err() {
                    return Err(NormalFormError::InvalidEntry {
                        block: bi,
                        vertex,
                        element,
                    });
                }
                if spec.monoid(vertex).is_identity(element) {
                    return Err(NormalFormError::IdentityEntry { block: bi, vertex });
                }
            }
            let support: Vec<usize> = block.support().collect();
            if !spec
                .graph()
                .is_complete_subset(&support)
                .expect("entries were range-checked")
            {
                return Err(NormalFormError::IncompleteBlock { block: bi });
            }
        }
        for bi in 1..self.blocks.len() {
            let previous = &self.blocks[bi - 1];
            for vertex in self.blocks[bi].support() {
                let blocked = previous
                    .support()
                    .any(|beta| !spec.graph().adjacent(vertex, beta));
                if !blocked {
                    return Err(NormalFormError::NotLeftBlocked { block: bi, vertex });
                }
            }
        }
        // reducedness of the flattening: two occurrences of a vertex can
        // meet exactly when every vertex strictly between them is adjacent
        // to it, so consecutive occurrences need a blocker in between
        let mut last_seen: Vec<Option<usize>> = vec![None; spec.vertex_count()];
        for (bi, block) in self.blocks.iter().enumerate() {
            for vertex in block.support() {
                if let Some(earlier) = last_seen[vertex] {
                    let blocked = self.blocks[earlier + 1..bi].iter().any(|between| {
                        between
                            .support()
                            .any(|beta| !spec.graph().adjacent(vertex, beta))
                    });
                    if !blocked {
                        return Err(NormalFormError::NotReduced {
                            vertex,
                            earlier_block: earlier,
                            block: bi,
                        });
                    }
                }
                last_seen[vertex] = Some(bi);
            }
        }
        Ok(())
    }
}

// Positions in a normal form where an appended letter at `alpha` can land.
//
// Scanning from the last block towards the first: a block can absorb the
// letter iff every vertex strictly after it is adjacent to `alpha`. If an
// absorbing block already holds an entry at `alpha` the letter merges there
// (that block is unique, because alpha is not adjacent to itself). Otherwise
// the letter joins the deepest absorbing block whose own support is entirely
// adjacent to `alpha`. If neither exists the letter starts a new block.
fn landing_site(spec: &GraphProductSpec, blocks: &[Block], alpha: usize) -> LandingSite {
    let graph = spec.graph();
    let mut insert_at = None;
    for i in (0..blocks.len()).rev() {
        if blocks[i].get(alpha).is_some() {
            return LandingSite::Merge(i);
        }
        let fully_adjacent = blocks[i].support().all(|beta| graph.adjacent(alpha, beta));
        if !fully_adjacent {
            break;
        }
        insert_at = Some(i);
    }
    match insert_at {
        Some(i) => LandingSite::Insert(i),
        None => LandingSite::NewBlock,
    }
}

enum LandingSite {
    Merge(usize),
    Insert(usize),
    NewBlock,
}

/// Appends one letter to a normal form, returning the normal form of the
/// product. Identity letters are absorbed.
pub fn append_letter(
    spec: &GraphProductSpec,
    nf: &NormalForm,
    x: Letter,
) -> Result<NormalForm, WordError> {
    spec.check_letter(x)?;
    let monoid = spec.monoid(x.vertex);
    if monoid.is_identity(x.element) {
        return Ok(nf.clone());
    }
    let mut out = nf.clone();
    match landing_site(spec, &out.blocks, x.vertex) {
        LandingSite::Merge(i) => {
            let current = out.blocks[i]
                .get(x.vertex)
                .expect("merge site holds the vertex");
            let product = monoid.mul(current, x.element);
            if monoid.is_identity(product) {
                out.blocks[i].remove(x.vertex);
                if out.blocks[i].is_empty() {
                    // a block can only vanish at the end of the form
                    debug_assert_eq!(i + 1, out.blocks.len());
                    out.blocks.remove(i);
                }
            } else {
                out.blocks[i].set(x.vertex, product);
            }
        }
        LandingSite::Insert(i) => out.blocks[i].insert(x.vertex, x.element),
        LandingSite::NewBlock => out.blocks.push(Block::singleton(x.vertex, x.element)),
    }
    debug_assert_eq!(out.check_valid(spec), Ok(()));
    Ok(out)
}

/// The left Foata normal form of a word: fold [`append_letter`] from the
/// empty form.
pub fn lfnf(spec: &GraphProductSpec, word: &Word) -> Result<NormalForm, WordError> {
    let mut nf = NormalForm::empty();
    for &letter in word.letters() {
        nf = append_letter(spec, &nf, letter)?;
    }
    Ok(nf)
}

/// A reduced form of the word: the flattening of its normal form.
pub fn reduce(spec: &GraphProductSpec, word: &Word) -> Result<Word, WordError> {
    Ok(lfnf(spec, word)?.flatten())
}

/// The block length: the number of blocks of the normal form, which is also
/// the least number of complete blocks multiplying to the same element.
pub fn block_length(spec: &GraphProductSpec, word: &Word) -> Result<usize, WordError> {
    Ok(lfnf(spec, word)?.block_count())
}

// Mirror of `landing_site` for building right Foata normal forms by
// prepending: the head (blocks strictly before the site) must be adjacent to
// alpha, merges multiply on the left, and insertion picks the shallowest
// (largest-index) fully adjacent block of the prefix run.
fn prepend_letter(spec: &GraphProductSpec, blocks: &mut Vec<Block>, x: Letter) {
    let monoid = spec.monoid(x.vertex);
    if monoid.is_identity(x.element) {
        return;
    }
    let graph = spec.graph();
    let alpha = x.vertex;
    let mut site = None;
    for (i, block) in blocks.iter().enumerate() {
        if block.get(alpha).is_some() {
            site = Some(LandingSite::Merge(i));
            break;
        }
        let fully_adjacent = block.support().all(|beta| graph.adjacent(alpha, beta));
        if !fully_adjacent {
            break;
        }
        site = Some(LandingSite::Insert(i));
    }
    match site {
        Some(LandingSite::Merge(i)) => {
            let current = blocks[i].get(alpha).expect("merge site holds the vertex");
            let product = monoid.mul(x.element, current);
            if monoid.is_identity(product) {
                blocks[i].remove(alpha);
                if blocks[i].is_empty() {
                    debug_assert_eq!(i, 0);
                    blocks.remove(i);
                }
            } else {
                blocks[i].set(alpha, product);
            }
        }
        Some(LandingSite::Insert(i)) => blocks[i].insert(alpha, x.element),
        Some(LandingSite::NewBlock) => unreachable!(),
        None => blocks.insert(0, Block::singleton(alpha, x.element)),
    }
}

/// The number of blocks of the right Foata normal form, computed by folding
/// prepends from the end of the word. Always equals [`block_length`].
pub fn rfnf_block_count(spec: &GraphProductSpec, word: &Word) -> Result<usize, WordError> {
    spec.check_word(word)?;
    let mut blocks: Vec<Block> = Vec::new();
    for &letter in word.letters().iter().rev() {
        prepend_letter(spec, &mut blocks, letter);
    }
    debug_assert_eq!(check_right_blocked(spec, &blocks), Ok(()));
    Ok(blocks.len())
}

// Right-handed analogue of the left-blocking condition, used to sanity-check
// the prepend fold in debug builds.
fn check_right_blocked(spec: &GraphProductSpec, blocks: &[Block]) -> Result<(), NormalFormError> {
    for bi in 1..blocks.len() {
        let next = &blocks[bi];
        for vertex in blocks[bi - 1].support() {
            let blocked = next
                .support()
                .any(|beta| !spec.graph().adjacent(vertex, beta));
            if !blocked {
                return Err(NormalFormError::NotLeftBlocked { block: bi, vertex });
            }
        }
    }
    Ok(())
}
