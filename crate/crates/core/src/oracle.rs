//! Deliberately naive ground truth, independent of the normal-form code:
//! bounded congruence closure for word equality, shuffle-class enumeration,
//! and minimal complete-block decompositions. Meant for desk-scale inputs
//! inside tests and the debugging subcommand.

use std::collections::{HashSet, VecDeque};

use smallvec::SmallVec;
use thiserror::Error;

use crate::gp::GraphProductSpec;
use crate::word::{Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("budget exceeded after visiting {visited} words (limit {max_visited})")]
    BudgetExceeded { visited: usize, max_visited: usize },
    #[error("the input word is not reduced")]
    NotReduced,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Bounds for the closure searches. Both must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureConfig {
    pub max_word_length: usize,
    pub max_visited: usize,
}

impl ClosureConfig {
    pub fn new(max_word_length: usize, max_visited: usize) -> Self {
        assert!(max_word_length >= 1, "max_word_length must be positive");
        assert!(max_visited >= 1, "max_visited must be positive");
        ClosureConfig {
            max_word_length,
            max_visited,
        }
    }
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            max_word_length: 8,
            max_visited: 4_000_000,
        }
    }
}

// Words interned as one packed u16 per letter to keep the closure sets
// compact; vertex and element indices both stay below 256 at desk scale.
type Packed = SmallVec<[u16; 16]>;

fn pack_letter(letter: Letter) -> u16 {
    debug_assert!(letter.vertex < 256 && letter.element < 256);
    ((letter.vertex as u16) << 8) | letter.element as u16
}

fn unpack_letter(packed: u16) -> Letter {
    Letter::new((packed >> 8) as usize, (packed & 0xff) as usize)
}

fn pack(word: &Word) -> Packed {
    word.letters().iter().map(|&l| pack_letter(l)).collect()
}

fn unpack(packed: &Packed) -> Word {
    packed.iter().map(|&p| unpack_letter(p)).collect()
}

/// The set of words reachable from a start word by relation moves, bounded
/// in word length and visit count.
pub struct ClosureClass {
    members: HashSet<Packed>,
    max_word_length: usize,
}

impl ClosureClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, word: &Word) -> bool {
        word.len() <= self.max_word_length && self.members.contains(&pack(word))
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.members.iter().map(unpack)
    }
}

// All single-move neighbours of a word: identity deletion/insertion,
// adjacent same-vertex merges and their splits, and swaps across edges.
// Every move is reversible, so bounded reachability is an equivalence on
// words within the length cap.
fn neighbours(spec: &GraphProductSpec, word: &Packed, max_len: usize, out: &mut Vec<Packed>) {
    out.clear();
    let n = word.len();
    for p in 0..n {
        let letter = unpack_letter(word[p]);
        let monoid = spec.monoid(letter.vertex);
        if monoid.is_identity(letter.element) {
            let mut shorter = word.clone();
            shorter.remove(p);
            out.push(shorter);
        }
        if p + 1 < n {
            let next = unpack_letter(word[p + 1]);
            if next.vertex == letter.vertex {
                let merged = monoid.mul(letter.element, next.element);
                let mut shorter = word.clone();
                shorter[p] = pack_letter(Letter::new(letter.vertex, merged));
                shorter.remove(p + 1);
                out.push(shorter);
            } else if spec.graph().adjacent(letter.vertex, next.vertex) {
                let mut swapped = word.clone();
                swapped.swap(p, p + 1);
                out.push(swapped);
            }
        }
        if n < max_len {
            // split the letter along every factorization in its monoid
            for x in 0..monoid.size() {
                for y in 0..monoid.size() {
                    if monoid.mul(x, y) == letter.element {
                        let mut longer = word.clone();
                        longer[p] = pack_letter(Letter::new(letter.vertex, x));
                        longer.insert(p + 1, pack_letter(Letter::new(letter.vertex, y)));
                        out.push(longer);
                    }
                }
            }
        }
    }
    if n < max_len {
        for vertex in 0..spec.vertex_count() {
            let identity = pack_letter(Letter::new(vertex, spec.monoid(vertex).identity()));
            for p in 0..=n {
                let mut longer = word.clone();
                longer.insert(p, identity);
                out.push(longer);
            }
        }
    }
}

fn closure_from(
    spec: &GraphProductSpec,
    start: &Word,
    config: &ClosureConfig,
    stop_at: Option<&Word>,
) -> Result<(ClosureClass, bool), OracleError> {
    spec.check_word(start)?;
    if let Some(target) = stop_at {
        spec.check_word(target)?;
    }
    let target = stop_at.map(pack);
    let start = pack(start);
    let mut found = target.as_ref() == Some(&start);
    let mut members: HashSet<Packed> = HashSet::new();
    let mut queue: VecDeque<Packed> = VecDeque::new();
    members.insert(start.clone());
    queue.push_back(start);
    let mut scratch = Vec::new();
    while let Some(word) = queue.pop_front() {
        if found {
            break;
        }
        neighbours(spec, &word, config.max_word_length, &mut scratch);
        for next in scratch.drain(..) {
            if members.contains(&next) {
                continue;
            }
            if members.len() >= config.max_visited {
                return Err(OracleError::BudgetExceeded {
                    visited: members.len(),
                    max_visited: config.max_visited,
                });
            }
            if Some(&next) == target.as_ref() {
                found = true;
            }
            members.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok((
        ClosureClass {
            members,
            max_word_length: config.max_word_length,
        },
        found,
    ))
}

/// The full bounded congruence class of a word.
pub fn closure_class(
    spec: &GraphProductSpec,
    word: &Word,
    config: &ClosureConfig,
) -> Result<ClosureClass, OracleError> {
    closure_from(spec, word, config, None).map(|(class, _)| class)
}

/// Decides whether two words present the same element, by breadth-first
/// search through the relation moves. `BudgetExceeded` is a distinct
/// outcome, never reported as inequality.
pub fn closure_equal(
    spec: &GraphProductSpec,
    u: &Word,
    v: &Word,
    config: &ClosureConfig,
) -> Result<bool, OracleError> {
    if u == v {
        spec.check_word(u)?;
        return Ok(true);
    }
    closure_from(spec, u, config, Some(v)).map(|(_, found)| found)
}

/// The words reachable by shuffles alone; all have the start word's length.
pub fn shuffle_class(
    spec: &GraphProductSpec,
    word: &Word,
    config: &ClosureConfig,
) -> Result<Vec<Word>, OracleError> {
    spec.check_word(word)?;
    let start = pack(word);
    let mut members: HashSet<Packed> = HashSet::new();
    let mut queue: VecDeque<Packed> = VecDeque::new();
    members.insert(start.clone());
    queue.push_back(start);
    while let Some(current) = queue.pop_front() {
        for p in 0..current.len().saturating_sub(1) {
            let a = unpack_letter(current[p]);
            let b = unpack_letter(current[p + 1]);
            if a.vertex != b.vertex && spec.graph().adjacent(a.vertex, b.vertex) {
                let mut swapped = current.clone();
                swapped.swap(p, p + 1);
                if !members.contains(&swapped) {
                    if members.len() >= config.max_visited {
                        return Err(OracleError::BudgetExceeded {
                            visited: members.len(),
                            max_visited: config.max_visited,
                        });
                    }
                    members.insert(swapped.clone());
                    queue.push_back(swapped);
                }
            }
        }
    }
    let mut out: Vec<Word> = members.iter().map(unpack).collect();
    out.sort();
    Ok(out)
}

/// Brute-force reducedness: no identity letters, and no shuffle-equivalent
/// word with two adjacent letters at the same vertex.
pub fn is_reduced(
    spec: &GraphProductSpec,
    word: &Word,
    config: &ClosureConfig,
) -> Result<bool, OracleError> {
    spec.check_word(word)?;
    if word
        .letters()
        .iter()
        .any(|&l| spec.monoid(l.vertex).is_identity(l.element))
    {
        return Ok(false);
    }
    for shuffled in shuffle_class(spec, word, config)? {
        for pair in shuffled.letters().windows(2) {
            if pair[0].vertex == pair[1].vertex {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// Fewest contiguous complete-block segments covering one fixed word, by
// dynamic programming over cut positions.
fn min_cuts(spec: &GraphProductSpec, word: &Word) -> usize {
    let letters = word.letters();
    let n = letters.len();
    let mut best: Vec<Option<usize>> = vec![None; n + 1];
    best[0] = Some(0);
    for end in 1..=n {
        for start in 0..end {
            let Some(prefix) = best[start] else { continue };
            let segment = &letters[start..end];
            let mut vertices: Vec<usize> = segment.iter().map(|l| l.vertex).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let distinct = vertices.len() == segment.len();
            let complete = distinct
                && spec
                    .graph()
                    .is_complete_subset(&vertices)
                    .expect("word was range-checked");
            if complete {
                let candidate = prefix + 1;
                if best[end].is_none_or(|b| candidate < b) {
                    best[end] = Some(candidate);
                }
            }
        }
    }
    best[n].expect("singleton segments always cover a reduced word")
}

/// The least number of complete blocks over all shuffle-equivalent
/// decompositions of a reduced word.
pub fn min_blocks(
    spec: &GraphProductSpec,
    reduced_word: &Word,
    config: &ClosureConfig,
) -> Result<usize, OracleError> {
    if !is_reduced(spec, reduced_word, config)? {
        return Err(OracleError::NotReduced);
    }
    if reduced_word.is_empty() {
        return Ok(0);
    }
    let mut best = usize::MAX;
    for shuffled in shuffle_class(spec, reduced_word, config)? {
        best = best.min(min_cuts(spec, &shuffled));
    }
    Ok(best)
}
