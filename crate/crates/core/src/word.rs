//! Words over the disjoint union of the vertex monoids.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid letter (vertex {vertex}, element {element}) for this graph product")]
    InvalidLetter { vertex: usize, element: usize },
}

/// One letter: an element of one vertex monoid, both referenced by index.
///
/// A letter whose element is the vertex identity is legal in input words and
/// is absorbed during normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: usize,
    pub element: usize,
}

impl Letter {
    pub fn new(vertex: usize, element: usize) -> Self {
        Letter { vertex, element }
    }
}

/// A finite, possibly empty sequence of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The set of vertices whose letters appear in this word.
    pub fn support(&self) -> BTreeSet<usize> {
        self.letters.iter().map(|l| l.vertex).collect()
    }

    /// Juxtaposition of two words.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word { letters }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}
