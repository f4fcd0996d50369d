//! Objective index subsets.
//!
//! Objective indices are 1-based everywhere: interfaces, file formats and
//! error messages all use the same numbering as the benchmark definitions.

use std::fmt;

use thiserror::Error;

/// A nonempty set of 1-based objective indices, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveSubset(Vec<usize>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("objective subset must not be empty")]
    Empty,
    #[error("objective indices are 1-based; index 0 is invalid")]
    ZeroIndex,
    #[error("duplicate objective index {0}")]
    Duplicate(usize),
    #[error("cannot parse objective index {0:?}")]
    Parse(String),
}

impl ObjectiveSubset {
    pub fn new(mut indices: Vec<usize>) -> Result<Self, SubsetError> {
        if indices.is_empty() {
            return Err(SubsetError::Empty);
        }
        if indices.contains(&0) {
            return Err(SubsetError::ZeroIndex);
        }
        indices.sort_unstable();
        for pair in indices.windows(2) {
            if pair[0] == pair[1] {
                return Err(SubsetError::Duplicate(pair[0]));
            }
        }
        Ok(Self(indices))
    }

    /// The full subset `{1, ..., m_max}`.
    pub fn full(m_max: usize) -> Self {
        assert!(m_max >= 1, "m_max must be positive");
        Self((1..=m_max).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn max_index(&self) -> usize {
        *self.0.last().expect("subset is never empty")
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }

    /// Indices added and removed when moving from `self` to `next`.
    pub fn diff(&self, next: &Self) -> (Vec<usize>, Vec<usize>) {
        let added = next.iter().filter(|i| !self.contains(*i)).collect();
        let removed = self.iter().filter(|i| !next.contains(*i)).collect();
        (added, removed)
    }

    /// Parses a comma-separated list such as `"1,2,5"`.
    pub fn parse(text: &str) -> Result<Self, SubsetError> {
        let indices = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| SubsetError::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(indices)
    }
}

impl fmt::Display for ObjectiveSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, idx) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}
