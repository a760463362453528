use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite set of positive coordinate indices `u_1 < u_2 < … < u_ℓ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subset(Vec<u32>);

impl Subset {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        let valid = indices.first().is_none_or(|&first| first >= 1)
            && indices.windows(2).all(|w| w[0] < w[1]);
        if valid {
            Ok(Subset(indices))
        } else {
            Err(Error::InvalidSubset(indices))
        }
    }

    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    /// `{1, 2, …, ℓ}`, the heaviest set of cardinality `ℓ`.
    pub fn first_of_cardinality(len: usize) -> Self {
        Subset((1..=len as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// `u ∪ {j}` for `j` larger than every element of `u`.
    pub fn extended(&self, j: u32) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(j);
        Subset::new(v)
    }

    pub(crate) fn indices_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }

    /// Cardinality first, then lexicographic on the index list.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl TryFrom<Vec<u32>> for Subset {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Subset::new(v)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}
