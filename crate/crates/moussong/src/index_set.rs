use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A sorted, duplicate-free set of matrix/generator indices.
///
/// Indices are 0-based everywhere inside the crate. All text and JSON I/O is
/// 1-based; `from_one_based`, `to_one_based` and the `Display`/serde
/// implementations convert at that boundary.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Builds a set from arbitrary 0-based indices (sorted, deduplicated).
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet(indices)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// The full set {0, .., n-1}.
    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    /// Converts 1-based external indices, checking bounds against `order`.
    pub fn from_one_based(indices: &[usize], order: usize) -> Result<Self, Error> {
        let mut v = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 || i > order {
                return Err(Error::IndexOutOfBounds {
                    index: i,
                    order,
                });
            }
            v.push(i - 1);
        }
        Ok(IndexSet::new(v))
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Largest index, if any. (Named to dodge `Ord::max`, which would
    /// shadow a `max(&self)` during method resolution.)
    pub fn max_element(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Set with `i` added.
    pub fn with(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        match v.binary_search(&i) {
            Ok(_) => {}
            Err(pos) => v.insert(pos, i),
        }
        IndexSet(v)
    }

    /// Set with `i` removed.
    pub fn without(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        if let Ok(pos) = v.binary_search(&i) {
            v.remove(pos);
        }
        IndexSet(v)
    }

    pub fn union(&self, other: &IndexSet) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IndexSet::new(v)
    }

    pub fn intersection(&self, other: &IndexSet) -> Self {
        IndexSet(
            self.0
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        )
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Complement within {0, .., n-1}.
    pub fn complement(&self, n: usize) -> Self {
        IndexSet((0..n).filter(|&i| !self.contains(i)).collect())
    }

    pub fn is_disjoint_from(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| !other.contains(i))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(deserializer)?;
        if one_based.iter().any(|&i| i == 0) {
            return Err(D::Error::custom("index sets are 1-based; 0 is invalid"));
        }
        Ok(IndexSet::new(one_based.iter().map(|i| i - 1).collect()))
    }
}
