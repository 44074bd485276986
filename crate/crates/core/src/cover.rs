//! Exact cover instances and the cover checker.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};

/// A named subset of the universe `{1..n}`; elements sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subset {
    pub name: String,
    elements: Vec<usize>,
}

impl Subset {
    pub fn new<I: IntoIterator<Item = usize>>(name: impl Into<String>, elements: I) -> Self {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        Subset {
            name: name.into(),
            elements: elements.into_iter().collect(),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.elements.binary_search(&element).is_ok()
    }
}

/// Universe `{1..n}` and a family of non-empty, pairwise distinct subsets
/// whose union is the universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactCoverInstance {
    universe_size: usize,
    subsets: Vec<Subset>,
}

impl ExactCoverInstance {
    pub fn new(universe_size: usize, subsets: Vec<Subset>) -> Result<Self> {
        if universe_size == 0 {
            return Err(Error::InvalidEci("universe must be non-empty".into()));
        }
        let mut names = HashSet::new();
        let mut distinct = HashSet::new();
        let mut covered = vec![false; universe_size + 1];
        for s in &subsets {
            if !names.insert(s.name.as_str()) {
                return Err(Error::InvalidEci(format!(
                    "duplicate subset name {}",
                    s.name
                )));
            }
            if s.is_empty() {
                return Err(Error::InvalidEci(format!("subset {} is empty", s.name)));
            }
            if !distinct.insert(s.elements()) {
                return Err(Error::InvalidEci(format!(
                    "subset {} duplicates an earlier subset",
                    s.name
                )));
            }
            for &e in s.elements() {
                if e == 0 || e > universe_size {
                    return Err(Error::InvalidEci(format!(
                        "subset {} has element {e} outside 1..={universe_size}",
                        s.name
                    )));
                }
                covered[e] = true;
            }
        }
        if let Some(missing) = (1..=universe_size).find(|&e| !covered[e]) {
            return Err(Error::InvalidEci(format!(
                "element {missing} is not covered by any subset"
            )));
        }
        Ok(ExactCoverInstance {
            universe_size,
            subsets,
        })
    }

    /// Builds an instance with subsets named `A1..Ak`.
    pub fn from_sets(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let subsets = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| Subset::new(format!("A{}", i + 1), s))
            .collect();
        ExactCoverInstance::new(universe_size, subsets)
    }

    /// `n`, the number of universe elements.
    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    /// `k`, the number of subsets.
    pub fn num_subsets(&self) -> usize {
        self.subsets.len()
    }

    /// `m`, the total size of all subsets.
    pub fn total_size(&self) -> usize {
        self.subsets.iter().map(Subset::len).sum()
    }

    pub(crate) fn verify_mask(&self, mask: u64) -> bool {
        let mut seen = vec![false; self.universe_size + 1];
        let mut count = 0;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for &e in self.subsets[i].elements() {
                if std::mem::replace(&mut seen[e], true) {
                    return false;
                }
                count += 1;
            }
        }
        count == self.universe_size
    }
}

/// True iff the chosen subsets (0-based indices) are pairwise disjoint and
/// together cover the universe. Out-of-range indices are never a cover.
pub fn verify_cover(eci: &ExactCoverInstance, chosen: &[usize]) -> bool {
    let chosen: BTreeSet<usize> = chosen.iter().copied().collect();
    if chosen.iter().any(|&i| i >= eci.num_subsets()) {
        return false;
    }
    let mut seen = vec![false; eci.universe_size + 1];
    let mut count = 0;
    for &i in &chosen {
        for &e in eci.subsets[i].elements() {
            if std::mem::replace(&mut seen[e], true) {
                return false;
            }
            count += 1;
        }
    }
    count == eci.universe_size
}
