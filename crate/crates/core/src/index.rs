//! Ordered vertex index sets and the enumerations that drive every operator
//! sum: all increasing subsets of a given size, the subsets of a fixed set,
//! complements, single deletions and permutation signs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered set of distinct vertex labels in `0..=ambient_n`.
///
/// The order is significant: it carries the orientation of the simplex
/// spanned by the labelled vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    labels: Vec<usize>,
    ambient_n: usize,
}

impl IndexSet {
    pub fn new(labels: Vec<usize>, ambient_n: usize) -> Result<Self> {
        if ambient_n == 0 {
            return Err(Error::InvalidIndexSet("ambient dimension must be at least 1".into()));
        }
        for (i, &l) in labels.iter().enumerate() {
            if l > ambient_n {
                return Err(Error::InvalidIndexSet(format!(
                    "label {l} outside 0..={ambient_n}"
                )));
            }
            if labels[..i].contains(&l) {
                return Err(Error::InvalidIndexSet(format!("duplicate label {l}")));
            }
        }
        Ok(IndexSet { labels, ambient_n })
    }

    /// `{0, 1, ..., n}`.
    pub fn full(ambient_n: usize) -> Self {
        IndexSet {
            labels: (0..=ambient_n).collect(),
            ambient_n,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.labels.contains(&label)
    }

    pub fn is_increasing(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] < w[1])
    }

    /// Bit mask of the labels, ignoring order.
    pub fn mask(&self) -> u32 {
        self.labels.iter().fold(0, |m, &l| m | (1 << l))
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.mask() & !other.mask() == 0
    }

    /// Labels of `self` not in `other`, in the order of `self`.
    pub fn difference(&self, other: &IndexSet) -> Vec<usize> {
        self.labels.iter().copied().filter(|l| !other.contains(*l)).collect()
    }

    /// Increasing complement relative to `{0, ..., n}`.
    pub fn complement(&self) -> IndexSet {
        IndexSet {
            labels: (0..=self.ambient_n).filter(|l| !self.contains(*l)).collect(),
            ambient_n: self.ambient_n,
        }
    }

    /// Increasing reordering together with the parity of the sorting
    /// permutation.
    pub fn sort_with_sign(&self) -> (IndexSet, i32) {
        let mut labels = self.labels.clone();
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..labels.len() {
            let mut j = i;
            while j > 0 && labels[j - 1] > labels[j] {
                labels.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        (
            IndexSet {
                labels,
                ambient_n: self.ambient_n,
            },
            sign,
        )
    }

    /// The set with the label in position `i` deleted.
    pub fn remove_at(&self, i: usize) -> Result<IndexSet> {
        if i >= self.labels.len() {
            return Err(Error::InvalidIndexSet(format!(
                "position {i} out of range for a set of size {}",
                self.labels.len()
            )));
        }
        let mut labels = self.labels.clone();
        labels.remove(i);
        Ok(IndexSet {
            labels,
            ambient_n: self.ambient_n,
        })
    }

    /// `{p, j_0, ..., j_s}`: the set with `p` placed in front.
    pub fn with_front(&self, p: usize) -> Result<IndexSet> {
        let mut labels = Vec::with_capacity(self.labels.len() + 1);
        labels.push(p);
        labels.extend_from_slice(&self.labels);
        IndexSet::new(labels, self.ambient_n)
    }

    /// Increasing union of `self` and one extra label.
    pub fn with_label_sorted(&self, p: usize) -> Result<IndexSet> {
        Ok(self.with_front(p)?.sort_with_sign().0)
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", l.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels.serialize(s)
    }
}

/// Serialized form of an index set: a bare integer array, e.g. `[0,2]`.
/// The ambient dimension is supplied by the surrounding document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSetJson(pub Vec<usize>);

impl IndexSetJson {
    pub fn into_index_set(self, ambient_n: usize) -> Result<IndexSet> {
        IndexSet::new(self.0, ambient_n)
    }
}

/// All increasing subsets of `labels` (assumed increasing) of size `size`,
/// in lexicographic order.
fn combinations(labels: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(labels: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = size - cur.len();
        for i in start..labels.len() {
            if labels.len() - i < need {
                break;
            }
            cur.push(labels[i]);
            rec(labels, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(labels, size, 0, &mut current, &mut out);
    out
}

/// `Γ_m`: all increasing subsets of `{0, ..., n}` with `m + 1` elements.
pub fn enumerate_gamma(n: usize, m: usize) -> Result<Vec<IndexSet>> {
    if m > n {
        return Err(Error::InvalidIndexSet(format!("m = {m} exceeds n = {n}")));
    }
    let all: Vec<usize> = (0..=n).collect();
    Ok(combinations(&all, m + 1)
        .into_iter()
        .map(|labels| IndexSet { labels, ambient_n: n })
        .collect())
}

/// `Γ_s(I)`: all increasing subsets of `I` with `s + 1` elements.
pub fn enumerate_gamma_sub(set: &IndexSet, s: usize) -> Result<Vec<IndexSet>> {
    if !set.is_increasing() {
        return Err(Error::InvalidIndexSet(format!("{set} is not increasing")));
    }
    if set.is_empty() || s + 1 > set.len() {
        return Err(Error::InvalidIndexSet(format!(
            "s = {s} out of range for a set of size {}",
            set.len()
        )));
    }
    Ok(combinations(&set.labels, s + 1)
        .into_iter()
        .map(|labels| IndexSet {
            labels,
            ambient_n: set.ambient_n,
        })
        .collect())
}

/// The index sets `I ∈ Γ_m` with `1 <= m <= n` that enter the blending sum,
/// ordered by size and then lexicographically.
pub fn blending_sets(n: usize) -> Vec<IndexSet> {
    (1..=n)
        .flat_map(|m| enumerate_gamma(n, m).expect("m <= n"))
        .collect()
}

/// Every nonempty increasing subset of `{0, ..., n}`.
pub fn all_gamma(n: usize) -> Vec<IndexSet> {
    (0..=n)
        .flat_map(|m| enumerate_gamma(n, m).expect("m <= n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(l: &[usize], n: usize) -> IndexSet {
        IndexSet::new(l.to_vec(), n).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let g = enumerate_gamma(2, 1).unwrap();
        assert_eq!(g, vec![set(&[0, 1], 2), set(&[0, 2], 2), set(&[1, 2], 2)]);
        assert_eq!(enumerate_gamma(3, 1).unwrap().len(), 6);
        assert_eq!(enumerate_gamma(2, 2).unwrap(), vec![set(&[0, 1, 2], 2)]);
        assert!(matches!(enumerate_gamma(2, 3), Err(Error::InvalidIndexSet(_))));
    }

    #[test]
    fn gamma_sub_examples() {
        let i = set(&[0, 1, 2], 3);
        assert_eq!(
            enumerate_gamma_sub(&i, 1).unwrap(),
            vec![set(&[0, 1], 3), set(&[0, 2], 3), set(&[1, 2], 3)]
        );
        assert_eq!(
            enumerate_gamma_sub(&set(&[0, 2], 3), 0).unwrap(),
            vec![set(&[0], 3), set(&[2], 3)]
        );
        assert_eq!(enumerate_gamma_sub(&set(&[0, 1, 2, 3], 3), 2).unwrap().len(), 4);
        assert!(enumerate_gamma_sub(&i, 3).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(set(&[0, 2], 3).complement(), set(&[1, 3], 3));
        assert!(IndexSet::full(4).complement().is_empty());
        assert_eq!(set(&[1], 2).complement(), set(&[0, 2], 2));
    }

    #[test]
    fn sort_with_sign_examples() {
        assert_eq!(set(&[2, 0], 2).sort_with_sign(), (set(&[0, 2], 2), -1));
        assert_eq!(set(&[0, 1, 2], 2).sort_with_sign(), (set(&[0, 1, 2], 2), 1));
        assert_eq!(set(&[1, 2, 0], 2).sort_with_sign(), (set(&[0, 1, 2], 2), 1));
        assert!(IndexSet::new(vec![1, 1], 2).is_err());
    }

    #[test]
    fn remove_at_examples() {
        assert_eq!(set(&[0, 1, 2], 2).remove_at(1).unwrap(), set(&[0, 2], 2));
        assert_eq!(set(&[0, 1], 2).remove_at(0).unwrap(), set(&[1], 2));
        assert_eq!(set(&[0, 1, 2, 3], 3).remove_at(3).unwrap(), set(&[0, 1, 2], 3));
        assert!(set(&[0, 1], 2).remove_at(2).is_err());
    }

    #[test]
    fn rejects_out_of_range_labels() {
        assert!(IndexSet::new(vec![0, 3], 2).is_err());
    }
}
