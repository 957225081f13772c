//! Exact Gaussian elimination over the rationals on sparse, key-indexed
//! vectors. Used for basis selection and nullspaces; matrices here have at
//! most a few hundred rows.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, row: &SparseVec<K>, factor: &Rational) {
    for (k, v) in row {
        let entry = target.entry(k.clone()).or_insert_with(Rational::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Incrementally built row-echelon basis.
#[derive(Debug, Clone)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: Vec<(K, SparseVec<K>)>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination against the current rows.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                axpy(&mut v, row, &c);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` if it is independent of the current rows; returns whether
    /// it was added.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let (pivot, lead) = match r.iter().next() {
            Some((k, c)) => (k.clone(), c.clone()),
            None => return false,
        };
        let inv = Rational::one() / lead;
        let row: SparseVec<K> = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.rows.push((pivot, row));
        true
    }
}

/// Indices of a maximal independent subset, chosen greedily in order.
pub fn independent_subset<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> Vec<usize> {
    let mut basis = EchelonBasis::new();
    vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| basis.insert(v))
        .map(|(i, _)| i)
        .collect()
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    independent_subset(vectors).len()
}

/// Basis of `{c : Σ_j c_j columns[j] = 0}`, returned as dense coefficient
/// vectors of length `columns.len()`.
pub fn nullspace<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<Vec<Rational>> {
    let ncols = columns.len();
    let mut keys: Vec<K> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| {
            columns
                .iter()
                .map(|c| c.get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();

    // reduced row echelon form
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][f].clone();
            }
            v
        })
        .collect()
}
