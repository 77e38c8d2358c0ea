//! Sparse column elimination over `F2`, with preimage tracking.
//!
//! Vectors are sorted lists of indices with a one. Columns are reduced by
//! their largest index ("low"), as in persistence computations; every stored
//! column remembers which inserted columns it is a sum of, so membership
//! tests also produce preimages.

use alloc::vec::Vec;
use hashbrown::HashMap;

/// Symmetric difference of two sorted index lists.
pub fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// An echelon basis of a span of sparse vectors.
#[derive(Debug, Clone, Default)]
pub struct SparseEliminator {
    columns: Vec<(Vec<u32>, Vec<u32>)>,
    by_low: HashMap<u32, usize>,
    inserted: u32,
}

impl SparseEliminator {
    /// An empty basis.
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of independent vectors inserted so far.
    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Inserts the next column (labelled by insertion order, starting at 0);
    /// returns whether it was independent of the previous ones.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let label = self.inserted;
        self.inserted += 1;
        let (rest, mut combo) = self.reduce(v);
        if rest.is_empty() {
            return false;
        }
        combo = sym_diff(&combo, &[label]);
        let low = *rest.last().expect("nonempty");
        self.by_low.insert(low, self.columns.len());
        self.columns.push((rest, combo));
        true
    }

    /// Reduces `v` against the basis. Returns the remainder and the labels
    /// of the inserted columns whose sum was subtracted; `v` lies in the span
    /// iff the remainder is empty, and then it equals that sum.
    pub fn reduce(&self, mut v: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
        let mut combo: Vec<u32> = Vec::new();
        // Entries that are not pivots stay in the remainder.
        let mut kept: Vec<u32> = Vec::new();
        while let Some(low) = v.pop() {
            match self.by_low.get(&low) {
                Some(&k) => {
                    let (col, c) = &self.columns[k];
                    v.push(low);
                    v = sym_diff(&v, col);
                    combo = sym_diff(&combo, c);
                }
                None => kept.push(low),
            }
        }
        kept.reverse();
        (kept, combo)
    }

    /// Solves for a set of inserted columns summing to `v`.
    pub fn preimage(&self, v: Vec<u32>) -> Option<Vec<u32>> {
        let (rest, combo) = self.reduce(v);
        rest.is_empty().then_some(combo)
    }
}
