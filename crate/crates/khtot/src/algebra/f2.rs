//! Dense bit-packed linear algebra over `F2`.

use alloc::vec;
use alloc::vec::Vec;

/// A fixed-length vector over `F2`, packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// The zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    /// Builds a vector with ones at the given positions.
    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.toggle(i);
        }
        v
    }

    /// Length.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Whether the length is zero.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Sets bit `i`.
    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        if self.get(i) != b {
            self.toggle(i);
        }
    }

    /// Flips bit `i`.
    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    /// `self += other`.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Whether all bits are zero.
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the set bits.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    /// Lowest set bit at or after `from`.
    pub fn first_one_from(&self, from: usize) -> Option<usize> {
        let mut wi = from / 64;
        if wi >= self.words.len() {
            return None;
        }
        let mut w = self.words[wi] & (u64::MAX << (from % 64));
        loop {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }
}

/// A dense matrix over `F2` stored as rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    /// The `rows x cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows: vec![BitVec::zeros(cols); rows], cols }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Flips entry `(r, c)`.
    pub fn toggle(&mut self, r: usize, c: usize) {
        self.rows[r].toggle(c);
    }

    /// Row `r`.
    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    /// Rank, by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate().len()
    }

    /// Reduces to row echelon form in place; returns the pivot columns of
    /// rows `0..rank`.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let (head, tail) = self.rows.split_at_mut(r + 1);
            let pivot = &head[r];
            for row in tail.iter_mut() {
                if row.get(c) {
                    row.xor_assign(pivot);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }

    /// Solves `self * x = b`; returns one solution if the system is consistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows.len(), "right-hand side length");
        // Augment with b as an extra column.
        let n = self.cols;
        let mut aug = BitMatrix::zeros(self.rows.len(), n + 1);
        for (i, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                aug.rows[i].toggle(c);
            }
            if b.get(i) {
                aug.rows[i].toggle(n);
            }
        }
        let pivots = aug.eliminate();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = BitVec::zeros(n);
        for (r, &c) in pivots.iter().enumerate().rev() {
            let row = &aug.rows[r];
            let mut val = row.get(n);
            for j in row.ones() {
                if j > c && j < n && x.get(j) {
                    val = !val;
                }
            }
            x.set(c, val);
        }
        Some(x)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = 0u64;
            for (a, b) in row.words.iter().zip(&x.words) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.toggle(i);
            }
        }
        out
    }
}
