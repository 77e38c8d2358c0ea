//! Filtered-representative search over `F2`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::upright::{Level, UprightSet};
use super::InvariantError;
use crate::algebra::sparse::sym_diff;
use crate::algebra::{Ring, SparseEliminator};
use crate::complex::BigradedComplex;

/// A bigraded complex over `F2` whose differential does not decrease either
/// grading, with chains as sorted generator lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    degrees: Vec<(i32, i32)>,
    columns: Vec<Vec<u32>>,
}

impl FilteredComplex {
    /// Builds from generator bigradings and differential columns (sorted
    /// target lists).
    pub fn new(degrees: Vec<(i32, i32)>, mut columns: Vec<Vec<u32>>) -> Result<Self, InvariantError> {
        if degrees.len() != columns.len() {
            return Err(InvariantError::Internal("one column per generator is required"));
        }
        for col in &mut columns {
            col.sort_unstable();
            col.dedup();
            if col.last().is_some_and(|&t| t as usize >= degrees.len()) {
                return Err(InvariantError::Internal("column target out of range"));
            }
        }
        Ok(FilteredComplex { degrees, columns })
    }

    /// The `F2` complex underlying a specialization over `F2`
    /// (such as `C_ftot` or `C_fBN`).
    pub fn from_complex(c: &BigradedComplex) -> Result<Self, InvariantError> {
        if c.ring() != Ring::F2 {
            return Err(InvariantError::Internal("filtered searches need an F2 complex"));
        }
        let degrees = (0..c.len()).map(|g| c.degree(g)).collect();
        let columns = (0..c.len()).map(|g| c.column(g).iter().map(|&(t, _)| t).collect()).collect();
        Self::new(degrees, columns)
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    /// Whether there are no generators.
    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Bigrading of generator `g`.
    pub fn degree(&self, g: usize) -> (i32, i32) {
        self.degrees[g]
    }

    /// Differential of generator `g`.
    pub fn column(&self, g: usize) -> &[u32] {
        &self.columns[g]
    }

    /// Whether every nonzero entry raises `gr_h` and does not lower `gr_q`.
    pub fn is_filtered(&self) -> bool {
        self.columns.iter().enumerate().all(|(g, col)| {
            let (h, q) = self.degrees[g];
            col.iter().all(|&t| {
                let (th, tq) = self.degrees[t as usize];
                th > h && tq >= q
            })
        })
    }

    /// The differential of a chain.
    pub fn boundary(&self, chain: &[u32]) -> Vec<u32> {
        let mut all: Vec<u32> = chain.iter().flat_map(|&g| self.columns[g as usize].iter().copied()).collect();
        all.sort_unstable();
        let mut out = Vec::with_capacity(all.len());
        let mut i = 0;
        while i < all.len() {
            let mut j = i;
            while j < all.len() && all[j] == all[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(all[i]);
            }
            i = j;
        }
        out
    }

    /// Completes an `f`-cycle `c0`, where `f` is the part of the differential
    /// raising `gr_h` by one, to a cycle of the whole differential by adding
    /// corrections in increasing homological degree.
    pub fn lift(&self, c0: &[u32]) -> Result<Vec<u32>, InvariantError> {
        let mut c: Vec<u32> = c0.to_vec();
        c.sort_unstable();
        c.dedup();
        let mut by_level: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for (g, &(h, _)) in self.degrees.iter().enumerate() {
            by_level.entry(h).or_default().push(g as u32);
        }
        let mut previous = i32::MIN;
        loop {
            let b = self.boundary(&c);
            let Some(level) = b.iter().map(|&g| self.degrees[g as usize].0).min() else {
                return Ok(c);
            };
            if level <= previous {
                return Err(InvariantError::LiftFailed(level));
            }
            previous = level;
            let rhs: Vec<u32> = b.into_iter().filter(|&g| self.degrees[g as usize].0 == level).collect();
            let sources = by_level.get(&(level - 1)).cloned().unwrap_or_default();
            let mut elim = SparseEliminator::new();
            for &g in &sources {
                let col = self.columns[g as usize].iter().copied().filter(|&t| self.degrees[t as usize].0 == level).collect();
                elim.insert(col);
            }
            let pre = elim.preimage(rhs).ok_or(InvariantError::LiftFailed(level))?;
            let y: Vec<u32> = pre.into_iter().map(|k| sources[k as usize]).collect();
            let mut y = y;
            y.sort_unstable();
            c = sym_diff(&c, &y);
        }
    }

    /// Whether `cycle + d(a)` is supported on `keep` for some chain `a`,
    /// i.e. whether the image of the cycle in the quotient by the span of
    /// `keep` is a boundary there.
    pub fn representable(&self, cycle: &[u32], keep: impl Fn(usize) -> bool) -> bool {
        let quotient: Vec<bool> = (0..self.len()).map(|g| !keep(g)).collect();
        let target: Vec<u32> = cycle.iter().copied().filter(|&g| quotient[g as usize]).collect();
        if target.is_empty() {
            return true;
        }
        let mut elim = SparseEliminator::new();
        for g in (0..self.len()).filter(|&g| quotient[g]) {
            elim.insert(self.columns[g].iter().copied().filter(|&t| quotient[t as usize]).collect());
        }
        elim.preimage(target).is_some()
    }

    /// The largest even `n` such that the subcomplex spanned by generators
    /// with bigrading in `U[n]` carries a representative of `cycle`.
    pub fn max_translate(&self, cycle: &[u32], u: &UprightSet) -> Result<i64, InvariantError> {
        let levels = self
            .degrees
            .iter()
            .map(|&(h, q)| u.level(h as i64, q as i64))
            .collect::<Result<Vec<Level>, _>>()?;
        let mut finite: Vec<i64> = levels.iter().filter_map(|l| if let Level::At(n) = l { Some(*n) } else { None }).collect();
        finite.sort_unstable();
        finite.dedup();
        let works = |n: Level| self.representable(cycle, |g| levels[g] >= n);
        if works(Level::Top) {
            return Err(InvariantError::Unbounded);
        }
        if finite.is_empty() || !works(Level::At(finite[0])) {
            return Err(InvariantError::NotRepresentable);
        }
        // Representability is monotone in n; find the last working level.
        let (mut lo, mut hi) = (0, finite.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if works(Level::At(finite[mid])) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(finite[lo])
    }
}
