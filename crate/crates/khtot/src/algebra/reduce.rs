//! Homology of sparse chain complexes by cancellation.
//!
//! Unit entries are removed by Gaussian elimination (the zigzag lemma: a
//! unit `a -> b` is cancelled and every path `x -> b <- a -> y` adds
//! `d(x,b) u^-1 d(a,y)` to `d(x,y)`). Over a field this leaves a complex
//! with zero differential. Over `F2[H]`, `F2[W]` and `F2[H,H^-1,W]` the
//! remaining entries of a graded complex are monomials, and a graded Smith
//! normal form extracts torsion summands one pivot at a time.

use super::poly::{Mono, Poly, Ring};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};
use serde::{Deserialize, Serialize};

/// Which gradings a complex retains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grading {
    /// Homological and quantum gradings.
    Bigraded,
    /// Homological grading only.
    Homological,
    /// No grading (only total ranks are meaningful).
    Ungraded,
}

/// Errors from the linear algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    /// The coefficient ring is not a principal ideal domain.
    #[error("homology over {0} is not supported (not a principal ideal domain)")]
    NotPid(&'static str),
    /// A non-unit entry is not a monomial, so the graded elimination does not apply.
    #[error("non-monomial entry {0} left after unit cancellation")]
    NotMonomial(alloc::string::String),
}

/// One homology group: free rank and torsion summands `R/(t^k)` at a degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    /// Homological degree (0 when ungraded).
    pub gr_h: i32,
    /// Quantum degree, when retained.
    pub gr_q: Option<i32>,
    /// Rank of the free part.
    pub free: usize,
    /// `(k, multiplicity)` for each torsion summand `R/(t^k)`.
    pub torsion: Vec<(u32, usize)>,
}

/// A homology table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homology {
    /// Coefficient ring.
    pub ring: Ring,
    /// Retained gradings.
    pub grading: Grading,
    /// Nonzero groups in increasing degree order.
    pub groups: Vec<HomologyGroup>,
}

impl Homology {
    /// Total free rank.
    pub fn free_rank(&self) -> usize {
        self.groups.iter().map(|g| g.free).sum()
    }

    /// Total number of torsion summands.
    pub fn torsion_count(&self) -> usize {
        self.groups.iter().flat_map(|g| g.torsion.iter().map(|t| t.1)).sum()
    }
}

/// A chain complex stored sparsely with both outgoing and incoming adjacency.
#[derive(Debug, Clone)]
pub struct SparseComplex {
    ring: Ring,
    grading: Grading,
    degrees: Vec<(i32, i32)>,
    out: Vec<HashMap<u32, Poly>>,
    inc: Vec<HashSet<u32>>,
    alive: Vec<bool>,
}

impl SparseComplex {
    /// Builds a complex from generator degrees and, for every generator, the
    /// list of `(target, coefficient)` entries of its differential.
    pub fn new(ring: Ring, grading: Grading, degrees: Vec<(i32, i32)>, columns: &[Vec<(u32, Poly)>]) -> Self {
        let n = degrees.len();
        let mut out = alloc::vec![HashMap::new(); n];
        let mut inc = alloc::vec![HashSet::new(); n];
        for (a, col) in columns.iter().enumerate() {
            for (b, p) in col {
                if p.is_zero() {
                    continue;
                }
                let e: &mut Poly = out[a].entry(*b).or_insert_with(Poly::zero);
                e.add_assign(p);
                if e.is_zero() {
                    out[a].remove(b);
                    inc[*b as usize].remove(&(a as u32));
                } else {
                    inc[*b as usize].insert(a as u32);
                }
            }
        }
        SparseComplex { ring, grading, degrees, out, inc, alive: alloc::vec![true; n] }
    }

    /// Number of surviving generators.
    pub fn len(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Whether no generator survives.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of nonzero entries.
    pub fn entry_count(&self) -> usize {
        self.out.iter().map(HashMap::len).sum()
    }

    /// Surviving generators (original indices), ascending.
    pub fn survivors(&self) -> Vec<u32> {
        (0..self.alive.len() as u32).filter(|&g| self.alive[g as usize]).collect()
    }

    /// Bigrading of generator `g`.
    pub fn degree(&self, g: u32) -> (i32, i32) {
        self.degrees[g as usize]
    }

    /// Nonzero entries `(source, target, coefficient)`, sorted.
    pub fn entries(&self) -> Vec<(u32, u32, Poly)> {
        let mut out: Vec<(u32, u32, Poly)> = self
            .out
            .iter()
            .enumerate()
            .filter(|(a, _)| self.alive[*a])
            .flat_map(|(a, m)| m.iter().map(move |(&b, p)| (a as u32, b, p.clone())))
            .collect();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    fn remove(&mut self, g: u32) {
        let gi = g as usize;
        self.alive[gi] = false;
        for y in core::mem::take(&mut self.out[gi]).into_keys() {
            self.inc[y as usize].remove(&g);
        }
        for x in core::mem::take(&mut self.inc[gi]) {
            self.out[x as usize].remove(&g);
        }
    }

    fn add_entry(&mut self, x: u32, y: u32, p: &Poly) {
        let e = self.out[x as usize].entry(y).or_insert_with(Poly::zero);
        e.add_assign(p);
        if e.is_zero() {
            self.out[x as usize].remove(&y);
            self.inc[y as usize].remove(&x);
        } else {
            self.inc[y as usize].insert(x);
        }
    }

    fn unit_inverse(&self, p: &Poly) -> Poly {
        let m = p.as_mono().expect("units are monomials");
        Poly::mono(Mono::new(-m.h, -m.w))
    }

    /// Cancels the unit entry `a -> b` by the zigzag rule.
    fn cancel(&mut self, a: u32, b: u32) {
        let u = self.out[a as usize][&b].clone();
        let uinv = self.unit_inverse(&u);
        let sources: Vec<(u32, Poly)> = self.inc[b as usize]
            .iter()
            .filter(|&&x| x != a)
            .map(|&x| (x, self.out[x as usize][&b].mul(&uinv)))
            .collect();
        let targets: Vec<(u32, Poly)> =
            self.out[a as usize].iter().filter(|(&y, _)| y != b).map(|(&y, p)| (y, p.clone())).collect();
        for (x, cx) in &sources {
            for (y, cy) in &targets {
                self.add_entry(*x, *y, &cx.mul(cy));
            }
        }
        self.remove(a);
        self.remove(b);
    }

    /// Repeatedly cancels unit entries, choosing for each source the unit
    /// target with the fewest incoming entries to limit fill-in.
    pub fn cancel_units(&mut self) {
        loop {
            let mut changed = false;
            for a in 0..self.out.len() {
                if !self.alive[a] {
                    continue;
                }
                let best = self.out[a]
                    .iter()
                    .filter(|(_, p)| self.ring.is_unit(p))
                    .map(|(&b, _)| (self.inc[b as usize].len(), b))
                    .min();
                if let Some((_, b)) = best {
                    self.cancel(a as u32, b);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn degree_key(&self, g: usize) -> (i32, Option<i32>) {
        let (h, q) = self.degrees[g];
        match self.grading {
            Grading::Bigraded => (h, Some(q)),
            Grading::Homological => (h, None),
            Grading::Ungraded => (0, None),
        }
    }

    /// Valuation used to order pivots in the graded elimination.
    fn valuation(&self, m: Mono) -> i32 {
        match self.ring {
            Ring::F2H => m.h,
            _ => m.w,
        }
    }

    /// Computes the homology, consuming the complex.
    pub fn homology(mut self) -> Result<Homology, AlgebraError> {
        if self.ring == Ring::F2HW {
            return Err(AlgebraError::NotPid(self.ring.name()));
        }
        self.cancel_units();
        let mut torsion: BTreeMap<(i32, Option<i32>), BTreeMap<u32, usize>> = BTreeMap::new();
        loop {
            // Global minimum valuation pivot.
            let mut best: Option<(i32, u32, u32)> = None;
            for a in 0..self.out.len() {
                for (&b, p) in &self.out[a] {
                    let m = p.as_mono().ok_or_else(|| AlgebraError::NotMonomial(alloc::format!("{p}")))?;
                    let v = self.valuation(m);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, a as u32, b));
                    }
                }
            }
            let Some((v, a, b)) = best else { break };
            let pa = self.out[a as usize][&b].as_mono().expect("checked above");
            // Clear the rest of column b by source changes x' = x + (d(x,b)/d(a,b)) a.
            let others: Vec<u32> = self.inc[b as usize].iter().copied().filter(|&x| x != a).collect();
            let row_a: Vec<(u32, Poly)> = self.out[a as usize].iter().map(|(&y, p)| (y, p.clone())).collect();
            for x in others {
                let mx = self.out[x as usize][&b].as_mono().expect("checked above");
                let f = Mono::new(mx.h - pa.h, mx.w - pa.w);
                for (y, p) in &row_a {
                    self.add_entry(x, *y, &p.mul_mono(f));
                }
            }
            // Row a is now cleared by a change of basis of targets that touches
            // no other entry; incoming entries of a and outgoing entries of b
            // vanish because d^2 = 0.
            if v > 0 {
                *torsion.entry(self.degree_key(b as usize)).or_default().entry(v as u32).or_default() += 1;
            }
            self.remove(a);
            self.remove(b);
        }
        let mut free: BTreeMap<(i32, Option<i32>), usize> = BTreeMap::new();
        for g in 0..self.alive.len() {
            if self.alive[g] {
                *free.entry(self.degree_key(g)).or_default() += 1;
            }
        }
        let mut keys: Vec<(i32, Option<i32>)> = free.keys().chain(torsion.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let groups = keys
            .into_iter()
            .map(|k| HomologyGroup {
                gr_h: k.0,
                gr_q: k.1,
                free: free.get(&k).copied().unwrap_or(0),
                torsion: torsion.get(&k).map(|t| t.iter().map(|(&a, &b)| (a, b)).collect()).unwrap_or_default(),
            })
            .collect();
        Ok(Homology { ring: self.ring, grading: self.grading, groups })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn h(k: i32) -> Poly {
        Poly::mono(Mono::new(k, 0))
    }

    #[test]
    fn field_cancellation() {
        // a -> b, a -> c, d -> ? : a 2-dim kernel-free map, homology rank 1.
        let cols = vec![vec![(1, Poly::one()), (2, Poly::one())], vec![], vec![]];
        let c = SparseComplex::new(Ring::F2, Grading::Ungraded, vec![(0, 0); 3], &cols);
        assert_eq!(c.homology().unwrap().free_rank(), 1);
    }

    #[test]
    fn graded_torsion() {
        // a -> b with H^2 and c -> b with H^3: one torsion summand and one
        // free generator (c + H a).
        let cols = vec![vec![(1, h(2))], vec![], vec![(1, h(3))]];
        let c = SparseComplex::new(Ring::F2H, Grading::Bigraded, vec![(0, 0), (1, 4), (0, 2)], &cols);
        let hom = c.homology().unwrap();
        assert_eq!(hom.free_rank(), 1);
        assert_eq!(hom.torsion_count(), 1);
        let t = hom.groups.iter().find(|g| !g.torsion.is_empty()).unwrap();
        assert_eq!(t.torsion, vec![(2, 1)]);
        assert_eq!((t.gr_h, t.gr_q), (1, Some(4)));
    }

    #[test]
    fn two_variable_ring_rejected() {
        let c = SparseComplex::new(Ring::F2HW, Grading::Bigraded, vec![(0, 0)], &[vec![]]);
        assert!(matches!(c.homology(), Err(AlgebraError::NotPid(_))));
    }
}
