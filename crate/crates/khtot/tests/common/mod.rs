//! Helpers shared by integration tests: dense cube matrices over `F2` and
//! seeded random Reidemeister moves.
#![allow(dead_code)]

use khtot::contrib::{Analysis, Conventions};
use khtot::planar::{configuration, resolve, Configuration, CrossingSet};
use khtot::{LinkDiagram, Move};
use rand::Rng;

pub fn cfg(d: &LinkDiagram, u: u64, v: u64) -> Configuration {
    configuration(d, u, v).unwrap()
}

/// Dense `F2` matrices on the generators of the cube (columns = sources).
pub struct Cube {
    pub offsets: Vec<usize>,
    pub len: usize,
    pub n: usize,
}

pub type Mat = Vec<Vec<bool>>;

impl Cube {
    pub fn new(d: &LinkDiagram) -> Self {
        let n = d.crossing_count();
        let circles: Vec<usize> = (0..1u64 << n).map(|u| resolve(d, u).len()).collect();
        let mut offsets = Vec::new();
        let mut len = 0;
        for &k in &circles {
            offsets.push(len);
            len += 1 << k;
        }
        Cube { offsets, len, n }
    }

    pub fn zero(&self) -> Mat {
        vec![vec![false; self.len]; self.len]
    }

    /// `h_s` (forest contributions from `u` to `u | s`).
    pub fn h(&self, d: &LinkDiagram, s: CrossingSet) -> Mat {
        let mut m = self.zero();
        for u in 0..1u64 << self.n {
            if u & s != 0 {
                continue;
            }
            for (x, y) in Analysis::new(&cfg(d, u, u | s)).forest() {
                let (a, b) = (self.offsets[u as usize] + x as usize, self.offsets[(u | s) as usize] + y as usize);
                m[b][a] ^= true;
            }
        }
        m
    }

    /// The unweighted Szabó endomorphism `d = sum_s d_s`.
    pub fn d(&self, d: &LinkDiagram) -> Mat {
        let mut m = self.zero();
        let full = (1u64 << self.n) - 1;
        for u in 0..=full {
            let mut s = full & !u;
            while s != 0 {
                for ((x, y), _) in Analysis::new(&cfg(d, u, u | s)).szabo(Conventions::STANDARD) {
                    let (a, b) = (self.offsets[u as usize] + x as usize, self.offsets[(u | s) as usize] + y as usize);
                    m[b][a] ^= true;
                }
                s = (s - 1) & (full & !u);
            }
        }
        m
    }
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    out[i][j] ^= b[k][j];
                }
            }
        }
    }
    out
}

pub fn add(a: &mut Mat, b: &Mat) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x ^= *y;
        }
    }
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| !x))
}

/// Every edge id of `d`, including crossingless loops.
pub fn edges(d: &LinkDiagram) -> Vec<u32> {
    let mut e: Vec<u32> = (0..4 * d.crossing_count() as u32).map(|s| d.edge_at(s)).collect();
    e.extend_from_slice(d.loops());
    e.sort_unstable();
    e.dedup();
    e
}

/// Applies one random move (third moves when a triangle exists), retrying
/// until a move succeeds. Returns the move and the new diagram.
pub fn random_move(d: &LinkDiagram, rng: &mut impl Rng) -> (Move, LinkDiagram) {
    loop {
        let kind = rng.gen_range(0..3);
        let mv = match kind {
            0 => {
                let e = edges(d);
                Move::R1 { edge: e[rng.gen_range(0..e.len())], positive: rng.gen(), left: rng.gen() }
            }
            1 => {
                let sites = d.r2_sites();
                if sites.is_empty() {
                    continue;
                }
                let (over, under, left) = sites[rng.gen_range(0..sites.len())];
                Move::R2 { over, under, left }
            }
            _ => {
                let sites = d.r3_sites();
                if sites.is_empty() {
                    continue;
                }
                let (edge, left) = sites[rng.gen_range(0..sites.len())];
                Move::R3 { edge, left }
            }
        };
        let bits: Vec<bool> = (0..2).map(|_| rng.gen()).collect();
        if let Ok(e) = d.apply_move_with(mv, &bits) {
            return (mv, e);
        }
    }
}
