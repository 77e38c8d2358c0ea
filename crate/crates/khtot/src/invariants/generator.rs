//! Orientation generators: the oriented resolution, the checkerboard
//! coloring and the Bar-Natan generator chain.

use alloc::vec;
use alloc::vec::Vec;

use super::InvariantError;
use crate::diagram::{LinkDiagram, Slot, UnionFind};
use crate::planar::{resolve, CrossingSet};

/// The crossings that are negative for the orientation `signs` (entry `i`
/// equal to `-1` reverses component `i`); resolving exactly these by the
/// 1-resolution gives the oriented resolution.
pub fn oriented_resolution(d: &LinkDiagram, signs: &[i8]) -> Result<CrossingSet, InvariantError> {
    let o = d.with_orientation_signs(signs)?;
    Ok((0..o.crossing_count()).filter(|&c| o.sign(c) < 0).fold(0, |u, c| u | (1 << c)))
}

/// Faces of the diagram with a checkerboard coloring (`true` = black).
///
/// Each connected piece of the diagram is colored separately, with its
/// largest face (ties broken by the smallest dart) taken as the unbounded,
/// white region.
pub fn checkerboard(d: &LinkDiagram) -> (Vec<Vec<Slot>>, Vec<bool>) {
    let faces = d.faces();
    let n = d.crossing_count();
    let mut face_of = vec![0usize; 4 * n];
    for (i, f) in faces.iter().enumerate() {
        for &s in f {
            face_of[s as usize] = i;
        }
    }
    let mut pieces = UnionFind::new(n);
    for s in 0..4 * n {
        pieces.union(s / 4, d.partner(s as Slot) as usize / 4);
    }
    let mut color: Vec<Option<bool>> = vec![None; faces.len()];
    let mut order: Vec<usize> = (0..faces.len()).collect();
    // Largest first, then smallest dart: the first face seen in each piece
    // is its outer face.
    order.sort_by_key(|&i| (core::cmp::Reverse(faces[i].len()), faces[i].iter().min().copied()));
    let mut seen_piece = vec![false; n];
    for &start in &order {
        let piece = pieces.find(faces[start][0] as usize / 4);
        if seen_piece[piece] {
            continue;
        }
        seen_piece[piece] = true;
        color[start] = Some(false);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            let c = color[f].expect("colored before push");
            for &s in &faces[f] {
                let g = face_of[d.partner(s) as usize];
                match color[g] {
                    None => {
                        color[g] = Some(!c);
                        stack.push(g);
                    }
                    Some(x) => debug_assert_ne!(x, c, "faces across an edge share a color"),
                }
            }
        }
    }
    let colors = color.into_iter().map(|c| c.expect("every face is reached")).collect();
    (faces, colors)
}

/// The Bar-Natan generator of an orientation: over the oriented resolution
/// `u`, the product of `x_i` over circles bounding a black region on their
/// left and of `H + x_i` over the others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnGenerator {
    /// The oriented resolution.
    pub u: CrossingSet,
    /// Circles (bitmask, in the complex's circle order) with factor `x_i`.
    pub black: u64,
    /// Circles with factor `H + x_i`.
    pub white: u64,
    /// Homological grading of the generator.
    pub gr_h: i32,
}

impl BnGenerator {
    /// Expansion over `F2[H]`: monomials `x` with their power of `H`.
    pub fn terms(&self) -> Vec<(u64, u32)> {
        let whites: Vec<u32> = (0..64).filter(|&i| self.white >> i & 1 == 1).collect();
        (0u64..(1 << whites.len()))
            .map(|sub| {
                let mut x = self.black;
                for (j, &i) in whites.iter().enumerate() {
                    if sub >> j & 1 == 1 {
                        x |= 1 << i;
                    }
                }
                (x, whites.len() as u32 - sub.count_ones())
            })
            .collect()
    }

    /// The monomials surviving at `H = 1`.
    pub fn at_h_one(&self) -> Vec<u64> {
        let mut xs: Vec<u64> = self.terms().into_iter().map(|(x, _)| x).collect();
        xs.sort_unstable();
        xs
    }
}

/// The Bar-Natan generator chain of the orientation `signs`.
pub fn bn_generator_chain(d: &LinkDiagram, signs: &[i8]) -> Result<BnGenerator, InvariantError> {
    let u = oriented_resolution(d, signs)?;
    // Colors are computed once on `d`; only the direction of travel depends
    // on the orientation.
    let (faces, black_face) = checkerboard(d);
    let forward = |s: Slot| d.is_outgoing(s) != (signs[d.component_of_slot(s)] < 0);
    let left = |s: Slot| {
        let dart = if forward(s) { d.partner(s) } else { s };
        black_face[d.face_of_dart(&faces, dart)]
    };
    let res = resolve(d, u);
    let mut black = 0u64;
    let mut white = 0u64;
    for (i, c) in res.circles.iter().enumerate() {
        let is_black = match c.passes.first() {
            Some(p) => {
                let b = left(p.exit);
                debug_assert!(c.passes.iter().all(|q| left(q.exit) == b), "circle borders one color");
                b
            }
            None => {
                // A crossingless component: its inside is black and the
                // positive orientation is counterclockwise.
                let l = d.loops().iter().position(|&e| e == c.tag).expect("passless circles are loops");
                signs[d.component_of_loop(l)] > 0
            }
        };
        if is_black {
            black |= 1 << i;
        } else {
            white |= 1 << i;
        }
    }
    let gr_h = u.count_ones() as i32 - d.n_minus() as i32;
    Ok(BnGenerator { u, black, white, gr_h })
}
