//! Contributions of labeled resolution configurations.
//!
//! A labeled configuration is a configuration together with a monomial `x`
//! on its starting circles and `y` on its ending circles, both stored as
//! bitmasks over circle indices (in key order). Every contribution function
//! here is `{0,1}`-valued; the enumerators list exactly the labelings with
//! value 1.
//!
//! * `c_k`: the Khovanov merge/split rules (index 1).
//! * `c_b`: the extra Bar-Natan terms weighted by `H` (index 1).
//! * `c_h`: forests of trees and dual trees (any positive index).
//! * `c_d`: the five Szabó families and their reverses.
//!
//! Only the active part (circles touched by arcs) is classified; passive
//! circles contribute a factor 1 exactly when they carry the same label at
//! both ends.

use crate::planar::{Configuration, Side, Surgery};
use alloc::vec;
use alloc::vec::Vec;

/// Two sign conventions that are not fixed by the shape of the families.
/// Every combination gives `delta^2 = 0` and the same homology on the
/// diagrams we can check, so the choice is a convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[doc(hidden)]
pub struct Conventions {
    /// Required value of the linking sign between an inner and an outer
    /// chord in the single-circle family (`true` for `+1`).
    pub c_sign: bool,
    /// Whether, in the star family, the leaf cut off by a self-chord of the
    /// special circle must lie to the right of the chord.
    pub e_leaf_right: bool,
}

impl Conventions {
    /// The conventions used throughout.
    pub const STANDARD: Conventions = Conventions { c_sign: false, e_leaf_right: true };
}

/// The family that makes a labeled configuration contribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// Merge `1 (x) 1 -> 1`.
    MergeA,
    /// Merge `x (x) 1 -> x` (either factor).
    MergeB,
    /// Split `x -> x (x) x`.
    SplitA,
    /// Split `1 -> x (x) 1 + 1 (x) x`.
    SplitB,
    /// Merge `x (x) x -> x`, weighted by `H`.
    MergeC,
    /// Split `1 -> 1 (x) 1`, weighted by `H`.
    SplitC,
    /// Two circles joined by parallel arcs; all labels 1.
    TypeA,
    /// Dual of [`FamilyTag::TypeA`]; all labels `x`.
    TypeB,
    /// One circle with linked inner and outer chords; all labels 1.
    TypeC,
    /// Dual of [`FamilyTag::TypeC`]; all labels `x`.
    TypeD,
    /// Star around a special circle.
    TypeE,
    /// Reverse of [`FamilyTag::TypeE`].
    TypeERev,
    /// A disjoint union of trees and dual trees (the `c_h` family).
    Forest,
}

/// A labeling `(x, y)` as bitmasks over starting and ending circles.
pub type Labeling = (u64, u64);

/// Precomputed data for classifying one configuration.
#[derive(Debug, Clone)]
pub struct Analysis {
    cfg: Configuration,
    surgery: Surgery,
    mark_circle: Vec<usize>,
    /// Passive start circles paired with the equal passive ending circle.
    passive_pairs: Vec<(usize, usize)>,
    active_start: u64,
    active_end: u64,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

impl Analysis {
    /// Performs surgery and collects the bookkeeping used by the classifiers.
    pub fn new(cfg: &Configuration) -> Self {
        let surgery = cfg.surgery();
        let mark_circle = cfg.mark_circles();
        let starts = cfg.circles();
        let ends = surgery.dual.circles();
        assert!(starts.len() <= 64 && ends.len() <= 64, "at most 64 circles are supported");
        let mut passive_pairs = Vec::new();
        let mut active_start = 0;
        let mut active_end = 0;
        for (i, c) in starts.iter().enumerate() {
            if c.is_passive() {
                let j = ends.iter().position(|e| e.key == c.key).expect("passive circles persist");
                passive_pairs.push((i, j));
            } else {
                active_start |= bit(i);
            }
        }
        for (j, e) in ends.iter().enumerate() {
            if !e.is_passive() {
                active_end |= bit(j);
            }
        }
        Analysis { cfg: cfg.clone(), surgery, mark_circle, passive_pairs, active_start, active_end }
    }

    /// The analysed configuration.
    pub fn configuration(&self) -> &Configuration {
        &self.cfg
    }

    /// Surgery data (ending circles, segment ownership).
    pub fn surgery(&self) -> &Surgery {
        &self.surgery
    }

    /// Number of ending circles.
    pub fn ending_count(&self) -> usize {
        self.surgery.dual.circle_count()
    }

    fn index(&self) -> usize {
        self.cfg.index()
    }

    fn single_active_component(&self) -> bool {
        let comps = self.cfg.components();
        comps.iter().filter(|c| !self.cfg.circles()[c[0]].is_passive()).count() == 1
    }

    /// Multiplies active labelings by every equal labeling of the passive pairs.
    fn expand(&self, active: Vec<Labeling>) -> Vec<Labeling> {
        let mut out = active;
        for &(i, j) in &self.passive_pairs {
            let more: Vec<Labeling> = out.iter().map(|&(x, y)| (x | bit(i), y | bit(j))).collect();
            out.extend(more);
        }
        out
    }

    fn ends_of_arc(&self, arc: usize) -> (usize, usize) {
        (self.mark_circle[2 * arc], self.mark_circle[2 * arc + 1])
    }

    /// Two active circles, every arc running from the same one to the other.
    fn is_a_shape(&self) -> bool {
        if self.index() == 0 || self.active_start.count_ones() != 2 || !self.single_active_component() {
            return false;
        }
        let (t0, _) = self.ends_of_arc(0);
        (0..self.index()).all(|a| {
            let (t, h) = self.ends_of_arc(a);
            t != h && t == t0
        })
    }

    /// One active circle whose chords split into linked inner and outer
    /// families with a uniform linking sign.
    fn is_c_shape(&self, conv: Conventions) -> bool {
        if self.index() < 2 || self.active_start.count_ones() != 1 {
            return false;
        }
        let ci = self.active_start.trailing_zeros() as usize;
        let circle = &self.cfg.circles()[ci];
        let k = circle.marks.len();
        let mut pos = vec![0usize; 2 * self.index()];
        for (p, m) in circle.marks.iter().enumerate() {
            pos[m.id()] = p;
        }
        let side_of = |a: usize| circle.marks[pos[2 * a]].side;
        let (inner, outer): (Vec<usize>, Vec<usize>) = (0..self.index()).partition(|&a| side_of(a) == Side::Left);
        if inner.is_empty() || outer.is_empty() {
            return false;
        }
        // Forward distance from p to q along the traversal.
        let fwd = |p: usize, q: usize| (q + k - p) % k;
        for &i in &inner {
            let (ti, hi) = (pos[2 * i], pos[2 * i + 1]);
            let span = fwd(ti, hi);
            for &o in &outer {
                let (to, ho) = (pos[2 * o], pos[2 * o + 1]);
                let to_in = fwd(ti, to) < span;
                let ho_in = fwd(ti, ho) < span;
                if to_in == ho_in {
                    return false;
                }
                if to_in != conv.c_sign {
                    return false;
                }
            }
        }
        true
    }

    /// Labelings making the star family contribute (in its unreversed form).
    fn star_labelings(&self, conv: Conventions) -> Vec<Labeling> {
        let mut out = Vec::new();
        if self.index() == 0 || !self.single_active_component() {
            return out;
        }
        let starts = self.cfg.circles();
        let dual = &self.surgery.dual;
        let dual_mark_circle = dual.mark_circles();
        let ends = dual.circles();
        for s in 0..starts.len() {
            if self.active_start & bit(s) == 0 {
                continue;
            }
            // Non-special starts carry exactly one mark, the tail of an arc
            // into the special circle; other arcs are chords of it.
            let ok = (0..self.index()).all(|a| {
                let (t, h) = self.ends_of_arc(a);
                if t == h {
                    t == s
                } else {
                    h == s && starts[t].marks.len() == 1
                }
            });
            if !ok {
                continue;
            }
            for t_end in 0..ends.len() {
                if self.active_end & bit(t_end) == 0 {
                    continue;
                }
                let leaves_ok = (0..ends.len()).all(|j| {
                    if j == t_end || self.active_end & bit(j) == 0 {
                        return true;
                    }
                    let mut arcs: Vec<u32> = ends[j].marks.iter().map(|m| m.arc).collect();
                    arcs.sort_unstable();
                    arcs.dedup();
                    arcs.len() == 1
                });
                if !leaves_ok {
                    continue;
                }
                let chords_ok = (0..self.index()).all(|a| {
                    let (t, h) = self.ends_of_arc(a);
                    if t != h {
                        return true;
                    }
                    let (e1, e2) = (dual_mark_circle[2 * a], dual_mark_circle[2 * a + 1]);
                    let leaf = match (e1 == t_end, e2 == t_end) {
                        (true, false) => e2,
                        (false, true) => e1,
                        _ => return false,
                    };
                    let tail = self.cfg.mark(2 * a);
                    let leaf_after_tail = self.surgery.seg_circle[2 * a] as usize == leaf;
                    let leaf_right = (tail.side == Side::Left) == leaf_after_tail;
                    leaf_right == conv.e_leaf_right
                });
                if chords_ok {
                    out.push((self.active_start & !bit(s), bit(t_end)));
                }
            }
        }
        out
    }

    /// Nonzero labelings of `c_k`, with the family of each.
    pub fn khovanov(&self) -> Vec<(Labeling, FamilyTag)> {
        let mut active = Vec::new();
        if self.index() != 1 {
            return active;
        }
        let (t, h) = self.ends_of_arc(0);
        let ends: Vec<usize> = (0..self.ending_count()).filter(|&j| self.active_end & bit(j) != 0).collect();
        if t != h {
            let e = bit(ends[0]);
            active.push(((0, 0), FamilyTag::MergeA));
            active.push(((bit(t), e), FamilyTag::MergeB));
            active.push(((bit(h), e), FamilyTag::MergeB));
        } else {
            let (e1, e2) = (bit(ends[0]), bit(ends[1]));
            active.push(((bit(t), e1 | e2), FamilyTag::SplitA));
            active.push(((0, e1), FamilyTag::SplitB));
            active.push(((0, e2), FamilyTag::SplitB));
        }
        self.expand_tagged(active)
    }

    /// Nonzero labelings of `c_b`.
    pub fn bar_natan(&self) -> Vec<(Labeling, FamilyTag)> {
        if self.index() != 1 {
            return Vec::new();
        }
        let (t, h) = self.ends_of_arc(0);
        let active = if t != h {
            vec![((bit(t) | bit(h), self.active_end), FamilyTag::MergeC)]
        } else {
            vec![((0, 0), FamilyTag::SplitC)]
        };
        self.expand_tagged(active)
    }

    /// Nonzero labelings of `c_h`.
    pub fn forest(&self) -> Vec<Labeling> {
        if self.index() == 0 {
            return Vec::new();
        }
        let mut active: Vec<Labeling> = vec![(0, 0)];
        for comp in self.cfg.components() {
            if self.cfg.circles()[comp[0]].is_passive() {
                continue;
            }
            let marks: usize = comp.iter().map(|&c| self.cfg.circles()[c].marks.len()).sum();
            let k = marks / 2;
            let mut end_mask = 0u64;
            let mut start_mask = 0u64;
            for &c in &comp {
                start_mask |= bit(c);
                for m in &self.cfg.circles()[c].marks {
                    end_mask |= bit(self.surgery.seg_circle[m.id()] as usize);
                }
            }
            let (ns, ne) = (comp.len(), end_mask.count_ones() as usize);
            if ns == k + 1 && ne == 1 {
                active.iter_mut().for_each(|(x, y)| {
                    *x |= start_mask;
                    *y |= end_mask;
                });
            } else if !(ns == 1 && ne == k + 1) {
                return Vec::new();
            }
        }
        self.expand(active)
    }

    /// Nonzero labelings of `c_d`, with the family of each.
    pub fn szabo(&self, conv: Conventions) -> Vec<(Labeling, FamilyTag)> {
        let mut active: Vec<(Labeling, FamilyTag)> = Vec::new();
        if self.index() == 0 || !self.single_active_component() {
            return active;
        }
        if self.is_a_shape() {
            active.push(((0, 0), FamilyTag::TypeA));
        }
        if self.is_c_shape(conv) {
            active.push(((0, 0), FamilyTag::TypeC));
        }
        let md = Analysis::new(&self.surgery.dual.mirror());
        if md.is_a_shape() {
            active.push(((self.active_start, self.active_end), FamilyTag::TypeB));
        }
        if md.is_c_shape(conv) {
            active.push(((self.active_start, self.active_end), FamilyTag::TypeD));
        }
        for l in self.star_labelings(conv) {
            active.push((l, FamilyTag::TypeE));
        }
        let rev = Analysis::new(&self.cfg.reverse());
        for l in rev.star_labelings(conv) {
            active.push((l, FamilyTag::TypeERev));
        }
        self.expand_tagged(active)
    }

    fn expand_tagged(&self, active: Vec<(Labeling, FamilyTag)>) -> Vec<(Labeling, FamilyTag)> {
        let mut out = Vec::new();
        for (l, tag) in active {
            for e in self.expand(vec![l]) {
                out.push((e, tag));
            }
        }
        out
    }
}

fn contains(list: &[(Labeling, FamilyTag)], x: u64, y: u64) -> bool {
    list.iter().any(|&(l, _)| l == (x, y))
}

/// `c_k(R, x, y)`.
pub fn eval_k(cfg: &Configuration, x: u64, y: u64) -> bool {
    contains(&Analysis::new(cfg).khovanov(), x, y)
}

/// `c_b(R, x, y)`.
pub fn eval_b(cfg: &Configuration, x: u64, y: u64) -> bool {
    contains(&Analysis::new(cfg).bar_natan(), x, y)
}

/// `c_h(R, x, y)`.
pub fn eval_h(cfg: &Configuration, x: u64, y: u64) -> bool {
    Analysis::new(cfg).forest().contains(&(x, y))
}

/// `c_d(R, x, y)` with the standard conventions.
pub fn eval_d(cfg: &Configuration, x: u64, y: u64) -> bool {
    eval_d_with(cfg, x, y, Conventions::STANDARD)
}

/// `c_d(R, x, y)` with explicit conventions.
#[doc(hidden)]
pub fn eval_d_with(cfg: &Configuration, x: u64, y: u64, conv: Conventions) -> bool {
    // Families can overlap only in degenerate shapes; the value is the
    // parity of the number of matching families.
    Analysis::new(cfg).szabo(conv).iter().filter(|&&(l, _)| l == (x, y)).count() % 2 == 1
}

/// Families under which `(R, x, y)` contributes to any of the four functions.
pub fn classify(cfg: &Configuration, x: u64, y: u64) -> Vec<FamilyTag> {
    let a = Analysis::new(cfg);
    let mut tags: Vec<FamilyTag> = a
        .khovanov()
        .into_iter()
        .chain(a.bar_natan())
        .chain(a.szabo(Conventions::STANDARD))
        .filter(|&(l, _)| l == (x, y))
        .map(|(_, t)| t)
        .collect();
    if a.forest().contains(&(x, y)) {
        tags.push(FamilyTag::Forest);
    }
    tags.sort();
    tags.dedup();
    tags
}

/// Labels of the dual labeled configuration: `x* = !y`, `y* = !x` (with the
/// ending circles of the dual matched to the original starting circles by key).
pub fn dual_labels(cfg: &Configuration, x: u64, y: u64) -> (Configuration, u64, u64) {
    let dual = cfg.dual();
    let n_end = dual.circle_count();
    let mask = if n_end == 64 { u64::MAX } else { (1u64 << n_end) - 1 };
    let xs = !y & mask;
    let back = dual.dual();
    let mut ys = 0;
    for (j, c) in back.circles().iter().enumerate() {
        let i = cfg.circles().iter().position(|s| s.key == c.key).expect("double dual keeps keys");
        if x & bit(i) == 0 {
            ys |= bit(j);
        }
    }
    (dual, xs, ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, DiagramOptions, LinkDiagram};
    use crate::planar::configuration;

    fn trefoil() -> LinkDiagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", DiagramOptions::default()).unwrap()
    }

    #[test]
    fn merge_and_split_rules() {
        let d = trefoil();
        // 000 -> 100 merges the two circles into one.
        let a = Analysis::new(&configuration(&d, 0, 0b001).unwrap());
        let k: Vec<_> = a.khovanov().into_iter().map(|(l, _)| l).collect();
        assert_eq!(k.len(), 3);
        assert!(k.contains(&(0, 0)) && k.contains(&(1, 1)) && k.contains(&(2, 1)));
        assert_eq!(a.bar_natan()[0].0, (3, 1));
        // 100 -> 110 splits.
        let a = Analysis::new(&configuration(&d, 0b001, 0b011).unwrap());
        let k: Vec<_> = a.khovanov().into_iter().map(|(l, _)| l).collect();
        assert!(k.contains(&(1, 3)) && k.contains(&(0, 1)) && k.contains(&(0, 2)));
        assert_eq!(a.bar_natan()[0].0, (0, 0));
    }

    #[test]
    fn forest_includes_index_one_bar_natan() {
        let d = trefoil();
        for (u, v) in [(0u64, 1u64), (1, 3), (0, 2), (2, 6)] {
            let a = Analysis::new(&configuration(&d, u, v).unwrap());
            let b: Vec<_> = a.bar_natan().into_iter().map(|(l, _)| l).collect();
            assert_eq!(a.forest(), b);
        }
    }

    #[test]
    fn index_one_szabo_is_khovanov() {
        let d = trefoil();
        for mask in 0..8 {
            let d = d.with_decoration_mask(mask);
            for (u, v) in [(0u64, 1u64), (0, 2), (0, 4), (1, 3), (1, 5), (2, 6), (3, 7)] {
                let a = Analysis::new(&configuration(&d, u, v).unwrap());
                let mut k: Vec<_> = a.khovanov().into_iter().map(|(l, _)| l).collect();
                let mut s: Vec<_> = a.szabo(Conventions::STANDARD).into_iter().map(|(l, _)| l).collect();
                k.sort();
                s.sort();
                assert_eq!(k, s, "mask={mask} u={u} v={v}");
            }
        }
    }

    #[test]
    fn three_parallel_arcs_are_type_a() {
        let d = trefoil();
        let cfg = configuration(&d, 0, 0b111).unwrap();
        assert_eq!(classify(&cfg, 0, 0), vec![FamilyTag::TypeA]);
        assert!(eval_d(&cfg, 0, 0));
        assert!(!eval_h(&cfg, 0, 0));
    }
}
