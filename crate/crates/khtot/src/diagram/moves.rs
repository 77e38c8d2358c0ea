//! Reidemeister moves on PD diagrams.
//!
//! Moves that add crossings append them after the existing ones, so crossing
//! indices (and their decorations) of the old diagram are preserved. New
//! crossings receive decoration bit 0 unless the caller supplies bits.

use super::{DiagramError, EdgeId, LinkDiagram, Slot};
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

/// A Reidemeister move together with its site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Adds a kink on `edge`. `positive` selects R1+ / R1-; `left` puts the
    /// small loop on the left of the edge (in its orientation).
    R1 {
        /// Edge receiving the kink (may be the edge of a crossingless loop).
        edge: EdgeId,
        /// Sign of the new crossing.
        positive: bool,
        /// Side of the loop relative to the edge orientation.
        left: bool,
    },
    /// Pushes `over` across `under` through the face lying on the `left`
    /// (or right) side of `over`, creating two crossings in which `over` is
    /// the overstrand.
    R2 {
        /// The strand that is pushed over.
        over: EdgeId,
        /// The strand it is pushed across; must bound the same face.
        under: EdgeId,
        /// Which side of `over` the shared face lies on.
        left: bool,
    },
    /// Slides a strand across the triangular face lying on the `left` (or
    /// right) side of `edge`.
    R3 {
        /// An edge on the boundary of the triangle.
        edge: EdgeId,
        /// Which side of `edge` the triangle lies on.
        left: bool,
    },
}

impl LinkDiagram {
    /// Applies a move; new crossings get decoration bit 0.
    pub fn apply_move(&self, mv: Move) -> Result<LinkDiagram, DiagramError> {
        self.apply_move_with(mv, &[])
    }

    /// Applies a move, taking decoration bits for new crossings from `bits`
    /// (missing entries default to 0).
    pub fn apply_move_with(&self, mv: Move, bits: &[bool]) -> Result<LinkDiagram, DiagramError> {
        let bit = |i: usize| bits.get(i).copied().unwrap_or(false);
        match mv {
            Move::R1 { edge, positive, left } => self.r1(edge, positive, left, bit(0)),
            Move::R2 { over, under, left } => self.r2(over, under, left, [bit(0), bit(1)]),
            Move::R3 { edge, left } => self.r3(edge, left),
        }
    }

    /// Tail slot (where the edge leaves a crossing) and head slot of edge `e`.
    fn edge_ends(&self, e: EdgeId) -> Option<(Slot, Slot)> {
        let s = self.slot_of_edge(e)?;
        let p = self.partner(s);
        Some(if self.is_outgoing(s) { (s, p) } else { (p, s) })
    }

    /// Tail slots of every crossing edge, used to carry orientations.
    fn tail_hints(&self) -> BTreeMap<EdgeId, Slot> {
        let mut h = BTreeMap::new();
        for s in 0..4 * self.crossing_count() as Slot {
            if self.is_outgoing(s) {
                h.insert(self.edge_at(s), s);
            }
        }
        h
    }

    fn r1(&self, e: EdgeId, positive: bool, left: bool, bit: bool) -> Result<LinkDiagram, DiagramError> {
        let mut crossings = self.crossings().to_vec();
        let mut loops = self.loops().to_vec();
        let mut hint = self.tail_hints();
        let fresh = self.max_edge() + 1;
        let l = fresh;
        let (e1, e2) = if let Some(i) = loops.iter().position(|&x| x == e) {
            loops.remove(i);
            (e, e)
        } else {
            let (_, head) = self.edge_ends(e).ok_or_else(|| DiagramError::InvalidSite("unknown edge".to_string()))?;
            let e2 = fresh + 1;
            let (c, p) = ((head / 4) as usize, (head % 4) as usize);
            crossings[c][p] = e2;
            (e, e2)
        };
        // Four kinks: (+, right) = X(e1,L,L,e2), (+, left) = X(L,e1,e2,L),
        // (-, left) = X(e1,e2,L,L), (-, right) = X(L,L,e2,e1).
        // Outgoing positions of the kink edge and of the head piece; for a
        // former loop `e2 == e1` so this also fixes the loop's direction.
        let (tuple, l_out, e2_out): ([EdgeId; 4], usize, usize) = match (positive, left) {
            (true, false) => ([e1, l, l, e2], 2, 3),
            (true, true) => ([l, e1, e2, l], 3, 2),
            (false, true) => ([e1, e2, l, l], 2, 1),
            (false, false) => ([l, l, e2, e1], 1, 2),
        };
        let nc = crossings.len();
        crossings.push(tuple);
        hint.insert(l, (4 * nc + l_out) as Slot);
        hint.insert(e2, (4 * nc + e2_out) as Slot);
        let mut decorations = self.decorations().to_vec();
        decorations.push(bit);
        LinkDiagram::rebuild_oriented(crossings, decorations, self.basepoint(), loops, &hint)
    }

    fn r2(
        &self,
        e: EdgeId,
        f: EdgeId,
        left: bool,
        bits: [bool; 2],
    ) -> Result<LinkDiagram, DiagramError> {
        if e == f {
            return Err(DiagramError::InvalidSite("R2 needs two different edges".to_string()));
        }
        let (et, eh) = self.edge_ends(e).ok_or_else(|| DiagramError::InvalidSite("unknown edge".to_string()))?;
        let (ft, fh) = self.edge_ends(f).ok_or_else(|| DiagramError::InvalidSite("unknown edge".to_string()))?;
        let faces = self.faces();
        // Dart `tail` has the edge's right face; dart `head` has its left face.
        let face = self.face_of_dart(&faces, if left { eh } else { et });
        let f_face_right = if faces[face].contains(&ft) {
            true
        } else if faces[face].contains(&fh) {
            false
        } else {
            return Err(DiagramError::InvalidSite("edges do not share the chosen face".to_string()));
        };
        let e_face_right = !left;

        let fresh = self.max_edge() + 1;
        let (e_mid, e_head, f_mid, f_head) = (fresh, fresh + 1, fresh + 2, fresh + 3);
        let mut crossings = self.crossings().to_vec();
        crossings[(eh / 4) as usize][(eh % 4) as usize] = e_head;
        crossings[(fh / 4) as usize][(fh % 4) as usize] = f_head;

        // Local picture: `e` on top running east when the face is on its
        // right, `f` below running west when the face is on its right.
        let e_east = e_face_right;
        let f_east = !f_face_right;
        let (ew, ee) = if e_east { (e, e_head) } else { (e_head, e) };
        let (fw, fe) = if f_east { (f, f_head) } else { (f_head, f) };
        // (edge, is_e_strand, incoming) in counterclockwise order.
        let x1 = [(f_mid, false, !f_east), (ew, true, e_east), (fw, false, f_east), (e_mid, true, !e_east)];
        let x2 = [(fe, false, !f_east), (ee, true, !e_east), (f_mid, false, f_east), (e_mid, true, e_east)];
        // The tail pieces keep the old ids, so old tail hints stay valid.
        let mut hint = self.tail_hints();
        let nc = crossings.len();
        for (k, ring) in [x1, x2].iter().enumerate() {
            let start = ring
                .iter()
                .position(|&(_, is_e, incoming)| is_e && incoming)
                .expect("each strand enters once");
            let tuple = [0, 1, 2, 3].map(|i| ring[(start + i) % 4].0);
            for i in 0..4 {
                let (edge, _, incoming) = ring[(start + i) % 4];
                if !incoming {
                    hint.insert(edge, (4 * (nc + k) + i) as Slot);
                }
            }
            crossings.push(tuple);
        }
        let mut decorations = self.decorations().to_vec();
        decorations.extend_from_slice(&bits);
        LinkDiagram::rebuild_oriented(crossings, decorations, self.basepoint(), self.loops().to_vec(), &hint)
    }

    fn r3(&self, e: EdgeId, left: bool) -> Result<LinkDiagram, DiagramError> {
        let (et, eh) = self.edge_ends(e).ok_or_else(|| DiagramError::InvalidSite("unknown edge".to_string()))?;
        let faces = self.faces();
        let face = &faces[self.face_of_dart(&faces, if left { eh } else { et })];
        if face.len() != 3 {
            return Err(DiagramError::InvalidSite("face is not a triangle".to_string()));
        }
        let s: [Slot; 3] = [face[0], face[1], face[2]];
        let p: [Slot; 3] = s.map(|x| self.partner(x));
        let xs: [u32; 3] = s.map(|x| x / 4);
        if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
            return Err(DiagramError::InvalidSite("triangle has repeated crossings".to_string()));
        }
        let tri: [EdgeId; 3] = s.map(|x| self.edge_at(x));
        if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
            return Err(DiagramError::InvalidSite("triangle has repeated edges".to_string()));
        }
        let opp = |x: Slot| 4 * (x / 4) + (x % 4 + 2) % 4;
        for i in 0..3 {
            for outer in [opp(s[i]), opp(p[(i + 2) % 3])] {
                if tri.contains(&self.edge_at(outer)) {
                    return Err(DiagramError::InvalidSite("triangle edges reappear outside".to_string()));
                }
            }
        }
        if let Some(b) = self.basepoint() {
            if tri.contains(&b) {
                return Err(DiagramError::CrossesBasepoint);
            }
        }
        // Strand i runs along tri[i] from crossing xs[i] (slot s[i]) to
        // xs[i+1] (slot p[i]); count its a->c passages.
        let ac = |x: Slot| x % 2 == 0;
        let mut counts = [0; 3];
        for i in 0..3 {
            counts[i] = ac(s[i]) as u8 + ac(p[i]) as u8;
        }
        let mut sorted = counts;
        sorted.sort();
        if sorted != [0, 1, 2] {
            return Err(DiagramError::InvalidSite("triangle strands do not admit a third move".to_string()));
        }
        let old = self.crossings();
        let mut crossings = old.to_vec();
        let at = |x: Slot| old[(x / 4) as usize][(x % 4) as usize];
        let mut set = |x: Slot, v: EdgeId| crossings[(x / 4) as usize][(x % 4) as usize] = v;
        for i in 0..3 {
            let prev = (i + 2) % 3;
            set(s[i], at(opp(p[i])));
            set(opp(s[i]), tri[i]);
            set(p[prev], at(opp(s[prev])));
            set(opp(p[prev]), tri[prev]);
        }
        let mut hint = BTreeMap::new();
        for x in 0..4 * old.len() as Slot {
            if self.is_outgoing(x) {
                hint.insert(crossings[(x / 4) as usize][(x % 4) as usize], x);
            }
        }
        LinkDiagram::rebuild_oriented(
            crossings,
            self.decorations().to_vec(),
            self.basepoint(),
            self.loops().to_vec(),
            &hint,
        )
    }

    /// All `(edge, left)` sites whose face is a triangle admitting a third move.
    pub fn r3_sites(&self) -> Vec<(EdgeId, bool)> {
        let mut out = Vec::new();
        let mut seen = Vec::new();
        let faces = self.faces();
        for s in 0..4 * self.crossing_count() as Slot {
            if !self.is_outgoing(s) {
                continue;
            }
            let e = self.edge_at(s);
            for left in [false, true] {
                let dart = if left { self.partner(s) } else { s };
                let f = self.face_of_dart(&faces, dart);
                if faces[f].len() == 3 && !seen.contains(&f) && self.r3(e, left).is_ok() {
                    seen.push(f);
                    out.push((e, left));
                }
            }
        }
        out
    }

    /// All `(first, second, left)` pairs of distinct edges sharing a face.
    pub fn r2_sites(&self) -> Vec<(EdgeId, EdgeId, bool)> {
        let mut out = Vec::new();
        let faces = self.faces();
        for s in 0..4 * self.crossing_count() as Slot {
            if !self.is_outgoing(s) {
                continue;
            }
            let e = self.edge_at(s);
            for left in [false, true] {
                let dart = if left { self.partner(s) } else { s };
                let f = self.face_of_dart(&faces, dart);
                for &d in &faces[f] {
                    let g = self.edge_at(d);
                    if g != e && !out.iter().any(|&(a, b, l)| a == e && b == g && l == left) {
                        out.push((e, g, left));
                    }
                }
            }
        }
        out
    }
}
