//! Planar link diagrams in PD notation.
//!
//! A crossing is a 4-tuple `(a, b, c, d)` of edge ids listed counterclockwise,
//! starting at the incoming end of the strand `a -> c`. The other strand runs
//! between `b` and `d`; the crossing is positive exactly when it runs `b -> d`.
//! The 0-resolution joins the slot pairs `(a, d)` and `(b, c)`, the
//! 1-resolution joins `(a, b)` and `(c, d)`. With these rules the oriented
//! smoothing of a positive crossing is its 0-resolution, and the string
//! `PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]` is the positive trefoil.
//!
//! Components that never pass through a crossing are stored as *loops*:
//! crossingless circles, each carrying a single edge id of its own.
//!
//! A diagram is immutable once built; every operation returns a new value.

mod moves;
mod parse;

pub use moves::Move;
pub use parse::parse_pd;

use alloc::format;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Identifier of an edge (an arc of the diagram between two crossings).
pub type EdgeId = u32;

/// A slot is `4 * crossing + position`, position 0..4 being `a, b, c, d`.
pub type Slot = u32;

/// Errors raised while building or modifying a diagram.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    /// The PD text could not be parsed.
    #[error("malformed PD input: {0}")]
    Malformed(String),
    /// An edge id does not occur exactly twice among the crossing slots.
    #[error("edge {edge} occurs {count} time(s); every edge must occur exactly twice")]
    EdgeMultiplicity {
        /// The offending edge id.
        edge: EdgeId,
        /// How often it occurs.
        count: usize,
    },
    /// Some connected piece of the diagram does not embed in the sphere.
    #[error("diagram is not spherical: a connected piece has V - E + F = {0}")]
    NotSpherical(i64),
    /// The decoration list does not have one bit per crossing.
    #[error("decoration list has {got} entries, but the diagram has {expected} crossings")]
    DecorationLength {
        /// Number of crossings.
        expected: usize,
        /// Number of decoration entries supplied.
        got: usize,
    },
    /// The orientation sign list does not have one entry per component.
    #[error("orientation list has {got} entries, but the diagram has {expected} components")]
    OrientationLength {
        /// Number of components.
        expected: usize,
        /// Number of signs supplied.
        got: usize,
    },
    /// The strand directions forced by the PD convention contradict each other.
    #[error("strand orientations are inconsistent along edge {0}")]
    InconsistentOrientation(EdgeId),
    /// The basepoint is not an edge of the diagram.
    #[error("basepoint {0} is not an edge of the diagram")]
    UnknownBasepoint(EdgeId),
    /// The requested Reidemeister move is not possible at the given site.
    #[error("move not supported at this site: {0}")]
    InvalidSite(String),
    /// The requested move would pass a strand across the basepoint.
    #[error("move would cross the basepoint")]
    CrossesBasepoint,
}

/// Optional data accompanying the crossings when a diagram is assembled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiagramOptions {
    /// One bit per crossing; `false` is decoration bit 0.
    pub decorations: Option<Vec<bool>>,
    /// Basepoint edge id.
    pub basepoint: Option<EdgeId>,
    /// Per-component orientation signs; `-1` reverses the default orientation.
    pub orientations: Option<Vec<i8>>,
    /// Number of crossingless unknotted components to add.
    pub loops: usize,
}

/// A validated, oriented, decorated planar link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[EdgeId; 4]>,
    decorations: Vec<bool>,
    basepoint: Option<EdgeId>,
    loops: Vec<EdgeId>,
    partner: Vec<Slot>,
    outgoing: Vec<bool>,
    positive: Vec<bool>,
    slot_component: Vec<u32>,
    loop_component: Vec<u32>,
    components: usize,
}

impl LinkDiagram {
    /// Assembles and validates a diagram from PD tuples.
    ///
    /// Decorations default to all zero. Component orientations default to the
    /// one forced by the PD convention; components passing only through
    /// `b`/`d` slots enter the lowest such slot.
    pub fn new(crossings: Vec<[EdgeId; 4]>, opts: DiagramOptions) -> Result<Self, DiagramError> {
        let n = crossings.len();
        let decorations = match opts.decorations {
            Some(d) if d.len() != n => {
                return Err(DiagramError::DecorationLength { expected: n, got: d.len() })
            }
            Some(d) => d,
            None => vec![false; n],
        };
        let mut occurrences: BTreeMap<EdgeId, Vec<Slot>> = BTreeMap::new();
        for (c, tuple) in crossings.iter().enumerate() {
            for (p, &e) in tuple.iter().enumerate() {
                occurrences.entry(e).or_default().push((4 * c + p) as Slot);
            }
        }
        let mut partner = vec![0; 4 * n];
        for (&e, slots) in &occurrences {
            if slots.len() != 2 {
                return Err(DiagramError::EdgeMultiplicity { edge: e, count: slots.len() });
            }
            partner[slots[0] as usize] = slots[1];
            partner[slots[1] as usize] = slots[0];
        }
        let next_id = occurrences.keys().next_back().map_or(1, |&m| m + 1);
        let loops: Vec<EdgeId> = (0..opts.loops as u32).map(|i| next_id + i).collect();

        let mut d = LinkDiagram {
            crossings,
            decorations,
            basepoint: opts.basepoint,
            loops,
            partner,
            outgoing: Vec::new(),
            positive: Vec::new(),
            slot_component: Vec::new(),
            loop_component: Vec::new(),
            components: 0,
        };
        d.check_spherical()?;
        d.orient(None)?;
        if let Some(signs) = opts.orientations {
            d.apply_orientation_signs(&signs)?;
        }
        if let Some(b) = d.basepoint {
            if !d.has_edge(b) {
                return Err(DiagramError::UnknownBasepoint(b));
            }
        }
        Ok(d)
    }

    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// The crossingless `k`-component unlink.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram::new(Vec::new(), DiagramOptions { loops: k, ..Default::default() })
            .expect("crossingless unlink is always valid")
    }

    /// Rebuilds internal tables; used after local surgery on the tuples.
    pub(crate) fn rebuild(
        crossings: Vec<[EdgeId; 4]>,
        decorations: Vec<bool>,
        basepoint: Option<EdgeId>,
        loops: Vec<EdgeId>,
    ) -> Result<Self, DiagramError> {
        Self::build(crossings, decorations, basepoint, loops, None)
    }

    fn build(
        crossings: Vec<[EdgeId; 4]>,
        decorations: Vec<bool>,
        basepoint: Option<EdgeId>,
        loops: Vec<EdgeId>,
        hint: Option<&BTreeMap<EdgeId, Slot>>,
    ) -> Result<Self, DiagramError> {
        let n = crossings.len();
        let mut occurrences: BTreeMap<EdgeId, Vec<Slot>> = BTreeMap::new();
        for (c, tuple) in crossings.iter().enumerate() {
            for (p, &e) in tuple.iter().enumerate() {
                occurrences.entry(e).or_default().push((4 * c + p) as Slot);
            }
        }
        let mut partner = vec![0; 4 * n];
        for (&e, slots) in &occurrences {
            if slots.len() != 2 {
                return Err(DiagramError::EdgeMultiplicity { edge: e, count: slots.len() });
            }
            partner[slots[0] as usize] = slots[1];
            partner[slots[1] as usize] = slots[0];
        }
        let mut d = LinkDiagram {
            crossings,
            decorations,
            basepoint,
            loops,
            partner,
            outgoing: Vec::new(),
            positive: Vec::new(),
            slot_component: Vec::new(),
            loop_component: Vec::new(),
            components: 0,
        };
        d.check_spherical()?;
        d.orient(hint)?;
        Ok(d)
    }

    /// Rebuilds with prescribed outgoing flags (orientation kept through a move).
    pub(crate) fn rebuild_oriented(
        crossings: Vec<[EdgeId; 4]>,
        decorations: Vec<bool>,
        basepoint: Option<EdgeId>,
        loops: Vec<EdgeId>,
        hint: &BTreeMap<EdgeId, Slot>,
    ) -> Result<Self, DiagramError> {
        Self::build(crossings, decorations, basepoint, loops, Some(hint))
    }

    fn has_edge(&self, e: EdgeId) -> bool {
        self.loops.contains(&e) || self.crossings.iter().any(|t| t.contains(&e))
    }

    /// Number of crossings.
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// The PD tuples (after orientation normalization).
    pub fn crossings(&self) -> &[[EdgeId; 4]] {
        &self.crossings
    }

    /// Decoration bits, one per crossing.
    pub fn decorations(&self) -> &[bool] {
        &self.decorations
    }

    /// Basepoint edge, if any.
    pub fn basepoint(&self) -> Option<EdgeId> {
        self.basepoint
    }

    /// Edge ids of the crossingless components.
    pub fn loops(&self) -> &[EdgeId] {
        &self.loops
    }

    /// Number of link components `l`.
    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Number of positive crossings.
    pub fn n_plus(&self) -> usize {
        self.positive.iter().filter(|&&p| p).count()
    }

    /// Number of negative crossings.
    pub fn n_minus(&self) -> usize {
        self.positive.len() - self.n_plus()
    }

    /// Writhe `n_+ - n_-`.
    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// Sign of crossing `c`: `+1` or `-1`.
    pub fn sign(&self, c: usize) -> i8 {
        if self.positive[c] {
            1
        } else {
            -1
        }
    }

    /// The slot at the other end of the edge leaving through `s`.
    pub fn partner(&self, s: Slot) -> Slot {
        self.partner[s as usize]
    }

    /// Edge id occupying slot `s`.
    pub fn edge_at(&self, s: Slot) -> EdgeId {
        self.crossings[(s / 4) as usize][(s % 4) as usize]
    }

    /// Whether the link orientation leaves the crossing through slot `s`.
    pub fn is_outgoing(&self, s: Slot) -> bool {
        self.outgoing[s as usize]
    }

    /// Component index of the strand occupying slot `s`.
    pub fn component_of_slot(&self, s: Slot) -> usize {
        self.slot_component[s as usize] as usize
    }

    /// Component index of loop `i`.
    pub fn component_of_loop(&self, i: usize) -> usize {
        self.loop_component[i] as usize
    }

    /// Component index of an edge.
    pub fn component_of_edge(&self, e: EdgeId) -> Option<usize> {
        if let Some(i) = self.loops.iter().position(|&l| l == e) {
            return Some(self.component_of_loop(i));
        }
        self.slot_of_edge(e).map(|s| self.component_of_slot(s))
    }

    /// Some slot occupied by edge `e`.
    pub fn slot_of_edge(&self, e: EdgeId) -> Option<Slot> {
        for (c, t) in self.crossings.iter().enumerate() {
            for (p, &x) in t.iter().enumerate() {
                if x == e {
                    return Some((4 * c + p) as Slot);
                }
            }
        }
        None
    }

    /// Largest edge id in use (0 for the empty diagram).
    pub fn max_edge(&self) -> EdgeId {
        let m = self.crossings.iter().flat_map(|t| t.iter().copied()).max().unwrap_or(0);
        m.max(self.loops.iter().copied().max().unwrap_or(0))
    }

    /// Returns a copy carrying different decorations.
    pub fn with_decorations(&self, decorations: Vec<bool>) -> Result<Self, DiagramError> {
        if decorations.len() != self.crossings.len() {
            return Err(DiagramError::DecorationLength {
                expected: self.crossings.len(),
                got: decorations.len(),
            });
        }
        let mut d = self.clone();
        d.decorations = decorations;
        Ok(d)
    }

    /// Returns a copy with the decoration given by the bits of `mask`.
    pub fn with_decoration_mask(&self, mask: u64) -> Self {
        let mut d = self.clone();
        for (c, bit) in d.decorations.iter_mut().enumerate() {
            *bit = (mask >> c) & 1 == 1;
        }
        d
    }

    /// Returns a copy with a different basepoint.
    pub fn with_basepoint(&self, basepoint: Option<EdgeId>) -> Result<Self, DiagramError> {
        if let Some(b) = basepoint {
            if !self.has_edge(b) {
                return Err(DiagramError::UnknownBasepoint(b));
            }
        }
        let mut d = self.clone();
        d.basepoint = basepoint;
        Ok(d)
    }

    /// Re-orients components: entry `i` equal to `-1` reverses component `i`.
    pub fn with_orientation_signs(&self, signs: &[i8]) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.apply_orientation_signs(signs)?;
        Ok(d)
    }

    /// Mirror image: the roles of the two strands are exchanged at every crossing.
    ///
    /// The tuple is rotated by one slot so that it starts at the incoming end
    /// of the former `b`/`d` strand; both smoothing pairs are exchanged by the
    /// rotation, which matches the exchange of 0- and 1-resolutions under
    /// mirroring, and the decoration bit is kept.
    pub fn mirror(&self) -> Self {
        let n = self.crossings.len();
        let mut crossings = self.crossings.clone();
        let mut shift = vec![0usize; n];
        for (c, t) in crossings.iter_mut().enumerate() {
            let b_in = !self.outgoing[4 * c + 1];
            shift[c] = if b_in { 1 } else { 3 };
            let k = shift[c];
            *t = [t[k % 4], t[(k + 1) % 4], t[(k + 2) % 4], t[(k + 3) % 4]];
        }
        let mut hint = BTreeMap::new();
        for s in 0..4 * n {
            if self.outgoing[s] {
                let c = s / 4;
                let new_p = (s % 4 + 4 - shift[c]) % 4;
                hint.insert(self.edge_at(s as Slot), (4 * c + new_p) as Slot);
            }
        }
        let mut d = LinkDiagram::rebuild_oriented(
            crossings,
            self.decorations.clone(),
            self.basepoint,
            self.loops.clone(),
            &hint,
        )
        .expect("mirror of a valid diagram is valid");
        d.loop_component = self.loop_component.clone();
        d
    }

    /// The diagram obtained by replacing crossing `c` with its 0- or
    /// 1-resolution.
    ///
    /// The two edges joined by each smoothing arc merge into one edge that
    /// keeps the smaller id; a merged edge meeting no other crossing becomes
    /// a crossingless component with that id. Crossings after `c` shift down
    /// by one index, and each keeps its geometric decoration arc. Strands
    /// keep their direction wherever the smoothing allows it; components
    /// forced to change direction are oriented from their lowest slot.
    pub fn smoothing(&self, c: usize, one: bool) -> Result<Self, DiagramError> {
        let n = self.crossings.len();
        if c >= n {
            return Err(DiagramError::InvalidSite(format!("no crossing {c}")));
        }
        let mut uf = self.smoothing_constraints(c, one);
        let mut root_value: BTreeMap<usize, bool> = BTreeMap::new();
        let mut out = vec![false; 4 * n];
        for (s, o) in out.iter_mut().enumerate() {
            let (r, p) = uf.find(s);
            *o = *root_value.entry(r).or_insert(self.outgoing[s] ^ p) ^ p;
        }
        self.smoothing_oriented(c, one, &out)
    }

    /// Parity constraints on "slot is outgoing" for the smoothing at `c`:
    /// the two ends of an edge differ, strands pass straight through the
    /// other crossings, and each smoothing arc at `c` is traversed through.
    pub(crate) fn smoothing_constraints(&self, c: usize, one: bool) -> ParityUnionFind {
        let n = self.crossings.len();
        let mut uf = ParityUnionFind::new(4 * n);
        for s in 0..4 * n {
            uf.differ(s, self.partner[s] as usize);
            if s / 4 != c {
                uf.differ(s, 4 * (s / 4) + (s % 4 + 2) % 4);
            } else {
                uf.differ(s, Self::smoothing_partner(s as Slot, one) as usize);
            }
        }
        uf
    }

    /// [`LinkDiagram::smoothing`] with the strand directions prescribed by
    /// `outgoing`, indexed by the slots of `self` (entries at `c` are used
    /// only to orient crossingless components).
    pub fn smoothing_oriented(&self, c: usize, one: bool, outgoing: &[bool]) -> Result<Self, DiagramError> {
        let n = self.crossings.len();
        if c >= n {
            return Err(DiagramError::InvalidSite(format!("no crossing {c}")));
        }
        if outgoing.len() != 4 * n {
            return Err(DiagramError::InvalidSite(format!("expected {} slot directions", 4 * n)));
        }
        let t = self.crossings[c];
        let pairs: [(usize, usize); 2] = if one { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
        let mut rep: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        let find = |rep: &BTreeMap<EdgeId, EdgeId>, mut e: EdgeId| {
            while let Some(&r) = rep.get(&e) {
                if r == e {
                    break;
                }
                e = r;
            }
            e
        };
        for (p, q) in pairs {
            let (a, b) = (find(&rep, t[p]), find(&rep, t[q]));
            let (lo, hi) = (a.min(b), a.max(b));
            rep.insert(hi, lo);
            rep.insert(lo, lo);
        }
        let mut crossings = Vec::with_capacity(n - 1);
        let mut decorations = Vec::with_capacity(n - 1);
        let mut hint: BTreeMap<EdgeId, Slot> = BTreeMap::new();
        for (k, tuple) in self.crossings.iter().enumerate() {
            if k == c {
                continue;
            }
            let nk = crossings.len();
            // Slot a must be incoming; otherwise rotate by two, which keeps
            // both smoothing pairs, and flip the bit to keep the same arc.
            let rotate = outgoing[4 * k];
            let mut mapped = tuple.map(|e| find(&rep, e));
            if rotate {
                mapped = [mapped[2], mapped[3], mapped[0], mapped[1]];
            }
            for p in 0..4 {
                if outgoing[4 * k + p] {
                    let np = if rotate { (p + 2) % 4 } else { p };
                    hint.insert(find(&rep, tuple[p]), (4 * nk + np) as Slot);
                }
            }
            crossings.push(mapped);
            decorations.push(self.decorations[k] ^ rotate);
        }
        let mut loops = self.loops.clone();
        let mut merged: Vec<EdgeId> = t.iter().map(|&e| find(&rep, e)).collect();
        merged.sort_unstable();
        merged.dedup();
        for e in merged {
            if !crossings.iter().any(|tuple| tuple.contains(&e)) {
                loops.push(e);
            }
        }
        loops.sort_unstable();
        let basepoint = self.basepoint.map(|b| find(&rep, b));
        LinkDiagram::rebuild_oriented(crossings, decorations, basepoint, loops, &hint)
    }

    /// The diagram with one more crossingless component, given the next
    /// unused edge id.
    pub fn with_extra_loop(&self) -> Self {
        let mut loops = self.loops.clone();
        loops.push(self.max_edge() + 1);
        let mut d = LinkDiagram::rebuild(self.crossings.clone(), self.decorations.clone(), self.basepoint, loops)
            .expect("adding a loop keeps validity");
        d.outgoing = self.outgoing.clone();
        d.positive = self.positive.clone();
        d
    }

    /// The diagram with the crossingless component `id` removed.
    pub fn without_loop(&self, id: EdgeId) -> Result<Self, DiagramError> {
        if !self.loops.contains(&id) {
            return Err(DiagramError::InvalidSite(format!("{id} is not a crossingless component")));
        }
        if self.basepoint == Some(id) {
            return Err(DiagramError::CrossesBasepoint);
        }
        let loops = self.loops.iter().copied().filter(|&l| l != id).collect();
        let mut d = LinkDiagram::rebuild(self.crossings.clone(), self.decorations.clone(), self.basepoint, loops)?;
        d.outgoing = self.outgoing.clone();
        d.positive = self.positive.clone();
        Ok(d)
    }

    fn check_spherical(&self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let mut uf = UnionFind::new(n);
        for s in 0..4 * n {
            uf.union(s / 4, self.partner[s] as usize / 4);
        }
        let faces = self.faces();
        let mut v: BTreeMap<usize, i64> = BTreeMap::new();
        let mut e: BTreeMap<usize, i64> = BTreeMap::new();
        let mut f: BTreeMap<usize, i64> = BTreeMap::new();
        for c in 0..n {
            *v.entry(uf.find(c)).or_default() += 1;
            *e.entry(uf.find(c)).or_default() += 2;
        }
        for face in &faces {
            *f.entry(uf.find(face[0] as usize / 4)).or_default() += 1;
        }
        for (root, vv) in &v {
            let chi = vv - e[root] + f.get(root).copied().unwrap_or(0);
            if chi != 2 {
                return Err(DiagramError::NotSpherical(chi));
            }
        }
        Ok(())
    }

    /// Faces of the diagram as cyclic lists of darts.
    ///
    /// A dart is a slot `s`, read as "leave the crossing through `s`"; the face
    /// listing a dart lies on the right of its edge traversed in that sense.
    pub fn faces(&self) -> Vec<Vec<Slot>> {
        let total = self.partner.len();
        let mut seen = vec![false; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                face.push(s as Slot);
                let arrive = self.partner[s] as usize;
                s = 4 * (arrive / 4) + (arrive % 4 + 1) % 4;
            }
            faces.push(face);
        }
        faces
    }

    /// Index of the face on the right of dart `s` within [`faces`](Self::faces).
    pub fn face_of_dart(&self, faces: &[Vec<Slot>], s: Slot) -> usize {
        faces.iter().position(|f| f.contains(&s)).expect("every dart lies on a face")
    }

    /// Determines the outgoing flags and component labels.
    fn orient(&mut self, hint: Option<&BTreeMap<EdgeId, Slot>>) -> Result<(), DiagramError> {
        let total = self.partner.len();
        let mut out: Vec<Option<bool>> = vec![None; total];
        let mut queue: Vec<usize> = Vec::new();
        let set = |out: &mut Vec<Option<bool>>, queue: &mut Vec<usize>, s: usize, v: bool, e: EdgeId| {
            match out[s] {
                Some(x) if x != v => Err(DiagramError::InconsistentOrientation(e)),
                Some(_) => Ok(()),
                None => {
                    out[s] = Some(v);
                    queue.push(s);
                    Ok(())
                }
            }
        };
        for c in 0..total / 4 {
            set(&mut out, &mut queue, 4 * c, false, self.crossings[c][0])?;
            set(&mut out, &mut queue, 4 * c + 2, true, self.crossings[c][2])?;
        }
        if let Some(hint) = hint {
            for s in 0..total {
                if out[s].is_some() {
                    continue;
                }
                let e = self.edge_at(s as Slot);
                if let Some(&tail) = hint.get(&e) {
                    set(&mut out, &mut queue, s, tail as usize == s, e)?;
                }
            }
        }
        let mut next_free = 0usize;
        loop {
            while let Some(s) = queue.pop() {
                let v = out[s].unwrap();
                let e = self.edge_at(s as Slot);
                let p = self.partner[s] as usize;
                set(&mut out, &mut queue, p, !v, e)?;
                let across = 4 * (s / 4) + (s % 4 + 2) % 4;
                set(&mut out, &mut queue, across, !v, e)?;
            }
            while next_free < total && out[next_free].is_some() {
                next_free += 1;
            }
            if next_free == total {
                break;
            }
            let e = self.edge_at(next_free as Slot);
            set(&mut out, &mut queue, next_free, false, e)?;
        }
        self.outgoing = out.into_iter().map(|v| v.unwrap()).collect();
        self.positive = (0..total / 4).map(|c| self.outgoing[4 * c + 3]).collect();

        // Components: edges glue slots, strands glue opposite slots.
        let mut uf = UnionFind::new(total);
        for s in 0..total {
            uf.union(s, self.partner[s] as usize);
            uf.union(s, 4 * (s / 4) + (s % 4 + 2) % 4);
        }
        // Order components by their smallest edge id.
        let mut root_min: BTreeMap<usize, EdgeId> = BTreeMap::new();
        for s in 0..total {
            let e = self.edge_at(s as Slot);
            let r = uf.find(s);
            let m = root_min.entry(r).or_insert(e);
            if e < *m {
                *m = e;
            }
        }
        let mut order: Vec<(EdgeId, usize)> = root_min.iter().map(|(&r, &e)| (e, r)).collect();
        order.sort();
        let index: BTreeMap<usize, u32> =
            order.iter().enumerate().map(|(i, &(_, r))| (r, i as u32)).collect();
        self.slot_component = (0..total).map(|s| index[&uf.find(s)]).collect();
        let k = order.len();
        self.loop_component = (0..self.loops.len()).map(|i| (k + i) as u32).collect();
        self.components = k + self.loops.len();
        Ok(())
    }

    fn apply_orientation_signs(&mut self, signs: &[i8]) -> Result<(), DiagramError> {
        if signs.len() != self.components {
            return Err(DiagramError::OrientationLength { expected: self.components, got: signs.len() });
        }
        let total = self.partner.len();
        let mut crossings = self.crossings.clone();
        let mut decorations = self.decorations.clone();
        let mut rotated = vec![false; total / 4];
        for c in 0..total / 4 {
            let comp = self.slot_component[4 * c] as usize;
            if signs[comp] < 0 {
                let t = crossings[c];
                crossings[c] = [t[2], t[3], t[0], t[1]];
                rotated[c] = true;
                // The rotation by two keeps both smoothing pairs but swaps which
                // one is called (a, d); flip the bit to keep the geometric arc.
                decorations[c] = !decorations[c];
            }
        }
        let mut hint = BTreeMap::new();
        for s_old in 0..total {
            let comp = self.slot_component[s_old] as usize;
            let out = self.outgoing[s_old] != (signs[comp] < 0);
            if out {
                let c = s_old / 4;
                let p = if rotated[c] { (s_old % 4 + 2) % 4 } else { s_old % 4 };
                hint.insert(self.edge_at(s_old as Slot), (4 * c + p) as Slot);
            }
        }
        let mut rebuilt = LinkDiagram::rebuild_oriented(
            crossings,
            decorations,
            self.basepoint,
            self.loops.clone(),
            &hint,
        )?;
        rebuilt.loop_component = self.loop_component.clone();
        *self = rebuilt;
        Ok(())
    }

    /// Circles of the complete resolution `u` as slot-pair sequences is done
    /// in [`crate::planar`]; this helper gives the slot joined to `s` at
    /// crossing `s / 4` by the 0- or 1-resolution.
    #[inline]
    pub fn smoothing_partner(s: Slot, one: bool) -> Slot {
        let c = s / 4;
        let p = s % 4;
        let q = if one { [1, 0, 3, 2][p as usize] } else { [3, 2, 1, 0][p as usize] };
        4 * c + q
    }
}

/// Union-find over boolean unknowns with "differ" constraints:
/// `value(s) = value(root) xor parity(s)`.
#[derive(Debug, Clone)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    consistent: bool,
}

impl ParityUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![false; n], consistent: true }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // Compress from the node nearest the root outward.
        let mut acc = false;
        for &y in path.iter().rev() {
            acc ^= self.parity[y];
            self.parity[y] = acc;
            self.parent[y] = r;
        }
        (r, if x == r { false } else { self.parity[x] })
    }

    /// Requires `value(a) != value(b)`; returns false on contradiction.
    pub(crate) fn differ(&mut self, a: usize, b: usize) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        let ok = if ra == rb {
            pa != pb
        } else {
            self.parent[ra] = rb;
            self.parity[ra] = !(pa ^ pb);
            true
        };
        self.consistent &= ok;
        ok
    }

    /// Whether every constraint so far was satisfiable.
    pub(crate) fn is_consistent(&self) -> bool {
        self.consistent
    }
}

/// Minimal union-find used for component bookkeeping.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
