//! Complete resolutions and resolution configurations.
//!
//! A circle of a complete resolution is stored as the cyclic sequence of
//! *passes* it makes through crossings. A resolution configuration keeps, for
//! every starting circle, the cyclic sequence of arc endpoints (*marks*) met
//! while traversing it, each with the side (left/right of the traversal) on
//! which its arc leaves. This rotation data determines every connected piece
//! of the configuration up to isotopy of `S^2`.
//!
//! Every circle piece between two consecutive marks (a *segment*) carries a
//! tag: the smallest edge id of the diagram lying on it. Segments survive
//! surgery unchanged, so the smallest tag on a circle (its *key*) identifies
//! it among the circles of any resolution of the same diagram. Circles are
//! always listed in increasing key order, which is also the order of
//! [`resolve`].

use crate::diagram::{EdgeId, LinkDiagram, Slot, UnionFind};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

/// A subset of crossings as a bitmask (bit `c` set iff crossing `c` is in it).
pub type CrossingSet = u64;

/// One passage of a resolution circle through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pass {
    /// Crossing index.
    pub crossing: u32,
    /// Slot through which the circle enters the crossing.
    pub entry: Slot,
    /// Slot through which it leaves.
    pub exit: Slot,
}

/// A circle of a complete resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedCircle {
    /// Passes in traversal order; empty for a crossingless component.
    pub passes: Vec<Pass>,
    /// Smallest edge id on the circle.
    pub tag: EdgeId,
}

/// The set `Z(D_u)` of circles of a complete resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    /// The resolved crossings (1-resolutions).
    pub u: CrossingSet,
    /// Circles ordered by tag.
    pub circles: Vec<ResolvedCircle>,
    circle_of_slot: Vec<u32>,
    basepoint_circle: Option<usize>,
}

impl Resolution {
    /// Number of circles.
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    /// Whether the resolution has no circles (only for the empty diagram).
    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Index of the circle through slot `s`.
    pub fn circle_of_slot(&self, s: Slot) -> usize {
        self.circle_of_slot[s as usize] as usize
    }

    /// Index of the circle carrying the basepoint, if the diagram has one.
    pub fn basepoint_circle(&self) -> Option<usize> {
        self.basepoint_circle
    }
}

/// Resolves every crossing in `u` by its 1-resolution and the rest by the
/// 0-resolution.
pub fn resolve(d: &LinkDiagram, u: CrossingSet) -> Resolution {
    let n = d.crossing_count();
    let total = 4 * n;
    let mut visited = vec![false; total];
    let mut raw: Vec<ResolvedCircle> = Vec::new();
    for start in 0..total {
        if visited[start] {
            continue;
        }
        let mut passes = Vec::new();
        let mut tag = EdgeId::MAX;
        let mut s = start as Slot;
        loop {
            visited[s as usize] = true;
            tag = tag.min(d.edge_at(s));
            let entry = d.partner(s);
            let c = entry / 4;
            let exit = LinkDiagram::smoothing_partner(entry, (u >> c) & 1 == 1);
            visited[entry as usize] = true;
            passes.push(Pass { crossing: c, entry, exit });
            s = exit;
            if s as usize == start {
                break;
            }
        }
        raw.push(ResolvedCircle { passes, tag });
    }
    for &l in d.loops() {
        raw.push(ResolvedCircle { passes: Vec::new(), tag: l });
    }
    raw.sort_by_key(|c| c.tag);
    let mut circle_of_slot = vec![0u32; total];
    for (i, c) in raw.iter().enumerate() {
        for p in &c.passes {
            circle_of_slot[p.entry as usize] = i as u32;
            circle_of_slot[p.exit as usize] = i as u32;
        }
    }
    let basepoint_circle = d.basepoint().map(|b| match d.slot_of_edge(b) {
        Some(s) => circle_of_slot[s as usize] as usize,
        None => raw.iter().position(|c| c.tag == b).expect("basepoint is an edge"),
    });
    Resolution { u, circles: raw, circle_of_slot, basepoint_circle }
}

/// Side of a circle (relative to its traversal) on which an arc leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Left of the traversal direction.
    Left,
    /// Right of the traversal direction.
    Right,
}

impl Side {
    /// The other side.
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// An endpoint of a surgery arc on a starting circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mark {
    /// Arc index.
    pub arc: u32,
    /// Whether this is the head (`true`) or tail of the oriented arc.
    pub head: bool,
    /// Side of the circle on which the arc lies.
    pub side: Side,
}

impl Mark {
    /// Global mark id `2 * arc + head`.
    pub fn id(&self) -> usize {
        2 * self.arc as usize + self.head as usize
    }
}

/// A starting circle of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigCircle {
    /// Arc endpoints in traversal order.
    pub marks: Vec<Mark>,
    /// `segs[i]` tags the segment from `marks[i]` to the next mark.
    pub segs: Vec<u32>,
    /// Key of the circle: its tag when passive, else the smallest segment tag.
    pub key: u32,
}

impl ConfigCircle {
    fn passive(key: u32) -> Self {
        ConfigCircle { marks: Vec::new(), segs: Vec::new(), key }
    }

    fn from_marks(marks: Vec<Mark>, segs: Vec<u32>) -> Self {
        let key = segs.iter().copied().min().expect("active circle has segments");
        ConfigCircle { marks, segs, key }
    }

    /// Whether no arc touches this circle.
    pub fn is_passive(&self) -> bool {
        self.marks.is_empty()
    }
}

/// An oriented resolution configuration: starting circles with arc endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    circles: Vec<ConfigCircle>,
    arcs: usize,
}

/// Location of a mark: `(circle, position)`.
type Loc = (usize, usize);

/// Which edge of the band attached along an arc a port lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BandSide {
    Left,
    Right,
}

/// Result of performing surgery along all arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surgery {
    /// The dual configuration: ending circles with dual arc endpoints.
    pub dual: Configuration,
    /// For every mark id, the ending circle containing the segment that
    /// starts at that mark.
    pub seg_circle: Vec<u32>,
}

impl Configuration {
    /// Builds a configuration from explicit circles; circles are re-sorted by key.
    ///
    /// Every arc index below `arcs` must occur as exactly one tail and one head.
    pub fn new(mut circles: Vec<ConfigCircle>, arcs: usize) -> Result<Self, String> {
        let mut seen = vec![0u8; 2 * arcs];
        for c in &circles {
            if c.marks.len() != c.segs.len() {
                return Err("every mark needs a segment tag".into());
            }
            for m in &c.marks {
                if m.arc as usize >= arcs {
                    return Err(format!("arc {} out of range", m.arc));
                }
                seen[m.id()] += 1;
            }
        }
        if seen.iter().any(|&k| k != 1) {
            return Err("every arc needs exactly one tail and one head".into());
        }
        circles.sort_by_key(|c| c.key);
        Ok(Configuration { circles, arcs })
    }

    /// Starting circles in key order.
    pub fn circles(&self) -> &[ConfigCircle] {
        &self.circles
    }

    /// Index (number of arcs).
    pub fn index(&self) -> usize {
        self.arcs
    }

    /// Number of starting circles.
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Mark locations indexed by mark id.
    fn locations(&self) -> Vec<Loc> {
        let mut loc = vec![(0, 0); 2 * self.arcs];
        for (ci, c) in self.circles.iter().enumerate() {
            for (pi, m) in c.marks.iter().enumerate() {
                loc[m.id()] = (ci, pi);
            }
        }
        loc
    }

    /// Circle carrying each mark id.
    pub fn mark_circles(&self) -> Vec<usize> {
        self.locations().into_iter().map(|(c, _)| c).collect()
    }

    /// Mark record for a mark id.
    pub fn mark(&self, id: usize) -> Mark {
        let (c, p) = self.locations()[id];
        self.circles[c].marks[p]
    }

    /// The mirror image: every side is exchanged.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.circles {
            for m in &mut c.marks {
                m.side = m.side.flip();
            }
        }
        out
    }

    /// The reverse: every arc orientation is flipped.
    pub fn reverse(&self) -> Self {
        self.reorient(|_| true)
    }

    /// Flips the orientation of each arc `a` with `flip(a)`.
    pub fn reorient(&self, flip: impl Fn(usize) -> bool) -> Self {
        let mut out = self.clone();
        for c in &mut out.circles {
            for m in &mut c.marks {
                if flip(m.arc as usize) {
                    m.head = !m.head;
                }
            }
        }
        out
    }

    /// Same configuration with circle `i` described in the opposite direction.
    pub fn retraverse(&self, i: usize) -> Self {
        let mut out = self.clone();
        let c = &mut out.circles[i];
        let k = c.marks.len();
        if k > 0 {
            // Traversed backwards the segment after mark j ends at mark j, so
            // mark j is now followed by the old segment of mark j - 1.
            let marks: Vec<Mark> = (0..k)
                .rev()
                .map(|j| {
                    let m = c.marks[j];
                    Mark { side: m.side.flip(), ..m }
                })
                .collect();
            let segs: Vec<u32> = (0..k).rev().map(|j| c.segs[(j + k - 1) % k]).collect();
            c.marks = marks;
            c.segs = segs;
        }
        out
    }

    /// Same configuration with the cyclic word of circle `i` rotated by `r`.
    pub fn rotate(&self, i: usize, r: usize) -> Self {
        let mut out = self.clone();
        let c = &mut out.circles[i];
        let k = c.marks.len();
        if k > 0 {
            c.marks.rotate_left(r % k);
            c.segs.rotate_left(r % k);
        }
        out
    }

    /// Adds passive circles with the given keys.
    pub fn with_passive(&self, keys: &[u32]) -> Self {
        let mut circles = self.circles.clone();
        circles.extend(keys.iter().map(|&k| ConfigCircle::passive(k)));
        Configuration::new(circles, self.arcs).expect("adding passive circles keeps validity")
    }

    /// Indices of passive starting circles.
    pub fn passive_circles(&self) -> Vec<usize> {
        (0..self.circles.len()).filter(|&i| self.circles[i].is_passive()).collect()
    }

    /// Connected components of the circles-and-arcs graph (circle indices,
    /// sorted); passive circles form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.circles.len());
        let loc = self.locations();
        for a in 0..self.arcs {
            uf.union(loc[2 * a].0, loc[2 * a + 1].0);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.circles.len() {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Splits into connected components (each a configuration with arcs
    /// renumbered) and returns them with the original circle indices.
    pub fn decompose(&self) -> Vec<(Configuration, Vec<usize>)> {
        let mut out = Vec::new();
        for comp in self.components() {
            let mut arc_map: BTreeMap<u32, u32> = BTreeMap::new();
            for &ci in &comp {
                for m in &self.circles[ci].marks {
                    let next = arc_map.len() as u32;
                    arc_map.entry(m.arc).or_insert(next);
                }
            }
            let circles = comp
                .iter()
                .map(|&ci| {
                    let c = &self.circles[ci];
                    let marks = c.marks.iter().map(|m| Mark { arc: arc_map[&m.arc], ..*m }).collect();
                    ConfigCircle { marks, segs: c.segs.clone(), key: c.key }
                })
                .collect();
            let cfg = Configuration::new(circles, arc_map.len()).expect("component is valid");
            out.push((cfg, comp));
        }
        out
    }

    /// Performs embedded surgery along every arc.
    ///
    /// Each arc is thickened to a band; a port `(mark, In|Out)` is the circle
    /// point just before/after the mark. With the arc pointing north, the
    /// ports are attached to the west (left) or east (right) band edge. The
    /// dual arc is the arc rotated a quarter turn counterclockwise, so it runs
    /// from the right band edge to the left band edge.
    pub fn surgery(&self) -> Surgery {
        let loc = self.locations();
        let nm = 2 * self.arcs;
        let mark_at = |id: usize| {
            let (c, p) = loc[id];
            self.circles[c].marks[p]
        };
        // Band side of port (id, out).
        let band_side = |id: usize, out: bool| -> BandSide {
            let m = mark_at(id);
            let left_port_is_in = match (m.head, m.side) {
                (false, Side::Left) => true,
                (false, Side::Right) => false,
                (true, Side::Left) => false,
                (true, Side::Right) => true,
            };
            if left_port_is_in != out {
                BandSide::Left
            } else {
                BandSide::Right
            }
        };
        let next_mark = |id: usize| {
            let (c, p) = loc[id];
            let k = self.circles[c].marks.len();
            self.circles[c].marks[(p + 1) % k].id()
        };
        let prev_mark = |id: usize| {
            let (c, p) = loc[id];
            let k = self.circles[c].marks.len();
            self.circles[c].marks[(p + k - 1) % k].id()
        };
        let seg_tag = |id: usize| {
            let (c, p) = loc[id];
            self.circles[c].segs[p]
        };

        let mut seg_done = vec![false; nm];
        let mut seg_circle = vec![u32::MAX; nm];
        let mut ending: Vec<(Vec<Mark>, Vec<u32>, Vec<usize>)> = Vec::new();
        for start in 0..nm {
            if seg_done[start] {
                continue;
            }
            let mut marks = Vec::new();
            let mut segs = Vec::new();
            let mut owned = Vec::new();
            // Traverse segment `start` forward, arriving at In(next).
            let mut seg = start;
            let mut port = (next_mark(start), false);
            loop {
                seg_done[seg] = true;
                owned.push(seg);
                // Cross the band edge from `port` to the matching port at the
                // other end of the same arc.
                let (id, out) = port;
                let side = band_side(id, out);
                let other = id ^ 1;
                let other_out = band_side(other, true) == side;
                let north = !mark_at(id).head; // leaving the tail end heads north
                let dual_side = match (side, north) {
                    (BandSide::Right, true) | (BandSide::Left, false) => Side::Left,
                    _ => Side::Right,
                };
                marks.push(Mark {
                    arc: (id / 2) as u32,
                    head: side == BandSide::Left,
                    side: dual_side,
                });
                // Continue along the segment attached to the far port.
                let (next_seg, arrive) = if other_out {
                    (other, (next_mark(other), false))
                } else {
                    let p = prev_mark(other);
                    (p, (p, true))
                };
                segs.push(seg_tag(next_seg));
                if next_seg == start && seg_done[next_seg] {
                    break;
                }
                seg = next_seg;
                port = arrive;
            }
            // `segs[i]` is the segment after dual mark `i`; the first segment
            // traversed (`start`) precedes the first dual mark, so rotate it
            // to the end.
            ending.push((marks, segs, owned));
        }
        let mut circles: Vec<(ConfigCircle, Vec<usize>)> = ending
            .into_iter()
            .map(|(marks, segs, owned)| (ConfigCircle::from_marks(marks, segs), owned))
            .collect();
        for c in &self.circles {
            if c.is_passive() {
                circles.push((ConfigCircle::passive(c.key), Vec::new()));
            }
        }
        circles.sort_by_key(|(c, _)| c.key);
        for (i, (_, owned)) in circles.iter().enumerate() {
            for &s in owned {
                seg_circle[s] = i as u32;
            }
        }
        let dual = Configuration { circles: circles.into_iter().map(|(c, _)| c).collect(), arcs: self.arcs };
        Surgery { dual, seg_circle }
    }

    /// The dual configuration (ending circles with rotated arcs).
    pub fn dual(&self) -> Self {
        self.surgery().dual
    }

    /// Keys of the ending circles, in order.
    pub fn ending_keys(&self) -> Vec<u32> {
        self.surgery().dual.circles.iter().map(|c| c.key).collect()
    }

    /// Textual dump: one line per circle, `circle <key>: <arc><t|h><L|R>@<seg> ...`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "arcs {}", self.arcs);
        for c in &self.circles {
            let _ = write!(s, "circle {}:", c.key);
            for (m, seg) in c.marks.iter().zip(&c.segs) {
                let _ = write!(
                    s,
                    " {}{}{}@{}",
                    m.arc,
                    if m.head { 'h' } else { 't' },
                    if m.side == Side::Left { 'L' } else { 'R' },
                    seg
                );
            }
            s.push('\n');
        }
        s
    }

    /// Parses the output of [`dump`](Self::dump). Segment tags (`@n`) may be
    /// omitted, in which case distinct tags are generated in reading order.
    pub fn parse_dump(text: &str) -> Result<Self, String> {
        let mut arcs = None;
        let mut circles = Vec::new();
        let mut auto = 1u32;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some(rest) = line.strip_prefix("arcs") {
                arcs = Some(rest.trim().parse::<usize>().map_err(|_| format!("bad arc count `{rest}`"))?);
            } else if let Some(rest) = line.strip_prefix("circle") {
                let (head, body) = rest.split_once(':').ok_or_else(|| format!("missing `:` in `{line}`"))?;
                let key: Option<u32> = match head.trim() {
                    "" => None,
                    k => Some(k.parse().map_err(|_| format!("bad circle key `{k}`"))?),
                };
                let mut marks = Vec::new();
                let mut segs = Vec::new();
                for tok in body.split_whitespace() {
                    let (m, seg) = match tok.split_once('@') {
                        Some((m, s)) => (m, Some(s.parse::<u32>().map_err(|_| format!("bad tag in `{tok}`"))?)),
                        None => (tok, None),
                    };
                    let (num, rest) = m.split_at(m.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(m.len()));
                    let arc: u32 = num.parse().map_err(|_| format!("bad arc in `{tok}`"))?;
                    let head = match rest.chars().next() {
                        Some('t') => false,
                        Some('h') => true,
                        _ => return Err(format!("expected t/h in `{tok}`")),
                    };
                    let side = match rest.chars().nth(1) {
                        Some('L') => Side::Left,
                        Some('R') => Side::Right,
                        _ => return Err(format!("expected L/R in `{tok}`")),
                    };
                    marks.push(Mark { arc, head, side });
                    segs.push(seg.unwrap_or_else(|| {
                        auto += 1;
                        auto - 1
                    }));
                }
                let c = if marks.is_empty() {
                    let k = key.unwrap_or(auto);
                    auto += 1;
                    ConfigCircle::passive(k)
                } else {
                    ConfigCircle::from_marks(marks, segs)
                };
                circles.push(c);
            } else {
                return Err(format!("unrecognized line `{line}`"));
            }
        }
        let arcs = arcs.unwrap_or_else(|| {
            circles.iter().flat_map(|c| c.marks.iter()).map(|m| m.arc as usize + 1).max().unwrap_or(0)
        });
        Configuration::new(circles, arcs)
    }

    /// A canonical description, equal for configurations that differ only by
    /// the choice of traversal directions, starting points, circle order and
    /// arc numbering (isotopy of each connected piece in `S^2`). Labels and
    /// segment tags are ignored; nesting of separate pieces is not recorded.
    pub fn canonical_form(&self) -> Vec<Vec<u32>> {
        self.canonical_form_labeled(&vec![false; self.circles.len()], None)
    }

    /// Canonical description including start labels `x` (per circle) and,
    /// when given, end labels (one flag per mark id: whether the ending
    /// circle carrying the segment after that mark is in `y`).
    pub fn canonical_form_labeled(&self, x: &[bool], seg_flags: Option<&[bool]>) -> Vec<Vec<u32>> {
        let loc = self.locations();
        let mut codes: Vec<Vec<u32>> = Vec::new();
        for comp in self.components() {
            let mut best: Option<Vec<u32>> = None;
            for &ci in &comp {
                let k = self.circles[ci].marks.len();
                if k == 0 {
                    let flag = x[ci] as u32;
                    let seg = 0;
                    best = Some(vec![u32::MAX, flag, seg]);
                    continue;
                }
                for p in 0..k {
                    let code = self.encode_from(ci, p, &loc, x, seg_flags);
                    if best.as_ref().map_or(true, |b| code < *b) {
                        best = Some(code);
                    }
                }
            }
            codes.push(best.expect("components are nonempty"));
        }
        codes.sort();
        codes
    }

    fn encode_from(
        &self,
        root_c: usize,
        root_p: usize,
        loc: &[Loc],
        x: &[bool],
        seg_flags: Option<&[bool]>,
    ) -> Vec<u32> {
        // Each newly reached circle is read starting at the mark through which
        // it was reached, in the direction that puts that mark on the left.
        let mut code = Vec::new();
        let mut arc_label: BTreeMap<u32, u32> = BTreeMap::new();
        let mut circle_seen = vec![false; self.circles.len()];
        let mut queue = vec![(root_c, root_p)];
        circle_seen[root_c] = true;
        let mut qi = 0;
        while qi < queue.len() {
            let (ci, p0) = queue[qi];
            qi += 1;
            let c = &self.circles[ci];
            let k = c.marks.len();
            let forward = c.marks[p0].side == Side::Left;
            code.push(u32::MAX - 1);
            code.push(x[ci] as u32);
            for j in 0..k {
                let p = if forward { (p0 + j) % k } else { (p0 + k - j) % k };
                let m = c.marks[p];
                let next = arc_label.len() as u32;
                let label = *arc_label.entry(m.arc).or_insert(next);
                let side_bit = (m.side == Side::Left) == forward;
                // End label of the segment that follows this mark in the
                // chosen direction.
                let seg_bit = match seg_flags {
                    Some(f) => {
                        let sp = if forward { p } else { (p + k - 1) % k };
                        f[c.marks[sp].id()] as u32
                    }
                    None => 0,
                };
                code.push(label * 8 + (m.head as u32) * 4 + side_bit as u32 * 2 + seg_bit);
                let other = loc[m.id() ^ 1];
                if !circle_seen[other.0] {
                    circle_seen[other.0] = true;
                    queue.push(other);
                }
            }
        }
        code
    }
}

/// Builds `D_u^v`: starting circles `Z(D_u)` with one oriented arc per
/// crossing of `v \ u`, arcs numbered by increasing crossing index.
pub fn configuration(d: &LinkDiagram, u: CrossingSet, v: CrossingSet) -> Result<Configuration, String> {
    if u & !v != 0 {
        return Err("u is not a subset of v".into());
    }
    let res = resolve(d, u);
    Ok(configuration_from(d, &res, v))
}

/// As [`configuration`], reusing an already computed resolution of `u`.
pub fn configuration_from(d: &LinkDiagram, res: &Resolution, v: CrossingSet) -> Configuration {
    let u = res.u;
    let extra = v & !u;
    let arc_of = |c: u32| (extra & ((1u64 << c) - 1)).count_ones();
    let decorations = d.decorations();
    let mut circles = Vec::with_capacity(res.circles.len());
    for rc in &res.circles {
        let k = rc.passes.len();
        let first = rc.passes.iter().position(|p| (extra >> p.crossing) & 1 == 1);
        let Some(first) = first else {
            circles.push(ConfigCircle::passive(rc.tag));
            continue;
        };
        let mut marks = Vec::new();
        let mut segs: Vec<u32> = Vec::new();
        for j in 0..k {
            let p = rc.passes[(first + j) % k];
            let edge = d.edge_at(p.exit);
            if (extra >> p.crossing) & 1 == 1 {
                let (ein, eout) = (p.entry % 4, p.exit % 4);
                let on_ad = ein + eout == 3 && (ein == 0 || ein == 3);
                let bit = decorations[p.crossing as usize];
                let tail = on_ad != bit;
                let side = if eout == (ein + 1) % 4 { Side::Left } else { Side::Right };
                marks.push(Mark { arc: arc_of(p.crossing), head: !tail, side });
                segs.push(edge);
            } else {
                let last = segs.last_mut().expect("first pass is a mark");
                *last = (*last).min(edge);
            }
        }
        circles.push(ConfigCircle::from_marks(marks, segs));
    }
    Configuration { circles, arcs: extra.count_ones() as usize }
}
