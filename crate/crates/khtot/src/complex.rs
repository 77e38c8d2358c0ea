//! The total complex `C_tot` over `F2[H, W]` and its specializations.
//!
//! Generators are Khovanov generators `(u, x)`: a vertex `u` of the cube of
//! resolutions and a square-free monomial `x` in the circles of `D_u`, stored
//! as a bitmask over [`resolve`] order. They are listed by `(|u|, u, x)`.
//! The entry from `(u, x)` to `(v, y)`, `i = |v \ u| >= 1`, is
//! `c_d(D_u^v, x, y) W^{i-1} + c_h(D_u^v, x, y) H W^{i-1}`.

use crate::algebra::{AlgebraError, Grading, Homology, Mono, Poly, Ring, SparseComplex};
use crate::contrib::{Analysis, Conventions};
use crate::diagram::{DiagramError, EdgeId, LinkDiagram};
use crate::planar::{configuration_from, resolve, CrossingSet, Resolution};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Most crossings the dense cube enumeration accepts.
pub const MAX_CROSSINGS: usize = 24;

/// A Khovanov generator with its bigrading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    /// Cube vertex.
    pub u: CrossingSet,
    /// Monomial as a bitmask over the circles of `D_u`.
    pub x: u64,
    /// Homological grading.
    pub gr_h: i32,
    /// Quantum grading.
    pub gr_q: i32,
}

impl Generator {
    /// `gr_h - gr_q / 2`, doubled to stay integral.
    pub fn gr_delta_doubled(&self) -> i32 {
        2 * self.gr_h - self.gr_q
    }
}

/// Errors raised by complex construction and cobordism maps.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    /// The diagram has too many crossings for the cube enumeration.
    #[error("{0} crossings exceed the supported maximum of {MAX_CROSSINGS}")]
    TooLarge(usize),
    /// Invalid specialization request.
    #[error("invalid specialization: {0}")]
    InvalidSpecialization(&'static str),
    /// The operation requires a basepoint.
    #[error("the diagram has no basepoint")]
    NoBasepoint,
    /// The saddle cannot be oriented coherently.
    #[error("the two resolutions cannot be oriented coherently")]
    IncoherentSaddle,
    /// Error from the diagram layer.
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    /// Error from the linear algebra layer.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// Malformed import.
    #[error("malformed complex: {0}")]
    Malformed(String),
}

/// Substitution for `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HSub {
    /// `H = 0`.
    Zero,
    /// `H = 1`.
    One,
    /// Keep `H`.
    Keep,
    /// Invert `H`.
    Invert,
}

/// Substitution for `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WSub {
    /// `W = 0`.
    Zero,
    /// `W = 1`.
    One,
    /// Keep `W`.
    Keep,
}

/// The named specializations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    /// `H = W = 0`: Khovanov homology over `F2`.
    Kh,
    /// `W = 0`: Bar-Natan homology over `F2[H]`.
    Bn,
    /// `H = 0`: Szabó's complex over `F2[W]`.
    Sz,
    /// `H = 1`: over `F2[W]`, homological grading only.
    TotFh,
    /// `H = W = 1`: ungraded over `F2`.
    Ftot,
    /// `H` inverted: over `F2[H, H^-1, W]`.
    Loc,
    /// `W = 0, H = 1`: the filtered Bar-Natan complex over `F2`.
    Fbn,
    /// No substitution: `F2[H, W]`.
    Total,
}

impl Theory {
    /// The substitutions realizing this theory.
    pub fn substitution(self) -> (HSub, WSub) {
        match self {
            Theory::Kh => (HSub::Zero, WSub::Zero),
            Theory::Bn => (HSub::Keep, WSub::Zero),
            Theory::Sz => (HSub::Zero, WSub::Keep),
            Theory::TotFh => (HSub::One, WSub::Keep),
            Theory::Ftot => (HSub::One, WSub::One),
            Theory::Loc => (HSub::Invert, WSub::Keep),
            Theory::Fbn => (HSub::One, WSub::Zero),
            Theory::Total => (HSub::Keep, WSub::Keep),
        }
    }
}

/// A chain complex of Khovanov generators over a quotient or localization of
/// `F2[H, W]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedComplex {
    ring: Ring,
    grading: Grading,
    n: usize,
    gens: Vec<Generator>,
    /// For each source, `(target, coefficient)` sorted by target.
    columns: Vec<Vec<(u32, Poly)>>,
    /// Index of the first generator of each vertex (indexed by `u`).
    offsets: Vec<u32>,
    /// Circle keys of each vertex.
    circle_tags: Vec<Vec<EdgeId>>,
    /// Quantum shift applied on top of the generator formula.
    q_shift: i32,
}

fn vertex_order(n: usize) -> Vec<CrossingSet> {
    let mut vs: Vec<CrossingSet> = (0..(1u64 << n)).collect();
    vs.sort_by_key(|&u| (u.count_ones(), u));
    vs
}

/// Builds `C_tot` with the standard conventions.
pub fn build_total(d: &LinkDiagram) -> Result<BigradedComplex, ComplexError> {
    build_total_with(d, Conventions::STANDARD)
}

/// Builds `C_tot` with explicit conventions for the undetermined signs.
#[doc(hidden)]
pub fn build_total_with(d: &LinkDiagram, conv: Conventions) -> Result<BigradedComplex, ComplexError> {
    let n = d.crossing_count();
    if n > MAX_CROSSINGS {
        return Err(ComplexError::TooLarge(n));
    }
    let order = vertex_order(n);
    let resolutions: Vec<Resolution> = (0..(1u64 << n)).map(|u| resolve(d, u)).collect();
    let (n_plus, n_minus) = (d.n_plus() as i32, d.n_minus() as i32);
    let mut offsets = vec![0u32; 1 << n];
    let mut gens = Vec::new();
    for &u in &order {
        offsets[u as usize] = gens.len() as u32;
        let k = resolutions[u as usize].len();
        let uu = u.count_ones() as i32;
        for x in 0..(1u64 << k) {
            let gr_h = -n_minus + uu;
            let gr_q = n_plus - 2 * n_minus + uu + k as i32 - 2 * x.count_ones() as i32;
            gens.push(Generator { u, x, gr_h, gr_q });
        }
    }
    let full = (1u64 << n) - 1;
    let vertex_columns = |u: CrossingSet| -> Vec<(u64, u32, Poly)> {
        let res = &resolutions[u as usize];
        let mut entries = Vec::new();
        let free = full & !u;
        // Iterate over nonempty subsets s of the complement; v = u | s.
        let mut s = free;
        while s != 0 {
            let v = u | s;
            let cfg = configuration_from(d, res, v);
            let a = Analysis::new(&cfg);
            let w = s.count_ones() as i32 - 1;
            for ((x, y), _) in a.szabo(conv) {
                entries.push((x, offsets[v as usize] + y as u32, Poly::mono(Mono::new(0, w))));
            }
            for (x, y) in a.forest() {
                entries.push((x, offsets[v as usize] + y as u32, Poly::mono(Mono::new(1, w))));
            }
            s = (s - 1) & free;
        }
        entries
    };
    #[cfg(feature = "parallel")]
    let per_vertex: Vec<Vec<(u64, u32, Poly)>> = {
        use rayon::prelude::*;
        order.par_iter().map(|&u| vertex_columns(u)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_vertex: Vec<Vec<(u64, u32, Poly)>> = order.iter().map(|&u| vertex_columns(u)).collect();

    let mut columns: Vec<Vec<(u32, Poly)>> = vec![Vec::new(); gens.len()];
    for (&u, entries) in order.iter().zip(per_vertex) {
        let base = offsets[u as usize] as usize;
        for (x, t, p) in entries {
            columns[base + x as usize].push((t, p));
        }
    }
    for col in &mut columns {
        normalize_column(col);
    }
    let circle_tags = resolutions.iter().map(|r| r.circles.iter().map(|c| c.tag).collect()).collect();
    Ok(BigradedComplex { ring: Ring::F2HW, grading: Grading::Bigraded, n, gens, columns, offsets, circle_tags, q_shift: 0 })
}

/// Sorts by target and merges repeated targets.
fn normalize_column(col: &mut Vec<(u32, Poly)>) {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, Poly)> = Vec::with_capacity(col.len());
    for (t, p) in col.drain(..) {
        match out.last_mut() {
            Some((lt, lp)) if *lt == t => lp.add_assign(&p),
            _ => out.push((t, p)),
        }
    }
    out.retain(|(_, p)| !p.is_zero());
    *col = out;
}

impl BigradedComplex {
    /// Coefficient ring.
    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Retained gradings.
    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Number of crossings of the underlying diagram.
    pub fn crossing_count(&self) -> usize {
        self.n
    }

    /// Generators, in order.
    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// Whether there are no generators.
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Differential of generator `g` as `(target, coefficient)` pairs.
    pub fn column(&self, g: usize) -> &[(u32, Poly)] {
        &self.columns[g]
    }

    /// Index of generator `(u, x)`.
    pub fn index_of(&self, u: CrossingSet, x: u64) -> usize {
        self.offsets[u as usize] as usize + x as usize
    }

    /// Circle keys of the resolution `u`, in bitmask order.
    pub fn circle_tags(&self, u: CrossingSet) -> &[EdgeId] {
        &self.circle_tags[u as usize]
    }

    /// Extra quantum shift carried by this complex (nonzero for reduced pieces).
    pub fn q_shift(&self) -> i32 {
        self.q_shift
    }

    /// Shifted bigrading of generator `g`.
    pub fn degree(&self, g: usize) -> (i32, i32) {
        let gen = &self.gens[g];
        (gen.gr_h, gen.gr_q + self.q_shift)
    }

    /// Applies a substitution for `H` and `W`.
    pub fn specialize(&self, h: HSub, w: WSub) -> Result<BigradedComplex, ComplexError> {
        if self.ring != Ring::F2HW {
            return Err(ComplexError::InvalidSpecialization("only the total complex can be specialized"));
        }
        let ring = match (h, w) {
            (HSub::Invert, _) => Ring::Localized,
            (HSub::Keep, WSub::Keep) => Ring::F2HW,
            (HSub::Keep, _) => Ring::F2H,
            (_, WSub::Keep) => Ring::F2W,
            _ => Ring::F2,
        };
        let grading = match (h, w) {
            (_, WSub::One) => Grading::Ungraded,
            (HSub::One, _) => Grading::Homological,
            _ => Grading::Bigraded,
        };
        let hs = match h {
            HSub::Zero => Some(false),
            HSub::One => Some(true),
            HSub::Keep | HSub::Invert => None,
        };
        let ws = match w {
            WSub::Zero => Some(false),
            WSub::One => Some(true),
            WSub::Keep => None,
        };
        let mut out = self.clone();
        out.ring = ring;
        out.grading = grading;
        for col in &mut out.columns {
            for e in col.iter_mut() {
                e.1 = e.1.specialize(hs, ws);
            }
            col.retain(|(_, p)| !p.is_zero());
        }
        Ok(out)
    }

    /// Specialization to a named theory.
    pub fn theory(&self, t: Theory) -> Result<BigradedComplex, ComplexError> {
        let (h, w) = t.substitution();
        self.specialize(h, w)
    }

    /// Homology over the (principal ideal domain) coefficient ring.
    pub fn homology(&self) -> Result<Homology, ComplexError> {
        let degrees = (0..self.gens.len()).map(|g| self.degree(g)).collect();
        Ok(SparseComplex::new(self.ring, self.grading, degrees, &self.columns).homology()?)
    }

    /// The unit-cancelled complex as a sparse complex (for export).
    pub fn to_sparse(&self) -> SparseComplex {
        let degrees = (0..self.gens.len()).map(|g| self.degree(g)).collect();
        SparseComplex::new(self.ring, self.grading, degrees, &self.columns)
    }

    /// All nonzero cells `(source, target, value)` of `delta o delta`.
    pub fn verify_d_squared(&self) -> Vec<(u32, u32, Poly)> {
        let mut bad = Vec::new();
        for a in 0..self.columns.len() {
            let mut acc: BTreeMap<u32, Poly> = BTreeMap::new();
            for (b, p) in &self.columns[a] {
                for (c, q) in &self.columns[*b as usize] {
                    acc.entry(*c).or_default().add_assign(&p.mul(q));
                }
            }
            for (c, p) in acc {
                if !p.is_zero() {
                    bad.push((a as u32, c, p));
                }
            }
        }
        bad
    }

    /// Entries violating homogeneity of bidegree `(1, 0)` (only meaningful
    /// when both gradings are retained).
    pub fn inhomogeneous_entries(&self) -> Vec<(u32, u32)> {
        let mut bad = Vec::new();
        for (a, col) in self.columns.iter().enumerate() {
            let (ha, qa) = self.degree(a);
            for (b, p) in col {
                let (hb, qb) = self.degree(*b as usize);
                for m in p.terms() {
                    let (dh, dq) = m.degree();
                    if hb + dh != ha + 1 || qb + dq != qa {
                        bad.push((a as u32, *b));
                    }
                }
            }
        }
        bad
    }

    /// Flips the coefficient of one entry by adding `p` (for testing).
    #[doc(hidden)]
    pub fn perturb(&mut self, source: usize, target: u32, p: &Poly) {
        self.columns[source].push((target, p.clone()));
        normalize_column(&mut self.columns[source]);
    }

    /// Splits along the basepoint circle into the subcomplex spanned by
    /// monomials containing it (quantum grading raised by one) and the
    /// quotient (lowered by one).
    pub fn reduced_split(&self, d: &LinkDiagram) -> Result<(BigradedComplex, BigradedComplex), ComplexError> {
        d.basepoint().ok_or(ComplexError::NoBasepoint)?;
        let mut in_minus = vec![false; self.gens.len()];
        for (g, gen) in self.gens.iter().enumerate() {
            let res = resolve(d, gen.u);
            let bc = res.basepoint_circle().expect("basepoint set");
            in_minus[g] = (gen.x >> bc) & 1 == 1;
        }
        Ok((self.restrict(&in_minus, 1), self.restrict(&in_minus.iter().map(|&m| !m).collect::<Vec<_>>(), -1)))
    }

    fn restrict(&self, keep: &[bool], shift: i32) -> BigradedComplex {
        let mut new_index = vec![u32::MAX; self.gens.len()];
        let mut gens = Vec::new();
        for (g, &k) in keep.iter().enumerate() {
            if k {
                new_index[g] = gens.len() as u32;
                gens.push(self.gens[g]);
            }
        }
        let mut columns = Vec::with_capacity(gens.len());
        for (g, &k) in keep.iter().enumerate() {
            if k {
                columns.push(
                    self.columns[g]
                        .iter()
                        .filter(|(t, _)| keep[*t as usize])
                        .map(|(t, p)| (new_index[*t as usize], p.clone()))
                        .collect(),
                );
            }
        }
        BigradedComplex {
            ring: self.ring,
            grading: self.grading,
            n: self.n,
            gens,
            columns,
            offsets: Vec::new(),
            circle_tags: Vec::new(),
            q_shift: self.q_shift + shift,
        }
    }

    /// Whether the span of the generators flagged in `sub` is closed under
    /// the differential.
    pub fn is_subcomplex(&self, sub: &[bool]) -> bool {
        (0..self.gens.len()).filter(|&g| sub[g]).all(|g| self.columns[g].iter().all(|(t, _)| sub[*t as usize]))
    }

    /// The complex after cancelling every unit entry (zigzag rule), in
    /// exported form; generators keep their `(u, x)` labels.
    pub fn reduced_export(&self) -> ComplexExport {
        let mut sc = self.to_sparse();
        sc.cancel_units();
        let survivors = sc.survivors();
        let mut index = vec![u32::MAX; self.gens.len()];
        for (k, &g) in survivors.iter().enumerate() {
            index[g as usize] = k as u32;
        }
        ComplexExport {
            schema: 1,
            ring: self.ring,
            generators: survivors
                .iter()
                .map(|&g| {
                    let (gr_h, gr_q) = self.degree(g as usize);
                    ExportGenerator { u: self.gens[g as usize].u, x: self.gens[g as usize].x, gr_h, gr_q }
                })
                .collect(),
            entries: sc
                .entries()
                .into_iter()
                .map(|(a, b, p)| ExportEntry {
                    source: index[a as usize],
                    target: index[b as usize],
                    terms: p.terms().iter().map(|m| [m.h, m.w]).collect(),
                })
                .collect(),
        }
    }

    /// JSON-friendly export.
    pub fn export(&self) -> ComplexExport {
        ComplexExport {
            schema: 1,
            ring: self.ring,
            generators: (0..self.gens.len())
                .map(|g| {
                    let (gr_h, gr_q) = self.degree(g);
                    ExportGenerator { u: self.gens[g].u, x: self.gens[g].x, gr_h, gr_q }
                })
                .collect(),
            entries: self
                .columns
                .iter()
                .enumerate()
                .flat_map(|(a, col)| {
                    col.iter().map(move |(b, p)| ExportEntry {
                        source: a as u32,
                        target: *b,
                        terms: p.terms().iter().map(|m| [m.h, m.w]).collect(),
                    })
                })
                .collect(),
        }
    }
}

/// A generator in exported form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportGenerator {
    /// Cube vertex bitmask.
    pub u: u64,
    /// Monomial bitmask.
    pub x: u64,
    /// Homological grading.
    pub gr_h: i32,
    /// Quantum grading (including shifts).
    pub gr_q: i32,
}

/// A matrix entry in exported form: `terms` lists `[H-exponent, W-exponent]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportEntry {
    /// Source generator index.
    pub source: u32,
    /// Target generator index.
    pub target: u32,
    /// Monomials of the coefficient.
    pub terms: Vec<[i32; 2]>,
}

/// Serializable form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexExport {
    /// Format version.
    pub schema: u32,
    /// Coefficient ring.
    pub ring: Ring,
    /// Generators with gradings.
    pub generators: Vec<ExportGenerator>,
    /// Nonzero entries.
    pub entries: Vec<ExportEntry>,
}

impl ComplexExport {
    /// Builds a sparse complex from an export (gradings are kept as given).
    pub fn to_sparse(&self, grading: Grading) -> Result<SparseComplex, ComplexError> {
        let n = self.generators.len();
        let mut columns: Vec<Vec<(u32, Poly)>> = vec![Vec::new(); n];
        for e in &self.entries {
            if e.source as usize >= n || e.target as usize >= n {
                return Err(ComplexError::Malformed(alloc::format!("entry {} -> {} out of range", e.source, e.target)));
            }
            let mut p = Poly::zero();
            for t in &e.terms {
                p.add_mono(Mono::new(t[0], t[1]));
            }
            columns[e.source as usize].push((e.target, p));
        }
        let degrees = self.generators.iter().map(|g| (g.gr_h, g.gr_q)).collect();
        Ok(SparseComplex::new(self.ring, grading, degrees, &columns))
    }
}

/// A chain map between two complexes over the same ring.
#[derive(Debug, Clone)]
pub struct ChainMap {
    /// Source complex.
    pub source: BigradedComplex,
    /// Target complex.
    pub target: BigradedComplex,
    /// For each source generator, `(target generator, coefficient)`.
    pub columns: Vec<Vec<(u32, Poly)>>,
}

impl ChainMap {
    /// `delta_target o f + f o delta_source`, as nonzero cells.
    pub fn commutator(&self) -> Vec<(u32, u32, Poly)> {
        let mut bad = Vec::new();
        for a in 0..self.columns.len() {
            let mut acc: BTreeMap<u32, Poly> = BTreeMap::new();
            for (b, p) in &self.columns[a] {
                for (c, q) in self.target.column(*b as usize) {
                    acc.entry(*c).or_default().add_assign(&p.mul(q));
                }
            }
            for (b, p) in self.source.column(a) {
                for (c, q) in &self.columns[*b as usize] {
                    acc.entry(*c).or_default().add_assign(&p.mul(q));
                }
            }
            bad.extend(acc.into_iter().filter(|(_, p)| !p.is_zero()).map(|(c, p)| (a as u32, c, p)));
        }
        bad
    }

    /// Whether the map commutes with the differentials.
    pub fn is_chain_map(&self) -> bool {
        self.commutator().is_empty()
    }

    /// The common bidegree of all entries (accounting for `H`/`W`
    /// exponents), or `None` if the map is not homogeneous.
    pub fn bidegree(&self) -> Option<(i32, i32)> {
        let mut deg = None;
        for (a, col) in self.columns.iter().enumerate() {
            let (ha, qa) = self.source.degree(a);
            for (b, p) in col {
                let (hb, qb) = self.target.degree(*b as usize);
                for m in p.terms() {
                    let (dh, dq) = m.degree();
                    let e = (hb + dh - ha, qb + dq - qa);
                    if *deg.get_or_insert(e) != e {
                        return None;
                    }
                }
            }
        }
        deg
    }

    /// Composition `other o self`.
    pub fn then(&self, other: &ChainMap) -> Vec<Vec<(u32, Poly)>> {
        self.columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<u32, Poly> = BTreeMap::new();
                for (b, p) in col {
                    for (c, q) in &other.columns[*b as usize] {
                        acc.entry(*c).or_default().add_assign(&p.mul(q));
                    }
                }
                acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
            })
            .collect()
    }
}

/// Re-indexes monomial `x` over circles with keys `from` into keys `to`;
/// circles missing from `to` must be absent from `x` (else `None`).
fn translate(x: u64, from: &[EdgeId], to: &[EdgeId]) -> Option<u64> {
    let mut y = 0;
    for (i, key) in from.iter().enumerate() {
        if (x >> i) & 1 == 1 {
            let j = to.iter().position(|k| k == key)?;
            y |= 1 << j;
        }
    }
    Some(y)
}

/// A birth: the map `C(D) -> C(D')` into the summand without the new
/// circle, where `D'` is `D` with an extra crossingless component.
pub fn birth_map(d: &LinkDiagram) -> Result<(LinkDiagram, ChainMap), ComplexError> {
    let d2 = d.with_extra_loop();
    let source = build_total(d)?;
    let target = build_total(&d2)?;
    let columns = source
        .gens
        .iter()
        .map(|g| {
            let y = translate(g.x, source.circle_tags(g.u), target.circle_tags(g.u)).expect("old circles persist");
            vec![(target.index_of(g.u, y) as u32, Poly::one())]
        })
        .collect();
    Ok((d2, ChainMap { source, target, columns }))
}

/// A death of crossingless component `id`: the projection of `C(D)` onto
/// the summand whose monomials contain that circle.
pub fn death_map(d: &LinkDiagram, id: EdgeId) -> Result<(LinkDiagram, ChainMap), ComplexError> {
    let d2 = d.without_loop(id)?;
    let source = build_total(d)?;
    let target = build_total(&d2)?;
    let columns = source
        .gens
        .iter()
        .map(|g| {
            let tags = source.circle_tags(g.u);
            let j = tags.iter().position(|&t| t == id).expect("loop is a circle");
            if (g.x >> j) & 1 == 0 {
                return Vec::new();
            }
            let y = translate(g.x & !(1 << j), tags, target.circle_tags(g.u)).expect("other circles persist");
            vec![(target.index_of(g.u, y) as u32, Poly::one())]
        })
        .collect();
    Ok((d2, ChainMap { source, target, columns }))
}

/// The saddle at crossing `c`: the block of `delta_tot` of `d` from the
/// 0-resolution of `c` to its 1-resolution, viewed as a map
/// `C(D_0) -> C(D_1)`. Both resolutions are oriented so that the saddle is
/// an oriented cobordism (strand directions agree away from `c`).
pub fn saddle_map(d: &LinkDiagram, c: usize) -> Result<(LinkDiagram, LinkDiagram, ChainMap), ComplexError> {
    let n = d.crossing_count();
    if c >= n {
        return Err(DiagramError::InvalidSite(alloc::format!("no crossing {c}")).into());
    }
    // Orientation constraints on slot directions (value = outgoing): both
    // resolutions must be oriented, agreeing with each other away from `c`.
    let mut uf = d.smoothing_constraints(c, false);
    for (p, q) in [(0, 1), (2, 3)] {
        uf.differ(4 * c + p, 4 * c + q);
    }
    if !uf.is_consistent() {
        return Err(ComplexError::IncoherentSaddle);
    }
    // Components through `c` enter at slot `a`; the others keep their direction.
    let mut root_value: BTreeMap<usize, bool> = BTreeMap::new();
    let (ra, pa) = uf.find(4 * c);
    root_value.insert(ra, pa);
    let outgoing: Vec<bool> = (0..4 * n)
        .map(|s| {
            let (r, p) = uf.find(s);
            *root_value.entry(r).or_insert(d.is_outgoing(s as u32) ^ p) ^ p
        })
        .collect();
    let d0 = d.smoothing_oriented(c, false, &outgoing)?;
    let d1 = d.smoothing_oriented(c, true, &outgoing)?;
    let parent = build_total(d)?;
    let source = build_total(&d0)?;
    let target = build_total(&d1)?;
    let expand = |u: CrossingSet, bit: bool| -> CrossingSet {
        let low = u & ((1u64 << c) - 1);
        let high = (u >> c) << (c + 1);
        low | high | ((bit as u64) << c)
    };
    let shrink = |v: CrossingSet| -> CrossingSet {
        let low = v & ((1u64 << c) - 1);
        let high = (v >> (c + 1)) << c;
        low | high
    };
    let columns = source
        .gens
        .iter()
        .map(|g| {
            let u = expand(g.u, false);
            let pg = parent.index_of(u, g.x);
            parent.columns[pg]
                .iter()
                .filter_map(|(t, p)| {
                    let tg = parent.gens[*t as usize];
                    if (tg.u >> c) & 1 == 1 {
                        Some((target.index_of(shrink(tg.u), tg.x) as u32, p.clone()))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    Ok((d0, d1, ChainMap { source, target, columns }))
}

/// Resolutions of every vertex (convenience for callers that need circle data).
pub fn all_resolutions(d: &LinkDiagram) -> Vec<Resolution> {
    (0..(1u64 << d.crossing_count())).map(|u| resolve(d, u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, DiagramOptions};

    fn trefoil() -> LinkDiagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", DiagramOptions::default()).unwrap()
    }

    #[test]
    fn trefoil_has_thirty_generators() {
        let c = build_total(&trefoil()).unwrap();
        assert_eq!(c.len(), 30);
        let g = &c.generators()[c.index_of(0, 0b11)];
        assert_eq!((g.gr_h, g.gr_q), (0, 1));
        assert!(c.generators().iter().all(|g| g.gr_q % 2 != 0));
    }

    #[test]
    fn unknot_complex() {
        let c = build_total(&LinkDiagram::unknot()).unwrap();
        let degs: Vec<_> = (0..c.len()).map(|g| c.degree(g)).collect();
        assert_eq!(degs, vec![(0, 1), (0, -1)]);
        assert!(c.column(0).is_empty() && c.column(1).is_empty());
    }

    #[test]
    fn reduced_export_has_no_units() {
        let c = build_total(&trefoil()).unwrap();
        let r = c.reduced_export();
        assert!(r.generators.len() < c.len());
        assert!(r.entries.iter().all(|e| e.terms != vec![[0, 0]]));
        // Khovanov homology of the trefoil has rank 6; cancellation keeps
        // at least that many generators.
        assert!(r.generators.len() >= 6);
    }

    #[test]
    fn trefoil_squares_to_zero_and_is_homogeneous() {
        for mask in 0..8 {
            let c = build_total(&trefoil().with_decoration_mask(mask)).unwrap();
            assert!(c.verify_d_squared().is_empty(), "decoration {mask:03b}");
            assert!(c.inhomogeneous_entries().is_empty());
        }
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let mut c = build_total(&trefoil()).unwrap();
        let t = c.column(0)[0].0;
        c.perturb(0, t, &Poly::one());
        assert!(!c.verify_d_squared().is_empty());
    }
}
