//! Orientation generators, upright sets and the `s^U` concordance
//! invariants, with the four-ball genus bounds they give.
//!
//! For a knot with orientation `o`, the homology of `C_ftot` (`H = W = 1`)
//! has rank two, spanned by classes `g(o)` and `g(-o)`. A representative of
//! `g(o)` is built by lifting the Bar-Natan generator chain (a cycle for the
//! `gr_h`-raising-by-one part of the differential) to a cycle of the whole
//! differential. `s^U` then measures how far up an upright filtration a
//! representative can be pushed.

mod generator;
mod search;
mod upright;

use alloc::vec::Vec;

use num_rational::Ratio;

pub use generator::{bn_generator_chain, checkerboard, oriented_resolution, BnGenerator};
pub use search::FilteredComplex;
pub use upright::{Level, Threshold, UprightKind, UprightSet, Q};

use crate::algebra::sparse::sym_diff;
use crate::complex::{build_total, BigradedComplex, ComplexError, Theory};
use crate::diagram::{DiagramError, LinkDiagram};

/// Errors raised by the invariants layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    /// Quantum gradings of upright-set points are odd.
    #[error("quantum coordinate {0} is even")]
    EvenQuantum(i64),
    /// Translates are by even integers.
    #[error("translate {0} is odd")]
    OddTranslate(i64),
    /// Invalid upright-set parameters.
    #[error("invalid upright set: {0}")]
    InvalidUpright(alloc::string::String),
    /// Unparsable upright-set spec string.
    #[error("cannot parse upright set: {0}")]
    Parse(alloc::string::String),
    /// The s-invariants are defined for centered upright sets.
    #[error("the upright set is not centered")]
    NotCentered,
    /// The s-invariants are defined for knots.
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
    /// Every translate carries a representative.
    #[error("every translate carries a representative")]
    Unbounded,
    /// No translate carries a representative.
    #[error("no translate carries a representative")]
    NotRepresentable,
    /// The generator chain could not be completed to a cycle.
    #[error("cannot lift the orientation generator past homological degree {0}")]
    LiftFailed(i32),
    /// Internal consistency failure.
    #[error("internal error: {0}")]
    Internal(&'static str),
    /// Error from the complex layer.
    #[error(transparent)]
    Complex(#[from] ComplexError),
    /// Error from the diagram layer.
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Which orientation class an invariant tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Variant {
    /// `g(o)`, for the diagram's orientation `o`.
    O,
    /// `g(-o)`.
    MinusO,
    /// `g(o) + g(-o)`.
    Pair,
}

impl Variant {
    /// All three variants.
    pub const ALL: [Variant; 3] = [Variant::O, Variant::MinusO, Variant::Pair];

    /// Offset added to the maximal translate.
    pub fn offset(self) -> i64 {
        match self {
            Variant::O | Variant::MinusO => 2,
            Variant::Pair => 0,
        }
    }

    /// Short name (`o`, `minus-o`, `pair`).
    pub fn name(self) -> &'static str {
        match self {
            Variant::O => "o",
            Variant::MinusO => "minus-o",
            Variant::Pair => "pair",
        }
    }
}

/// Generator indices (into `complex`) of the Bar-Natan generator at `H = 1`.
fn bn_chain_indices(d: &LinkDiagram, complex: &BigradedComplex, signs: &[i8]) -> Result<Vec<u32>, InvariantError> {
    let g = bn_generator_chain(d, signs)?;
    let mut idx: Vec<u32> = g.at_h_one().into_iter().map(|x| complex.index_of(g.u, x) as u32).collect();
    idx.sort_unstable();
    Ok(idx)
}

/// A cycle of `C_ftot` representing `g(o)` for the orientation `signs`, as
/// sorted generator indices of [`build_total`]`(d)`.
pub fn lift_to_ftot(d: &LinkDiagram, signs: &[i8]) -> Result<Vec<u32>, InvariantError> {
    let total = build_total(d)?;
    let ftot = FilteredComplex::from_complex(&total.theory(Theory::Ftot)?)?;
    ftot.lift(&bn_chain_indices(d, &total, signs)?)
}

/// The complex `C_ftot` of a knot with representatives of `g(o)` and
/// `g(-o)`, reusable across upright sets.
#[derive(Debug, Clone)]
pub struct SInvariants {
    ftot: FilteredComplex,
    reps: [Vec<u32>; 2],
}

impl SInvariants {
    /// Builds `C_ftot` and lifts both orientation generators.
    pub fn new(d: &LinkDiagram) -> Result<Self, InvariantError> {
        if d.component_count() != 1 {
            return Err(InvariantError::NotAKnot(d.component_count()));
        }
        let total = build_total(d)?;
        let ftot = FilteredComplex::from_complex(&total.theory(Theory::Ftot)?)?;
        let plus = ftot.lift(&bn_chain_indices(d, &total, &[1])?)?;
        let minus = ftot.lift(&bn_chain_indices(d, &total, &[-1])?)?;
        Ok(SInvariants { ftot, reps: [plus, minus] })
    }

    /// The underlying filtered complex.
    pub fn complex(&self) -> &FilteredComplex {
        &self.ftot
    }

    /// The cycle representative used for `variant`.
    pub fn representative(&self, variant: Variant) -> Vec<u32> {
        match variant {
            Variant::O => self.reps[0].clone(),
            Variant::MinusO => self.reps[1].clone(),
            Variant::Pair => sym_diff(&self.reps[0], &self.reps[1]),
        }
    }

    /// `s^U` for a centered upright set.
    pub fn s(&self, u: &UprightSet, variant: Variant) -> Result<i64, InvariantError> {
        if !u.is_centered() {
            return Err(InvariantError::NotCentered);
        }
        Ok(self.ftot.max_translate(&self.representative(variant), u)? + variant.offset())
    }
}

/// `s^U` of a knot diagram.
pub fn s_invariant(d: &LinkDiagram, u: &UprightSet, variant: Variant) -> Result<i64, InvariantError> {
    SInvariants::new(d)?.s(u, variant)
}

/// The upright sets used for genus bounds: `U_min`, `U_max`, `U_(0)`,
/// `U_(1/2)` and `U_(1)`.
pub fn default_uprights() -> Vec<UprightSet> {
    let mut v = alloc::vec![UprightSet::min(), UprightSet::max()];
    for (p, q) in [(0, 1), (1, 2), (1, 1)] {
        v.push(UprightSet::projective(Q::new(p, q)).expect("parameter in range"));
    }
    v
}

/// Four-ball genus lower bound `max |s^U| / 2` over the default upright
/// sets and all variants.
pub fn genus_bound(d: &LinkDiagram) -> Result<Ratio<i64>, InvariantError> {
    genus_bound_with(d, &default_uprights())
}

/// Four-ball genus lower bound over the given upright sets.
pub fn genus_bound_with(d: &LinkDiagram, sets: &[UprightSet]) -> Result<Ratio<i64>, InvariantError> {
    let s = SInvariants::new(d)?;
    let mut best = 0;
    for u in sets {
        for v in Variant::ALL {
            best = best.max(s.s(u, v)?.abs());
        }
    }
    Ok(Ratio::new(best, 2))
}

/// Rasmussen's invariant, read off the `q`-filtration of the filtered
/// Bar-Natan complex (`W = 0`, `H = 1`) alone.
pub fn rasmussen_s(d: &LinkDiagram) -> Result<i64, InvariantError> {
    if d.component_count() != 1 {
        return Err(InvariantError::NotAKnot(d.component_count()));
    }
    let total = build_total(d)?;
    let fbn = FilteredComplex::from_complex(&total.theory(Theory::Fbn)?)?;
    let rep = bn_chain_indices(d, &total, &[1])?;
    let u = UprightSet::projective(Q::from_integer(0))?;
    Ok(fbn.max_translate(&rep, &u)? + 2)
}

#[cfg(test)]
mod tests;
