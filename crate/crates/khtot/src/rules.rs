//! Structural rules satisfied by the contribution functions, as executable
//! checks on labeled configurations.
//!
//! * extension: adding a passive circle keeps the value when it carries the
//!   same label at both ends, and gives 0 otherwise;
//! * filtration: a flagged starting circle whose marked segment ends on an
//!   unflagged ending circle gives 0;
//! * duality: the value is unchanged under `R -> mirror(dual(R))` with
//!   complemented, exchanged labels;
//! * disoriented: `c_k`, `c_b`, `c_h` ignore arc orientations;
//! * conjugation: `c_d` is unchanged when every arc is reversed;
//! * presentation: rotating or re-traversing a circle's cyclic word (the
//!   same embedded configuration) changes nothing.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::contrib::{dual_labels, eval_b, eval_d, eval_h, eval_k};
use crate::planar::Configuration;

/// One of the four contribution functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Evaluator {
    /// Khovanov `c_k`.
    K,
    /// Bar-Natan `c_b`.
    B,
    /// Szabó `c_d`.
    D,
    /// Forest `c_h`.
    H,
}

impl Evaluator {
    /// All four evaluators.
    pub const ALL: [Evaluator; 4] = [Evaluator::K, Evaluator::B, Evaluator::D, Evaluator::H];

    /// Evaluates on a labeled configuration.
    pub fn eval(self, cfg: &Configuration, x: u64, y: u64) -> bool {
        match self {
            Evaluator::K => eval_k(cfg, x, y),
            Evaluator::B => eval_b(cfg, x, y),
            Evaluator::D => eval_d(cfg, x, y),
            Evaluator::H => eval_h(cfg, x, y),
        }
    }
}

/// The rule families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Rule {
    /// Passive circles.
    Extension,
    /// Basepoint filtration.
    Filtration,
    /// Mirror of the dual.
    Duality,
    /// Arbitrary arc re-orientation (`c_k`, `c_b`, `c_h`).
    Disoriented,
    /// Reversal of all arcs (`c_d`).
    Conjugation,
    /// Re-description of the same configuration.
    Presentation,
}

/// A failed rule instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which rule failed.
    pub rule: Rule,
    /// For which evaluator.
    pub evaluator: Evaluator,
    /// Starting label.
    pub x: u64,
    /// Ending label.
    pub y: u64,
    /// Human-readable detail.
    pub detail: String,
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Checks every rule for one labeled configuration.
pub fn check_labeled(cfg: &Configuration, x: u64, y: u64) -> Vec<Violation> {
    let mut out = Vec::new();
    let surgery = cfg.surgery();
    let n_start = cfg.circle_count();
    let n_end = surgery.dual.circle_count();
    let values: Vec<(Evaluator, bool)> = Evaluator::ALL.iter().map(|&e| (e, e.eval(cfg, x, y))).collect();
    let mut fail = |rule: Rule, e: Evaluator, detail: String| {
        out.push(Violation { rule, evaluator: e, x, y, detail });
    };

    // Extension: a new passive circle with a key above every existing key is
    // last among both starting and ending circles.
    let key = u32::MAX / 2;
    let ext = cfg.with_passive(&[key]);
    for (e, v) in &values {
        for (bx, by) in [(false, false), (true, true), (true, false), (false, true)] {
            let xe = x | (bx as u64) << n_start;
            let ye = y | (by as u64) << n_end;
            let expect = *v && bx == by;
            if e.eval(&ext, xe, ye) != expect {
                fail(Rule::Extension, *e, format!("passive labels ({bx}, {by})"));
            }
        }
    }

    // Filtration: for each flagged starting circle and each of its segments.
    for (i, c) in cfg.circles().iter().enumerate() {
        if x >> i & 1 == 0 {
            continue;
        }
        let ends: Vec<usize> = if c.is_passive() {
            let j = surgery.dual.circles().iter().position(|d| d.key == c.key).expect("passive circles persist");
            alloc::vec![j]
        } else {
            c.marks.iter().map(|m| surgery.seg_circle[m.id()] as usize).collect()
        };
        if ends.iter().any(|&j| y >> j & 1 == 0) {
            for (e, v) in &values {
                if *v {
                    fail(Rule::Filtration, *e, format!("flagged circle {i} reaches an unflagged ending circle"));
                }
            }
        }
    }

    // Duality.
    let (dual, xs, ys) = dual_labels(cfg, x, y);
    let md = dual.mirror();
    for (e, v) in &values {
        if e.eval(&md, xs, ys) != *v {
            fail(Rule::Duality, *e, String::from("mirror of dual disagrees"));
        }
    }

    // Orientation rules.
    let k = cfg.index();
    for (e, v) in &values {
        let rev = e.eval(&cfg.reverse(), x, y);
        match e {
            Evaluator::D => {
                if rev != *v {
                    fail(Rule::Conjugation, *e, String::from("reversing all arcs changes the value"));
                }
            }
            _ => {
                for a in 0..k {
                    if e.eval(&cfg.reorient(|b| b == a), x, y) != *v {
                        fail(Rule::Disoriented, *e, format!("flipping arc {a} changes the value"));
                    }
                }
                if rev != *v {
                    fail(Rule::Disoriented, *e, String::from("reversing all arcs changes the value"));
                }
            }
        }
    }

    // Presentation.
    for i in 0..n_start {
        let variants = [cfg.rotate(i, 1), cfg.retraverse(i)];
        for alt in &variants {
            for (e, v) in &values {
                if e.eval(alt, x, y) != *v {
                    fail(Rule::Presentation, *e, format!("re-describing circle {i} changes the value"));
                }
            }
        }
    }
    out
}

/// Checks every rule for every labeling of a configuration.
pub fn check_configuration(cfg: &Configuration) -> Vec<Violation> {
    let n_start = cfg.circle_count();
    let n_end = cfg.surgery().dual.circle_count();
    let mut out = Vec::new();
    for x in 0..=mask(n_start) {
        for y in 0..=mask(n_end) {
            out.extend(check_labeled(cfg, x, y));
        }
    }
    out
}
