//! Upright subsets of `Z x (2Z + 1)` and their translates.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;

use super::InvariantError;

/// Rational parameter type.
pub type Q = Ratio<i64>;

/// The shape of an upright set before translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UprightKind {
    /// `{a >= 0 and b > 0}`, the smallest centered upright set.
    Min,
    /// `{a > 0 or b > 0}`, the largest centered upright set.
    Max,
    /// Points on or above the line `a t + b (1 - t) = s (1 - t)`; points on
    /// the line are included iff `r(a, b) > 0`, where `r` defaults to
    /// `sgn(b)` and may be overridden at finitely many points.
    Parametric {
        /// Slope parameter in `[0, 1]`.
        t: Q,
        /// Offset parameter in `[-1, 1]`.
        s: Q,
        /// Boundary overrides `((a, b), ±1)`, sorted by point.
        r: Vec<((i64, i64), i8)>,
    },
    /// The upward closure of finitely many corner points.
    Generated(Vec<(i64, i64)>),
}

/// Where a column `{a} x (2Z + 1)` of an upright set starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// Every point of the column is in the set.
    All,
    /// The column contains exactly the points with `b >= b*`.
    From(i64),
    /// No point of the column is in the set.
    Empty,
}

/// An upright set together with an even translate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UprightSet {
    kind: UprightKind,
    shift: i64,
}

fn check_odd(b: i64) -> Result<(), InvariantError> {
    if b.rem_euclid(2) == 1 {
        Ok(())
    } else {
        Err(InvariantError::EvenQuantum(b))
    }
}

fn sgn(b: i64) -> i8 {
    if b > 0 {
        1
    } else {
        -1
    }
}

/// Smallest odd integer strictly greater than `x`.
fn odd_above(x: Q) -> i64 {
    let f = x.floor().to_integer();
    if f.rem_euclid(2) == 1 {
        f + 2
    } else {
        f + 1
    }
}

impl UprightSet {
    /// `U_min`.
    pub fn min() -> Self {
        UprightSet { kind: UprightKind::Min, shift: 0 }
    }

    /// `U_max`.
    pub fn max() -> Self {
        UprightSet { kind: UprightKind::Max, shift: 0 }
    }

    /// `U_(t) = {a t + b (1 - t) > 0, or = 0 with b > 0}`.
    pub fn projective(t: Q) -> Result<Self, InvariantError> {
        Self::parametric(t, Q::from_integer(0), Vec::new())
    }

    /// `U_(t, s, r)`; `r` lists boundary points whose membership differs
    /// from (or restates) the default `sgn(b)`.
    pub fn parametric(t: Q, s: Q, r: Vec<((i64, i64), i8)>) -> Result<Self, InvariantError> {
        let zero = Q::from_integer(0);
        let one = Q::from_integer(1);
        if t < zero || t > one {
            return Err(InvariantError::InvalidUpright(format!("t = {t} is outside [0, 1]")));
        }
        if s < -one || s > one {
            return Err(InvariantError::InvalidUpright(format!("s = {s} is outside [-1, 1]")));
        }
        let mut r = r;
        r.sort();
        for w in r.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(InvariantError::InvalidUpright(format!("point {:?} is listed twice", w[0].0)));
            }
        }
        for &((a, b), v) in &r {
            check_odd(b)?;
            if v != 1 && v != -1 {
                return Err(InvariantError::InvalidUpright(format!("r{:?} must be +1 or -1", (a, b))));
            }
            let lhs = Q::from_integer(a) * t + Q::from_integer(b) * (one - t);
            if lhs != s * (one - t) {
                return Err(InvariantError::InvalidUpright(format!("{:?} is not on the boundary line", (a, b))));
            }
            if a == 0 && v != sgn(b) {
                return Err(InvariantError::InvalidUpright(format!("r(0, {b}) must be sgn({b})")));
            }
        }
        if t == zero {
            // On a horizontal boundary, r must be non-decreasing in a; with
            // infinitely many default values on both sides this forces every
            // override to agree with the default.
            if let Some(&((a, b), v)) = r.iter().find(|&&((_, b), v)| v != sgn(b)) {
                return Err(InvariantError::InvalidUpright(format!(
                    "r({a}, {b}) = {v} breaks monotonicity along the horizontal boundary"
                )));
            }
        }
        Ok(UprightSet { kind: UprightKind::Parametric { t, s, r }, shift: 0 })
    }

    /// The upward closure of the given corner points (each `b` odd).
    pub fn generated(mut corners: Vec<(i64, i64)>) -> Result<Self, InvariantError> {
        for &(_, b) in &corners {
            check_odd(b)?;
        }
        corners.sort();
        corners.dedup();
        Ok(UprightSet { kind: UprightKind::Generated(corners), shift: 0 })
    }

    /// The translate `U[n]`, with `(a, b) in U[n] iff (a, b - n) in U`.
    pub fn translate(&self, n: i64) -> Result<Self, InvariantError> {
        if n.rem_euclid(2) != 0 {
            return Err(InvariantError::OddTranslate(n));
        }
        Ok(UprightSet { kind: self.kind.clone(), shift: self.shift + n })
    }

    /// The untranslated shape.
    pub fn kind(&self) -> &UprightKind {
        &self.kind
    }

    /// The accumulated translate.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Membership of `(a, b)`; `b` must be odd.
    pub fn contains(&self, a: i64, b: i64) -> Result<bool, InvariantError> {
        check_odd(b)?;
        Ok(match self.threshold(a) {
            Threshold::All => true,
            Threshold::From(t) => b >= t,
            Threshold::Empty => false,
        })
    }

    /// Whether `(0, 1)` is in the set and `(0, -1)` is not.
    pub fn is_centered(&self) -> bool {
        self.threshold(0) == Threshold::From(1)
    }

    /// Start of column `a`; membership is monotone in `b` by upward closure.
    pub fn threshold(&self, a: i64) -> Threshold {
        let base = match &self.kind {
            UprightKind::Min => {
                if a >= 0 {
                    Threshold::From(1)
                } else {
                    Threshold::Empty
                }
            }
            UprightKind::Max => {
                if a > 0 {
                    Threshold::All
                } else {
                    Threshold::From(1)
                }
            }
            UprightKind::Parametric { t, s, r } => {
                let one = Q::from_integer(1);
                if *t == one {
                    match a {
                        _ if a > 0 => Threshold::All,
                        0 => Threshold::From(1),
                        _ => Threshold::Empty,
                    }
                } else {
                    // b (1 - t) > s (1 - t) - a t  <=>  b > beta.
                    let beta = *s - Q::from_integer(a) * *t / (one - *t);
                    let above = odd_above(beta);
                    if beta.is_integer() && beta.to_integer().rem_euclid(2) == 1 {
                        let b0 = beta.to_integer();
                        let v = r
                            .binary_search_by(|probe| probe.0.cmp(&(a, b0)))
                            .map(|i| r[i].1)
                            .unwrap_or_else(|_| sgn(b0));
                        Threshold::From(if v > 0 { b0 } else { above })
                    } else {
                        Threshold::From(above)
                    }
                }
            }
            UprightKind::Generated(corners) => corners
                .iter()
                .filter(|&&(ca, _)| ca <= a)
                .map(|&(_, cb)| cb)
                .min()
                .map_or(Threshold::Empty, Threshold::From),
        };
        match base {
            Threshold::From(b) => Threshold::From(b + self.shift),
            other => other,
        }
    }

    /// Largest even `n` with `(a, b)` in the translate by `n` of this set.
    pub fn level(&self, a: i64, b: i64) -> Result<Level, InvariantError> {
        check_odd(b)?;
        Ok(match self.threshold(a) {
            Threshold::All => Level::Top,
            Threshold::From(t) => Level::At(b - t),
            Threshold::Empty => Level::Bottom,
        })
    }
}

/// Filtration level of a bigrading with respect to an upright set: the
/// largest even `n` with the point in `U[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// In no translate.
    Bottom,
    /// In `U[m]` exactly for even `m <= n`.
    At(i64),
    /// In every translate.
    Top,
}

impl fmt::Display for UprightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            UprightKind::Min => f.write_str("min")?,
            UprightKind::Max => f.write_str("max")?,
            UprightKind::Parametric { t, s, r } => {
                write!(f, "t={t}")?;
                if *s != Q::from_integer(0) || !r.is_empty() {
                    write!(f, ",s={s}")?;
                }
                if !r.is_empty() {
                    f.write_str(",r=[")?;
                    for (i, ((a, b), v)) in r.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "({a},{b}):{}", if *v > 0 { "+1" } else { "-1" })?;
                    }
                    f.write_str("]")?;
                }
            }
            UprightKind::Generated(c) => {
                f.write_str("corners=[")?;
                for (i, (a, b)) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({a},{b})")?;
                }
                f.write_str("]")?;
            }
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

fn parse_q(s: &str) -> Result<Q, InvariantError> {
    Q::from_str(s.trim()).map_err(|_| InvariantError::Parse(format!("not a rational number: {s:?}")))
}

fn parse_int(s: &str) -> Result<i64, InvariantError> {
    let s = s.trim();
    s.strip_prefix('+').unwrap_or(s).parse().map_err(|_| InvariantError::Parse(format!("not an integer: {s:?}")))
}

fn parse_point(s: &str) -> Result<(i64, i64), InvariantError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| InvariantError::Parse(format!("expected (a,b), got {s:?}")))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| InvariantError::Parse(format!("expected (a,b), got {s:?}")))?;
    Ok((parse_int(a)?, parse_int(b)?))
}

/// Splits `body` at top-level commas (outside brackets and parentheses).
fn split_top(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    out
}

fn parse_list(s: &str) -> Result<Vec<&str>, InvariantError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| InvariantError::Parse(format!("expected a [...] list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(split_top(inner))
}

impl FromStr for UprightSet {
    type Err = InvariantError;

    /// Grammar: `min`, `max`, `t=<p>/<q>`, `t=<..>,s=<..>[,r=[(a,b):±1,...]]`
    /// or `corners=[(a,b),...]`, each optionally followed by `[n]`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        let mut body = text;
        let mut shift = 0;
        if let Some(open) = text.rfind('[') {
            let before = &text[..open];
            if text.ends_with(']') && !before.ends_with('=') {
                shift = parse_int(&text[open + 1..text.len() - 1])?;
                body = before;
            }
        }
        let set = match body {
            "min" => UprightSet::min(),
            "max" => UprightSet::max(),
            _ => {
                let mut t = None;
                let mut s = None;
                let mut r = Vec::new();
                let mut corners = None;
                for field in split_top(body) {
                    let (key, value) = field
                        .split_once('=')
                        .ok_or_else(|| InvariantError::Parse(format!("expected key=value, got {field:?}")))?;
                    match key.trim() {
                        "t" => t = Some(parse_q(value)?),
                        "s" => s = Some(parse_q(value)?),
                        "r" => {
                            for item in parse_list(value)? {
                                let (pt, v) = item
                                    .rsplit_once(':')
                                    .ok_or_else(|| InvariantError::Parse(format!("expected (a,b):±1, got {item:?}")))?;
                                let v = parse_int(v)?;
                                r.push((parse_point(pt)?, v as i8));
                            }
                        }
                        "corners" => {
                            corners = Some(parse_list(value)?.into_iter().map(parse_point).collect::<Result<Vec<_>, _>>()?);
                        }
                        other => return Err(InvariantError::Parse(format!("unknown key {other:?}"))),
                    }
                }
                match (t, corners) {
                    (Some(t), None) => UprightSet::parametric(t, s.unwrap_or_else(|| Q::from_integer(0)), r)?,
                    (None, Some(c)) if s.is_none() && r.is_empty() => UprightSet::generated(c)?,
                    _ => return Err(InvariantError::Parse(format!("unrecognized upright set {text:?}"))),
                }
            }
        };
        set.translate(shift)
    }
}

impl UprightSet {
    /// The canonical spec string (parses back to an equal set).
    pub fn spec(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn min_and_max_are_centered() {
        for u in [UprightSet::min(), UprightSet::max()] {
            assert!(u.contains(0, 1).unwrap());
            assert!(!u.contains(0, -1).unwrap());
            assert!(u.is_centered());
        }
        assert!(!UprightSet::min().contains(-1, 99).unwrap());
        assert!(UprightSet::max().contains(1, -99).unwrap());
    }

    #[test]
    fn projective_at_one() {
        let u = UprightSet::projective(q(1, 1)).unwrap();
        assert!(u.contains(1, -99).unwrap());
        assert!(!u.contains(0, -1).unwrap());
        assert!(u.contains(0, 1).unwrap());
        assert!(!u.contains(-1, 99).unwrap());
    }

    #[test]
    fn projective_at_zero_is_b_positive() {
        let u = UprightSet::projective(q(0, 1)).unwrap();
        for a in -5..5 {
            assert!(u.contains(a, 1).unwrap());
            assert!(!u.contains(a, -1).unwrap());
        }
    }

    #[test]
    fn even_quantum_grading_is_rejected() {
        assert_eq!(UprightSet::min().contains(0, 2), Err(InvariantError::EvenQuantum(2)));
        assert_eq!(UprightSet::min().translate(1), Err(InvariantError::OddTranslate(1)));
    }

    #[test]
    fn drawn_example_boundary() {
        // t = 10/19, s = -5/9: boundary 10a + 9b = -5.
        let u = UprightSet::parametric(q(10, 19), q(-5, 9), alloc::vec![((-5, 5), 1), ((4, -5), -1)]).unwrap();
        assert!(u.contains(-5, 5).unwrap());
        assert!(!u.contains(4, -5).unwrap());
        assert!(!u.contains(-4, 3).unwrap());
        assert!(u.contains(-4, 5).unwrap());
        assert!(u.contains(5, -5).unwrap());
        assert!(u.is_centered());
    }

    #[test]
    fn boundary_rule_constraints() {
        assert!(UprightSet::parametric(q(1, 1), q(0, 1), alloc::vec![((0, 1), -1)]).is_err());
        assert!(UprightSet::parametric(q(1, 2), q(0, 1), alloc::vec![((1, 1), 1)]).is_err());
        assert!(UprightSet::parametric(q(0, 1), q(1, 1), alloc::vec![((3, 1), -1)]).is_err());
        assert!(UprightSet::parametric(q(3, 2), q(0, 1), alloc::vec![]).is_err());
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["min", "max", "t=1/2", "t=1", "t=0[2]", "max[-4]", "t=10/19,s=-5/9,r=[(-5,5):+1,(4,-5):-1]", "corners=[(0,1),(2,-1)]"] {
            let u: UprightSet = s.parse().unwrap();
            let back: UprightSet = u.spec().parse().unwrap();
            assert_eq!(u, back, "{s}");
        }
        let u: UprightSet = "t=1/2[2]".parse().unwrap();
        assert_eq!(u.shift(), 2);
        assert!("t=2".parse::<UprightSet>().is_err());
        assert!("bogus".parse::<UprightSet>().is_err());
        assert!("min[3]".parse::<UprightSet>().is_err());
    }

    #[test]
    fn level_matches_membership() {
        let u = UprightSet::projective(q(1, 3)).unwrap();
        for a in -4..4 {
            for b in (-9..9).step_by(2) {
                if let Level::At(n) = u.level(a, b).unwrap() {
                    assert!(u.translate(n).unwrap().contains(a, b).unwrap());
                    assert!(!u.translate(n + 2).unwrap().contains(a, b).unwrap());
                }
            }
        }
    }
}
