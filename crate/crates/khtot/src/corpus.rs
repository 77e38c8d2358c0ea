//! A small bundled corpus of knot and link diagrams used by tests, examples
//! and the command line.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{parse_pd, DiagramOptions, EdgeId, LinkDiagram};

/// Closure of a braid on `strands` strands; `word` lists generators as
/// `±i` (1-based) for a positive/negative crossing between positions `i`
/// and `i + 1`. Strands run upward; every position must be touched.
pub(crate) fn braid_closure(strands: usize, word: &[i32]) -> LinkDiagram {
    let mut next: EdgeId = strands as EdgeId + 1;
    let mut cur: Vec<EdgeId> = (1..=strands as EdgeId).collect();
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(g != 0 && i + 1 < strands, "generator out of range");
        let (sw, se) = (cur[i], cur[i + 1]);
        let (nw, ne) = (next, next + 1);
        next += 2;
        crossings.push(if g > 0 { [sw, se, ne, nw] } else { [se, ne, nw, sw] });
        cur[i] = nw;
        cur[i + 1] = ne;
    }
    // Close up: the top edge at each position is the bottom edge there.
    for (pos, &top) in cur.iter().enumerate() {
        let bottom = pos as EdgeId + 1;
        for t in crossings.iter_mut() {
            for e in t.iter_mut() {
                if *e == top {
                    *e = bottom;
                }
            }
        }
    }
    LinkDiagram::new(crossings, DiagramOptions::default()).expect("braid closures are valid diagrams")
}

fn pd(text: &str) -> LinkDiagram {
    parse_pd(text, DiagramOptions::default()).expect("corpus PD codes are valid")
}

/// The `(2, n)` torus link as the closure of `σ_1^n` (`n >= 1`); negative
/// `n` gives the mirror. `n = ±1` is a one-crossing unknot.
pub fn torus_2(n: i32) -> LinkDiagram {
    assert!(n != 0, "T(2, 0) is the two-component unlink; use LinkDiagram::unlink(2)");
    braid_closure(2, &vec![n.signum(); n.unsigned_abs() as usize])
}

/// The positive trefoil.
pub fn trefoil() -> LinkDiagram {
    pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")
}

/// The figure-eight knot.
pub fn figure_eight() -> LinkDiagram {
    pd("PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]")
}

/// The Hopf link.
pub fn hopf() -> LinkDiagram {
    torus_2(2)
}

/// A one-crossing diagram of the unknot.
pub fn unknot_kink() -> LinkDiagram {
    pd("PD[X(1,1,2,2)]")
}

/// A two-crossing diagram of the unknot.
pub fn unknot_twist() -> LinkDiagram {
    braid_closure(3, &[1, -2])
}

/// Table knot diagrams by name (`3_1`, `4_1`, `5_1`, `5_2`, `6_1`, `6_2`,
/// `6_3`).
pub fn knot(name: &str) -> Option<LinkDiagram> {
    let code = match name {
        "3_1" => return Some(trefoil()),
        "4_1" => return Some(figure_eight()),
        "5_1" => "PD[X(1,6,2,7),X(3,8,4,9),X(5,10,6,1),X(7,2,8,3),X(9,4,10,5)]",
        "5_2" => "PD[X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)]",
        "6_1" => "PD[X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)]",
        "6_2" => "PD[X(1,4,2,5),X(5,10,6,11),X(3,9,4,8),X(9,3,10,2),X(7,12,8,1),X(11,6,12,7)]",
        "6_3" => "PD[X(4,2,5,1),X(8,4,9,3),X(12,9,1,10),X(10,5,11,6),X(6,11,7,12),X(2,8,3,7)]",
        _ => return None,
    };
    Some(pd(code))
}

/// Any corpus diagram by name: table knots, `unknot` (0 crossings),
/// `unknot1`, `unknot2`, `hopf`, `T2_<n>` for torus links, `unlink<k>`,
/// and `m<name>` for mirrors.
pub fn named(name: &str) -> Option<LinkDiagram> {
    if let Some(rest) = name.strip_prefix('m') {
        return named(rest).map(|d| d.mirror());
    }
    if let Some(n) = name.strip_prefix("T2_") {
        return n.parse::<i32>().ok().filter(|&n| n != 0).map(torus_2);
    }
    if let Some(k) = name.strip_prefix("unlink") {
        return k.parse::<usize>().ok().filter(|&k| k > 0).map(LinkDiagram::unlink);
    }
    match name {
        "unknot" => Some(LinkDiagram::unknot()),
        "unknot1" => Some(unknot_kink()),
        "unknot2" => Some(unknot_twist()),
        "hopf" => Some(hopf()),
        _ => knot(name),
    }
}

/// Names of the knots in the corpus (including one-component torus knots).
pub const KNOTS: &[&str] = &["unknot", "unknot1", "unknot2", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "T2_5", "T2_7"];

/// Names of the multi-component links in the corpus.
pub const LINKS: &[&str] = &["hopf", "T2_4", "T2_6", "unlink2", "unlink3"];

/// Every corpus diagram, knots first.
pub fn all() -> Vec<(&'static str, LinkDiagram)> {
    KNOTS.iter().chain(LINKS).map(|&n| (n, named(n).expect("corpus names resolve"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_knots_are_positive() {
        for n in 1..=7 {
            let d = torus_2(n);
            assert_eq!(d.crossing_count(), n as usize);
            assert_eq!(d.n_plus(), n as usize);
            assert_eq!(d.component_count(), if n % 2 == 0 { 2 } else { 1 });
            assert_eq!(torus_2(-n).n_minus(), n as usize);
        }
    }

    #[test]
    fn closure_of_three_twists_is_the_trefoil_up_to_labels() {
        let a = torus_2(3);
        let b = trefoil();
        assert_eq!(a.n_plus(), b.n_plus());
        assert_eq!(a.component_count(), 1);
    }

    #[test]
    fn corpus_is_well_formed() {
        for (name, d) in all() {
            let knot = KNOTS.contains(&name);
            assert_eq!(d.component_count() == 1, knot, "{name}");
        }
        for k in ["4_1", "5_1", "5_2", "6_1", "6_2", "6_3"] {
            let d = knot(k).unwrap();
            assert_eq!(d.crossing_count(), k[..1].parse::<usize>().unwrap(), "{k}");
        }
        assert_eq!(named("m3_1").unwrap().n_minus(), 3);
        assert!(named("T2_0").is_none());
        assert!(named("nope").is_none());
        assert_eq!(unknot_twist().writhe(), 0);
    }
}
