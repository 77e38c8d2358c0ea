use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::diagram::{parse_pd, DiagramOptions};

fn pd(s: &str) -> LinkDiagram {
    parse_pd(s, DiagramOptions::default()).unwrap()
}

fn trefoil() -> LinkDiagram {
    pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")
}

fn figure_eight() -> LinkDiagram {
    pd("PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]")
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[test]
fn oriented_resolution_of_trefoils() {
    let t = trefoil();
    assert_eq!(oriented_resolution(&t, &[1]).unwrap(), 0);
    assert_eq!(oriented_resolution(&t, &[-1]).unwrap(), 0);
    assert_eq!(oriented_resolution(&t.mirror(), &[1]).unwrap(), 0b111);
}

#[test]
fn trefoil_generator_has_one_black_and_one_white_circle() {
    let t = trefoil();
    let total = build_total(&t).unwrap();
    for signs in [[1i8], [-1]] {
        let g = bn_generator_chain(&t, &signs).unwrap();
        assert_eq!(g.u, 0);
        assert_eq!(g.black.count_ones(), 1);
        assert_eq!(g.white.count_ones(), 1);
        let xs = g.at_h_one();
        assert_eq!(xs.len(), 2);
        assert!(xs.contains(&0b11));
        let mut degrees: Vec<(i32, i32)> = xs.iter().map(|&x| total.degree(total.index_of(0, x))).collect();
        degrees.sort();
        assert_eq!(degrees, vec![(0, 1), (0, 3)]);
    }
    // The two orientations use complementary colorings.
    let a = bn_generator_chain(&t, &[1]).unwrap();
    let b = bn_generator_chain(&t, &[-1]).unwrap();
    assert_eq!(a.black, b.white);
}

#[test]
fn unknot_generators() {
    let d = LinkDiagram::unknot();
    let a = bn_generator_chain(&d, &[1]).unwrap();
    assert_eq!(a.terms(), vec![(1, 0)]);
    let b = bn_generator_chain(&d, &[-1]).unwrap();
    assert_eq!(b.terms(), vec![(0, 1), (1, 0)]);
}

#[test]
fn lifts_are_cycles() {
    for d in [trefoil(), figure_eight(), trefoil().mirror()] {
        let total = build_total(&d).unwrap();
        let ftot = FilteredComplex::from_complex(&total.theory(Theory::Ftot).unwrap()).unwrap();
        assert!(ftot.is_filtered());
        for signs in [[1i8], [-1]] {
            let c = lift_to_ftot(&d, &signs).unwrap();
            assert!(!c.is_empty());
            assert!(ftot.boundary(&c).is_empty());
        }
    }
}

#[test]
fn trefoil_lift_is_the_generator_itself() {
    let t = trefoil();
    let total = build_total(&t).unwrap();
    let c = lift_to_ftot(&t, &[1]).unwrap();
    assert_eq!(c, bn_chain_indices(&t, &total, &[1]).unwrap());
}

#[test]
fn trefoil_s_is_two_everywhere() {
    let s = SInvariants::new(&trefoil()).unwrap();
    for u in default_uprights() {
        for v in Variant::ALL {
            assert_eq!(s.s(&u, v).unwrap(), 2, "{u} {v:?}");
        }
    }
}

#[test]
fn mirror_trefoil_and_figure_eight() {
    let m = SInvariants::new(&trefoil().mirror()).unwrap();
    let f = SInvariants::new(&figure_eight()).unwrap();
    for u in default_uprights() {
        assert_eq!(m.s(&u, Variant::O).unwrap(), -2, "{u}");
        assert_eq!(f.s(&u, Variant::O).unwrap(), 0, "{u}");
    }
    assert_eq!(rasmussen_s(&trefoil()).unwrap(), 2);
    assert_eq!(rasmussen_s(&trefoil().mirror()).unwrap(), -2);
    assert_eq!(rasmussen_s(&figure_eight()).unwrap(), 0);
}

#[test]
fn unknot_s_is_zero() {
    for d in [LinkDiagram::unknot(), pd("PD[X(1,1,2,2)]"), pd("PD[X(2,1,1,2)]")] {
        for u in default_uprights() {
            for v in Variant::ALL {
                assert_eq!(s_invariant(&d, &u, v).unwrap(), 0, "{u} {v:?}");
            }
        }
        assert_eq!(genus_bound(&d).unwrap(), Ratio::from_integer(0));
    }
}

#[test]
fn genus_bounds() {
    assert_eq!(genus_bound(&trefoil()).unwrap(), Ratio::from_integer(1));
    assert_eq!(genus_bound(&figure_eight()).unwrap(), Ratio::from_integer(0));
}

#[test]
fn non_centered_and_links_are_rejected() {
    let u = UprightSet::min().translate(2).unwrap();
    assert_eq!(s_invariant(&trefoil(), &u, Variant::O), Err(InvariantError::NotCentered));
    let hopf = pd("PD[X(4,1,3,2),X(2,3,1,4)]");
    assert_eq!(SInvariants::new(&hopf).unwrap_err(), InvariantError::NotAKnot(2));
}

/// First model summand: `b -d2-> a`, `c -d1-> d`, `c -h1-> a`, `e -h1-> d`,
/// with `b` in bigrading `(0, s - 1)`; the unique representative is
/// `b + c + e`.
fn first_model(s: i32) -> (FilteredComplex, Vec<u32>) {
    let (a, b, c, d, e) = (0u32, 1, 2, 3, 4);
    let degrees = vec![(2, s + 1), (0, s - 1), (1, s - 1), (2, s - 1), (1, s - 3)];
    let mut cols = vec![Vec::new(); 5];
    cols[b as usize] = vec![a];
    cols[c as usize] = vec![a, d];
    cols[e as usize] = vec![d];
    (FilteredComplex::new(degrees, cols).unwrap(), vec![b, c, e])
}

/// Second model summand: `d -d1-> c`, `d -h1-> e`, `a -d2-> b`, `a -h1-> c`,
/// with `b` in bigrading `(0, s - 1)`; `b`, `c` and `e` are homologous.
fn second_model(s: i32) -> (FilteredComplex, Vec<u32>) {
    let (a, b, c, d, e) = (0u32, 1, 2, 3, 4);
    let degrees = vec![(-2, s - 3), (0, s - 1), (-1, s - 1), (-2, s - 1), (-1, s + 1)];
    let mut cols = vec![Vec::new(); 5];
    cols[d as usize] = vec![c, e];
    cols[a as usize] = vec![b, c];
    (FilteredComplex::new(degrees, cols).unwrap(), vec![b])
}

#[test]
fn first_model_depends_on_one_minus_one() {
    for s in [-2, 0, 4] {
        let (cx, rep) = first_model(s);
        assert!(cx.is_filtered());
        assert!(cx.boundary(&rep).is_empty());
        for u in default_uprights() {
            let expected = if u.contains(1, -1).unwrap() { s } else { s - 2 };
            assert_eq!(cx.max_translate(&rep, &u).unwrap() + 2, expected as i64, "{u}");
        }
    }
}

#[test]
fn second_model_depends_on_minus_one_one() {
    let odd_corner = UprightSet::generated(vec![(0, 1), (-1, 3)]).unwrap();
    assert!(odd_corner.is_centered());
    let mut sets = default_uprights();
    sets.push(odd_corner.clone());
    for s in [-2, 0, 4] {
        let (cx, rep) = second_model(s);
        assert!(cx.is_filtered());
        assert!(cx.boundary(&rep).is_empty());
        for u in &sets {
            let expected = if u.contains(-1, 1).unwrap() { s + 2 } else { s };
            assert_eq!(cx.max_translate(&rep, u).unwrap() + 2, expected as i64, "{u}");
        }
        // Containing (-1, 3) alone does not raise the value.
        assert_eq!(cx.max_translate(&rep, &odd_corner).unwrap() + 2, s as i64);
    }
}

#[test]
fn representability_is_monotone_in_the_translate() {
    let (cx, rep) = first_model(2);
    let u = UprightSet::projective(q(1, 2)).unwrap();
    let best = cx.max_translate(&rep, &u).unwrap();
    for n in (best - 6..=best + 6).step_by(2) {
        let un = u.translate(n).unwrap();
        let ok = cx.representable(&rep, |g| {
            let (h, qq) = cx.degree(g);
            un.contains(h as i64, qq as i64).unwrap()
        });
        assert_eq!(ok, n <= best, "n = {n}");
    }
}

#[test]
fn opposite_orientations_use_complementary_colorings() {
    for name in crate::corpus::KNOTS {
        let d = crate::corpus::named(name).unwrap();
        let a = bn_generator_chain(&d, &[1]).unwrap();
        let b = bn_generator_chain(&d, &[-1]).unwrap();
        assert_eq!(a.u, b.u, "{name}");
        assert_eq!((a.black, a.white), (b.white, b.black), "{name}");
    }
}
