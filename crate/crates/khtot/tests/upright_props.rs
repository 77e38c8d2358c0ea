//! Property tests for upright sets and the inequalities between the
//! s-invariants they define.

use khtot::corpus;
use khtot::invariants::{SInvariants, UprightSet, Variant, Q};
use proptest::prelude::*;
use std::sync::OnceLock;

/// Window of points inspected by the membership properties.
const A_RANGE: std::ops::RangeInclusive<i64> = -6..=6;
const B_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

fn odd_points() -> impl Iterator<Item = (i64, i64)> {
    A_RANGE.flat_map(|a| B_RANGE.filter(|b| b.rem_euclid(2) == 1).map(move |b| (a, b)))
}

fn rational_in_unit() -> impl Strategy<Value = Q> {
    (1i64..=6).prop_flat_map(|q| (0..=q).prop_map(move |p| Q::new(p, q)))
}

/// `U_(t, s, r)` with random overrides on the boundary line.
fn parametric() -> impl Strategy<Value = UprightSet> {
    (rational_in_unit(), -4i64..=4, 1i64..=4, proptest::collection::vec((-6i64..=6, any::<bool>()), 0..6)).prop_map(
        |(t, sn, sd, picks)| {
            let one = Q::from_integer(1);
            let s = Q::new(sn, sd).max(-one).min(one);
            let mut r = Vec::new();
            if t != one {
                for (a, plus) in picks {
                    // On the line a t + b (1 - t) = s (1 - t).
                    let b = s - Q::from_integer(a) * t / (one - t);
                    if !b.is_integer() || b.to_integer().rem_euclid(2) != 1 {
                        continue;
                    }
                    let b = b.to_integer();
                    let default = if b > 0 { 1 } else { -1 };
                    let v = if a == 0 || t == Q::from_integer(0) { default } else if plus { 1 } else { -1 };
                    if !r.iter().any(|&((pa, pb), _)| (pa, pb) == (a, b)) {
                        r.push(((a, b), v));
                    }
                }
            }
            UprightSet::parametric(t, s, r).expect("valid parameters")
        },
    )
}

/// A centered set generated by corners: `(0, 1)` plus corners that keep
/// `(0, -1)` out.
fn centered_generated() -> impl Strategy<Value = UprightSet> {
    proptest::collection::vec((-5i64..=5, -5i64..=4), 0..5).prop_map(|cs| {
        let mut corners = vec![(0, 1)];
        for (a, k) in cs {
            let b = 2 * k + 1;
            if a > 0 || b >= 1 {
                corners.push((a, b));
            }
        }
        UprightSet::generated(corners).unwrap()
    })
}

fn any_centered() -> impl Strategy<Value = UprightSet> {
    prop_oneof![
        Just(UprightSet::min()),
        Just(UprightSet::max()),
        rational_in_unit().prop_map(|t| UprightSet::projective(t).unwrap()),
        parametric(),
        centered_generated(),
    ]
}

fn member(u: &UprightSet, a: i64, b: i64) -> bool {
    u.contains(a, b).unwrap()
}

/// Knots of the corpus and their mirrors, with their invariants built once.
fn knots() -> &'static [(String, SInvariants)] {
    static CELL: OnceLock<Vec<(String, SInvariants)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for name in ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "unknot2"] {
            let d = corpus::named(name).unwrap();
            out.push((name.to_string(), SInvariants::new(&d).unwrap()));
            out.push((format!("m{name}"), SInvariants::new(&d.mirror()).unwrap()));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_is_upward_closed(u in any_centered(), n in -3i64..=3) {
        let u = u.translate(2 * n).unwrap();
        for (a, b) in odd_points() {
            if member(&u, a, b) {
                prop_assert!(member(&u, a + 1, b), "{u}: ({a},{b}) in but ({},{b}) out", a + 1);
                prop_assert!(member(&u, a, b + 2), "{u}: ({a},{b}) in but ({a},{}) out", b + 2);
            }
        }
    }

    #[test]
    fn translation_shifts_the_quantum_coordinate(u in any_centered(), n in -3i64..=3) {
        let v = u.translate(2 * n).unwrap();
        for (a, b) in odd_points() {
            prop_assert_eq!(member(&v, a, b), member(&u, a, b - 2 * n));
        }
        prop_assert!(u.translate(2 * n + 1).is_err());
    }

    #[test]
    fn generated_sets_are_centered_and_between_min_and_max(u in any_centered()) {
        prop_assert!(u.is_centered());
        prop_assert!(member(&u, 0, 1) && !member(&u, 0, -1));
        for (a, b) in odd_points() {
            if member(&UprightSet::min(), a, b) {
                prop_assert!(member(&u, a, b), "{u} misses ({a},{b}) of U_min");
            }
            if member(&u, a, b) {
                prop_assert!(member(&UprightSet::max(), a, b), "{u} has ({a},{b}) outside U_max");
            }
        }
    }

    #[test]
    fn spec_strings_round_trip(u in any_centered(), n in -3i64..=3) {
        let u = u.translate(2 * n).unwrap();
        let back: UprightSet = u.to_string().parse().unwrap();
        for (a, b) in odd_points() {
            prop_assert_eq!(member(&back, a, b), member(&u, a, b));
        }
        prop_assert_eq!(back.to_string(), u.to_string());
    }

    #[test]
    fn level_is_the_largest_translate(u in any_centered()) {
        use khtot::invariants::Level;
        for (a, b) in odd_points() {
            match u.level(a, b).unwrap() {
                Level::At(n) => {
                    prop_assert!(member(&u.translate(n).unwrap(), a, b));
                    prop_assert!(!member(&u.translate(n + 2).unwrap(), a, b));
                }
                Level::Top => prop_assert!(member(&u.translate(40).unwrap(), a, b)),
                Level::Bottom => prop_assert!(!member(&u.translate(-40).unwrap(), a, b)),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_is_monotone_in_the_upright_set(u in centered_generated(), extra in centered_generated()) {
        // The union of two generated sets is generated by both corner lists.
        let corners = |s: &UprightSet| match s.kind() {
            khtot::invariants::UprightKind::Generated(c) => c.clone(),
            _ => unreachable!(),
        };
        let mut all = corners(&u);
        all.extend(corners(&extra));
        let bigger = UprightSet::generated(all).unwrap();
        for (name, inv) in knots() {
            for v in Variant::ALL {
                let (small, large) = (inv.s(&u, v).unwrap(), inv.s(&bigger, v).unwrap());
                prop_assert!(small <= large, "{name} {}: s^{u} = {small} > s^{bigger} = {large}", v.name());
                let lo = inv.s(&UprightSet::min(), v).unwrap();
                let hi = inv.s(&UprightSet::max(), v).unwrap();
                prop_assert!(lo <= small && small <= hi, "{name} {}: {lo} <= {small} <= {hi} fails", v.name());
            }
        }
    }

    #[test]
    fn orientation_variants_agree_and_bound_the_pair(u in any_centered()) {
        for (name, inv) in knots() {
            let o = inv.s(&u, Variant::O).unwrap();
            let minus = inv.s(&u, Variant::MinusO).unwrap();
            let pair = inv.s(&u, Variant::Pair).unwrap();
            prop_assert_eq!(o, minus, "{}: s_o != s_-o for {}", name, u);
            prop_assert!(pair + 2 >= o, "{name}: s_pair + 2 = {} < s_o = {o} for {u}", pair + 2);
        }
    }

    #[test]
    fn slope_one_agrees_with_the_filtered_bar_natan_reading(u in Just(UprightSet::projective(Q::from_integer(1)).unwrap())) {
        for (name, inv) in knots() {
            let d = if let Some(base) = name.strip_prefix('m') { corpus::named(base).unwrap().mirror() } else { corpus::named(name).unwrap() };
            let r = khtot::invariants::rasmussen_s(&d).unwrap();
            for v in Variant::ALL {
                prop_assert_eq!(inv.s(&u, v).unwrap(), r, "{} {}", name, v.name());
            }
        }
    }
}
