use std::collections::BTreeMap;

use knotperi_core::diagram::{compute_regions, parse_pd};
use knotperi_core::peripheral::build_fundamental_block;
use knotperi_core::presentation::build_augmented_dehn;

/// (bottom, top, left, right) per square.
type Sq = (u32, u32, u32, u32);

const FIVE_TWO: &str = "X(4,2,5,1) X(8,4,9,3) X(10,6,1,5) X(6,10,7,9) X(2,8,3,7)";

const VERTICALS: [u32; 11] = [5, 2, 3, 4, 5, 2, 5, 4, 3, 2, 5];
const TOPS: [u32; 10] = [6, 0, 6, 0, 1, 6, 0, 6, 0, 1];
const BOTTOMS: [u32; 10] = [1, 6, 0, 6, 0, 1, 6, 0, 6, 0];

fn golden() -> Vec<Sq> {
    (0..10).map(|i| (BOTTOMS[i], TOPS[i], VERTICALS[i], VERTICALS[i + 1])).collect()
}

fn block_squares(pd: &str) -> Vec<Sq> {
    let d = compute_regions(&parse_pd(pd).unwrap(), None).unwrap();
    let p = build_augmented_dehn(&d).unwrap();
    let b = build_fundamental_block(&d, &p).unwrap();
    b.squares().iter().map(|s| (s.bottom, s.top, s.left, s.right)).collect()
}

/// One consistent relabelling taking every label of `a` to `b`.
fn bijective(a: &[Sq], b: &[Sq]) -> bool {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    for (x, y) in a.iter().zip(b) {
        for (u, v) in [(x.0, y.0), (x.1, y.1), (x.2, y.2), (x.3, y.3)] {
            if *fwd.entry(u).or_insert(v) != v || *back.entry(v).or_insert(u) != u {
                return false;
            }
        }
    }
    true
}

/// Even cyclic shifts, left-right reversal and top-bottom swap.
fn variants(s: &[Sq]) -> Vec<Vec<Sq>> {
    let mut out = Vec::new();
    for reverse in [false, true] {
        for swap in [false, true] {
            let mut base: Vec<Sq> = s.to_vec();
            if reverse {
                base = base.into_iter().rev().map(|(b, t, l, r)| (b, t, r, l)).collect();
            }
            if swap {
                base = base.into_iter().map(|(b, t, l, r)| (t, b, l, r)).collect();
            }
            for k in (0..base.len()).step_by(2) {
                let mut v = base.clone();
                v.rotate_left(k);
                out.push(v);
            }
        }
    }
    out
}

fn matches_golden(pd: &str) -> bool {
    let g = golden();
    variants(&block_squares(pd)).iter().any(|v| bijective(v, &g))
}

#[test]
fn golden_is_self_consistent() {
    assert_eq!(VERTICALS[0], VERTICALS[10]);
    for i in 0..10 {
        assert_eq!(TOPS[i], BOTTOMS[(i + 1) % 10]);
    }
}

#[test]
fn five_two_structure_is_exact() {
    for pd in [
        FIVE_TWO,
        "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
        "X(10,3,1,4) X(2,7,3,8) X(4,9,5,10) X(6,1,7,2) X(8,5,9,6)",
    ] {
        let s = block_squares(pd);
        assert_eq!(s.len(), 10);
        assert_eq!(s[0].2, s[9].3);
        for i in 0..10 {
            assert_eq!(s[i].1, s[(i + 1) % 10].0);
        }
    }
}

#[test]
fn five_two_matches_golden_up_to_symmetry() {
    let pd = parse_pd(FIVE_TWO).unwrap();
    for outer in 0..7 {
        let d = compute_regions(&pd, Some(outer)).unwrap();
        let p = build_augmented_dehn(&d).unwrap();
        let b = build_fundamental_block(&d, &p).unwrap();
        let s: Vec<Sq> = b.squares().iter().map(|s| (s.bottom, s.top, s.left, s.right)).collect();
        assert!(variants(&s).iter().any(|v| bijective(v, &golden())), "outer {outer}");
    }
}

#[test]
fn mirror_and_flype_do_not_match() {
    // The block is a property of the diagram, not of the knot type.
    assert!(!matches_golden("X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)"));
    assert!(!matches_golden("X(10,3,1,4) X(2,7,3,8) X(4,9,5,10) X(6,1,7,2) X(8,5,9,6)"));
}

#[test]
fn other_knots_do_not_match() {
    assert!(!matches_golden("X(10,5,1,6) X(2,7,3,8) X(4,9,5,10) X(6,1,7,2) X(8,3,9,4)"));
}
