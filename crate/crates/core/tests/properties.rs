use proptest::prelude::*;

use knotperi_core::diagram::{compute_regions, parse_pd};
use knotperi_core::geodesic::{free_reduce, is_freely_reduced, is_geodesic, is_identity, reduce_to_geodesic};
use knotperi_core::oracle::{bfs_is_identity, OracleConfig, OracleVerdict};
use knotperi_core::peripheral::{
    build_complex, build_fundamental_block, is_conjugate_peripheral, is_peripheral, PeripheralComplex,
};
use knotperi_core::presentation::{build_augmented_dehn, dehn_to_augmented, SymmetrizedPresentation};
use knotperi_core::{Letter, Word};

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
const FIVE_TWO: &str = "X(4,2,5,1) X(8,4,9,3) X(10,6,1,5) X(6,10,7,9) X(2,8,3,7)";
const SIX_THREE: &str = "X(12,3,1,4) X(2,7,3,8) X(4,10,5,9) X(6,1,7,2) X(8,12,9,11) X(10,6,11,5)";

fn setup(pd: &str) -> (SymmetrizedPresentation, PeripheralComplex) {
    let d = compute_regions(&parse_pd(pd).unwrap(), None).unwrap();
    let p = build_augmented_dehn(&d).unwrap();
    let c = build_complex(build_fundamental_block(&d, &p).unwrap());
    (p, c)
}

/// Words over `generators` generators, not necessarily reduced.
fn word(generators: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..generators, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
}

fn knot() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![TREFOIL, FIGURE_EIGHT, FIVE_TWO, SIX_THREE])
}

fn knot_and_word(max_len: usize) -> impl Strategy<Value = (&'static str, Word)> {
    knot().prop_flat_map(move |k| {
        let n = parse_pd(k).unwrap().crossing_count() as u32;
        (Just(k), word(n + 2, max_len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_reduction_is_idempotent(w in word(6, 30)) {
        let r = free_reduce(&w);
        prop_assert!(is_freely_reduced(&r));
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert_eq!(r.len() % 2, w.len() % 2);
    }

    #[test]
    fn geodesic_reduction_is_idempotent((k, w) in knot_and_word(24)) {
        let (p, _) = setup(k);
        let g = reduce_to_geodesic(&p, &w);
        prop_assert!(is_geodesic(&p, &g));
        prop_assert!(g.len() <= w.len());
        prop_assert_eq!(g.len() % 2, w.len() % 2);
        prop_assert_eq!(reduce_to_geodesic(&p, &g), g);
    }

    #[test]
    fn inverse_has_same_geodesic_length((k, w) in knot_and_word(24)) {
        let (p, _) = setup(k);
        prop_assert_eq!(reduce_to_geodesic(&p, &w).len(), reduce_to_geodesic(&p, &w.inverse()).len());
    }

    #[test]
    fn word_times_inverse_is_trivial((k, w) in knot_and_word(20)) {
        let (p, _) = setup(k);
        prop_assert!(is_identity(&p, &(&w * &w.inverse())));
    }

    #[test]
    fn conjugated_relators_are_trivial((k, w) in knot_and_word(12), pick in any::<prop::sample::Index>()) {
        let (p, _) = setup(k);
        let r = p.relators()[pick.index(p.relators().len())].word();
        prop_assert!(is_identity(&p, &(&(&w * &r) * &w.inverse())));
    }

    #[test]
    fn equal_words_reduce_to_equal_lengths((k, u) in knot_and_word(12), pick in any::<prop::sample::Index>(), at in 0usize..13) {
        // Splicing a relator into a word does not change the element.
        let (p, _) = setup(k);
        let r = p.relators()[pick.index(p.relators().len())].word();
        let at = at.min(u.len());
        let v = &(&u.prefix(at) * &r) * &u.slice(at, u.len());
        prop_assert!(is_identity(&p, &(&u.inverse() * &v)));
        prop_assert_eq!(reduce_to_geodesic(&p, &u).len(), reduce_to_geodesic(&p, &v).len());
    }

    #[test]
    fn dehn_rewrite_is_a_homomorphism(u in word(5, 10), v in word(5, 10)) {
        let shift = |w: &Word| -> Word { w.iter().map(|l| Letter::new(l.generator.0 + 1, l.inverse)).collect() };
        let (u, v) = (shift(&u), shift(&v));
        let whole = dehn_to_augmented(&(&u * &v)).unwrap();
        let parts = &dehn_to_augmented(&u).unwrap() * &dehn_to_augmented(&v).unwrap();
        prop_assert_eq!(&whole, &parts);
        prop_assert_eq!(
            free_reduce(&dehn_to_augmented(&free_reduce(&u)).unwrap()),
            free_reduce(&dehn_to_augmented(&u).unwrap())
        );
    }

    #[test]
    fn oracle_agrees_on_short_words((k, w) in knot_and_word(5)) {
        let (p, _) = setup(k);
        let w = free_reduce(&w);
        let cfg = OracleConfig { max_length: None, max_steps: 50_000 };
        match bfs_is_identity(&p, &w, &cfg) {
            OracleVerdict::Identity => prop_assert!(is_identity(&p, &w)),
            OracleVerdict::NotIdentity => prop_assert!(!is_identity(&p, &w)),
            OracleVerdict::Inconclusive => {}
        }
    }

    #[test]
    fn staircase_round_trip(k in knot(), a in -4i64..=4, b in -4i64..=4) {
        let (p, c) = setup(k);
        let v = is_peripheral(&c, &p, &c.staircase_word(a, b));
        prop_assert!(v.peripheral);
        prop_assert_eq!((v.a, v.b), (a, b));
    }

    #[test]
    fn peripheral_verdicts_are_sound((k, w) in knot_and_word(16)) {
        let (p, c) = setup(k);
        let v = is_peripheral(&c, &p, &w);
        if v.peripheral {
            let rest = &w * &c.staircase_word(v.a, v.b).inverse();
            prop_assert!(is_identity(&p, &rest));
            prop_assert!(is_conjugate_peripheral(&c, &p, &w).verdict.peripheral);
        }
    }

    #[test]
    fn conjugates_of_peripheral_elements((k, g) in knot_and_word(8), a in -2i64..=2, b in -2i64..=2) {
        let (p, c) = setup(k);
        let w = &(&g * &c.staircase_word(a, b)) * &g.inverse();
        let v = is_conjugate_peripheral(&c, &p, &w);
        prop_assert!(v.verdict.peripheral);
        if (a, b) != (0, 0) {
            // The conjugacy class of λ^a μ^b meets the peripheral subgroup
            // in λ^a μ^b only, up to the orientation of the walk.
            prop_assert!((v.verdict.a, v.verdict.b) == (a, b) || (v.verdict.a, v.verdict.b) == (-a, -b),
                "({a},{b}) came back as ({},{})", v.verdict.a, v.verdict.b);
        }
    }
}
