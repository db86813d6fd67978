use heckoid_core::cancellation::{greedy_piece_count, is_piece, min_piece_count, symmetrize};
use heckoid_core::farey::{classify_slope, Reducer, SlopeClass};
use heckoid_core::heckoid::{canonical_class, epimorphism_exists, make_context};
use heckoid_core::words::{cyclic_s_sequence, relator_word, s_sequence, Word};
use heckoid_core::{cf_from_slope, cf_value, normalize_into_unit, Slope};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn unit_slope(max_p: i64) -> impl Strategy<Value = Slope> {
    (1..=max_p).prop_flat_map(|p| (1..=p).prop_map(move |q| Slope::ratio(q, p)))
}

/// Non-integral `r` in `(0, 1)`.
fn context_slope(max_p: i64) -> impl Strategy<Value = Slope> {
    (2..=max_p).prop_flat_map(|p| (1..p).prop_filter_map("reduced", move |q| (gcd(q, p) == 1).then(|| Slope::ratio(q, p))))
}

fn any_slope() -> impl Strategy<Value = Slope> {
    prop_oneof![
        1 => Just(Slope::infinity()),
        20 => (-5000i64..5000, 1i64..2000).prop_map(|(q, p)| Slope::ratio(q, p)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn continued_fraction_round_trip(s in unit_slope(100_000)) {
        let cf = cf_from_slope(&s).unwrap();
        prop_assert_eq!(cf_value(&cf), s);
        let t = cf.terms();
        prop_assert!(t.iter().all(|&x| x >= 1));
        prop_assert!(t.len() == 1 || *t.last().unwrap() >= 2);
    }

    #[test]
    fn normalization_is_a_projection(s in any_slope()) {
        let (unit, k, sign) = normalize_into_unit(&s);
        prop_assert!(unit.is_infinite() || unit.in_unit_interval());
        let expected = if sign > 0 { s.clone() } else { s.neg() }.add_integer(&(BigInt::from(2) * &k));
        prop_assert_eq!(&unit, &expected);
        let again = normalize_into_unit(&unit);
        prop_assert_eq!(again, (unit, BigInt::from(0), 1));
    }

    #[test]
    fn reduction_replays_and_is_idempotent(r in context_slope(30), n in 2u32..5, s in any_slope()) {
        let reducer = Reducer::new(&r, n).unwrap();
        let red = reducer.reduce(&s).unwrap();
        prop_assert!(red.class.is_canonical());
        let g = red.witness.to_moebius(reducer.parabolic());
        prop_assert_eq!(g.apply(&s), red.s0.clone());
        let again = reducer.reduce(&red.s0).unwrap();
        prop_assert_eq!(&again.s0, &red.s0);
        prop_assert!(again.witness.is_empty());
    }

    #[test]
    fn canonical_classes_partition(r in context_slope(20), n in 2u32..4, s in unit_slope(40)) {
        let ctx = make_context(&r, n).unwrap();
        let s0 = canonical_class(&ctx, &s).unwrap();
        let is_inf = s0.is_infinite();
        let is_r = s0 == r;
        let in_interval = !is_inf && matches!(classify_slope(&s0, &r, n).unwrap(), SlopeClass::InI1 | SlopeClass::InI2);
        prop_assert_eq!(u8::from(is_inf) + u8::from(is_r) + u8::from(in_interval), 1);
    }

    #[test]
    fn torsion_relator_is_never_trivial(r in context_slope(40), n in 2u32..6) {
        let reducer = Reducer::new(&r, n).unwrap();
        prop_assert!(!reducer.in_orbit_of_infinity(&r).unwrap());
    }

    #[test]
    fn even_translation_invariance(r in context_slope(20), s in any_slope(), k in -5i64..5) {
        let ctx = make_context(&r, 2).unwrap();
        let shifted = s.add_integer(&BigInt::from(2 * k));
        prop_assert_eq!(
            epimorphism_exists(&ctx, &s).unwrap().verdict,
            epimorphism_exists(&ctx, &shifted).unwrap().verdict
        );
    }

    #[test]
    fn reflection_invariance(r in context_slope(20), n in 2u32..4, s in any_slope(), k in -5i64..5) {
        let reducer = Reducer::new(&r, n).unwrap();
        let mirrored = s.neg().add_integer(&BigInt::from(2 * k));
        prop_assert_eq!(reducer.in_orbit_of_infinity(&s).unwrap(), reducer.in_orbit_of_infinity(&mirrored).unwrap());
    }

    #[test]
    fn relator_shape(r in unit_slope(300)) {
        let u = relator_word(&r).unwrap();
        prop_assert_eq!(u.len() as i64, 2 * i64::try_from(r.denom()).unwrap());
        prop_assert!(u.is_cyclically_reduced());
        prop_assert_eq!(s_sequence(&u).unwrap().sum(), u.len() as u64);
        let cs = cyclic_s_sequence(&u).unwrap();
        prop_assert_eq!(cs.terms().iter().sum::<u64>(), u.len() as u64);
        prop_assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn greedy_matches_optimum(r in context_slope(9), n in 2u32..4, which in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let set = symmetrize(&r, n).unwrap();
        let e = which.get(set.elements());
        let (i, j) = (a.index(e.len() + 1), b.index(e.len() + 1));
        let w = e.subword(i.min(j), i.max(j));
        let dp = min_piece_count(&w, &set);
        let greedy = greedy_piece_count(&w, &set);
        prop_assert_eq!(dp.is_ok(), greedy.is_ok());
        if let (Ok(x), Ok(y)) = (dp, greedy) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn pieces_are_closed_under_subwords(r in context_slope(9), n in 2u32..4, which in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let set = symmetrize(&r, n).unwrap();
        let pieces = set.maximal_pieces();
        let piece = which.get(&pieces);
        prop_assert!(is_piece(piece, &set).unwrap());
        let (i, j) = (a.index(piece.len()), b.index(piece.len()));
        let sub: Word = piece.subword(i.min(j), i.max(j) + 1);
        prop_assert!(is_piece(&sub, &set).unwrap());
    }
}
