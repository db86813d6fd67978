//! Facts that tie words, pieces and the Farey reduction together, checked on
//! small corpora.

use heckoid_core::cancellation::{
    is_piece, longest_common_cyclic_subword, min_piece_count_over_elements, necessary_condition_trivial,
    relator_blocks, symmetrize,
};
use heckoid_core::farey::{orbit_bfs_oracle, Reducer};
use heckoid_core::heckoid::unit_slopes;
use heckoid_core::words::{relator_word, CyclicWord};
use heckoid_core::{normalize_into_unit, Slope};

fn sl(s: &str) -> Slope {
    s.parse().unwrap()
}

const PAIRS: [(&str, u32); 5] = [("1/3", 2), ("2/5", 2), ("3/10", 2), ("3/10", 3), ("5/7", 2)];

#[test]
fn no_piece_contains_an_outer_block() {
    for r in unit_slopes(12).into_iter().filter(|r| !r.is_integer()) {
        let [v1, _, v3, _] = relator_blocks(&r).unwrap();
        if v1.is_empty() {
            continue;
        }
        for n in [2, 3] {
            let set = symmetrize(&r, n).unwrap();
            for block in [&v1, &v3] {
                assert!(!is_piece(block, &set).unwrap(), "{r} n={n} block {block}");
                assert!(!is_piece(&block.inverse(), &set).unwrap(), "{r} n={n} block {block}");
            }
        }
    }
}

#[test]
fn full_relator_needs_at_least_4n_pieces() {
    for (r, n) in PAIRS {
        let set = symmetrize(&sl(r), n).unwrap();
        let t = min_piece_count_over_elements(&set).unwrap();
        assert!(t >= 4 * n as usize, "{r} n={n}: {t}");
    }
}

#[test]
fn trivial_words_share_long_subwords_with_the_relator() {
    for (r, n) in PAIRS {
        let r = sl(r);
        let p = i64::try_from(r.denom()).unwrap() as f64;
        let threshold = (1.0 - 1.0 / (2.0 * n as f64)) * 2.0 * p * n as f64;
        for s in orbit_bfs_oracle(&r, n, 4, 200).unwrap() {
            let (unit, _, _) = normalize_into_unit(&s);
            if unit.is_infinite() || unit.is_integer() {
                continue;
            }
            let u = relator_word(&unit).unwrap();
            assert!(necessary_condition_trivial(&u, &r, n).unwrap(), "{r} {n} {s}");
            let common = longest_common_cyclic_subword(&CyclicWord::new(u).unwrap(), &r, n).unwrap();
            assert!(common as f64 > threshold, "{r} {n} {s}: {common} <= {threshold}");
        }
    }
}

#[test]
fn interval_slopes_avoid_the_patterns() {
    for (r, n) in PAIRS {
        let r = sl(r);
        let reducer = Reducer::new(&r, n).unwrap();
        for s in unit_slopes(40) {
            if s.is_integer() || s == r || !reducer.classify(&s).is_canonical() || s.is_infinite() {
                continue;
            }
            let u = relator_word(&s).unwrap();
            assert!(!necessary_condition_trivial(&u, &r, n).unwrap(), "{r} {n} {s}");
        }
    }
}

#[test]
fn oracle_points_all_reduce_to_infinity() {
    for (r, n) in PAIRS {
        let r = sl(r);
        let reducer = Reducer::new(&r, n).unwrap();
        let orbit = orbit_bfs_oracle(&r, n, 6, 200).unwrap();
        assert_eq!(orbit.last(), Some(&Slope::infinity()));
        for s in &orbit {
            assert!(reducer.in_orbit_of_infinity(s).unwrap(), "{r} {n} {s}");
        }
    }
}
