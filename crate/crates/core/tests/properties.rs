//! Randomized invariants at sizes beyond the exhaustive range.

use proptest::prelude::*;
use rectlab::bijection::{cut_depth, delta, delta_inv, diagonal_layout};
use rectlab::patterns::{self, PatternId};
use rectlab::perm::{decompose, flatten, is_separable};
use rectlab::{canonicalize, Permutation, SegmentStructure};

/// Separable permutation of 1..n from a stream of choices: split point and sum kind.
fn build(n: usize, choices: &mut impl Iterator<Item = (usize, bool)>) -> Vec<u8> {
    if n == 1 {
        return vec![1];
    }
    let (k, direct) = choices.next().unwrap_or((1, true));
    let k = 1 + k % (n - 1);
    let (a, b) = (build(k, choices), build(n - k, choices));
    if direct {
        a.into_iter().chain(b.into_iter().map(|v| v + k as u8)).collect()
    } else {
        a.into_iter().map(|v| v + (n - k) as u8).chain(b).collect()
    }
}

fn separable(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max, proptest::collection::vec((0usize..64, any::<bool>()), 64))
        .prop_map(|(n, c)| Permutation::new(build(n, &mut c.into_iter())).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_round_trips(p in separable(40)) {
        prop_assert!(is_separable(&p));
        let t = decompose(&p).unwrap();
        prop_assert!(t.is_normal());
        prop_assert_eq!(flatten(&t), p.clone());
        prop_assert_eq!(decompose(&flatten(&t)).unwrap(), t);
    }

    #[test]
    fn reverse_complement_keeps_separability(p in separable(40)) {
        let rc = p.reverse().complement();
        prop_assert!(is_separable(&rc));
        prop_assert_eq!(decompose(&rc).unwrap(), decompose(&p).unwrap().reverse_complement());
    }

    #[test]
    fn delta_round_trip(p in separable(24)) {
        let d = delta_inv(&p).unwrap();
        prop_assert!(d.is_valid() && d.is_tight());
        prop_assert_eq!(delta(&d).unwrap(), p.clone());
        prop_assert_eq!(cut_depth(&d).unwrap(), decompose(&p).unwrap().depth());
        prop_assert_eq!(delta(&d.rotate_180()).unwrap(), p.reverse().complement());
    }

    #[test]
    fn layout_choice_does_not_change_the_class(p in separable(24)) {
        let loose = diagonal_layout(&decompose(&p).unwrap());
        prop_assert_eq!(canonicalize(&loose), canonicalize(&delta_inv(&p).unwrap()));
    }

    #[test]
    fn segment_count_and_pattern_basics(p in separable(20)) {
        let d = delta_inv(&p).unwrap();
        let st = SegmentStructure::new(&d).unwrap();
        prop_assert_eq!(st.internal_count(), d.len() - 1);
        prop_assert!(patterns::is_guillotine(&d));
        prop_assert!(patterns::is_diagonal(&st));
        for id in [PatternId::P1, PatternId::P2, PatternId::P3, PatternId::P4] {
            prop_assert!(!patterns::contains(&st, id));
        }
    }

    #[test]
    fn reflection_maps_profiles(p in separable(16)) {
        let d = delta_inv(&p).unwrap();
        let a = patterns::profile(&SegmentStructure::new(&d).unwrap());
        let b = patterns::profile(&SegmentStructure::new(&d.reflect_diagonal()).unwrap());
        prop_assert_eq!(b, a.diagonal_image());
    }
}
