use disentangle::graph::ConversationPartition;
use disentangle::metrics::{exact_match_counts, exact_match_f1, loc_rand, one_to_one, scaled_vi, shen_f};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (ConversationPartition, ConversationPartition)> {
    (2usize..=30).prop_flat_map(|n| {
        (
            proptest::collection::vec(0usize..n, n),
            proptest::collection::vec(0usize..n, n),
        )
            .prop_map(|(a, b)| (ConversationPartition::from_labels(&a), ConversationPartition::from_labels(&b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scores_stay_in_range((a, b) in pair()) {
        let vi = scaled_vi(&a, &b).unwrap();
        prop_assert!((-1e-9..=100.0 + 1e-9).contains(&vi));
        let oto = one_to_one(&a, &b).unwrap();
        prop_assert!((0.0..=100.0).contains(&oto));
        let e = exact_match_f1(&a, &b).unwrap();
        for x in [e.precision, e.recall, e.f1] {
            prop_assert!((0.0..=1.0).contains(&x));
        }
        let shen = shen_f(&a, &b).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&shen));
        let loc = loc_rand(&a, &b).unwrap();
        prop_assert!((0.0..=100.0).contains(&loc));
    }

    #[test]
    fn symmetric_scores((a, b) in pair()) {
        prop_assert!((scaled_vi(&a, &b).unwrap() - scaled_vi(&b, &a).unwrap()).abs() < 1e-9);
        prop_assert_eq!(one_to_one(&a, &b).unwrap(), one_to_one(&b, &a).unwrap());
        prop_assert_eq!(loc_rand(&a, &b).unwrap(), loc_rand(&b, &a).unwrap());
        let (ab, ba) = (exact_match_f1(&a, &b).unwrap(), exact_match_f1(&b, &a).unwrap());
        prop_assert_eq!(ab.precision, ba.recall);
        prop_assert_eq!(ab.recall, ba.precision);
    }

    #[test]
    fn exact_matches_bounded_by_either_side((a, b) in pair()) {
        let (matched, predicted, gold) = exact_match_counts(&a, &b);
        prop_assert!(matched <= predicted.min(gold));
    }

    #[test]
    fn self_agreement_is_perfect((a, _b) in pair()) {
        prop_assert!((scaled_vi(&a, &a).unwrap() - 100.0).abs() < 1e-9);
        prop_assert_eq!(one_to_one(&a, &a).unwrap(), 100.0);
        prop_assert!((shen_f(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        prop_assert_eq!(loc_rand(&a, &a).unwrap(), 100.0);
    }
}
