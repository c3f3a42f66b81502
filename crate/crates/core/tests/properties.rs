mod common;

use proptest::prelude::*;

use common::{q, random_model, sample_classes};
use zariski_core::chambers::{self, numerically_determined, pairwise_disjoint_support_property};
use zariski_core::lattice::RationalVector;
use zariski_core::surface::{cubic_surface, quartic_y4};
use zariski_core::zariski::{verify_split, zariski_decompose, BruteForceOracle};
use zariski_core::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn class(rank: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(rational(), rank).prop_map(RationalVector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fixpoint_agrees_with_oracle_on_random_models(seed in 0u64..10_000, class_seed in any::<u64>()) {
        let m = random_model(seed);
        let oracle = BruteForceOracle::new(&m).unwrap();
        for d in sample_classes(&m, 8, class_seed) {
            let a = zariski_decompose(&m, &d);
            let b = oracle.decompose(&d);
            prop_assert_eq!(a.is_ok(), b.is_ok(), "{}", d);
            if let (Ok(a), Ok(b)) = (a, b) {
                prop_assert_eq!(&a, &b);
                prop_assert!(verify_split(&m, &d, &a).passed());
            }
        }
    }

    #[test]
    fn decomposition_is_homogeneous(d in class(3), k in (1i64..=9, 1i64..=4)) {
        let m = quartic_y4();
        let lambda = q(k.0, k.1);
        let base = zariski_decompose(&m, &d);
        let scaled = zariski_decompose(&m, &d.scaled(&lambda));
        match (base, scaled) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.scaled(&lambda), b),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn positive_part_is_a_fixed_point(d in class(3)) {
        let m = quartic_y4();
        if let Ok(split) = zariski_decompose(&m, &d) {
            let again = zariski_decompose(&m, split.positive()).unwrap();
            prop_assert_eq!(again.positive(), split.positive());
            prop_assert!(again.negative_terms().is_empty());
            let n = split.negative_part(&m);
            prop_assert_eq!(m.form().pair(split.positive(), &n).unwrap(), q(0, 1));
        }
    }

    #[test]
    fn criterion_matches_disjointness(seed in 0u64..100_000) {
        let m = random_model(seed);
        prop_assert_eq!(numerically_determined(&m).determined, pairwise_disjoint_support_property(&m));
    }

    #[test]
    fn cubic_support_is_the_negative_curve_set(seed in any::<u64>()) {
        let m = cubic_surface();
        let census = chambers::sample_chamber_census(&m, 5, seed).unwrap();
        for s in &census.samples {
            let neg: Vec<String> = s.signature.negative_curves().iter().map(|c| c.to_string()).collect();
            prop_assert_eq!(&s.label.support, &neg);
        }
    }
}

#[test]
fn random_models_cover_both_verdicts() {
    let verdicts: Vec<bool> = (0..100)
        .map(|s| numerically_determined(&random_model(s)).determined)
        .collect();
    assert!(verdicts.iter().any(|&v| v));
    assert!(verdicts.iter().any(|&v| !v));
}
