mod common;

use ising_infmax::graph::{self, VertexSet};
use ising_infmax::influence::{
    decompose_local, fit_geometric, global_influence, influence_decay_profile, local_influence, total_influence_sums,
    InfluenceQuery,
};
use ising_infmax::model::{random_instance, random_weights, IsingModel, PartialAssignment, Spin, WeightVector};
use proptest::prelude::*;

fn weights_for(m: &IsingModel, seed: u64) -> WeightVector {
    random_weights(m.n(), (-1.0, 1.0), seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn global_matches_direct_enumeration((m, pins) in common::pinned_models(1..=10, 0.4, 3), seed in any::<u64>()) {
        let a = weights_for(&m, seed);
        let phi = global_influence(&InfluenceQuery::global(&m, &a, &pins)).unwrap();
        prop_assert!((phi - common::brute_influence(&m, &a, &pins)).abs() <= 1e-12);
    }

    #[test]
    fn local_is_global_on_the_ball((m, pins) in common::pinned_models(1..=10, 0.4, 3), seed in any::<u64>(), r in 0usize..4) {
        prop_assume!(!pins.is_empty());
        let a = weights_for(&m, seed);
        let b = graph::ball(&m, &pins.vertices(), r).unwrap();
        let sub = m.induced(&b).unwrap();
        let sub_a = WeightVector::new(b.iter().map(|&v| a.get(v)).collect());
        let sub_pins = PartialAssignment::from_pairs(pins.iter().map(|(v, s)| (b.position(v).unwrap(), s))).unwrap();
        let local = local_influence(&InfluenceQuery::local(&m, &a, &pins, r)).unwrap();
        prop_assert!((local - common::brute_influence(&sub, &sub_a, &sub_pins)).abs() <= 1e-12);
    }

    #[test]
    fn decomposition_identity((m, pins) in common::pinned_models(1..=14, 0.4, 4), seed in any::<u64>(), r in 0usize..4) {
        let a = weights_for(&m, seed);
        let q = InfluenceQuery::local(&m, &a, &pins, r);
        let whole = local_influence(&q).unwrap();
        let parts = decompose_local(&q).unwrap();
        let sum: f64 = parts.iter().map(|(_, v)| v).sum();
        prop_assert!((whole - sum).abs() <= 1e-10);
        let covered = parts.iter().fold(VertexSet::empty(), |acc, (t, _)| acc.union(t));
        prop_assert_eq!(covered, pins.vertices());
    }

    #[test]
    fn saturation((m, pins) in common::pinned_models(1..=12, 0.4, 3), seed in any::<u64>()) {
        let a = weights_for(&m, seed);
        let r = graph::diameter(&m);
        let global = global_influence(&InfluenceQuery::global(&m, &a, &pins)).unwrap();
        let local = local_influence(&InfluenceQuery::local(&m, &a, &pins, r)).unwrap();
        prop_assert!((global - local).abs() <= 1e-10);
    }

    #[test]
    fn linear_in_weights((m, pins) in common::pinned_models(1..=12, 0.4, 3), seed in any::<u64>(), t in -3.0f64..3.0) {
        let a = weights_for(&m, seed);
        let ta = a.scaled(t);
        let phi = global_influence(&InfluenceQuery::global(&m, &a, &pins)).unwrap();
        let scaled = global_influence(&InfluenceQuery::global(&m, &ta, &pins)).unwrap();
        prop_assert!((scaled - t * phi).abs() <= 1e-12 * (1.0 + phi.abs()));
    }
}

#[test]
fn empty_pinning_has_no_influence() {
    let m = random_instance(10, 3, (-0.4, 0.4), (-0.5, 0.5), 1).unwrap();
    let a = WeightVector::uniform(10, 1.0);
    let none = PartialAssignment::new();
    assert_eq!(global_influence(&InfluenceQuery::global(&m, &a, &none)).unwrap(), 0.0);
    assert_eq!(local_influence(&InfluenceQuery::local(&m, &a, &none, 2)).unwrap(), 0.0);
}

#[test]
fn separated_pins_on_a_path() {
    let m = IsingModel::new(vec![0.0; 10], (0..9).map(|i| (i, i + 1, 0.3))).unwrap();
    let a = WeightVector::uniform(10, 1.0);
    let pins = common::assignment(&[(0, Spin::Plus), (9, Spin::Plus)]);
    let q = InfluenceQuery::local(&m, &a, &pins, 1);
    let expected = 2.0 * (1.0 + 0.3f64.tanh());
    assert!((local_influence(&q).unwrap() - expected).abs() < 1e-12);
    assert!((expected - 2.582_626).abs() < 1e-6);
    let parts = decompose_local(&q).unwrap();
    assert_eq!(parts.len(), 2);
    for (_, v) in parts {
        assert!((v - 1.291_313).abs() < 1e-6);
    }
}

#[test]
fn cycle_profile_decays() {
    let m = IsingModel::new(vec![0.0; 12], (0..12).map(|i| (i, (i + 1) % 12, 0.3))).unwrap();
    let a = WeightVector::uniform(12, 1.0);
    let pins = common::assignment(&[(0, Spin::Plus)]);
    let gaps = influence_decay_profile(&m, &a, &pins, 8, 25).unwrap();
    assert!(gaps[..6].windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert!(gaps[6..].iter().all(|&g| g <= 1e-12), "{gaps:?}");
    let fit = fit_geometric(&gaps, 1e-12).unwrap();
    assert!(fit.ratio < 0.9, "{fit:?}");
}

#[test]
fn total_influence_decays_geometrically() {
    for seed in 0..10 {
        let m = random_instance(12, 3, (-0.4, 0.4), (-0.5, 0.5), seed).unwrap();
        for u in [0, 5, 11] {
            let sums = total_influence_sums(&m, u, &PartialAssignment::new(), 25).unwrap();
            assert_eq!(*sums.last().unwrap(), 0.0);
            assert!(sums.windows(2).all(|w| w[1] <= w[0] + 1e-15));
            // smallest C' with sums[L - 1] <= C' 0.76^L, which must be finite
            let c = sums
                .iter()
                .enumerate()
                .map(|(i, s)| s / 0.76f64.powi(i as i32 + 1))
                .fold(0.0, f64::max);
            assert!(c.is_finite() && c < 10.0, "seed {seed}, u {u}: C' = {c}");
        }
    }
}
