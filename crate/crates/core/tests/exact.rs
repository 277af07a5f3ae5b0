mod common;

use ising_infmax::exact::{expectation, expectations, log_partition, PinnedModel};
use ising_infmax::model::{random_instance, IsingModel, PartialAssignment, Spin};
use proptest::prelude::*;

fn full_assignment(pm: &PinnedModel, code: u64) -> PartialAssignment {
    let pins = pm.pinning();
    let free = pm.free_vertices();
    let mut config = pins.clone();
    for (i, &v) in free.iter().enumerate() {
        config.insert(v, if code >> i & 1 == 0 { Spin::Plus } else { Spin::Minus });
    }
    config
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization((m, pins) in common::pinned_models(1..=12, 0.6, 3)) {
        let pm = PinnedModel::whole(&m, &pins).unwrap();
        let log_z = log_partition(&pm).unwrap();
        let total: f64 = (0..1u64 << pm.free_count())
            .map(|code| (pm.log_weight(&full_assignment(&pm, code)).unwrap() - log_z).exp())
            .sum();
        prop_assert!((total - 1.0).abs() <= 1e-12, "total = {total}");
    }

    #[test]
    fn matches_direct_enumeration((m, pins) in common::pinned_models(1..=10, 0.6, 3)) {
        let pm = PinnedModel::whole(&m, &pins).unwrap();
        let log_z = log_partition(&pm).unwrap();
        prop_assert!((log_z - common::partition(&m, &pins).ln()).abs() <= 1e-12);
        let e = expectations(&pm).unwrap();
        for v in 0..m.n() {
            let reference = common::brute_expectation(&m, &pins, v);
            prop_assert!((e[v] - reference).abs() <= 1e-12, "v = {v}: {} vs {reference}", e[v]);
        }
    }

    #[test]
    fn conditioning_by_ratio(m in common::models(2..=10, 0.6), u in 0usize..10, v in 0usize..10, s in common::spin()) {
        let (u, v) = (u % m.n(), v % m.n());
        prop_assume!(u != v);
        let pins = common::assignment(&[(u, s)]);
        let conditional = expectation(&PinnedModel::whole(&m, &pins).unwrap(), v).unwrap();
        // E[X_v 1{X_u = s}] / Pr(X_u = s) from the unpinned joint weights
        let configs = common::configurations(&m, &PartialAssignment::new());
        let (mut num, mut den) = (0.0, 0.0);
        for (x, w) in &configs {
            if x[u] == s.value() {
                num += w * x[v];
                den += w;
            }
        }
        prop_assert!((conditional - num / den).abs() <= 1e-12);
    }

    #[test]
    fn spin_flip_negates((m, pins) in common::pinned_models(1..=12, 0.6, 3)) {
        let e = expectations(&PinnedModel::whole(&m, &pins).unwrap()).unwrap();
        let flipped = expectations(&PinnedModel::whole(&m.with_negated_fields(), &pins.negated()).unwrap()).unwrap();
        for (a, b) in e.iter().zip(&flipped) {
            prop_assert!((a + b).abs() <= 1e-12);
        }
    }

    #[test]
    fn disjoint_union_factorizes(a in common::models(1..=8, 0.6), b in common::models(1..=8, 0.6)) {
        let none = PartialAssignment::new();
        let lz = |m: &IsingModel| log_partition(&PinnedModel::whole(m, &none).unwrap()).unwrap();
        let joint = lz(&a.disjoint_union(&b));
        prop_assert!((joint - (lz(&a) + lz(&b))).abs() <= 1e-12 * joint.abs().max(1.0));
    }

    #[test]
    fn ferromagnetic_monotonicity(seed in any::<u64>(), n in 2usize..=10, u in 0usize..10, v in 0usize..10) {
        let m = random_instance(n, 3, (0.0, 0.8), (0.0, 0.0), seed).unwrap();
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v);
        let e = |s| expectation(&PinnedModel::whole(&m, &common::assignment(&[(u, s)])).unwrap(), v).unwrap();
        prop_assert!(e(Spin::Plus) >= e(Spin::Minus) - 1e-12);
    }
}

#[test]
fn two_vertex_closed_forms() {
    for beta in [-0.7, -0.3, 0.0, 0.3, 0.9] {
        let m = IsingModel::new(vec![0.0; 2], [(0, 1, beta)]).unwrap();
        for (s, sign) in [(Spin::Plus, 1.0), (Spin::Minus, -1.0)] {
            let pm = PinnedModel::whole(&m, &common::assignment(&[(0, s)])).unwrap();
            assert!((expectation(&pm, 1).unwrap() - sign * f64::tanh(beta)).abs() <= 1e-12);
        }
    }
}
