mod common;

use ising_infmax::exact::{expectation, PinnedModel};
use ising_infmax::model::{random_instance, validate_family, FamilyParams, PartialAssignment, Spin, SolverConfig};
use ising_infmax::reduction::{build_gadget, estimate_marginal, probe_limit, Direction};
use ising_infmax::solver::{brute_force_infmax, ExhaustiveSolver, LocalizedSolver, Objective};
use ising_infmax::influence::{global_influence, InfluenceQuery};

#[test]
fn gadget_optimum_is_u_or_w() {
    for seed in 0..10 {
        let m = random_instance(6, 3, (-0.4, 0.4), (-0.5, 0.5), seed).unwrap();
        for k in 1..=2 {
            for x in [-0.8, 0.0, 0.35] {
                let g = build_gadget(&m, seed as usize % 6, k, x).unwrap();
                let phi = |set| {
                    let pins = PartialAssignment::uniform(set, Spin::Plus);
                    global_influence(&InfluenceQuery::global(&g.augmented, &g.weights, &pins)).unwrap()
                };
                let best = brute_force_infmax(&g.augmented, &g.weights, k, Objective::Global, 25).unwrap();
                let claimed = phi(&g.extra).max(phi(&g.witness));
                assert!((best.local_value - claimed).abs() <= 1e-10, "seed {seed}, k {k}, x {x}");
            }
        }
    }
}

#[test]
fn gadget_keeps_family_membership() {
    let params = FamilyParams::new(3, 0.76, 0.24).unwrap();
    for seed in 0..20 {
        let m = random_instance(8, 3, (-0.4, 0.4), (-0.5, 0.5), seed).unwrap();
        assert!(validate_family(&m, &params).holds());
        let g = build_gadget(&m, 0, 3, 1.5).unwrap();
        assert!(validate_family(&g.augmented, &params).holds());
        assert!(g.weights.is_bounded(1.0));
    }
}

#[test]
fn marginals_with_both_solvers() {
    let eps_tol = 0.01;
    let localized = LocalizedSolver {
        delta: 0.24,
        delta_max: Some(3),
        config: SolverConfig::new(1, 0.01).with_radius(20),
    };
    for seed in 0..6 {
        let m = random_instance(8, 3, (-0.4, 0.4), (-0.5, 0.5), seed).unwrap();
        let v = seed as usize % 8;
        let truth = expectation(&PinnedModel::whole(&m, &PartialAssignment::new()).unwrap(), v).unwrap();
        for k in 1..=2 {
            let est = estimate_marginal(&m, v, k, &ExhaustiveSolver::default(), eps_tol).unwrap();
            assert!((est.t - truth).abs() <= 2.0 * eps_tol, "seed {seed}: {} vs {truth}", est.t);
            assert!(est.probes.len() <= probe_limit(eps_tol));
            // probes are consistent: every AtLeast lies below every AtMost
            let top_ge = est.probes.iter().filter(|p| p.1 == Direction::AtLeast).map(|p| p.0).fold(-1.0, f64::max);
            let low_le = est.probes.iter().filter(|p| p.1 == Direction::AtMost).map(|p| p.0).fold(1.0, f64::min);
            assert!(top_ge <= low_le);
        }
        let est = estimate_marginal(&m, v, 1, &localized, eps_tol).unwrap();
        assert!((est.t - truth).abs() <= 2.0 * eps_tol, "localized, seed {seed}");
        assert!((est.probability() - (1.0 + est.t) / 2.0).abs() < 1e-15);
    }
}
