//! Independent reference computations: direct sums over all `2^n`
//! configurations, no Gray code, no component splitting, no log-space.
#![allow(dead_code)]

use ising_infmax::model::{random_instance, IsingModel, PartialAssignment, Spin, WeightVector};
use proptest::prelude::*;

pub fn energy(model: &IsingModel, x: &[f64]) -> f64 {
    let fields: f64 = model.fields().iter().zip(x).map(|(h, s)| h * s).sum();
    let pairs: f64 = model.edges().iter().map(|e| e.beta * x[e.u] * x[e.v]).sum();
    fields + pairs
}

/// All configurations consistent with `pins`, each with its unnormalized weight.
pub fn configurations(model: &IsingModel, pins: &PartialAssignment) -> Vec<(Vec<f64>, f64)> {
    let n = model.n();
    (0..1u64 << n)
        .map(|code| {
            (0..n)
                .map(|v| if code >> v & 1 == 0 { 1.0 } else { -1.0 })
                .collect::<Vec<f64>>()
        })
        .filter(|x| pins.iter().all(|(v, s)| x[v] == s.value()))
        .map(|x| {
            let w = energy(model, &x).exp();
            (x, w)
        })
        .collect()
}

pub fn partition(model: &IsingModel, pins: &PartialAssignment) -> f64 {
    configurations(model, pins).iter().map(|(_, w)| w).sum()
}

pub fn mean_of(model: &IsingModel, pins: &PartialAssignment, f: impl Fn(&[f64]) -> f64) -> f64 {
    let configs = configurations(model, pins);
    let z: f64 = configs.iter().map(|(_, w)| w).sum();
    configs.iter().map(|(x, w)| w * f(x)).sum::<f64>() / z
}

pub fn brute_expectation(model: &IsingModel, pins: &PartialAssignment, v: usize) -> f64 {
    mean_of(model, pins, |x| x[v])
}

pub fn brute_influence(model: &IsingModel, weights: &WeightVector, pins: &PartialAssignment) -> f64 {
    let linear = |x: &[f64]| weights.as_slice().iter().zip(x).map(|(a, s)| a * s).sum::<f64>();
    mean_of(model, pins, linear) - mean_of(model, &PartialAssignment::new(), linear)
}

pub fn assignment(pairs: &[(usize, Spin)]) -> PartialAssignment {
    PartialAssignment::from_pairs(pairs.iter().copied()).unwrap()
}

/// Models with `n` in `sizes`, degree at most 3, `|beta| <= beta_max`, `|h| <= 0.5`.
pub fn models(sizes: std::ops::RangeInclusive<usize>, beta_max: f64) -> impl Strategy<Value = IsingModel> {
    (sizes, any::<u64>())
        .prop_map(move |(n, seed)| random_instance(n, 3, (-beta_max, beta_max), (-0.5, 0.5), seed).unwrap())
}

pub fn spin() -> impl Strategy<Value = Spin> {
    prop_oneof![Just(Spin::Plus), Just(Spin::Minus)]
}

/// A model together with a pinning of up to `max_pins` distinct vertices.
pub fn pinned_models(
    sizes: std::ops::RangeInclusive<usize>,
    beta_max: f64,
    max_pins: usize,
) -> impl Strategy<Value = (IsingModel, PartialAssignment)> {
    models(sizes, beta_max).prop_flat_map(move |m| {
        let n = m.n();
        let pins = proptest::collection::btree_map(0..n, spin(), 0..=max_pins.min(n));
        (Just(m), pins.prop_map(|p| PartialAssignment::from_pairs(p).unwrap()))
    })
}
