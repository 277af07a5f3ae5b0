//! Exact inference by enumeration over the free spins of a (restricted,
//! pinned) model.
//!
//! Configurations are visited in Gray-code order so each step flips one spin
//! and the energy and all tracked linear observables update in `O(degree)`.
//! Weights are accumulated in log space against a running maximum, so large
//! fields or couplings cannot overflow. Pinned spins stay fixed inside the
//! configuration vector and take part in every energy update like any other
//! neighbor.
//!
//! Above 14 free spins the enumeration is split into blocks by fixing the
//! highest free spins; blocks run in parallel and are merged in block order,
//! so results do not depend on the thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::model::{IsingModel, PartialAssignment, Spin, Vertex, WeightVector, DEFAULT_EXACT_CAP};

const SERIAL_FREE_SPINS: usize = 14;
const MAX_BLOCK_BITS: usize = 10;

/// A model restricted to a vertex subset and conditioned on a pinning of
/// some of those vertices.
#[derive(Clone, Debug)]
pub struct PinnedModel {
    vertices: VertexSet,
    local: IsingModel,
    pins: Vec<Option<Spin>>,
    free: Vec<usize>,
    cap: usize,
}

/// Log partition function plus the means of the requested observables.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub log_partition: f64,
    pub means: Vec<f64>,
}

impl PinnedModel {
    /// Restricts `model` to `region` and pins `pinning`, whose vertices must
    /// all lie in `region`.
    pub fn new(model: &IsingModel, region: &VertexSet, pinning: &PartialAssignment) -> Result<Self> {
        let local = model.induced(region)?;
        let mut pins = vec![None; region.len()];
        for (v, s) in pinning.iter() {
            let i = region
                .position(v)
                .ok_or_else(|| Error::domain(format!("pinned vertex {v} is outside the region")))?;
            pins[i] = Some(s);
        }
        let free = (0..region.len()).filter(|&i| pins[i].is_none()).collect();
        Ok(PinnedModel {
            vertices: region.clone(),
            local,
            pins,
            free,
            cap: DEFAULT_EXACT_CAP,
        })
    }

    /// The full model under `pinning`.
    pub fn whole(model: &IsingModel, pinning: &PartialAssignment) -> Result<Self> {
        Self::new(model, &VertexSet::new(0..model.n()), pinning)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    pub fn free_vertices(&self) -> VertexSet {
        VertexSet::from_sorted(self.free.iter().map(|&i| self.vertices.as_slice()[i]).collect())
    }

    pub fn pinning(&self) -> PartialAssignment {
        PartialAssignment::from_pairs(
            self.pins
                .iter()
                .enumerate()
                .filter_map(|(i, s)| s.map(|s| (self.vertices.as_slice()[i], s))),
        )
        .expect("distinct vertices")
    }

    fn local_index(&self, v: Vertex) -> Result<usize> {
        self.vertices
            .position(v)
            .ok_or_else(|| Error::domain(format!("vertex {v} is not in the restricted model")))
    }

    /// `sum beta_uv s_u s_v + sum h_v s_v` for a complete configuration of the
    /// region that agrees with the pinning.
    pub fn log_weight(&self, config: &PartialAssignment) -> Result<f64> {
        if config.len() != self.vertices.len() || config.vertices() != self.vertices {
            return Err(Error::domain("configuration must cover exactly the region"));
        }
        let spins: Vec<f64> = self
            .vertices
            .iter()
            .map(|&v| config.get(v).unwrap().value())
            .collect();
        for (i, pin) in self.pins.iter().enumerate() {
            if let Some(s) = pin {
                if s.value() != spins[i] {
                    return Err(Error::domain(format!(
                        "configuration disagrees with the pin at vertex {}",
                        self.vertices.as_slice()[i]
                    )));
                }
            }
        }
        Ok(energy(&self.local, &spins))
    }

    /// Local coefficient vector of `weights` restricted to the region.
    fn restrict_weights(&self, weights: &WeightVector) -> Vec<f64> {
        self.vertices.iter().map(|&v| weights.get(v)).collect()
    }

    /// Enumerates all completions once, tracking each observable given as a
    /// coefficient vector over the region's vertices (in set order).
    pub fn summarize(&self, observables: &[Vec<f64>]) -> Result<Summary> {
        let m = self.free.len();
        if m > self.cap {
            return Err(Error::Capacity { free: m, cap: self.cap });
        }
        if let Some(bad) = observables.iter().find(|o| o.len() != self.vertices.len()) {
            return Err(Error::domain(format!(
                "observable has {} coefficients for a region of {}",
                bad.len(),
                self.vertices.len()
            )));
        }
        let block_bits = if m > SERIAL_FREE_SPINS {
            (m - SERIAL_FREE_SPINS).min(MAX_BLOCK_BITS)
        } else {
            0
        };
        let inner = m - block_bits;
        let blocks: Vec<LogAccumulator> = if block_bits == 0 {
            vec![self.run_block(0, inner, observables)]
        } else {
            (0..1usize << block_bits)
                .into_par_iter()
                .map(|b| self.run_block(b, inner, observables))
                .collect()
        };
        let mut acc = LogAccumulator::new(observables.len());
        for b in &blocks {
            acc.merge(b);
        }
        Ok(acc.finish())
    }

    fn run_block(&self, block: usize, inner: usize, observables: &[Vec<f64>]) -> LogAccumulator {
        let mut spins: Vec<f64> = self.pins.iter().map(|p| p.map_or(1.0, Spin::value)).collect();
        for (bit, &i) in self.free[inner..].iter().enumerate() {
            if (block >> bit) & 1 == 1 {
                spins[i] = -1.0;
            }
        }
        let mut e = energy(&self.local, &spins);
        let mut values: Vec<f64> = observables
            .iter()
            .map(|c| c.iter().zip(&spins).map(|(a, s)| a * s).sum())
            .collect();
        let mut acc = LogAccumulator::new(observables.len());
        acc.add(e, &values);
        for step in 1usize..(1usize << inner) {
            let i = self.free[step.trailing_zeros() as usize];
            let old = spins[i];
            let local_field = self.local.field(i)
                + self
                    .local
                    .neighbors(i)
                    .iter()
                    .map(|&(j, beta)| beta * spins[j])
                    .sum::<f64>();
            e -= 2.0 * old * local_field;
            spins[i] = -old;
            for (val, c) in values.iter_mut().zip(observables) {
                *val -= 2.0 * old * c[i];
            }
            acc.add(e, &values);
        }
        acc
    }
}

fn energy(model: &IsingModel, spins: &[f64]) -> f64 {
    let pair: f64 = model.edges().iter().map(|e| e.beta * spins[e.u] * spins[e.v]).sum();
    let single: f64 = model.fields().iter().zip(spins).map(|(h, s)| h * s).sum();
    pair + single
}

struct LogAccumulator {
    max: f64,
    total: f64,
    moments: Vec<f64>,
}

impl LogAccumulator {
    fn new(observables: usize) -> Self {
        LogAccumulator {
            max: f64::NEG_INFINITY,
            total: 0.0,
            moments: vec![0.0; observables],
        }
    }

    fn rescale_to(&mut self, e: f64) {
        if e > self.max {
            let s = (self.max - e).exp();
            self.total *= s;
            for m in &mut self.moments {
                *m *= s;
            }
            self.max = e;
        }
    }

    fn add(&mut self, e: f64, values: &[f64]) {
        self.rescale_to(e);
        let w = (e - self.max).exp();
        self.total += w;
        for (m, v) in self.moments.iter_mut().zip(values) {
            *m += w * v;
        }
    }

    fn merge(&mut self, other: &LogAccumulator) {
        if other.total == 0.0 {
            return;
        }
        self.rescale_to(other.max);
        let s = (other.max - self.max).exp();
        self.total += s * other.total;
        for (m, o) in self.moments.iter_mut().zip(&other.moments) {
            *m += s * o;
        }
    }

    fn finish(self) -> Summary {
        Summary {
            log_partition: self.max + self.total.ln(),
            means: self.moments.iter().map(|m| m / self.total).collect(),
        }
    }
}

/// Log of the partition function over completions of the pinning.
pub fn log_partition(pm: &PinnedModel) -> Result<f64> {
    Ok(pm.summarize(&[])?.log_partition)
}

/// `E[X_v]` under the conditional measure; a pinned `v` returns its spin.
pub fn expectation(pm: &PinnedModel, v: Vertex) -> Result<f64> {
    let i = pm.local_index(v)?;
    if let Some(s) = pm.pins[i] {
        return Ok(s.value());
    }
    let mut indicator = vec![0.0; pm.vertices.len()];
    indicator[i] = 1.0;
    Ok(pm.summarize(&[indicator])?.means[0])
}

/// `Pr(X_v = +1)` under the conditional measure.
pub fn marginal_plus(pm: &PinnedModel, v: Vertex) -> Result<f64> {
    Ok((1.0 + expectation(pm, v)?) / 2.0)
}

/// `E[X_v]` for every region vertex, in set order, from one enumeration.
pub fn expectations(pm: &PinnedModel) -> Result<Vec<f64>> {
    let n = pm.vertices.len();
    let observables: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut c = vec![0.0; n];
            c[i] = 1.0;
            c
        })
        .collect();
    let mut means = pm.summarize(&observables)?.means;
    for (i, pin) in pm.pins.iter().enumerate() {
        if let Some(s) = pin {
            means[i] = s.value();
        }
    }
    Ok(means)
}

/// `E[sum_{v in region} a_v X_v]` under the conditional measure.
pub fn linear_mean(pm: &PinnedModel, weights: &WeightVector) -> Result<f64> {
    let coeffs = pm.restrict_weights(weights);
    Ok(pm.summarize(&[coeffs])?.means[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pins(pairs: &[(Vertex, Spin)]) -> PartialAssignment {
        PartialAssignment::from_pairs(pairs.iter().copied()).unwrap()
    }

    /// Direct sum over all `2^n` configurations, independent of the Gray-code
    /// path. Returns `(Z, sum_sigma w(sigma) sigma_v)` for each v.
    fn brute_force(model: &IsingModel, pinned: &PartialAssignment) -> (f64, Vec<f64>) {
        let n = model.n();
        let mut z = 0.0;
        let mut first = vec![0.0; n];
        for code in 0..1usize << n {
            let s: Vec<f64> = (0..n).map(|v| if code >> v & 1 == 0 { 1.0 } else { -1.0 }).collect();
            if pinned.iter().any(|(v, spin)| spin.value() != s[v]) {
                continue;
            }
            let mut e = 0.0;
            for u in 0..n {
                e += model.field(u) * s[u];
                for &(w, beta) in model.neighbors(u) {
                    if w > u {
                        e += beta * s[u] * s[w];
                    }
                }
            }
            let w = e.exp();
            z += w;
            for v in 0..n {
                first[v] += w * s[v];
            }
        }
        (z, first)
    }

    #[test]
    fn single_vertex_closed_forms() {
        let free = IsingModel::edgeless(vec![0.0]).unwrap();
        let pm = PinnedModel::whole(&free, &PartialAssignment::new()).unwrap();
        assert_abs_diff_eq!(log_partition(&pm).unwrap(), 2f64.ln(), epsilon = 1e-15);
        assert_eq!(expectation(&pm, 0).unwrap(), 0.0);
        assert_eq!(marginal_plus(&pm, 0).unwrap(), 0.5);

        let h = 0.5;
        let m = IsingModel::edgeless(vec![h]).unwrap();
        let pm = PinnedModel::whole(&m, &PartialAssignment::new()).unwrap();
        assert_abs_diff_eq!(log_partition(&pm).unwrap(), (2.0 * h.cosh()).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(expectation(&pm, 0).unwrap(), 0.462_117_157_260_009_8, epsilon = 1e-12);
        assert_abs_diff_eq!(marginal_plus(&pm, 0).unwrap(), 0.731_058_578_630_004_9, epsilon = 1e-12);

        let pinned = PinnedModel::whole(&m, &pins(&[(0, Spin::Plus)])).unwrap();
        assert_eq!(marginal_plus(&pinned, 0).unwrap(), 1.0);
    }

    #[test]
    fn two_vertex_edge() {
        let m = IsingModel::new(vec![0.0, 0.0], [(0, 1, 0.3)]).unwrap();
        let pm = PinnedModel::whole(&m, &PartialAssignment::new()).unwrap();
        // log(2 e^0.3 + 2 e^-0.3)
        assert_abs_diff_eq!(log_partition(&pm).unwrap(), 1.430_635_131_045_831, epsilon = 1e-12);
        let pinned = PinnedModel::whole(&m, &pins(&[(0, Spin::Plus)])).unwrap();
        assert_abs_diff_eq!(expectation(&pinned, 1).unwrap(), 0.3f64.tanh(), epsilon = 1e-12);
        assert_abs_diff_eq!(expectation(&pinned, 1).unwrap(), 0.291_312_612_451_590_7, epsilon = 1e-12);
        let minus = PinnedModel::whole(&m, &pins(&[(0, Spin::Minus)])).unwrap();
        assert_abs_diff_eq!(expectation(&minus, 1).unwrap(), -(0.3f64.tanh()), epsilon = 1e-12);
    }

    #[test]
    fn capacity_is_enforced() {
        let m = IsingModel::edgeless(vec![0.1; 6]).unwrap();
        let pm = PinnedModel::whole(&m, &PartialAssignment::new()).unwrap().with_cap(5);
        assert!(matches!(log_partition(&pm), Err(Error::Capacity { free: 6, cap: 5 })));
        let pinned = PinnedModel::whole(&m, &pins(&[(2, Spin::Minus)])).unwrap().with_cap(5);
        assert!(log_partition(&pinned).is_ok());
    }

    #[test]
    fn agrees_with_direct_summation() {
        let m = crate::model::random_instance(11, 3, (-0.8, 0.8), (-1.0, 1.0), 3).unwrap();
        let pinning = pins(&[(2, Spin::Minus), (7, Spin::Plus)]);
        let (z, first) = brute_force(&m, &pinning);
        let pm = PinnedModel::whole(&m, &pinning).unwrap();
        assert_abs_diff_eq!(log_partition(&pm).unwrap(), z.ln(), epsilon = 1e-12);
        let ex = expectations(&pm).unwrap();
        for v in 0..m.n() {
            assert_abs_diff_eq!(ex[v], first[v] / z, epsilon = 1e-12);
        }
    }

    #[test]
    fn blocked_enumeration_matches_serial() {
        // 17 free spins forces 3 block bits.
        let m = crate::model::random_instance(17, 3, (-0.5, 0.5), (-0.5, 0.5), 9).unwrap();
        let a = WeightVector::uniform(17, 1.0);
        let pm = PinnedModel::whole(&m, &PartialAssignment::new()).unwrap();
        let blocked = linear_mean(&pm, &a).unwrap();
        let (z, first) = brute_force(&m, &PartialAssignment::new());
        assert_abs_diff_eq!(blocked, first.iter().sum::<f64>() / z, epsilon = 1e-11);
        assert_abs_diff_eq!(log_partition(&pm).unwrap(), z.ln(), epsilon = 1e-11);
    }

    #[test]
    fn extreme_parameters_do_not_overflow() {
        let m = IsingModel::new(vec![400.0, -400.0, 350.0], [(0, 1, 300.0), (1, 2, -500.0)]).unwrap();
        let pm = PinnedModel::whole(&m, &PartialAssignment::new()).unwrap();
        let lz = log_partition(&pm).unwrap();
        assert!(lz.is_finite());
        for x in expectations(&pm).unwrap() {
            assert!(x.is_finite() && x.abs() <= 1.0);
        }
    }

    #[test]
    fn restricted_region() {
        let path = IsingModel::new(vec![0.2, 0.0, -0.1, 0.4], [(0, 1, 0.5), (1, 2, 0.5), (2, 3, 0.5)]).unwrap();
        let region = VertexSet::new([1, 2]);
        let pm = PinnedModel::new(&path, &region, &pins(&[(1, Spin::Plus)])).unwrap();
        assert_eq!(pm.free_vertices(), VertexSet::new([2]));
        // X_2 sees field -0.1 + 0.5
        assert_abs_diff_eq!(expectation(&pm, 2).unwrap(), 0.4f64.tanh(), epsilon = 1e-14);
        assert!(expectation(&pm, 0).is_err());
        assert!(PinnedModel::new(&path, &region, &pins(&[(0, Spin::Plus)])).is_err());
    }
}
