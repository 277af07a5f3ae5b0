//! Heat-bath Glauber dynamics and Monte Carlo influence estimates for
//! models too large for exact enumeration.
//!
//! No mixing guarantee is claimed. Outside the high-temperature regime the
//! chain can be exponentially slow, and estimates carry a flag saying so.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{IsingModel, PartialAssignment, Spin, Vertex, WeightVector};

/// Burn-in, sample count and thinning for one estimate. `None` picks the
/// defaults `100 n ln n` steps of burn-in and a thinning of `n` steps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub burn_in: Option<usize>,
    pub samples: usize,
    pub thin: Option<usize>,
    pub seed: u64,
    pub batches: usize,
}

impl SamplerConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SamplerConfig {
            burn_in: None,
            samples,
            thin: None,
            seed,
            batches: 20,
        }
    }

    pub fn with_burn_in(mut self, steps: usize) -> Self {
        self.burn_in = Some(steps);
        self
    }

    pub fn with_thin(mut self, steps: usize) -> Self {
        self.thin = Some(steps);
        self
    }

    pub fn burn_in_for(&self, n: usize) -> usize {
        self.burn_in.unwrap_or_else(|| {
            let n = n as f64;
            (100.0 * n * n.ln().max(1.0)).ceil() as usize
        })
    }

    pub fn thin_for(&self, n: usize) -> usize {
        self.thin.unwrap_or(n).max(1)
    }
}

/// A Glauber chain: the current configuration, the frozen coordinates and
/// the generator driving the updates.
#[derive(Clone, Debug)]
pub struct ChainState {
    spins: Vec<f64>,
    free: Vec<Vertex>,
    rng: ChaCha8Rng,
    steps: u64,
}

impl ChainState {
    /// Pinned coordinates take their pinned spins; free ones start uniformly
    /// at random.
    pub fn new(model: &IsingModel, pinned: &PartialAssignment, seed: u64) -> Result<Self> {
        Self::with_stream(model, pinned, seed, 0)
    }

    /// Like [`ChainState::new`] on an independent generator stream.
    pub fn with_stream(model: &IsingModel, pinned: &PartialAssignment, seed: u64, stream: u64) -> Result<Self> {
        pinned.check_against(model)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut spins = vec![0.0; model.n()];
        let mut free = Vec::new();
        for (v, s) in spins.iter_mut().enumerate() {
            match pinned.get(v) {
                Some(p) => *s = p.value(),
                None => {
                    *s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    free.push(v);
                }
            }
        }
        Ok(ChainState {
            spins,
            free,
            rng,
            steps: 0,
        })
    }

    pub fn spin(&self, v: Vertex) -> Spin {
        Spin::from_value(self.spins[v])
    }

    pub fn configuration(&self) -> Vec<Spin> {
        self.spins.iter().map(|&s| Spin::from_value(s)).collect()
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }

    fn linear(&self, weights: &WeightVector) -> f64 {
        weights.as_slice().iter().zip(&self.spins).map(|(a, s)| a * s).sum()
    }
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `Pr(X_v = +1 | rest)` given the current configuration.
pub fn conditional_plus_probability(model: &IsingModel, state: &ChainState, v: Vertex) -> f64 {
    let field = model.field(v)
        + model
            .neighbors(v)
            .iter()
            .map(|&(u, beta)| beta * state.spins[u])
            .sum::<f64>();
    sigmoid(2.0 * field)
}

/// One heat-bath update at a uniformly random free vertex. Returns the
/// vertex and its new spin, or `None` when every vertex is pinned.
pub fn glauber_step(state: &mut ChainState, model: &IsingModel) -> Option<(Vertex, Spin)> {
    heat_bath(state, model).map(|(v, _, new)| (v, Spin::from_value(new)))
}

/// Update returning `(vertex, old value, new value)`.
fn heat_bath(state: &mut ChainState, model: &IsingModel) -> Option<(Vertex, f64, f64)> {
    if state.free.is_empty() {
        return None;
    }
    let v = state.free[state.rng.gen_range(0..state.free.len())];
    let p = conditional_plus_probability(model, state, v);
    let new = if state.rng.gen::<f64>() < p { 1.0 } else { -1.0 };
    let old = std::mem::replace(&mut state.spins[v], new);
    state.steps += 1;
    Some((v, old, new))
}

/// Sample mean and batch-means standard error. Uses `min(batches, len)`
/// equal batches and drops the remainder from the error estimate.
pub fn batch_means(samples: &[f64], batches: usize) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let nb = batches.min(n);
    if nb < 2 {
        return (mean, f64::NAN);
    }
    let size = n / nb;
    let batch: Vec<f64> = samples
        .chunks_exact(size)
        .take(nb)
        .map(|c| c.iter().sum::<f64>() / size as f64)
        .collect();
    let bm = batch.iter().sum::<f64>() / nb as f64;
    let var = batch.iter().map(|b| (b - bm).powi(2)).sum::<f64>() / (nb - 1) as f64;
    (mean, (var / nb as f64).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    /// Some coupling is at or beyond the uniqueness threshold for the
    /// model's degree; the chain may not have mixed.
    pub low_temperature: bool,
}

/// True when some edge has `(D - 1) tanh|beta| >= 1` with `D = max(3, max degree)`.
pub fn is_low_temperature(model: &IsingModel) -> bool {
    let factor = (model.max_degree().max(3) - 1) as f64;
    model.edges().iter().any(|e| factor * e.beta.abs().tanh() >= 1.0)
}

fn run_chain(
    model: &IsingModel,
    weights: &WeightVector,
    pinned: &PartialAssignment,
    cfg: &SamplerConfig,
    stream: u64,
) -> Result<Vec<f64>> {
    let mut chain = ChainState::with_stream(model, pinned, cfg.seed, stream)?;
    for _ in 0..cfg.burn_in_for(model.n()) {
        glauber_step(&mut chain, model);
    }
    let thin = cfg.thin_for(model.n());
    let mut value = chain.linear(weights);
    let mut out = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        for _ in 0..thin {
            if let Some((v, old, new)) = heat_bath(&mut chain, model) {
                value += weights.get(v) * (new - old);
            }
        }
        out.push(value);
    }
    Ok(out)
}

/// Estimates `Phi(S, sigma_S)` as the difference of sample means of `a.X`
/// between a chain pinned at `sigma_S` and an unpinned chain.
pub fn estimate_influence(
    model: &IsingModel,
    weights: &WeightVector,
    assignment: &PartialAssignment,
    cfg: &SamplerConfig,
) -> Result<Estimate> {
    weights.check_against(model)?;
    if cfg.samples < 2 {
        return Err(Error::domain("need at least 2 samples"));
    }
    let low_temperature = is_low_temperature(model);
    if weights.as_slice().iter().all(|&a| a == 0.0) {
        return Ok(Estimate {
            value: 0.0,
            std_error: 0.0,
            low_temperature,
        });
    }
    let empty = PartialAssignment::new();
    let (pinned, free) = rayon::join(
        || run_chain(model, weights, assignment, cfg, 1),
        || run_chain(model, weights, &empty, cfg, 2),
    );
    let (pinned, free) = (pinned?, free?);
    let (mp, sp) = batch_means(&pinned, cfg.batches);
    let (mf, sf) = batch_means(&free, cfg.batches);
    Ok(Estimate {
        value: mp - mf,
        std_error: (sp * sp + sf * sf).sqrt(),
        low_temperature,
    })
}
