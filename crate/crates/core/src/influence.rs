//! Global and local influence of a pinning on a weighted magnetization.
//!
//! For weights `a`, the global influence of `(S, sigma_S)` is
//!
//! ```text
//! Phi(S, sigma_S) = E[ a.X | X_S = sigma_S ] - E[ a.X ]
//! ```
//!
//! and the local influence at radius `r` is the same quantity computed on
//! the induced submodel `G[B(S, r)]` with couplings and fields restricted.
//! Both are evaluated component by component over the connected components
//! of the relevant region: a component without a pinned vertex is
//! independent of the pinning and contributes nothing, so it is skipped.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::estimate::{estimate_influence, SamplerConfig};
use crate::exact::{expectations, linear_mean, PinnedModel};
use crate::graph::{self, VertexSet};
use crate::model::{IsingModel, PartialAssignment, Spin, Vertex, WeightVector, DEFAULT_EXACT_CAP};

/// A pinning `(S, sigma_S)` to evaluate, globally (`radius == None`) or on
/// the radius-`r` ball around `S`.
#[derive(Clone, Copy, Debug)]
pub struct InfluenceQuery<'a> {
    pub model: &'a IsingModel,
    pub weights: &'a WeightVector,
    pub assignment: &'a PartialAssignment,
    pub radius: Option<usize>,
    pub cap: usize,
}

impl<'a> InfluenceQuery<'a> {
    pub fn global(model: &'a IsingModel, weights: &'a WeightVector, assignment: &'a PartialAssignment) -> Self {
        InfluenceQuery {
            model,
            weights,
            assignment,
            radius: None,
            cap: DEFAULT_EXACT_CAP,
        }
    }

    pub fn local(
        model: &'a IsingModel,
        weights: &'a WeightVector,
        assignment: &'a PartialAssignment,
        radius: usize,
    ) -> Self {
        InfluenceQuery {
            radius: Some(radius),
            ..Self::global(model, weights, assignment)
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// The pinned set `S`.
    pub fn set(&self) -> VertexSet {
        self.assignment.vertices()
    }

    fn check(&self) -> Result<()> {
        self.weights.check_against(self.model)?;
        self.assignment.check_against(self.model)
    }
}

/// Influence evaluator over a fixed region: splits `G[region]` into
/// connected components and caches each component's unpinned mean.
pub(crate) struct Region<'a> {
    model: &'a IsingModel,
    weights: &'a WeightVector,
    cap: usize,
    components: Vec<(VertexSet, OnceLock<Option<f64>>)>,
}

impl<'a> Region<'a> {
    pub(crate) fn new(model: &'a IsingModel, weights: &'a WeightVector, region: &VertexSet, cap: usize) -> Result<Self> {
        let components = graph::connected_components(model, region)?
            .into_iter()
            .map(|c| (c, OnceLock::new()))
            .collect();
        Ok(Region {
            model,
            weights,
            cap,
            components,
        })
    }

    fn baseline(&self, index: usize) -> Result<f64> {
        let (comp, cell) = &self.components[index];
        let cached = cell.get_or_init(|| {
            if comp.len() > self.cap {
                return None;
            }
            let pm = PinnedModel::new(self.model, comp, &PartialAssignment::new())
                .expect("component lies in the model")
                .with_cap(self.cap);
            Some(linear_mean(&pm, self.weights).expect("within cap"))
        });
        cached.ok_or(Error::Capacity {
            free: comp.len(),
            cap: self.cap,
        })
    }

    /// Influence of `pins` (which must lie inside the region).
    pub(crate) fn influence(&self, pins: &PartialAssignment) -> Result<f64> {
        let mut total = 0.0;
        let mut covered = 0;
        for (index, (comp, _)) in self.components.iter().enumerate() {
            let local_pins = pins.restrict(comp);
            if local_pins.is_empty() {
                continue;
            }
            covered += local_pins.len();
            if comp.iter().all(|&v| self.weights.get(v) == 0.0) {
                continue;
            }
            let pm = PinnedModel::new(self.model, comp, &local_pins)?.with_cap(self.cap);
            let conditional = linear_mean(&pm, self.weights)?;
            total += conditional - self.baseline(index)?;
        }
        if covered != pins.len() {
            return Err(Error::domain("pinned vertices fall outside the evaluation region"));
        }
        Ok(total)
    }
}

/// `Phi(S, sigma_S)`, evaluated only on components of `G` that meet `S`.
pub fn global_influence(q: &InfluenceQuery<'_>) -> Result<f64> {
    if q.radius.is_some() {
        return Err(Error::domain("global influence takes no radius"));
    }
    q.check()?;
    let set = q.set();
    let region = graph::ball(q.model, &set, q.model.n())?;
    Region::new(q.model, q.weights, &region, q.cap)?.influence(q.assignment)
}

/// `Phi^(r)(S, sigma_S)` on the induced submodel `G[B(S, r)]`.
pub fn local_influence(q: &InfluenceQuery<'_>) -> Result<f64> {
    let r = q
        .radius
        .ok_or_else(|| Error::domain("local influence needs a radius"))?;
    q.check()?;
    let region = graph::ball(q.model, &q.set(), r)?;
    Region::new(q.model, q.weights, &region, q.cap)?.influence(q.assignment)
}

/// Splits `S` into the components of `G^{<=2r+1}[S]` and returns each
/// component with its own local influence. The terms sum to
/// [`local_influence`].
pub fn decompose_local(q: &InfluenceQuery<'_>) -> Result<Vec<(VertexSet, f64)>> {
    let r = q
        .radius
        .ok_or_else(|| Error::domain("local decomposition needs a radius"))?;
    q.check()?;
    let parts = graph::components_in_power_graph(q.model, &q.set(), r)?;
    parts
        .into_iter()
        .map(|t| {
            let pins = q.assignment.restrict(&t);
            let value = local_influence(&InfluenceQuery {
                assignment: &pins,
                ..*q
            })?;
            Ok((t, value))
        })
        .collect()
}

/// Local influences of every assignment on `cluster` at radius `r`, in
/// canonical assignment order. Fails with [`Error::BallTooLarge`] when the
/// ball exceeds `cap`.
pub fn local_influence_table(
    model: &IsingModel,
    weights: &WeightVector,
    cluster: &VertexSet,
    r: usize,
    cap: usize,
) -> Result<Vec<(PartialAssignment, f64)>> {
    let region = graph::ball(model, cluster, r)?;
    if region.len() > cap {
        return Err(Error::BallTooLarge {
            cluster: cluster.clone(),
            radius: r,
            ball: region.len(),
            cap,
        });
    }
    let evaluator = Region::new(model, weights, &region, cap)?;
    PartialAssignment::enumerate(cluster)
        .map(|sigma| {
            let value = evaluator.influence(&sigma)?;
            Ok((sigma, value))
        })
        .collect()
}

/// `|Phi - Phi^(r)|` for `r = 0..=r_max`.
pub fn influence_decay_profile(
    model: &IsingModel,
    weights: &WeightVector,
    assignment: &PartialAssignment,
    r_max: usize,
    cap: usize,
) -> Result<Vec<f64>> {
    let global = global_influence(&InfluenceQuery::global(model, weights, assignment).with_cap(cap))?;
    (0..=r_max)
        .map(|r| {
            let local = local_influence(&InfluenceQuery::local(model, weights, assignment, r).with_cap(cap))?;
            Ok((global - local).abs())
        })
        .collect()
}

/// Least-squares fit of `value ~ prefactor * ratio^index` in log space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometricFit {
    pub ratio: f64,
    pub prefactor: f64,
    /// Number of entries above the floor that entered the fit.
    pub points: usize,
}

/// Fits the entries of `values` that exceed `floor`; `None` with fewer than
/// two such entries.
pub fn fit_geometric(values: &[f64], floor: f64) -> Option<GeometricFit> {
    let pts: Vec<(f64, f64)> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > floor)
        .map(|(i, &v)| (i as f64, v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Some(GeometricFit {
        ratio: slope.exp(),
        prefactor: (my - slope * mx).exp(),
        points: pts.len(),
    })
}

/// Total influence of `u` at distance at least `L`, for `L = 1..=ecc(u) + 1`:
///
/// ```text
/// sum_{v not pinned, dist(u, v) >= L} | Pr(X_v = + | X_u = +) - Pr(X_v = + | X_u = -) |
/// ```
///
/// under the pinning `tau` (which must not pin `u`). The final entry is
/// always zero. Vertices outside `u`'s component contribute nothing.
pub fn total_influence_sums(
    model: &IsingModel,
    u: Vertex,
    tau: &PartialAssignment,
    cap: usize,
) -> Result<Vec<f64>> {
    model.check_vertex(u)?;
    tau.check_against(model)?;
    if tau.get(u).is_some() {
        return Err(Error::domain(format!("vertex {u} is pinned")));
    }
    let origin = VertexSet::singleton(u);
    let dist = graph::distances(model, &origin, usize::MAX)?;
    let component = graph::ball(model, &origin, model.n())?;
    let local_tau = tau.restrict(&component);
    let conditioned = |spin: Spin| -> Result<Vec<f64>> {
        let mut pins = local_tau.clone();
        pins.insert(u, spin);
        expectations(&PinnedModel::new(model, &component, &pins)?.with_cap(cap))
    };
    let plus = conditioned(Spin::Plus)?;
    let minus = conditioned(Spin::Minus)?;
    let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut by_distance = vec![0.0; ecc + 2];
    for (i, &v) in component.iter().enumerate() {
        if v == u || local_tau.get(v).is_some() {
            continue;
        }
        let d = dist[v].expect("component member");
        by_distance[d] += (plus[i] - minus[i]).abs() / 2.0;
    }
    // suffix sums: entry L-1 holds the sum over dist >= L
    let mut sums = vec![0.0; ecc + 1];
    let mut acc = 0.0;
    for l in (1..=ecc + 1).rev() {
        acc += by_distance[l];
        sums[l - 1] = acc;
    }
    Ok(sums)
}

/// An influence value and, when it came from sampling, its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfluenceValue {
    pub value: f64,
    pub std_error: Option<f64>,
}

impl InfluenceValue {
    pub fn is_exact(&self) -> bool {
        self.std_error.is_none()
    }
}

/// Exact global influence when every component touching `S` fits the cap,
/// otherwise a Monte Carlo estimate for the whole query.
pub fn global_influence_or_estimate(q: &InfluenceQuery<'_>, sampler: &SamplerConfig) -> Result<InfluenceValue> {
    match global_influence(q) {
        Ok(value) => Ok(InfluenceValue { value, std_error: None }),
        Err(e) if e.is_capacity() => {
            let est = estimate_influence(q.model, q.weights, q.assignment, sampler)?;
            Ok(InfluenceValue {
                value: est.value,
                std_error: Some(est.std_error),
            })
        }
        Err(e) => Err(e),
    }
}
