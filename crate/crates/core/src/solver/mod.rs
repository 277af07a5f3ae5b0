//! The localized `k`-budget influence maximizer and its exhaustive reference.
//!
//! The solver works in four steps:
//!
//! 1. Enumerate every cluster `T` (nonempty, `|T| <= k`, connected in
//!    `G^{<=2r+1}`) and join two clusters when they lie within distance
//!    `2r + 1` of each other. This is the cluster graph `H`.
//! 2. Score each cluster: its cost is `|T|`, and its weight is the best
//!    local influence over the `2^|T|` assignments of `T`, which is
//!    remembered as the cluster's assignment.
//! 3. Find a maximum-weight independent set of `H` with total cost `<= k`.
//! 4. Return the union of the chosen clusters with their assignments.
//!
//! Clusters that are not adjacent in `H` have disjoint, non-touching balls,
//! so the local influence of the union is the sum of the cluster weights.
//! Cluster scores here are exact, which makes step 4 lose nothing against
//! the best local solution.

mod mwis;
mod oracle;
mod radius;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, VertexSet};
use crate::influence::{global_influence, local_influence_table, total_influence_sums, InfluenceQuery};
use crate::model::{validate_family, FamilyParams, IsingModel, PartialAssignment, SolverConfig, WeightVector};

pub use mwis::{budgeted_mwis, candidate_pool, CostedGraph, MwisSolution, SimpleCostedGraph};
pub use oracle::{brute_force_infmax, Objective};
pub use radius::{radius_formula, select_radius, RadiusChoice};

/// A scored node of the cluster graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub members: VertexSet,
    pub cost: usize,
    /// Best local influence over assignments of `members`.
    pub weight: f64,
    /// First assignment in canonical order attaining `weight`.
    pub best_assignment: PartialAssignment,
}

#[derive(Clone, Debug)]
pub struct ClusterGraph {
    pub clusters: Vec<Cluster>,
    adjacency: Vec<Vec<usize>>,
    pub radius: usize,
}

impl ClusterGraph {
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

impl CostedGraph for ClusterGraph {
    fn len(&self) -> usize {
        self.clusters.len()
    }

    fn weight(&self, i: usize) -> f64 {
        self.clusters[i].weight
    }

    fn cost(&self, i: usize) -> usize {
        self.clusters[i].cost
    }

    fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }
}

fn score_cluster(model: &IsingModel, weights: &WeightVector, members: VertexSet, r: usize, cap: usize) -> Result<Cluster> {
    let table = local_influence_table(model, weights, &members, r, cap)?;
    let mut best: Option<(PartialAssignment, f64)> = None;
    for (sigma, value) in table {
        if best.as_ref().is_none_or(|(_, w)| value > *w) {
            best = Some((sigma, value));
        }
    }
    let (best_assignment, weight) = best.expect("at least one assignment");
    Ok(Cluster {
        cost: members.len(),
        members,
        weight,
        best_assignment,
    })
}

/// Steps 1 and 2: enumerate, connect and score all clusters at radius `r`.
/// Fails with [`Error::BallTooLarge`] for the first cluster (in canonical
/// order) whose ball exceeds `cfg.exact_ball_cap`.
pub fn build_cluster_graph(
    model: &IsingModel,
    weights: &WeightVector,
    cfg: &SolverConfig,
    r: usize,
) -> Result<ClusterGraph> {
    weights.check_against(model)?;
    let sets = graph::enumerate_connected_clusters(model, cfg.k, r);
    let scored: Vec<Result<Cluster>> = sets
        .into_par_iter()
        .map(|t| score_cluster(model, weights, t, r, cfg.exact_ball_cap))
        .collect();
    let clusters = scored.into_iter().collect::<Result<Vec<_>>>()?;

    let mut by_vertex = vec![Vec::new(); model.n()];
    for (i, c) in clusters.iter().enumerate() {
        for &v in &c.members {
            by_vertex[v].push(i);
        }
    }
    let reach = graph::power_reach(r);
    let adjacency = clusters
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let near = graph::ball(model, &c.members, reach)?;
            let mut ns: Vec<usize> = near
                .iter()
                .flat_map(|&v| by_vertex[v].iter().copied())
                .filter(|&j| j != i)
                .collect();
            ns.sort_unstable();
            ns.dedup();
            Ok(ns)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClusterGraph {
        clusters,
        adjacency,
        radius: r,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub clusters: usize,
    pub cluster_edges: usize,
    pub cluster_max_degree: usize,
    /// Size of the pruned pool searched by the budgeted MWIS.
    pub candidates: usize,
    /// Largest `|B(T, r)|` over clusters.
    pub max_ball: usize,
    /// Radius the formula asked for, when it differs from the one used.
    pub requested_radius: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    pub set: VertexSet,
    pub assignment: PartialAssignment,
    pub local_value: f64,
    pub global_value: Option<f64>,
    pub radius_used: usize,
    /// Radius was reduced to fit the exact cap; no accuracy guarantee.
    pub heuristic: bool,
    pub warnings: Vec<String>,
    pub diagnostics: Diagnostics,
}

fn max_ball(model: &IsingModel, k: usize, r: usize) -> Result<usize> {
    graph::enumerate_connected_clusters(model, k, r)
        .iter()
        .map(|t| graph::ball(model, t, r).map(|b| b.len()))
        .try_fold(0, |acc, b| b.map(|b| acc.max(b)))
}

/// Largest `r' <= r` whose cluster balls all fit in `cap`.
pub fn largest_feasible_radius(model: &IsingModel, k: usize, r: usize, cap: usize) -> Result<usize> {
    let mut best = 0;
    while best < r && max_ball(model, k, best + 1)? <= cap {
        best += 1;
    }
    Ok(best)
}

/// Runs the localized algorithm on a model from the high-temperature family.
pub fn solve_infmax(
    model: &IsingModel,
    weights: &WeightVector,
    family: &FamilyParams,
    cfg: &SolverConfig,
) -> Result<Solution> {
    cfg.validate()?;
    weights.check_against(model)?;
    let mut warnings = Vec::new();
    let check = validate_family(model, family);
    if !check.holds() {
        if !cfg.best_effort {
            return Err(Error::NotInFamily(check.to_string()));
        }
        warnings.push(format!("model outside the requested family ({check}); result is heuristic"));
    }
    if !family.is_high_temperature() {
        return Err(Error::domain("the localized solver needs gamma = 1 - delta"));
    }
    if !weights.is_bounded(1.0) {
        warnings.push("weights are not 1-bounded; the epsilon guarantee is stated for |a_v| <= 1".into());
    }

    let requested = select_radius(cfg, family)?;
    let (h, heuristic) = match build_cluster_graph(model, weights, cfg, requested) {
        Ok(h) => (h, !check.holds()),
        Err(e) if e.is_capacity() && cfg.best_effort => {
            let r = largest_feasible_radius(model, cfg.k, requested, cfg.exact_ball_cap)?;
            warnings.push(format!(
                "radius {requested} exceeds the exact cap of {}; using radius {r} (heuristic)",
                cfg.exact_ball_cap
            ));
            (build_cluster_graph(model, weights, cfg, r)?, true)
        }
        Err(e) => return Err(e),
    };

    let chosen = budgeted_mwis(&h, cfg.k);
    let mut assignment = PartialAssignment::new();
    for &i in &chosen.members {
        assignment = assignment.merged(&h.clusters[i].best_assignment)?;
    }
    let set = assignment.vertices();
    let global_value = match global_influence(&InfluenceQuery::global(model, weights, &assignment).with_cap(cfg.exact_ball_cap)) {
        Ok(v) => Some(v),
        Err(e) if e.is_capacity() => None,
        Err(e) => return Err(e),
    };
    let diagnostics = Diagnostics {
        clusters: h.len(),
        cluster_edges: h.edge_count(),
        cluster_max_degree: h.max_degree(),
        candidates: chosen.candidates,
        max_ball: max_ball(model, cfg.k, h.radius)?,
        requested_radius: (h.radius != requested).then_some(requested),
    };
    Ok(Solution {
        set,
        assignment,
        local_value: chosen.weight,
        global_value,
        radius_used: h.radius,
        heuristic,
        warnings,
        diagnostics,
    })
}

/// Smallest `C'` with `T_u(L) <= C' (1 - delta)^L` for every sampled vertex
/// `u` and every `L >= 1`, where `T_u(L)` is the total influence of `u` on
/// vertices at distance at least `L` (see [`total_influence_sums`]).
///
/// `samples` vertices are taken evenly spaced over `0..n` (all of them when
/// `samples >= n`).
pub fn calibrate_decay_constant(model: &IsingModel, delta: f64, samples: usize, cap: usize) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    let n = model.n();
    let count = samples.clamp(1, n);
    let mut fitted: f64 = 0.0;
    for i in 0..count {
        let u = i * n / count;
        let sums = total_influence_sums(model, u, &PartialAssignment::new(), cap)?;
        for (idx, s) in sums.iter().enumerate() {
            let l = (idx + 1) as i32;
            fitted = fitted.max(s / (1.0 - delta).powi(l));
        }
    }
    Ok(fitted)
}

/// Anything that answers a `k`-budget influence maximization query.
pub trait InfMaxSolver {
    fn solve(&self, model: &IsingModel, weights: &WeightVector, k: usize) -> Result<Solution>;
}

/// Exhaustive search over all `(S, sigma_S)` with exact global influence.
#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveSolver {
    pub cap: usize,
}

impl Default for ExhaustiveSolver {
    fn default() -> Self {
        ExhaustiveSolver {
            cap: crate::model::DEFAULT_EXACT_CAP,
        }
    }
}

impl InfMaxSolver for ExhaustiveSolver {
    fn solve(&self, model: &IsingModel, weights: &WeightVector, k: usize) -> Result<Solution> {
        brute_force_infmax(model, weights, k, Objective::Global, self.cap)
    }
}

/// [`solve_infmax`] with a fixed family and configuration; the budget of
/// each call replaces `config.k`. A `None` family is derived from the model
/// as `max(3, max degree)` with the given `delta`.
#[derive(Clone, Debug)]
pub struct LocalizedSolver {
    pub delta: f64,
    pub delta_max: Option<usize>,
    pub config: SolverConfig,
}

impl InfMaxSolver for LocalizedSolver {
    fn solve(&self, model: &IsingModel, weights: &WeightVector, k: usize) -> Result<Solution> {
        let delta_max = self.delta_max.unwrap_or_else(|| model.max_degree().max(3));
        let family = FamilyParams::high_temperature(delta_max, self.delta)?;
        let cfg = SolverConfig { k, ..self.config.clone() };
        solve_infmax(model, weights, &family, &cfg)
    }
}
