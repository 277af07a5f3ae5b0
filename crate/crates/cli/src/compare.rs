//! Solver-versus-oracle comparison over many instances, as CSV.

use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use ising_infmax::model::{random_instance, random_weights, IsingModel, WeightVector};
use ising_infmax::solver::{brute_force_infmax, solve_infmax, Objective};

use crate::config::SolverSettings;

pub const HEADER: [&str; 9] = [
    "instance_id",
    "n",
    "k",
    "epsilon",
    "r",
    "solver_value",
    "oracle_value",
    "gap",
    "wall_time",
];

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub model: IsingModel,
    pub weights: WeightVector,
}

/// Parameters of generated instances; instance `i` uses seed `seed + i`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GenParams {
    pub n: usize,
    pub max_degree: usize,
    pub beta: (f64, f64),
    pub field: (f64, f64),
    pub weights: (f64, f64),
}

impl GenParams {
    pub fn instance(&self, seed: u64) -> Result<Instance> {
        let model = random_instance(self.n, self.max_degree, self.beta, self.field, seed)?;
        // weights use a disjoint seed so they are not correlated with the fields
        let weights = random_weights(self.n, self.weights, seed ^ 0x5eed_0000_0000_0000)?;
        Ok(Instance {
            id: format!("seed-{seed}"),
            model,
            weights,
        })
    }
}

/// One CSV row. `gap = oracle_value - solver_value`; `wall_time` is empty
/// unless timing was requested.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub instance_id: String,
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
    pub r: usize,
    pub solver_value: Option<f64>,
    pub oracle_value: f64,
    pub gap: Option<f64>,
    pub wall_time: Option<f64>,
}

pub fn compare_one(inst: &Instance, k: usize, settings: &SolverSettings, timing: bool) -> Result<Row> {
    let start = Instant::now();
    let settings = SolverSettings { k, ..settings.clone() };
    let family = settings.family_for(&inst.model)?;
    let cfg = settings.config_for(&inst.model);
    let sol = solve_infmax(&inst.model, &inst.weights, &family, &cfg)
        .with_context(|| format!("solver on {}", inst.id))?;
    let oracle = brute_force_infmax(&inst.model, &inst.weights, k, Objective::Global, settings.exact_ball_cap)
        .with_context(|| format!("oracle on {}", inst.id))?;
    Ok(Row {
        instance_id: inst.id.clone(),
        n: inst.model.n(),
        k,
        epsilon: settings.epsilon,
        r: sol.radius_used,
        solver_value: sol.global_value,
        oracle_value: oracle.local_value,
        gap: sol.global_value.map(|v| oracle.local_value - v),
        wall_time: timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Rows for every (instance, k) pair, instance-major, computed in parallel.
pub fn compare_all(instances: &[Instance], ks: &[usize], settings: &SolverSettings, timing: bool) -> Result<Vec<Row>> {
    let jobs: Vec<(&Instance, usize)> = instances
        .iter()
        .flat_map(|inst| ks.iter().map(move |&k| (inst, k)))
        .collect();
    jobs.par_iter()
        .map(|&(inst, k)| compare_one(inst, k, settings, timing))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn to_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(HEADER)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
