use rayon::prelude::*;

use super::{Diagnostics, Solution};
use crate::error::{Error, Result};
use crate::graph::{self, VertexSet};
use crate::influence::{global_influence, InfluenceQuery, Region};
use crate::model::{IsingModel, PartialAssignment, WeightVector};

/// What the exhaustive search maximizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// `Phi(S, sigma_S)`.
    Global,
    /// `Phi^(r)(S, sigma_S)`.
    Local(usize),
}

/// All subsets of `0..n` with at most `k` members, by size and then
/// lexicographically. Starts with the empty set.
pub(crate) fn subsets_up_to(n: usize, k: usize) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::empty()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k.min(n) {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&v| v + 1);
            for v in start..n {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().map(|t| VertexSet::new(t.iter().copied())));
        layer = next;
    }
    out
}

/// Exhaustive maximization over every `S` with `|S| <= k` and every
/// `sigma_S`. The first maximizer in canonical `(S, sigma_S)` order wins, so
/// the empty pinning (value 0) is returned when nothing is positive.
pub fn brute_force_infmax(
    model: &IsingModel,
    weights: &WeightVector,
    k: usize,
    objective: Objective,
    cap: usize,
) -> Result<Solution> {
    weights.check_against(model)?;
    if k == 0 {
        return Err(Error::domain("budget k must be at least 1"));
    }
    let reach = match objective {
        Objective::Global => model.n(),
        Objective::Local(r) => r,
    };
    let sets = subsets_up_to(model.n(), k);
    let tables: Vec<Result<Vec<(PartialAssignment, f64)>>> = sets
        .par_iter()
        .map(|s| {
            if s.is_empty() {
                return Ok(vec![(PartialAssignment::new(), 0.0)]);
            }
            let region = graph::ball(model, s, reach)?;
            let evaluator = Region::new(model, weights, &region, cap)?;
            PartialAssignment::enumerate(s)
                .map(|sigma| {
                    let v = evaluator.influence(&sigma)?;
                    Ok((sigma, v))
                })
                .collect()
        })
        .collect();

    let mut best: Option<(PartialAssignment, f64)> = None;
    for table in tables {
        for (sigma, value) in table? {
            if best.as_ref().is_none_or(|(_, w)| value > *w) {
                best = Some((sigma, value));
            }
        }
    }
    let (assignment, value) = best.expect("the empty pinning is always present");
    let (radius_used, global_value) = match objective {
        Objective::Global => (graph::diameter(model), Some(value)),
        Objective::Local(r) => {
            let q = InfluenceQuery::global(model, weights, &assignment).with_cap(cap);
            let global = match global_influence(&q) {
                Ok(v) => Some(v),
                Err(e) if e.is_capacity() => None,
                Err(e) => return Err(e),
            };
            (r, global)
        }
    };
    Ok(Solution {
        set: assignment.vertices(),
        assignment,
        local_value: value,
        global_value,
        radius_used,
        heuristic: false,
        warnings: Vec::new(),
        diagnostics: Diagnostics {
            candidates: sets.len(),
            ..Diagnostics::default()
        },
    })
}
