//! Recovering a single-site marginal from any influence maximizer.
//!
//! Add `k` isolated vertices `u_1..u_k` with common field `x` to `G`, and
//! put weight 1 on the target `v` and on each `u_i`. Pinning all of
//! `U = {u_1..u_k}` to `+` gains `k (1 - tanh x)`; pinning
//! `W = {v, u_1..u_{k-1}}` to `+` gains `1 - E[X_v] + (k - 1)(1 - tanh x)`.
//! One of the two is optimal, so whether an optimizer picks `U` tells us on
//! which side of `tanh x` the marginal `E[X_v]` lies, up to the solver's
//! additive error. Binary search over `t = tanh x` then pins it down.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::model::{IsingModel, Vertex, WeightVector};
use crate::solver::{InfMaxSolver, Solution};

/// Probes are kept inside `[-CLAMP, CLAMP]` so `arctanh` stays finite.
pub const CLAMP: f64 = 1.0 - 1e-9;

/// Which side of `tanh x` the marginal lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `E[X_v] >= tanh x - eps`: the optimizer chose `U`.
    #[serde(rename = "ge")]
    AtLeast,
    /// `E[X_v] <= tanh x + eps`: it chose anything else.
    #[serde(rename = "le")]
    AtMost,
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub augmented: IsingModel,
    pub weights: WeightVector,
    pub x: f64,
    pub target: Vertex,
    /// The added vertices.
    pub extra: VertexSet,
    /// The target plus the first `k - 1` added vertices.
    pub witness: VertexSet,
}

pub fn build_gadget(model: &IsingModel, v: Vertex, k: usize, x: f64) -> Result<Gadget> {
    model.check_vertex(v)?;
    if k == 0 {
        return Err(Error::domain("budget k must be at least 1"));
    }
    if !x.is_finite() {
        return Err(Error::domain(format!("gadget field must be finite, got {x}")));
    }
    let n = model.n();
    let augmented = model.disjoint_union(&IsingModel::edgeless(vec![x; k])?);
    let mut a = vec![0.0; n + k];
    a[v] = 1.0;
    a[n..].fill(1.0);
    Ok(Gadget {
        augmented,
        weights: WeightVector::new(a),
        x,
        target: v,
        extra: VertexSet::new(n..n + k),
        witness: VertexSet::new(std::iter::once(v).chain(n..n + k - 1)),
    })
}

/// `AtLeast` exactly when the solver returned `U`.
pub fn classify_optimum(gadget: &Gadget, solution: &Solution) -> Result<Direction> {
    let n = gadget.augmented.n();
    if let Some(&v) = solution.set.iter().find(|&&v| v >= n) {
        return Err(Error::MalformedSolution(format!("vertex {v} is not in the gadget")));
    }
    if solution.assignment.vertices() != solution.set {
        return Err(Error::MalformedSolution(
            "assignment keys differ from the chosen set".into(),
        ));
    }
    Ok(if solution.set == gadget.extra {
        Direction::AtLeast
    } else {
        Direction::AtMost
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginalEstimate {
    /// Estimate of `E[X_v]`.
    pub t: f64,
    /// Final bracket `[lo, hi]`; the marginal lies within `eps` of it.
    pub bracket: (f64, f64),
    pub probes: Vec<(f64, Direction)>,
}

impl MarginalEstimate {
    /// `Pr(X_v = +1) = (1 + t) / 2`.
    pub fn probability(&self) -> f64 {
        (1.0 + self.t) / 2.0
    }
}

/// Largest number of probes the search may take for a given tolerance.
pub fn probe_limit(tolerance: f64) -> usize {
    (2.0 / tolerance).log2().ceil().max(0.0) as usize
}

/// Binary search for `E[X_v]` on `(-1, 1)` using `solver` as the oracle.
///
/// Stops once the bracket is at most `2 tolerance` wide and returns its
/// midpoint, which is within `epsilon + tolerance` of the marginal when
/// `solver` is `epsilon`-optimal on every gadget.
pub fn estimate_marginal(
    model: &IsingModel,
    v: Vertex,
    k: usize,
    solver: &dyn InfMaxSolver,
    tolerance: f64,
) -> Result<MarginalEstimate> {
    model.check_vertex(v)?;
    if !(tolerance > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tolerance}")));
    }
    let limit = probe_limit(tolerance);
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut probes = Vec::new();
    while hi - lo > 2.0 * tolerance {
        if probes.len() >= limit {
            return Err(Error::NonConvergence { probes });
        }
        let t = (0.5 * (lo + hi)).clamp(-CLAMP, CLAMP);
        let gadget = build_gadget(model, v, k, t.atanh())?;
        let solution = solver.solve(&gadget.augmented, &gadget.weights, k)?;
        let direction = classify_optimum(&gadget, &solution)?;
        probes.push((t, direction));
        match direction {
            Direction::AtLeast => lo = t,
            Direction::AtMost => hi = t,
        }
    }
    Ok(MarginalEstimate {
        t: 0.5 * (lo + hi),
        bracket: (lo, hi),
        probes,
    })
}
