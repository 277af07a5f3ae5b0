//! Ising models, weight vectors, pinnings and the parameter families they
//! are checked against.
//!
//! An [`IsingModel`] is an undirected simple graph on vertices `0..n` with a
//! coupling `beta` on every edge and an external field `h` on every vertex.
//! The Gibbs weight of a configuration `sigma` in `{+1, -1}^n` is
//!
//! ```text
//! exp( sum_{uv in E} beta_uv sigma_u sigma_v + sum_v h_v sigma_v )
//! ```
//!
//! Models are immutable once built. Edges are stored under the canonical key
//! `(min, max)` so serialization is independent of input orientation.

mod file;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

pub use file::{parse_model, read_model, write_model, ModelFile};

pub type Vertex = usize;

/// A single Ising spin. `Plus` orders before `Minus`, which is the
/// tie-breaking order used everywhere assignments are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub fn value(self) -> f64 {
        match self {
            Spin::Plus => 1.0,
            Spin::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    pub fn from_value(x: f64) -> Spin {
        if x >= 0.0 {
            Spin::Plus
        } else {
            Spin::Minus
        }
    }
}

impl From<Spin> for i8 {
    fn from(s: Spin) -> i8 {
        match s {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }
}

impl TryFrom<i8> for Spin {
    type Error = String;

    fn try_from(x: i8) -> std::result::Result<Self, Self::Error> {
        match x {
            1 => Ok(Spin::Plus),
            -1 => Ok(Spin::Minus),
            other => Err(format!("spin must be +1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Plus => "+",
            Spin::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsingModel {
    fields: Vec<f64>,
    /// Canonical `(u < v)` edges in lexicographic order.
    edges: Vec<Edge>,
    /// Per-vertex `(neighbor, beta)` lists sorted by neighbor id.
    adjacency: Vec<Vec<(Vertex, f64)>>,
}

impl IsingModel {
    /// Builds a model on `fields.len()` vertices.
    ///
    /// Rejects an empty vertex set, self-loops, parallel edges (in either
    /// orientation), endpoints out of range and non-finite parameters.
    pub fn new<I>(fields: Vec<f64>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let n = fields.len();
        if n == 0 {
            return Err(Error::InvalidModel("model has no vertices".into()));
        }
        if let Some(v) = fields.iter().position(|h| !h.is_finite()) {
            return Err(Error::InvalidModel(format!("vertex {v} has a non-finite field")));
        }
        let mut canonical: BTreeMap<(Vertex, Vertex), f64> = BTreeMap::new();
        for (u, v, beta) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidModel(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidModel(format!("self-loop at vertex {u}")));
            }
            if !beta.is_finite() {
                return Err(Error::InvalidModel(format!("edge ({u}, {v}) has a non-finite coupling")));
            }
            let key = (u.min(v), u.max(v));
            if canonical.insert(key, beta).is_some() {
                return Err(Error::InvalidModel(format!("duplicate edge ({}, {})", key.0, key.1)));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        let edges: Vec<Edge> = canonical
            .into_iter()
            .map(|((u, v), beta)| {
                adjacency[u].push((v, beta));
                adjacency[v].push((u, beta));
                Edge { u, v, beta }
            })
            .collect();
        for list in &mut adjacency {
            list.sort_by_key(|&(w, _)| w);
        }
        Ok(IsingModel {
            fields,
            edges,
            adjacency,
        })
    }

    /// `n` isolated vertices with the given fields.
    pub fn edgeless(fields: Vec<f64>) -> Result<Self> {
        Self::new(fields, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.fields.len()
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    pub fn field(&self, v: Vertex) -> f64 {
        self.fields[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn coupling(&self, u: Vertex, v: Vertex) -> Option<f64> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.n()
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, n: self.n() })
        }
    }

    /// The submodel induced on `vertices`, relabelled so that the i-th member
    /// of the set becomes vertex `i`.
    pub fn induced(&self, vertices: &VertexSet) -> Result<IsingModel> {
        for &v in vertices.iter() {
            self.check_vertex(v)?;
        }
        let fields = vertices.iter().map(|&v| self.fields[v]).collect();
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for &(w, beta) in &self.adjacency[u] {
                if w > u {
                    if let Some(j) = vertices.position(w) {
                        edges.push((i, j, beta));
                    }
                }
            }
        }
        IsingModel::new(fields, edges)
    }

    /// The same graph and couplings with every field negated.
    pub fn with_negated_fields(&self) -> IsingModel {
        IsingModel {
            fields: self.fields.iter().map(|h| -h).collect(),
            ..self.clone()
        }
    }

    /// Disjoint union: `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &IsingModel) -> IsingModel {
        let offset = self.n();
        let mut fields = self.fields.clone();
        fields.extend_from_slice(&other.fields);
        let edges = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.beta))
            .chain(other.edges.iter().map(|e| (e.u + offset, e.v + offset, e.beta)));
        IsingModel::new(fields, edges).expect("union of valid models is valid")
    }
}

/// Per-vertex weights `a` of the linear objective `sum_v a_v X_v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(values: Vec<f64>) -> Self {
        WeightVector(values)
    }

    pub fn uniform(n: usize, value: f64) -> Self {
        WeightVector(vec![value; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::uniform(n, 0.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: Vertex) -> f64 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `max |a_v| <= bound`.
    pub fn is_bounded(&self, bound: f64) -> bool {
        self.0.iter().all(|a| a.abs() <= bound)
    }

    pub fn scaled(&self, t: f64) -> Self {
        WeightVector(self.0.iter().map(|a| a * t).collect())
    }

    pub(crate) fn check_against(&self, model: &IsingModel) -> Result<()> {
        if self.len() != model.n() {
            return Err(Error::domain(format!(
                "weight vector has {} entries but the model has {} vertices",
                self.len(),
                model.n()
            )));
        }
        Ok(())
    }
}

/// A pinning `sigma_S`: a map from a vertex subset to spins.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialAssignment(BTreeMap<Vertex, Spin>);

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails if the same vertex is given twice.
    pub fn from_pairs<I: IntoIterator<Item = (Vertex, Spin)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, s) in pairs {
            if map.insert(v, s).is_some() {
                return Err(Error::domain(format!("vertex {v} assigned twice")));
            }
        }
        Ok(PartialAssignment(map))
    }

    /// Every vertex of `set` pinned to `spin`.
    pub fn uniform(set: &VertexSet, spin: Spin) -> Self {
        PartialAssignment(set.iter().map(|&v| (v, spin)).collect())
    }

    pub fn insert(&mut self, v: Vertex, spin: Spin) -> Option<Spin> {
        self.0.insert(v, spin)
    }

    pub fn get(&self, v: Vertex) -> Option<Spin> {
        self.0.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Spin)> + '_ {
        self.0.iter().map(|(&v, &s)| (v, s))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_sorted(self.0.keys().copied().collect())
    }

    pub fn restrict(&self, set: &VertexSet) -> Self {
        PartialAssignment(
            self.0
                .iter()
                .filter(|(v, _)| set.contains(**v))
                .map(|(&v, &s)| (v, s))
                .collect(),
        )
    }

    pub fn negated(&self) -> Self {
        PartialAssignment(self.0.iter().map(|(&v, &s)| (v, s.flipped())).collect())
    }

    /// Merges two assignments on disjoint vertex sets.
    pub fn merged(&self, other: &PartialAssignment) -> Result<Self> {
        Self::from_pairs(self.iter().chain(other.iter()))
    }

    /// All `2^|set|` assignments on `set` in canonical order: lexicographic
    /// over members in increasing id, with `+` before `-`.
    pub fn enumerate(set: &VertexSet) -> impl Iterator<Item = PartialAssignment> + '_ {
        let m = set.len();
        assert!(m < usize::BITS as usize, "too many vertices to enumerate assignments");
        (0..1usize << m).map(move |code| {
            PartialAssignment(
                set.iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let bit = (code >> (m - 1 - i)) & 1;
                        (v, if bit == 0 { Spin::Plus } else { Spin::Minus })
                    })
                    .collect(),
            )
        })
    }

    pub(crate) fn check_against(&self, model: &IsingModel) -> Result<()> {
        self.0.keys().try_for_each(|&v| model.check_vertex(v))
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, s)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:{s}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct Pin {
    vertex: Vertex,
    spin: Spin,
}

impl Serialize for PartialAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|(vertex, spin)| Pin { vertex, spin }))
    }
}

impl<'de> Deserialize<'de> for PartialAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pins = Vec::<Pin>::deserialize(deserializer)?;
        PartialAssignment::from_pairs(pins.into_iter().map(|p| (p.vertex, p.spin)))
            .map_err(serde::de::Error::custom)
    }
}

/// Parameters of the bounded-degree family: max degree `delta_max`, the
/// interaction bound `gamma`, and the slack `delta` (with `gamma = 1 - delta`
/// on the algorithmic side).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub delta_max: usize,
    pub gamma: f64,
    pub delta: f64,
}

impl FamilyParams {
    pub fn new(delta_max: usize, gamma: f64, delta: f64) -> Result<Self> {
        if delta_max < 3 {
            return Err(Error::domain(format!("max degree must be at least 3, got {delta_max}")));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::domain(format!("gamma must be positive, got {gamma}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain(format!("delta must lie in (0, 1), got {delta}")));
        }
        Ok(FamilyParams { delta_max, gamma, delta })
    }

    /// The high-temperature family with `gamma = 1 - delta`.
    pub fn high_temperature(delta_max: usize, delta: f64) -> Result<Self> {
        Self::new(delta_max, 1.0 - delta, delta)
    }

    pub fn is_high_temperature(&self) -> bool {
        (self.gamma - (1.0 - self.delta)).abs() <= 1e-12
    }
}

/// Outcome of [`validate_family`], carrying the first violation found.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyCheck {
    Member,
    DegreeTooLarge { vertex: Vertex, degree: usize },
    CouplingTooStrong { u: Vertex, v: Vertex, beta: f64, value: f64 },
}

impl FamilyCheck {
    pub fn holds(&self) -> bool {
        matches!(self, FamilyCheck::Member)
    }
}

impl fmt::Display for FamilyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyCheck::Member => f.write_str("model is in the family"),
            FamilyCheck::DegreeTooLarge { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}")
            }
            FamilyCheck::CouplingTooStrong { u, v, beta, value } => write!(
                f,
                "edge ({u}, {v}) with beta = {beta} gives (max_degree - 1) * tanh|beta| = {value}"
            ),
        }
    }
}

/// Checks max degree `<= delta_max` and `(delta_max - 1) tanh|beta_uv| <= gamma`
/// on every edge.
pub fn validate_family(model: &IsingModel, params: &FamilyParams) -> FamilyCheck {
    for v in 0..model.n() {
        let degree = model.degree(v);
        if degree > params.delta_max {
            return FamilyCheck::DegreeTooLarge { vertex: v, degree };
        }
    }
    let factor = (params.delta_max - 1) as f64;
    for e in model.edges() {
        let value = factor * e.beta.abs().tanh();
        if value > params.gamma {
            return FamilyCheck::CouplingTooStrong {
                u: e.u,
                v: e.v,
                beta: e.beta,
                value,
            };
        }
    }
    FamilyCheck::Member
}

/// Tree-uniqueness threshold `arctanh(1 / (delta_max - 1))`.
pub fn critical_coupling(delta_max: usize) -> Result<f64> {
    if delta_max < 3 {
        return Err(Error::domain(format!("max degree must be at least 3, got {delta_max}")));
    }
    Ok((1.0 / (delta_max - 1) as f64).atanh())
}

/// Budget, accuracy and capacity knobs for the localized solver.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub k: usize,
    pub epsilon: f64,
    /// Prefactor of the influence-decay bound used by the radius formula.
    pub decay_constant: f64,
    pub radius_override: Option<usize>,
    pub exact_ball_cap: usize,
    /// Largest budget accepted before refusing to run.
    pub max_budget: usize,
    /// Shrink the radius to fit the cap instead of failing; voids the guarantee.
    pub best_effort: bool,
}

pub const DEFAULT_EXACT_CAP: usize = 25;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            k: 1,
            epsilon: 0.1,
            decay_constant: 1.0,
            radius_override: None,
            exact_ball_cap: DEFAULT_EXACT_CAP,
            max_budget: 6,
            best_effort: false,
        }
    }
}

impl SolverConfig {
    pub fn new(k: usize, epsilon: f64) -> Self {
        SolverConfig {
            k,
            epsilon,
            ..Default::default()
        }
    }

    pub fn with_radius(mut self, r: usize) -> Self {
        self.radius_override = Some(r);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::domain("budget k must be at least 1"));
        }
        if self.k > self.max_budget {
            return Err(Error::domain(format!(
                "budget k = {} exceeds max_budget = {}",
                self.k, self.max_budget
            )));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::domain(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.decay_constant > 0.0) || !self.decay_constant.is_finite() {
            return Err(Error::domain(format!(
                "decay constant must be positive, got {}",
                self.decay_constant
            )));
        }
        Ok(())
    }
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::domain(format!("{name} range [{lo}, {hi}] is not a finite interval")));
    }
    Ok(())
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

/// A random sparse model with max degree `<= delta_max`, couplings and fields
/// uniform on the given ranges. Deterministic in `seed`.
///
/// Edges are proposed as `n * delta_max` uniformly random pairs and kept when
/// both endpoints still have spare degree, so the graph is usually
/// disconnected for small `delta_max`.
pub fn random_instance(
    n: usize,
    delta_max: usize,
    beta_range: (f64, f64),
    h_range: (f64, f64),
    seed: u64,
) -> Result<IsingModel> {
    if n == 0 {
        return Err(Error::domain("random instance needs at least one vertex"));
    }
    check_range("coupling", beta_range)?;
    check_range("field", h_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields: Vec<f64> = (0..n).map(|_| draw(&mut rng, h_range)).collect();
    let mut degree = vec![0usize; n];
    let mut present = std::collections::BTreeSet::new();
    let mut edges = Vec::new();
    if n >= 2 {
        for _ in 0..n * delta_max {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let key = (u.min(v), u.max(v));
            if u == v || degree[u] >= delta_max || degree[v] >= delta_max || present.contains(&key) {
                continue;
            }
            present.insert(key);
            degree[u] += 1;
            degree[v] += 1;
            edges.push((key.0, key.1, draw(&mut rng, beta_range)));
        }
    }
    IsingModel::new(fields, edges)
}

/// Weights drawn uniformly from `range`, deterministic in `seed`.
pub fn random_weights(n: usize, range: (f64, f64), seed: u64) -> Result<WeightVector> {
    check_range("weight", range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(WeightVector((0..n).map(|_| draw(&mut rng, range)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn star(leaves: usize) -> IsingModel {
        IsingModel::new(vec![0.0; leaves + 1], (1..=leaves).map(|v| (0, v, 0.1))).unwrap()
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(IsingModel::new(vec![], []).is_err());
        assert!(IsingModel::new(vec![0.0; 2], [(0, 0, 0.1)]).is_err());
        assert!(IsingModel::new(vec![0.0; 2], [(0, 1, 0.1), (1, 0, 0.2)]).is_err());
        assert!(IsingModel::new(vec![0.0; 2], [(0, 2, 0.1)]).is_err());
        assert!(IsingModel::new(vec![f64::NAN], []).is_err());
    }

    #[test]
    fn edges_are_canonical() {
        let m = IsingModel::new(vec![0.0; 3], [(2, 1, 0.5), (1, 0, -0.2)]).unwrap();
        let keys: Vec<_> = m.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(keys, vec![(0, 1), (1, 2)]);
        assert_eq!(m.coupling(2, 1), Some(0.5));
        assert_eq!(m.coupling(0, 2), None);
        assert_eq!(m.neighbors(1), &[(0, -0.2), (2, 0.5)]);
    }

    #[test]
    fn family_membership_examples() {
        let single = IsingModel::edgeless(vec![0.3]).unwrap();
        let p = FamilyParams::new(3, 0.9, 0.1).unwrap();
        assert!(validate_family(&single, &p).holds());

        // 2 tanh(0.4) = 0.759898... <= 0.76
        let edge = IsingModel::new(vec![0.0; 2], [(0, 1, 0.4)]).unwrap();
        let p = FamilyParams::high_temperature(3, 0.24).unwrap();
        assert!(validate_family(&edge, &p).holds());
        let tighter = FamilyParams::new(3, 0.7598, 0.24).unwrap();
        assert!(matches!(
            validate_family(&edge, &tighter),
            FamilyCheck::CouplingTooStrong { u: 0, v: 1, .. }
        ));

        assert_eq!(
            validate_family(&star(4), &p),
            FamilyCheck::DegreeTooLarge { vertex: 0, degree: 4 }
        );
    }

    #[test]
    fn critical_coupling_values() {
        assert_abs_diff_eq!(critical_coupling(3).unwrap(), 0.549_306_144_334_054_8, epsilon = 1e-15);
        assert_abs_diff_eq!(critical_coupling(4).unwrap(), 0.346_573_590_279_972_6, epsilon = 1e-15);
        assert!(critical_coupling(2).is_err());
        let values: Vec<f64> = (3..40).map(|d| critical_coupling(d).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn random_instances() {
        let one = random_instance(1, 3, (-0.4, 0.4), (-0.5, 0.5), 7).unwrap();
        assert_eq!(one.n(), 1);
        assert!(one.edges().is_empty());

        let a = random_instance(14, 3, (-0.4, 0.4), (-0.5, 0.5), 11).unwrap();
        let b = random_instance(14, 3, (-0.4, 0.4), (-0.5, 0.5), 11).unwrap();
        assert_eq!(a, b);
        assert!(!a.edges().is_empty());
        let p = FamilyParams::high_temperature(3, 0.24).unwrap();
        assert!(validate_family(&a, &p).holds());

        assert!(random_instance(0, 3, (0.0, 0.0), (0.0, 0.0), 0).is_err());
        assert!(random_instance(3, 3, (0.4, -0.4), (0.0, 0.0), 0).is_err());
    }

    #[test]
    fn assignment_enumeration_order() {
        let set = VertexSet::new([4, 2]);
        let all: Vec<String> = PartialAssignment::enumerate(&set).map(|a| a.to_string()).collect();
        assert_eq!(all, ["{2:+, 4:+}", "{2:+, 4:-}", "{2:-, 4:+}", "{2:-, 4:-}"]);
        assert!(PartialAssignment::from_pairs([(1, Spin::Plus), (1, Spin::Minus)]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let path = IsingModel::new(vec![0.1, 0.2, 0.3, 0.4], [(0, 1, 0.5), (1, 2, 0.6), (2, 3, 0.7)]).unwrap();
        let sub = path.induced(&VertexSet::new([1, 2, 3])).unwrap();
        assert_eq!(sub.fields(), &[0.2, 0.3, 0.4]);
        assert_eq!(sub.coupling(0, 1), Some(0.6));
        assert_eq!(sub.coupling(1, 2), Some(0.7));
        assert_eq!(sub.edges().len(), 2);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(2, 0.1).validate().is_ok());
        assert!(SolverConfig::new(0, 0.1).validate().is_err());
        assert!(SolverConfig::new(7, 0.1).validate().is_err());
        assert!(SolverConfig::new(1, 0.0).validate().is_err());
    }
}
