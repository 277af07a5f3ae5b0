//! Unweighted graph metrics on the model's interaction graph: balls, set
//! distances, power-graph connectivity and enumeration of small clusters
//! that are connected in the power graph `G^{<=2r+1}`.
//!
//! The power graph is never materialized; adjacency in it is answered by
//! breadth-first search truncated at depth `2r + 1`.

use std::cell::OnceCell;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{IsingModel, Vertex};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = Vertex>>(members: I) -> Self {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Index of `v` within the sorted members.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Smallest common member, if any.
    pub fn first_common(&self, other: &VertexSet) -> Option<Vertex> {
        self.0.iter().copied().find(|&v| other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

fn check_members(model: &IsingModel, set: &VertexSet) -> Result<()> {
    set.iter().try_for_each(|&v| model.check_vertex(v))
}

/// Multi-source BFS distances from `sources`, stopping at depth `limit`.
/// Vertices further than `limit` (or unreachable) get `None`.
pub fn distances(model: &IsingModel, sources: &VertexSet, limit: usize) -> Result<Vec<Option<usize>>> {
    check_members(model, sources)?;
    let mut dist = vec![None; model.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        if du == limit {
            continue;
        }
        for &(w, _) in model.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// The ball `B(S, r)`: all vertices within graph distance `r` of `S`.
pub fn ball(model: &IsingModel, set: &VertexSet, r: usize) -> Result<VertexSet> {
    let dist = distances(model, set, r)?;
    Ok(VertexSet::from_sorted(
        dist.iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect(),
    ))
}

/// `dist_G(a, b)` if it is at most `limit`, searching from the smaller set.
/// Overlapping sets are at distance 0.
pub fn set_distance(model: &IsingModel, a: &VertexSet, b: &VertexSet, limit: usize) -> Result<Option<usize>> {
    check_members(model, a)?;
    check_members(model, b)?;
    let (from, to) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut dist = vec![None; model.n()];
    let mut queue = VecDeque::new();
    for &s in from {
        if to.contains(s) {
            return Ok(Some(0));
        }
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let du: usize = dist[u].unwrap();
        if du == limit {
            continue;
        }
        for &(w, _) in model.neighbors(u) {
            if dist[w].is_none() {
                if to.contains(w) {
                    return Ok(Some(du + 1));
                }
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

/// Reach of the power graph used at radius `r`.
pub fn power_reach(r: usize) -> usize {
    r.saturating_mul(2).saturating_add(1)
}

/// Whether disjoint nonempty `t1`, `t2` are within distance `2r + 1`.
pub fn power_adjacent(model: &IsingModel, t1: &VertexSet, t2: &VertexSet, r: usize) -> Result<bool> {
    if t1.is_empty() || t2.is_empty() {
        return Err(Error::domain("power adjacency needs nonempty sets"));
    }
    if let Some(v) = t1.first_common(t2) {
        return Err(Error::Overlap(v));
    }
    Ok(set_distance(model, t1, t2, power_reach(r))?.is_some())
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so groups come out ordered.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }

    fn groups(mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = self.find(i);
            by_root[r].push(i);
        }
        by_root.into_iter().filter(|g| !g.is_empty()).collect()
    }
}

/// Connected components of `G^{<=2r+1}[S]`, ordered by smallest member.
pub fn components_in_power_graph(model: &IsingModel, set: &VertexSet, r: usize) -> Result<Vec<VertexSet>> {
    check_members(model, set)?;
    let reach = power_reach(r);
    let mut sets = DisjointSets::new(set.len());
    for (i, &v) in set.iter().enumerate() {
        let dist = distances(model, &VertexSet::singleton(v), reach)?;
        for (j, &w) in set.iter().enumerate().skip(i + 1) {
            if dist[w].is_some() {
                sets.union(i, j);
            }
        }
    }
    Ok(sets
        .groups()
        .into_iter()
        .map(|g| VertexSet::from_sorted(g.into_iter().map(|i| set.as_slice()[i]).collect()))
        .collect())
}

/// Connected components of the induced subgraph `G[region]`, ordered by
/// smallest member.
pub fn connected_components(model: &IsingModel, region: &VertexSet) -> Result<Vec<VertexSet>> {
    check_members(model, region)?;
    let mut seen = vec![false; model.n()];
    let mut out = Vec::new();
    for &start in region {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(w, _) in model.neighbors(u) {
                if !seen[w] && region.contains(w) {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        out.push(VertexSet::new(comp));
    }
    Ok(out)
}

/// Largest finite distance from `v`.
pub fn eccentricity(model: &IsingModel, v: Vertex) -> Result<usize> {
    let dist = distances(model, &VertexSet::singleton(v), usize::MAX)?;
    Ok(dist.into_iter().flatten().max().unwrap_or(0))
}

/// Largest diameter over the connected components.
pub fn diameter(model: &IsingModel) -> usize {
    (0..model.n())
        .map(|v| eccentricity(model, v).expect("vertex in range"))
        .max()
        .unwrap_or(0)
}

/// Lazily computed neighborhoods in `G^{<=reach}`, one BFS per vertex asked.
struct PowerNeighbors<'a> {
    model: &'a IsingModel,
    reach: usize,
    cache: Vec<OnceCell<Vec<Vertex>>>,
}

impl<'a> PowerNeighbors<'a> {
    fn new(model: &'a IsingModel, reach: usize) -> Self {
        PowerNeighbors {
            model,
            reach,
            cache: (0..model.n()).map(|_| OnceCell::new()).collect(),
        }
    }

    fn of(&self, v: Vertex) -> &[Vertex] {
        self.cache[v].get_or_init(|| {
            let dist = distances(self.model, &VertexSet::singleton(v), self.reach).expect("vertex in range");
            dist.iter()
                .enumerate()
                .filter_map(|(w, d)| (w != v && d.is_some()).then_some(w))
                .collect()
        })
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.of(u).binary_search(&v).is_ok()
    }
}

/// All nonempty `T` with `|T| <= k` that are connected in `G^{<=2r+1}`,
/// each exactly once, sorted by size and then lexicographically.
///
/// Sets are grown from their smallest member (the anchor) by exclusive
/// extension: a vertex joins the extension frontier only through the first
/// member that makes it adjacent, and only if it is larger than the anchor.
/// This visits every connected set exactly once with no deduplication pass.
pub fn enumerate_connected_clusters(model: &IsingModel, k: usize, r: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let power = PowerNeighbors::new(model, power_reach(r));
    for anchor in 0..model.n() {
        let frontier: Vec<Vertex> = power.of(anchor).iter().copied().filter(|&u| u > anchor).collect();
        let mut members = vec![anchor];
        grow(&power, &mut members, frontier, anchor, k, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn grow(
    power: &PowerNeighbors<'_>,
    members: &mut Vec<Vertex>,
    mut frontier: Vec<Vertex>,
    anchor: Vertex,
    k: usize,
    out: &mut Vec<VertexSet>,
) {
    out.push(VertexSet::new(members.iter().copied()));
    if members.len() == k {
        return;
    }
    while let Some(w) = frontier.pop() {
        let mut next = frontier.clone();
        for &u in power.of(w) {
            if u <= anchor || members.contains(&u) || next.contains(&u) {
                continue;
            }
            if members.iter().any(|&m| power.adjacent(m, u)) {
                continue;
            }
            next.push(u);
        }
        members.push(w);
        grow(power, members, next, anchor, k, out);
        members.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> IsingModel {
        IsingModel::new(vec![0.0; n], (0..n - 1).map(|i| (i, i + 1, 0.3))).unwrap()
    }

    fn set<const N: usize>(xs: [Vertex; N]) -> VertexSet {
        VertexSet::new(xs)
    }

    #[test]
    fn balls_on_paths() {
        let p5 = path(5);
        assert_eq!(ball(&p5, &set([1, 3]), 0).unwrap(), set([1, 3]));
        assert_eq!(ball(&p5, &set([2]), 1).unwrap(), set([1, 2, 3]));
        let p10 = path(10);
        assert_eq!(ball(&p10, &set([0, 9]), 2).unwrap(), set([0, 1, 2, 7, 8, 9]));
        assert!(matches!(ball(&p10, &set([10]), 1), Err(Error::UnknownVertex { vertex: 10, .. })));
    }

    #[test]
    fn power_adjacency() {
        let p10 = path(10);
        assert!(power_adjacent(&p10, &set([3]), &set([4]), 0).unwrap());
        assert!(!power_adjacent(&p10, &set([0]), &set([9]), 1).unwrap());
        let p4 = path(4);
        assert!(power_adjacent(&p4, &set([0]), &set([3]), 1).unwrap());
        assert!(!power_adjacent(&p4, &set([0]), &set([3]), 0).unwrap());
        assert!(matches!(power_adjacent(&p4, &set([0, 1]), &set([1]), 0), Err(Error::Overlap(1))));
    }

    #[test]
    fn power_components() {
        let p10 = path(10);
        assert_eq!(components_in_power_graph(&p10, &set([4]), 0).unwrap(), vec![set([4])]);
        assert_eq!(
            components_in_power_graph(&p10, &set([0, 9]), 1).unwrap(),
            vec![set([0]), set([9])]
        );
        assert_eq!(components_in_power_graph(&path(3), &set([0, 2]), 1).unwrap(), vec![set([0, 2])]);
        // chained: 0-3 and 3-6 within reach 3, 0-6 not
        assert_eq!(
            components_in_power_graph(&p10, &set([0, 3, 6, 9]), 1).unwrap(),
            vec![set([0, 3, 6, 9])]
        );
    }

    #[test]
    fn cluster_examples() {
        let p3 = path(3);
        assert_eq!(
            enumerate_connected_clusters(&p3, 2, 0),
            vec![set([0]), set([1]), set([2]), set([0, 1]), set([1, 2])]
        );
        let tri = IsingModel::new(vec![0.0; 3], [(0, 1, 0.1), (1, 2, 0.1), (0, 2, 0.1)]).unwrap();
        assert_eq!(enumerate_connected_clusters(&tri, 2, 0).len(), 6);
        assert_eq!(enumerate_connected_clusters(&path(7), 1, 3).len(), 7);
    }

    #[test]
    fn components_and_diameter() {
        let m = IsingModel::new(vec![0.0; 6], [(0, 1, 0.1), (1, 2, 0.1), (4, 5, 0.1)]).unwrap();
        let all = VertexSet::new(0..6);
        assert_eq!(
            connected_components(&m, &all).unwrap(),
            vec![set([0, 1, 2]), set([3]), set([4, 5])]
        );
        assert_eq!(connected_components(&m, &set([0, 2])).unwrap(), vec![set([0]), set([2])]);
        assert_eq!(diameter(&m), 2);
        assert_eq!(eccentricity(&m, 1).unwrap(), 1);
        assert_eq!(diameter(&path(10)), 9);
    }

    #[test]
    fn set_distances() {
        let p10 = path(10);
        assert_eq!(set_distance(&p10, &set([0, 1]), &set([5, 9]), 10).unwrap(), Some(4));
        assert_eq!(set_distance(&p10, &set([0, 1]), &set([5, 9]), 3).unwrap(), None);
        assert_eq!(set_distance(&p10, &set([2, 3]), &set([3]), 0).unwrap(), Some(0));
    }
}
