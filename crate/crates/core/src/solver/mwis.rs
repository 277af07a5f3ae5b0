//! Maximum-weight independent set under a total cost budget, for graphs
//! whose vertices have positive integer costs.
//!
//! With budget `k` and max degree `D`, any chosen vertex blocks at most
//! `D + 1` vertices (itself and its neighbors). So among the vertices of a
//! given cost `i`, an optimal solution can always be rewritten to use only
//! the `k (D + 1)` heaviest ones: an outside member can be swapped for an
//! unblocked, at-least-as-heavy vertex of the same cost from that pool. The
//! search then only enumerates subsets of the pruned pool.

use std::cmp::Ordering;

pub trait CostedGraph {
    fn len(&self) -> usize;
    fn weight(&self, i: usize) -> f64;
    fn cost(&self, i: usize) -> usize;
    /// Sorted neighbor indices.
    fn neighbors(&self, i: usize) -> &[usize];

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn max_degree(&self) -> usize {
        (0..self.len()).map(|i| self.neighbors(i).len()).max().unwrap_or(0)
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&j).is_ok()
    }
}

/// A plain costed graph built from edge pairs.
#[derive(Clone, Debug)]
pub struct SimpleCostedGraph {
    weights: Vec<f64>,
    costs: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl SimpleCostedGraph {
    pub fn new(weights: Vec<f64>, costs: Vec<usize>, edges: &[(usize, usize)]) -> Self {
        assert_eq!(weights.len(), costs.len());
        assert!(costs.iter().all(|&c| c >= 1), "costs must be positive");
        let mut adjacency = vec![Vec::new(); weights.len()];
        for &(u, v) in edges {
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        SimpleCostedGraph {
            weights,
            costs,
            adjacency,
        }
    }
}

impl CostedGraph for SimpleCostedGraph {
    fn len(&self) -> usize {
        self.weights.len()
    }

    fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    fn cost(&self, i: usize) -> usize {
        self.costs[i]
    }

    fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MwisSolution {
    /// Chosen vertex indices, ascending.
    pub members: Vec<usize>,
    /// Sum of member weights, added in ascending index order.
    pub weight: f64,
    /// Size of the pruned candidate pool that was searched.
    pub candidates: usize,
}

/// The pruned pool `U`: for each cost `1..=k`, the `min(k (D + 1), |V_i|)`
/// heaviest vertices of that cost (ties to the lower index). Ascending.
pub fn candidate_pool<G: CostedGraph + ?Sized>(graph: &G, k: usize) -> Vec<usize> {
    let keep = k.saturating_mul(graph.max_degree() + 1);
    let mut pool = Vec::new();
    for cost in 1..=k {
        let mut class: Vec<usize> = (0..graph.len()).filter(|&i| graph.cost(i) == cost).collect();
        class.sort_by(|&a, &b| {
            graph
                .weight(b)
                .partial_cmp(&graph.weight(a))
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        pool.extend(class.into_iter().take(keep));
    }
    pool.sort_unstable();
    pool
}

/// An optimal independent set with total cost at most `k`. The empty set is
/// always feasible, so the returned weight is never negative.
pub fn budgeted_mwis<G: CostedGraph + ?Sized>(graph: &G, k: usize) -> MwisSolution {
    let pool = candidate_pool(graph, k);
    let mut search = Search {
        graph,
        pool: &pool,
        chosen: Vec::new(),
        best: Vec::new(),
        best_weight: 0.0,
    };
    search.descend(0, k, 0.0);
    MwisSolution {
        members: search.best,
        weight: search.best_weight,
        candidates: pool.len(),
    }
}

struct Search<'a, G: ?Sized> {
    graph: &'a G,
    pool: &'a [usize],
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_weight: f64,
}

impl<G: CostedGraph + ?Sized> Search<'_, G> {
    fn descend(&mut self, from: usize, budget: usize, weight: f64) {
        if weight > self.best_weight {
            self.best_weight = weight;
            self.best = self.chosen.clone();
        }
        for pos in from..self.pool.len() {
            let i = self.pool[pos];
            let cost = self.graph.cost(i);
            if cost > budget || self.chosen.iter().any(|&c| self.graph.adjacent(c, i)) {
                continue;
            }
            self.chosen.push(i);
            self.descend(pos + 1, budget - cost, weight + self.graph.weight(i));
            self.chosen.pop();
        }
    }
}
