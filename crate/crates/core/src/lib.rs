//! Budgeted influence maximization on sparse Ising models.
//!
//! Given an Ising model on a bounded-degree graph, a weight vector `a` and a
//! budget `k`, find a set `S` of at most `k` vertices and spins `sigma_S`
//! maximizing the shift `E[a.X | X_S = sigma_S] - E[a.X]`. In the
//! high-temperature regime the influence of a pinning decays geometrically
//! with distance, and [`solver::solve_infmax`] exploits this by scoring only
//! small clusters on bounded balls.
//!
//! ```
//! use ising_infmax::model::{FamilyParams, IsingModel, SolverConfig, WeightVector};
//! use ising_infmax::solver::solve_infmax;
//!
//! let model = IsingModel::new(vec![0.0, 0.0], [(0, 1, 0.3)]).unwrap();
//! let weights = WeightVector::uniform(2, 1.0);
//! let family = FamilyParams::high_temperature(3, 0.4).unwrap();
//! let sol = solve_infmax(&model, &weights, &family, &SolverConfig::new(1, 0.1)).unwrap();
//! assert!((sol.local_value - (1.0 + 0.3f64.tanh())).abs() < 1e-12);
//! ```

pub mod error;
pub mod estimate;
pub mod exact;
pub mod graph;
pub mod influence;
pub mod model;
pub mod reduction;
pub mod solver;

pub use error::{Error, Result};
pub use graph::VertexSet;
pub use model::{IsingModel, PartialAssignment, Spin, Vertex, WeightVector};
