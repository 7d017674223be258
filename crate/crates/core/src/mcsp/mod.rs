//! Multi-criteria label-setting A* over Pareto label sets.
//!
//! Lower bounds come from two scalar reverse Dijkstra runs (slope sums and
//! offset sums), combined into `(h_b, h_a·d^k + h_b, 0)`.

mod heuristic;
mod scalar;
mod search;

pub use heuristic::{build_heuristic, HeuristicTable};
pub use scalar::{distances_to, shortest_path};
pub use search::{mc_multi_target, mc_shortest, SearchSpace};
