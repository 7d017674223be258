//! Single alternative route computation for congested road networks.
//!
//! Given an original route `Q`, a demand `d` and a model of how agents split
//! between `Q` and a suggested alternative `P`, find the `P` minimizing the
//! overall travel time.

pub mod dominance;
pub mod error;
pub mod mcsp;
pub mod network;
pub mod oracle;
pub mod psych;
pub mod solvers;
pub mod synth;

pub use dominance::{path_dominates, reduced_join, reduced_union, simple_cull, vec_dominates, LabeledPath, ReducedSet};
pub use error::{Error, Result};
pub use network::{
    parse_network, parse_route, CostFn, CostMode, CriteriaVector, Edge, EdgeId, EdgeMask, Network, NetworkBuilder, NodeId, NodeMask, Path,
};
