//! Road network representation, cost-function algebra and file formats.

mod cost;
mod format;
mod graph;

pub use cost::{CostFn, CostMode, CriteriaVector, BPR_ALPHA, BPR_BETA};
pub use format::{parse_network, parse_route, parse_route_spec, write_network, write_route, RouteSpec};
pub use graph::{Edge, EdgeId, EdgeMask, Network, NetworkBuilder, Node, NodeId, NodeMask, Path};
