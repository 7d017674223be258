use super::scalar::distances_to;
use crate::network::{CostMode, CriteriaVector, EdgeMask, Network, NodeId};

/// Per-node lower bounds on the coefficient sums of any path to the target(s).
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicTable {
    slope: Vec<f64>,
    offset: Vec<f64>,
    mode: CostMode,
}

impl HeuristicTable {
    pub(crate) fn compute(net: &Network, targets: &[NodeId], blocked: Option<&EdgeMask>) -> Self {
        HeuristicTable {
            slope: distances_to(net, targets, blocked, |e| net.edge(e).cost.slope()),
            offset: distances_to(net, targets, blocked, |e| net.edge(e).cost.offset()),
            mode: net.mode(),
        }
    }

    /// `(h_a, h_b)`: minimal slope sum and minimal constant sum, computed independently.
    pub fn get(&self, v: NodeId) -> (f64, f64) {
        (self.slope[v.index()], self.offset[v.index()])
    }

    pub fn reachable(&self, v: NodeId) -> bool {
        self.offset[v.index()].is_finite()
    }

    /// Lower bound on the remaining criteria vector; the shared-slope entry is 0.
    pub(crate) fn lower_bound(&self, v: NodeId, demand: f64, dim: usize) -> CriteriaVector {
        let (a, b) = self.get(v);
        let at_demand = match self.mode {
            CostMode::Quadratic => a * demand * demand + b,
            CostMode::Affine => a * demand + b,
        };
        if dim == 3 {
            CriteriaVector::triple(b, at_demand, 0.0)
        } else {
            CriteriaVector::pair(b, at_demand)
        }
    }
}

/// Two reverse Dijkstra runs toward `target`, one per coefficient.
pub fn build_heuristic(net: &Network, target: NodeId) -> HeuristicTable {
    HeuristicTable::compute(net, &[target], None)
}
