use crate::error::{Error, Result};
use crate::network::{write_network, write_route, CostFn, CostMode, EdgeId, Network, NetworkBuilder, NodeId, Path};
use crate::psych::{IndicatorModel, PsychModel};

pub const GADGET_DEMAND: f64 = 2.0;
pub const MAX_BRUTE_SET: usize = 24;

/// Subset-sum instance `(M, w)` encoded as an alternative-route problem: a
/// chain `v0 … v_n` with, per element `m_i`, a congestible edge `m_i·x` and a
/// fixed edge `m_i`, plus the original route `v0 → v_n` costing `s·x + s`.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub set: Vec<u64>,
    pub target: u64,
    pub sum: u64,
    pub net: Network,
    pub route: Path,
    pub demand: f64,
    pub model: PsychModel,
}

impl GadgetInstance {
    /// Overall times below this bound exist exactly for yes-instances.
    pub fn threshold(&self) -> f64 {
        6.0 * self.sum as f64
    }

    pub fn network_text(&self) -> String {
        write_network(&self.net)
    }

    pub fn route_text(&self) -> String {
        write_route(&self.net, &self.route, self.demand)
    }

    /// The path taking the congestible edge exactly for the chosen elements.
    pub fn subset_path(&self, chosen: &[bool]) -> Result<Path> {
        if chosen.len() != self.set.len() {
            return Err(Error::InvalidGadget("selection length differs from the set".into()));
        }
        let edges = chosen.iter().enumerate().map(|(i, &c)| EdgeId((1 + 2 * i + usize::from(!c)) as u32)).collect();
        Path::from_edges(&self.net, NodeId(0), edges)
    }
}

fn check_set(set: &[u64]) -> Result<()> {
    if set.is_empty() {
        return Err(Error::InvalidGadget("the set must not be empty".into()));
    }
    if set.contains(&0) {
        return Err(Error::InvalidGadget("elements must be positive".into()));
    }
    Ok(())
}

pub fn build_gadget(set: &[u64], target: u64) -> Result<GadgetInstance> {
    check_set(set)?;
    if target == 0 {
        return Err(Error::InvalidGadget("the target must be at least 1".into()));
    }
    let sum: u64 = set
        .iter()
        .try_fold(0u64, |a, &m| a.checked_add(m))
        .filter(|s| *s < 1 << 52)
        .ok_or_else(|| Error::InvalidGadget("element sum too large for exact arithmetic".into()))?;
    let mut b = NetworkBuilder::new(CostMode::Affine);
    let nodes: Vec<NodeId> = (0..=set.len()).map(|i| b.add_node(format!("v{i}"), None)).collect::<Result<_>>()?;
    let s = sum as f64;
    // the route edge gets the lowest id so a vertex-sequence route file resolves to it
    let eq = b.add_edge(nodes[0], nodes[set.len()], CostFn::affine(s, s)?)?;
    for (i, &m) in set.iter().enumerate() {
        let m = m as f64;
        b.add_edge(nodes[i], nodes[i + 1], CostFn::affine(m, 0.0)?)?;
        b.add_edge(nodes[i], nodes[i + 1], CostFn::affine(0.0, m)?)?;
    }
    let net = b.build();
    let route = Path::from_edges(&net, nodes[0], vec![eq])?;
    Ok(GadgetInstance {
        set: set.to_vec(),
        target,
        sum,
        net,
        route,
        demand: GADGET_DEMAND,
        model: PsychModel::plugin(IndicatorModel { target }),
    })
}

/// Whether some subset of `set` sums to `target`, by checking all subsets.
pub fn subsetsum_brute(set: &[u64], target: u64) -> Result<bool> {
    check_set(set)?;
    if set.len() > MAX_BRUTE_SET {
        return Err(Error::InvalidGadget(format!("at most {MAX_BRUTE_SET} elements are supported")));
    }
    Ok((0u32..1 << set.len())
        .any(|mask| set.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &m)| m).sum::<u64>() == target))
}
