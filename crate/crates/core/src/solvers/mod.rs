//! Solvers for the single alternative path problem and its restricted
//! variants, plus the shortest-path baselines they are compared against.

mod direct;
mod fc;
mod transform;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use direct::{solve_1d_sap, solve_d_sap, solve_sap};
pub use fc::{segment_frontiers, solve_1d_sap_fc, solve_1d_sap_fc_with, solve_sap_fc, solve_sap_fc_with, Segments};
pub use transform::{transform_1d, transform_1d_layered, Transformed};

use crate::error::{Error, Result};
use crate::mcsp::shortest_path;
use crate::network::{EdgeMask, Network, NodeId, Path};
use crate::psych::{score, PsychModel, SplitResult};

/// Which alternatives are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Any simple path.
    Sap,
    /// Leaves the route once and rejoins it once.
    OneDisjoint,
    /// Shares no edge with the route.
    Disjoint,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Sap, Variant::OneDisjoint, Variant::Disjoint];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Sap => "sap",
            Variant::OneDisjoint => "1d-sap",
            Variant::Disjoint => "d-sap",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| Error::InvalidOption(format!("unknown variant `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// One multi-criteria search over the whole (possibly transformed) network.
    Direct,
    /// Searches between route vertices with fewer criteria, then combines.
    FewerCriteria,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Direct => "direct",
            Algorithm::FewerCriteria => "fc",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Algorithm::Direct),
            "fc" => Ok(Algorithm::FewerCriteria),
            _ => Err(Error::InvalidOption(format!("unknown algorithm `{s}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance<'a> {
    pub net: &'a Network,
    pub route: Path,
    pub demand: f64,
    pub model: PsychModel,
    pub variant: Variant,
    pub algorithm: Algorithm,
}

impl<'a> Instance<'a> {
    pub fn new(net: &'a Network, route: Path, demand: f64, model: PsychModel) -> Result<Self> {
        route.validate_route()?;
        for (k, &e) in route.edges().iter().enumerate() {
            let edge = net.edge(e);
            if edge.tail != route.vertices()[k] || edge.head != route.vertices()[k + 1] {
                return Err(Error::InvalidRoute("edges do not follow the vertex sequence".into()));
            }
        }
        if !(demand > 0.0 && demand.is_finite()) {
            return Err(Error::FlowOutOfRange(demand));
        }
        Ok(Instance { net, route, demand, model, variant: Variant::Sap, algorithm: Algorithm::Direct })
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn source(&self) -> NodeId {
        self.route.source()
    }

    pub fn target(&self) -> NodeId {
        self.route.target()
    }

    pub(crate) fn route_mask(&self) -> EdgeMask {
        EdgeMask::from_edges(self.net, self.route.edges().iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Baseline {
    pub path: Path,
    /// Travel time with all demand on `path`.
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Baselines {
    /// Shortest path for a single agent.
    pub one_sp: Baseline,
    /// Shortest path with the full demand on every edge.
    pub d_sp: Baseline,
    /// Everybody stays on the original route.
    pub original: f64,
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// The suggested alternative; the original route when nothing beats it.
    pub path: Path,
    pub split: SplitResult,
    /// No admissible candidate other than the original route exists.
    pub no_alternative: bool,
    pub baselines: Baselines,
    /// Candidates scored, not counting the injected original route.
    pub frontier_size: usize,
    pub elapsed: Duration,
}

impl Solution {
    pub fn cost(&self) -> f64 {
        self.split.cost
    }
}

/// Scalar shortest path with edge weights `τ_e(load)`; the reported cost puts
/// the whole demand `d` on it.
pub fn baseline_sp(net: &Network, s: NodeId, t: NodeId, load: f64, d: f64) -> Result<(Path, f64)> {
    net.check_node(s)?;
    net.check_node(t)?;
    let (path, _) = shortest_path(net, s, t, |e| net.edge(e).cost.value(load))
        .ok_or_else(|| Error::Disconnected(net.name(s).to_string(), net.name(t).to_string()))?;
    let cost = d * path.cost(net).value(d);
    Ok((path, cost))
}

fn baselines(inst: &Instance<'_>) -> Result<Baselines> {
    let (s, t, d) = (inst.source(), inst.target(), inst.demand);
    let (p1, c1) = baseline_sp(inst.net, s, t, 1.0, d)?;
    let (pd, cd) = baseline_sp(inst.net, s, t, d, d)?;
    Ok(Baselines {
        one_sp: Baseline { path: p1, cost: c1 },
        d_sp: Baseline { path: pd, cost: cd },
        original: d * inst.route.cost(inst.net).value(d),
    })
}

/// Scores `candidates` together with the original route.
fn finish(inst: &Instance<'_>, mut candidates: Vec<Path>, started: Instant) -> Result<Solution> {
    let frontier_size = candidates.len();
    let no_alternative = candidates.iter().all(|p| *p == inst.route);
    if !candidates.contains(&inst.route) {
        candidates.push(inst.route.clone());
    }
    let (path, split) = score(inst.net, &candidates, &inst.route, inst.demand, &inst.model)?;
    Ok(Solution { path, split, no_alternative, baselines: baselines(inst)?, frontier_size, elapsed: started.elapsed() })
}

/// Runs the solver selected by the instance's variant and algorithm.
pub fn solve(inst: &Instance<'_>) -> Result<Solution> {
    match (inst.variant, inst.algorithm) {
        (Variant::Sap, Algorithm::Direct) => solve_sap(inst),
        (Variant::Sap, Algorithm::FewerCriteria) => solve_sap_fc(inst),
        (Variant::OneDisjoint, Algorithm::Direct) => solve_1d_sap(inst),
        (Variant::OneDisjoint, Algorithm::FewerCriteria) => solve_1d_sap_fc(inst),
        (Variant::Disjoint, _) => solve_d_sap(inst),
    }
}

/// [`solve`] on a dedicated pool of `threads` workers.
pub fn solve_with_threads(inst: &Instance<'_>, threads: usize) -> Result<Solution> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidOption(format!("thread pool: {e}")))?;
    pool.install(|| solve(inst))
}

#[cfg(test)]
mod tests;
