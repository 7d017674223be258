use std::collections::HashSet;

use super::enumerate::enumerate_simple_paths;
use crate::error::Result;
use crate::network::{CostFn, EdgeId, Network, Path};
use crate::psych::{CFunction, PathParts, PsychModel};
use crate::solvers::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Path enumeration cap.
    pub limit: usize,
    /// Grid points for the system optimum scan before ternary refinement.
    pub so_grid: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { limit: super::DEFAULT_PATH_LIMIT, so_grid: 4096 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub path: Path,
    pub x_p: f64,
    pub cost: f64,
    /// Feasible paths examined, including the original route.
    pub feasible: usize,
}

/// Whether `p` is admissible for `variant` with respect to route `q`.
///
/// A single diversion shares a prefix and a suffix of `q` and nothing else:
/// the edges of `p` outside `q` form one contiguous stretch.
pub fn is_feasible(variant: Variant, p: &Path, q: &Path) -> bool {
    let q_edges: HashSet<EdgeId> = q.edges().iter().copied().collect();
    match variant {
        Variant::Sap => true,
        Variant::Disjoint => p.edges().iter().all(|e| !q_edges.contains(e)),
        Variant::OneDisjoint => {
            if p == q {
                return true;
            }
            let (pe, qe) = (p.edges(), q.edges());
            let prefix = pe.iter().zip(qe).take_while(|(a, b)| a == b).count();
            let suffix = pe.iter().rev().zip(qe.iter().rev()).take_while(|(a, b)| a == b).count();
            if prefix + suffix >= pe.len() {
                return false;
            }
            // the remaining middle part must avoid every route edge
            pe[prefix..pe.len() - suffix].iter().all(|e| !q_edges.contains(e))
        }
    }
}

struct Pieces {
    only_p: CostFn,
    only_q: CostFn,
    shared: CostFn,
    d: f64,
}

impl Pieces {
    fn new(net: &Network, p: &Path, q: &Path, d: f64) -> Self {
        let in_p: HashSet<EdgeId> = p.edges().iter().copied().collect();
        let in_q: HashSet<EdgeId> = q.edges().iter().copied().collect();
        let sum = |edges: &mut dyn Iterator<Item = &EdgeId>| {
            let mut c = net.zero_cost();
            for e in edges {
                c += net.edge(*e).cost;
            }
            c
        };
        Pieces {
            only_p: sum(&mut p.edges().iter().filter(|e| !in_q.contains(e))),
            only_q: sum(&mut q.edges().iter().filter(|e| !in_p.contains(e))),
            shared: sum(&mut p.edges().iter().filter(|e| in_q.contains(e))),
            d,
        }
    }

    fn total(&self, x: f64) -> f64 {
        let y = self.d - x;
        x * self.only_p.value(x) + y * self.only_q.value(y) + self.d * self.shared.value(self.d)
    }

    fn so(&self, grid: usize) -> f64 {
        let n = grid.max(2);
        let h = self.d / n as f64;
        let mut best = 0.0;
        let mut best_c = self.total(0.0);
        for k in 1..=n {
            let x = if k == n { self.d } else { k as f64 * h };
            let c = self.total(x);
            if c < best_c {
                best = x;
                best_c = c;
            }
        }
        let (mut lo, mut hi) = ((best - h).max(0.0), (best + h).min(self.d));
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if self.total(m1) < self.total(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let mid = 0.5 * (lo + hi);
        if self.total(mid) < best_c {
            mid
        } else {
            best
        }
    }

    /// Root of `ratio(x) = c(x)` where `ratio` is the per-agent time on the
    /// route over the time on the alternative.
    fn quotient(&self, c: &CFunction) -> f64 {
        let d = self.d;
        let excess = |x: f64| {
            let num = self.only_q.value(d - x) + self.shared.value(d);
            let den = self.only_p.value(x) + self.shared.value(d);
            let ratio = if den > 0.0 { num / den } else { f64::INFINITY };
            ratio - c.eval(x, d)
        };
        if excess(0.0) < 0.0 {
            return 0.0;
        }
        if excess(d) > 0.0 {
            return d;
        }
        let (mut lo, mut hi) = (0.0, d);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if excess(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn split(&self, model: &PsychModel, grid: usize) -> Result<f64> {
        Ok(match model {
            PsychModel::SystemOptimum => self.so(grid),
            PsychModel::Quotient(c) => {
                c.validate(self.d)?;
                self.quotient(c)
            }
            PsychModel::Custom(plugin) => {
                let parts = PathParts::from_costs(self.only_p, self.only_q, self.shared, self.d);
                let f = plugin.fraction(&parts);
                if !(0.0..=1.0).contains(&f) {
                    return Err(crate::error::Error::InvalidModel(format!("split fraction {f} outside [0, 1]")));
                }
                f * self.d
            }
        })
    }
}

/// The best admissible alternative by exhaustive enumeration.
pub fn brute_force_optimum(
    net: &Network,
    q: &Path,
    d: f64,
    model: &PsychModel,
    variant: Variant,
    config: OracleConfig,
) -> Result<OracleSolution> {
    let mut paths = enumerate_simple_paths(net, q.source(), q.target(), config.limit)?;
    paths.retain(|p| is_feasible(variant, p, q));
    if !paths.contains(q) {
        paths.push(q.clone());
    }
    let mut best: Option<OracleSolution> = None;
    let feasible = paths.len();
    for p in paths {
        let pieces = Pieces::new(net, &p, q, d);
        let x = pieces.split(model, config.so_grid)?;
        let cost = pieces.total(x);
        let better = match &best {
            None => true,
            Some(b) => cost < b.cost || (cost == b.cost && p.vertices() < b.path.vertices()),
        };
        if better {
            best = Some(OracleSolution { path: p, x_p: x, cost, feasible });
        }
    }
    Ok(best.expect("the original route is always a candidate"))
}

/// The quotient split of the oracle, exposed for cross-checks.
pub fn oracle_quotient_split(parts: &PathParts, c: &CFunction) -> f64 {
    Pieces { only_p: parts.only_p, only_q: parts.only_q, shared: parts.shared, d: parts.demand }.quotient(c)
}

/// The system optimum split of the oracle, exposed for cross-checks.
pub fn oracle_so_split(parts: &PathParts, grid: usize) -> f64 {
    Pieces { only_p: parts.only_p, only_q: parts.only_q, shared: parts.shared, d: parts.demand }.so(grid)
}
