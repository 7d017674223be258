use serde::{Deserialize, Serialize};

use altroute_core::solvers::{Instance, Solution};
use altroute_core::{Network, Path};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineReport {
    pub path: Vec<String>,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    pub one_sp: BaselineReport,
    pub d_sp: BaselineReport,
    /// Everybody on the original route.
    pub original: f64,
}

/// Result of one solver run. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub network: String,
    pub route_file: String,
    pub variant: String,
    pub algorithm: String,
    pub model: String,
    pub demand: f64,
    pub route: Vec<String>,
    pub path: Vec<String>,
    pub no_alternative: bool,
    pub x_p: f64,
    pub cost: f64,
    /// Per-agent travel times on the alternative and the original route.
    pub time_p: f64,
    pub time_q: f64,
    pub boundary: String,
    pub cost_per_agent: f64,
    pub usage: f64,
    pub ratio_to_d_sp: f64,
    pub frontier_size: usize,
    pub baselines: Baselines,
    /// Not covered by determinism guarantees.
    pub wall_time_ms: f64,
}

fn names(net: &Network, p: &Path) -> Vec<String> {
    p.names(net).into_iter().map(String::from).collect()
}

impl RunReport {
    pub fn new(network: &str, route_file: &str, inst: &Instance<'_>, sol: &Solution) -> Self {
        let net = inst.net;
        let d = inst.demand;
        let b = &sol.baselines;
        RunReport {
            network: network.to_string(),
            route_file: route_file.to_string(),
            variant: inst.variant.to_string(),
            algorithm: inst.algorithm.to_string(),
            model: inst.model.to_string(),
            demand: d,
            route: names(net, &inst.route),
            path: names(net, &sol.path),
            no_alternative: sol.no_alternative,
            x_p: sol.split.x_p,
            cost: sol.cost(),
            time_p: sol.split.time_p,
            time_q: sol.split.time_q,
            boundary: sol.split.boundary.name().to_string(),
            cost_per_agent: sol.cost() / d,
            usage: sol.split.x_p / d,
            ratio_to_d_sp: sol.cost() / b.d_sp.cost,
            frontier_size: sol.frontier_size,
            baselines: Baselines {
                one_sp: BaselineReport { path: names(net, &b.one_sp.path), cost: b.one_sp.cost },
                d_sp: BaselineReport { path: names(net, &b.d_sp.path), cost: b.d_sp.cost },
                original: b.original,
            },
            wall_time_ms: sol.elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// Mean columns over all runs of one (variant, algorithm, model) combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub variant: String,
    pub algorithm: String,
    pub model: String,
    pub runs: usize,
    pub mean_cost_per_agent: f64,
    pub mean_ratio_to_d_sp: f64,
    pub mean_usage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub runs: Vec<RunReport>,
    pub summary: Vec<Summary>,
}

impl BenchReport {
    pub fn new(runs: Vec<RunReport>) -> Self {
        let mut summary: Vec<Summary> = Vec::new();
        for r in &runs {
            let key = |s: &Summary| s.variant == r.variant && s.algorithm == r.algorithm && s.model == r.model;
            let idx = match summary.iter().position(key) {
                Some(i) => i,
                None => {
                    summary.push(Summary {
                        variant: r.variant.clone(),
                        algorithm: r.algorithm.clone(),
                        model: r.model.clone(),
                        runs: 0,
                        mean_cost_per_agent: 0.0,
                        mean_ratio_to_d_sp: 0.0,
                        mean_usage: 0.0,
                    });
                    summary.len() - 1
                }
            };
            let s = &mut summary[idx];
            s.runs += 1;
            s.mean_cost_per_agent += r.cost_per_agent;
            s.mean_ratio_to_d_sp += r.ratio_to_d_sp;
            s.mean_usage += r.usage;
        }
        for s in &mut summary {
            let n = s.runs as f64;
            s.mean_cost_per_agent /= n;
            s.mean_ratio_to_d_sp /= n;
            s.mean_usage /= n;
        }
        BenchReport { runs, summary }
    }

    pub fn table(&self) -> String {
        let mut out = String::from("demand\tvariant\talgo\tmodel\tcost_per_agent\tratio_to_d_sp\tusage\n");
        for r in &self.runs {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\n",
                r.demand, r.variant, r.algorithm, r.model, r.cost_per_agent, r.ratio_to_d_sp, r.usage
            ));
        }
        for s in &self.summary {
            out.push_str(&format!(
                "mean\t{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\n",
                s.variant, s.algorithm, s.model, s.mean_cost_per_agent, s.mean_ratio_to_d_sp, s.mean_usage
            ));
        }
        out
    }
}
