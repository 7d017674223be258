//! Synthetic instances: small random graphs for oracle comparisons and BPR
//! grids with a fast arterial corridor that attracts most of the demand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mcsp::shortest_path;
use crate::network::{CostFn, CostMode, Network, NetworkBuilder, NodeId, Path};

#[derive(Debug, Clone)]
pub struct RandomCase {
    pub net: Network,
    /// The single-agent shortest path from node 0 to the last node.
    pub route: Path,
    pub demand: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub density: f64,
    pub coeff_min: f64,
    pub coeff_max: f64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { min_nodes: 4, max_nodes: 12, density: 0.3, coeff_min: 0.1, coeff_max: 5.0 }
    }
}

pub const DEMANDS: [f64; 4] = [1.0, 2.0, 5.0, 10.0];

/// Directed graph with each ordered pair present with probability `density`,
/// redrawn until the first node reaches the last one.
pub fn random_case(rng: &mut impl Rng, spec: &RandomSpec, demand: f64) -> RandomCase {
    loop {
        let n = rng.gen_range(spec.min_nodes..=spec.max_nodes);
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        for i in 0..n {
            b.add_node(format!("n{i}"), None).expect("fresh names");
        }
        for i in 0..n as u32 {
            for j in 0..n as u32 {
                if i != j && rng.gen_bool(spec.density) {
                    let a = rng.gen_range(spec.coeff_min..=spec.coeff_max);
                    let c = rng.gen_range(spec.coeff_min..=spec.coeff_max);
                    b.add_edge(NodeId(i), NodeId(j), CostFn::quadratic(a, c).expect("positive")).expect("valid edge");
                }
            }
        }
        let net = b.build();
        let (s, t) = (NodeId(0), NodeId(n as u32 - 1));
        if let Some((route, _)) = shortest_path(&net, s, t, |e| net.edge(e).cost.value(1.0)) {
            return RandomCase { net, route, demand };
        }
    }
}

/// Seeded stream of random cases cycling through [`DEMANDS`].
pub fn random_cases(seed: u64, count: usize, spec: RandomSpec) -> Vec<RandomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_case(&mut rng, &spec, DEMANDS[i % DEMANDS.len()])).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corridor {
    pub row: usize,
    pub speed: f64,
    pub capacity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    /// Edge length in metres before jitter.
    pub length: f64,
    pub speed: f64,
    pub capacity: f64,
    pub corridor: Option<Corridor>,
    /// Relative length perturbation, uniform in `[-jitter, jitter]`.
    pub jitter: f64,
    /// Relative capacity perturbation, uniform in `[-capacity_jitter, capacity_jitter]`.
    pub capacity_jitter: f64,
    pub seed: u64,
}

impl GridSpec {
    /// Square grid; streets at 10 m/s, the middle row at 25 m/s with half
    /// again the street capacity.
    pub fn with_corridor(n: usize, seed: u64) -> Self {
        GridSpec {
            rows: n,
            cols: n,
            length: 500.0,
            speed: 10.0,
            capacity: 100.0,
            corridor: Some(Corridor { row: n / 2, speed: 25.0, capacity: 150.0 }),
            jitter: 0.2,
            capacity_jitter: 0.3,
            seed,
        }
    }

    pub fn node_name(r: usize, c: usize) -> String {
        format!("r{r}c{c}")
    }
}

#[derive(Debug, Clone)]
pub struct GridCase {
    pub net: Network,
    pub spec: GridSpec,
}

impl GridCase {
    pub fn node(&self, r: usize, c: usize) -> NodeId {
        NodeId((r * self.spec.cols + c) as u32)
    }

    /// Straight path along row `r` from column `c0` to `c1 > c0`.
    pub fn row_path(&self, r: usize, c0: usize, c1: usize) -> Result<Path> {
        Path::from_vertices(&self.net, (c0..=c1).map(|c| self.node(r, c)).collect())
    }
}

/// Bidirectional grid with BPR costs and coordinates around (13.4, 52.5).
pub fn grid(spec: GridSpec) -> Result<GridCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = NetworkBuilder::new(CostMode::Quadratic);
    for r in 0..spec.rows {
        for c in 0..spec.cols {
            b.add_node(GridSpec::node_name(r, c), Some((13.4 + 0.007 * c as f64, 52.5 + 0.0045 * r as f64)))?;
        }
    }
    let id = |r: usize, c: usize| NodeId((r * spec.cols + c) as u32);
    let mut edge = |b: &mut NetworkBuilder, u: NodeId, v: NodeId, corridor: bool| -> Result<()> {
        let len = spec.length * (1.0 + rng.gen_range(-spec.jitter..=spec.jitter));
        let (speed, cap) = match (corridor, spec.corridor) {
            (true, Some(k)) => (k.speed, k.capacity),
            _ => (spec.speed, spec.capacity),
        };
        let cap = cap * (1.0 + rng.gen_range(-spec.capacity_jitter..=spec.capacity_jitter));
        b.add_edge(u, v, CostFn::from_bpr(len, speed, cap, crate::network::BPR_ALPHA, crate::network::BPR_BETA)?)?;
        Ok(())
    };
    for r in 0..spec.rows {
        for c in 0..spec.cols {
            if c + 1 < spec.cols {
                let on = spec.corridor.is_some_and(|k| k.row == r);
                edge(&mut b, id(r, c), id(r, c + 1), on)?;
                edge(&mut b, id(r, c + 1), id(r, c), on)?;
            }
            if r + 1 < spec.rows {
                edge(&mut b, id(r, c), id(r + 1, c), false)?;
                edge(&mut b, id(r + 1, c), id(r, c), false)?;
            }
        }
    }
    Ok(GridCase { net: b.build(), spec })
}
