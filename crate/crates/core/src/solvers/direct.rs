use std::time::Instant;

use super::{finish, transform_1d_layered, Instance, Solution};
use crate::error::Result;
use crate::mcsp::{mc_shortest, SearchSpace};

/// Three-criteria search over the full network.
pub fn solve_sap(inst: &Instance<'_>) -> Result<Solution> {
    let started = Instant::now();
    let mask = inst.route_mask();
    let space = SearchSpace::new(inst.net, inst.demand).with_shared(&mask);
    let frontier = mc_shortest(&space, inst.source(), inst.target())?;
    finish(inst, frontier.into_paths().into_iter().map(|lp| lp.into_path()).collect(), started)
}

/// Three-criteria search over the layered single-diversion network; paths
/// that map back to walks repeating a vertex are dropped.
pub fn solve_1d_sap(inst: &Instance<'_>) -> Result<Solution> {
    let started = Instant::now();
    let tr = transform_1d_layered(inst.net, &inst.route)?;
    let mask = tr.lift_mask(&inst.route_mask());
    let space = SearchSpace::new(&tr.net, inst.demand).with_shared(&mask);
    let frontier = mc_shortest(&space, inst.source(), inst.target())?;
    let candidates = frontier.iter().map(|lp| tr.map_back(lp.path())).filter(|p| p.is_simple()).collect();
    finish(inst, candidates, started)
}

/// Two-criteria search with the route's edges removed.
pub fn solve_d_sap(inst: &Instance<'_>) -> Result<Solution> {
    let started = Instant::now();
    let mask = inst.route_mask();
    let space = SearchSpace::new(inst.net, inst.demand).without(&mask);
    let frontier = mc_shortest(&space, inst.source(), inst.target())?;
    finish(inst, frontier.into_paths().into_iter().map(|lp| lp.into_path()).collect(), started)
}
