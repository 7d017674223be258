use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::{finish, Instance, Solution};
use crate::dominance::{reduced_join, reduced_union, simple_cull, LabeledPath, ReducedSet};
use crate::error::Result;
use crate::mcsp::{mc_multi_target, SearchSpace};
use crate::network::{NodeId, Path};

/// Two-criteria frontiers of paths avoiding the route's edges, from each
/// route vertex `v_i` to every later route vertex.
#[derive(Debug, Clone)]
pub struct Segments {
    per_source: Vec<BTreeMap<NodeId, ReducedSet>>,
}

impl Segments {
    /// Frontier from the `i`-th to the `j`-th route vertex.
    pub fn get(&self, i: usize, j: NodeId) -> Option<&ReducedSet> {
        self.per_source.get(i)?.get(&j)
    }

    pub fn total_paths(&self) -> usize {
        self.per_source.iter().flat_map(|m| m.values()).map(ReducedSet::len).sum()
    }
}

/// One multi-target search per route vertex, run on the current worker pool.
pub fn segment_frontiers(inst: &Instance<'_>) -> Result<Segments> {
    let mask = inst.route_mask();
    let verts = inst.route.vertices();
    let per_source = (0..verts.len() - 1)
        .into_par_iter()
        .map(|i| {
            let space = SearchSpace::new(inst.net, inst.demand).without(&mask);
            mc_multi_target(&space, verts[i], &verts[i + 1..])
        })
        .collect::<Result<_>>()?;
    Ok(Segments { per_source })
}

pub fn solve_1d_sap_fc(inst: &Instance<'_>) -> Result<Solution> {
    let started = Instant::now();
    let segments = segment_frontiers(inst)?;
    solve_1d_sap_fc_with(inst, &segments, started)
}

/// Every segment completed with the route's prefix and suffix; completions
/// that repeat a vertex are dropped.
pub fn solve_1d_sap_fc_with(inst: &Instance<'_>, segments: &Segments, started: Instant) -> Result<Solution> {
    let verts = inst.route.vertices();
    let q_edges = inst.route.edges();
    let mut candidates = Vec::new();
    for i in 0..verts.len() - 1 {
        for (j, &vj) in verts.iter().enumerate().skip(i + 1) {
            let Some(set) = segments.get(i, vj) else { continue };
            for lp in set {
                let detour = lp.path();
                let mut vs = verts[..i].to_vec();
                vs.extend_from_slice(detour.vertices());
                vs.extend_from_slice(&verts[j + 1..]);
                let mut es = q_edges[..i].to_vec();
                es.extend_from_slice(detour.edges());
                es.extend_from_slice(&q_edges[j..]);
                let p = Path::from_parts_unchecked(vs, es);
                if p.is_simple() {
                    candidates.push(p);
                }
            }
        }
    }
    finish(inst, candidates, started)
}

pub fn solve_sap_fc(inst: &Instance<'_>) -> Result<Solution> {
    let started = Instant::now();
    let segments = segment_frontiers(inst)?;
    solve_sap_fc_with(inst, &segments, started)
}

/// Dynamic program over route prefixes: the frontier of paths ending at `v_j`
/// combines the frontier at `v_{j-1}` extended by the route edge with every
/// earlier frontier extended by a segment to `v_j`, culled on three criteria.
pub fn solve_sap_fc_with(inst: &Instance<'_>, segments: &Segments, started: Instant) -> Result<Solution> {
    let net = inst.net;
    let mask = inst.route_mask();
    let verts = inst.route.vertices();
    let lift = |set: &ReducedSet| simple_cull(set.iter().cloned().map(LabeledPath::with_shared_criterion).collect());

    let mut frontiers: Vec<ReducedSet> = vec![ReducedSet::singleton(LabeledPath::trivial(net, verts[0], 3))];
    for j in 1..verts.len() {
        let route_edge = Path::from_edges(net, verts[j - 1], vec![inst.route.edges()[j - 1]])?;
        let step = ReducedSet::singleton(LabeledPath::new(net, route_edge, &mask, inst.demand, 3));
        let batches: Vec<ReducedSet> = (0..j)
            .into_par_iter()
            .map(|i| match segments.get(i, verts[j]) {
                Some(seg) => reduced_join(&frontiers[i], &lift(seg)),
                None => Ok(ReducedSet::empty()),
            })
            .collect::<Result<_>>()?;
        let mut acc = reduced_join(&frontiers[j - 1], &step)?;
        for b in &batches {
            acc = reduced_union(&acc, b)?;
        }
        frontiers.push(acc);
    }
    let last = frontiers.pop().expect("route has at least one vertex");
    finish(inst, last.into_paths().into_iter().map(LabeledPath::into_path).collect(), started)
}
