use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use super::heuristic::HeuristicTable;
use crate::dominance::{simple_cull, LabeledPath, ReducedSet};
use crate::error::Result;
use crate::network::{CostFn, CriteriaVector, EdgeId, EdgeMask, Network, NodeId, NodeMask, Path};

/// Relative slack used when comparing labels inside the search, so that
/// vectors differing only by summation-order rounding count as equal.
const PRUNE_EPS: f64 = 1e-12;

/// What a search may traverse and which criteria it optimizes.
#[derive(Debug, Clone, Copy)]
pub struct SearchSpace<'a> {
    net: &'a Network,
    demand: f64,
    shared: Option<&'a EdgeMask>,
    blocked: Option<&'a EdgeMask>,
    terminals: Option<&'a NodeMask>,
}

impl<'a> SearchSpace<'a> {
    /// Two criteria over the whole network.
    pub fn new(net: &'a Network, demand: f64) -> Self {
        SearchSpace { net, demand, shared: None, blocked: None, terminals: None }
    }

    /// Adds the third criterion: slope sum over edges in `q_edges`.
    pub fn with_shared(mut self, q_edges: &'a EdgeMask) -> Self {
        self.shared = Some(q_edges);
        self
    }

    /// Forbids the given edges.
    pub fn without(mut self, blocked: &'a EdgeMask) -> Self {
        self.blocked = Some(blocked);
        self
    }

    /// Labels reaching one of these nodes (other than the source) are not expanded further.
    pub fn stopping_at(mut self, terminals: &'a NodeMask) -> Self {
        self.terminals = Some(terminals);
        self
    }

    pub fn net(&self) -> &'a Network {
        self.net
    }

    pub fn demand(&self) -> f64 {
        self.demand
    }

    pub fn dim(&self) -> usize {
        if self.shared.is_some() {
            3
        } else {
            2
        }
    }

    fn is_blocked(&self, e: EdgeId) -> bool {
        self.blocked.is_some_and(|m| m.contains(e))
    }

    fn is_terminal(&self, v: NodeId) -> bool {
        self.terminals.is_some_and(|m| m.contains(v))
    }

    fn edge_vectors(&self) -> Vec<CriteriaVector> {
        self.net
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let p = e.cost.pareto_point(self.demand);
                match self.shared {
                    Some(mask) if mask.contains(EdgeId(i as u32)) => p.with_shared(e.cost.derivative_coeff()),
                    Some(_) => p.with_shared(0.0),
                    None => p,
                }
            })
            .collect()
    }
}

struct Label {
    node: NodeId,
    parent: Option<(u32, EdgeId)>,
    crit: CriteriaVector,
    cost: CostFn,
    shared: CostFn,
}

struct Queued {
    key: f64,
    f: CriteriaVector,
    id: u32,
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl Ord for Queued {
    // reversed: BinaryHeap pops the smallest key first
    fn cmp(&self, other: &Self) -> Ordering {
        other.key.total_cmp(&self.key).then_with(|| other.f.lex_cmp(&self.f)).then_with(|| other.id.cmp(&self.id))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn le_tol(u: &CriteriaVector, v: &CriteriaVector) -> bool {
    u.as_slice().iter().zip(v.as_slice()).all(|(a, b)| *a <= *b + PRUNE_EPS * b.abs().max(a.abs()))
}

struct Search<'s, 'a> {
    space: &'s SearchSpace<'a>,
    h: HeuristicTable,
    edge_vec: Vec<CriteriaVector>,
    weights: [f64; 3],
    labels: Vec<Label>,
    closed: Vec<Vec<u32>>,
}

impl<'s, 'a> Search<'s, 'a> {
    fn new(space: &'s SearchSpace<'a>, source: NodeId, targets: &[NodeId]) -> Self {
        let net = space.net;
        let h = HeuristicTable::compute(net, targets, space.blocked);
        let lb = h.lower_bound(source, space.demand, space.dim());
        let inv = |x: f64| if x.is_finite() && x > 0.0 { 1.0 / x } else { 1.0 };
        let w1 = inv(lb.get(1));
        let scale = match net.mode() {
            crate::network::CostMode::Quadratic => space.demand * space.demand,
            crate::network::CostMode::Affine => space.demand,
        };
        Search {
            space,
            h,
            edge_vec: space.edge_vectors(),
            weights: [inv(lb.get(0)), w1, w1 * scale],
            labels: Vec::new(),
            closed: vec![Vec::new(); net.node_count()],
        }
    }

    fn key(&self, f: &CriteriaVector) -> f64 {
        f.as_slice().iter().zip(self.weights).map(|(v, w)| v * w).sum()
    }

    fn f_of(&self, node: NodeId, crit: &CriteriaVector) -> CriteriaVector {
        *crit + self.h.lower_bound(node, self.space.demand, self.space.dim())
    }

    fn on_path(&self, mut id: u32, v: NodeId) -> bool {
        loop {
            let l = &self.labels[id as usize];
            if l.node == v {
                return true;
            }
            match l.parent {
                Some((p, _)) => id = p,
                None => return false,
            }
        }
    }

    fn closed_dominates(&self, v: NodeId, crit: &CriteriaVector) -> bool {
        self.closed[v.index()].iter().any(|&c| le_tol(&self.labels[c as usize].crit, crit))
    }

    fn to_labeled(&self, id: u32) -> LabeledPath {
        let l = &self.labels[id as usize];
        let mut vertices = vec![l.node];
        let mut edges = Vec::new();
        let mut cur = l;
        while let Some((p, e)) = cur.parent {
            edges.push(e);
            cur = &self.labels[p as usize];
            vertices.push(cur.node);
        }
        vertices.reverse();
        edges.reverse();
        LabeledPath::from_parts(Path::from_parts_unchecked(vertices, edges), l.cost, l.shared, l.crit)
    }

    /// Runs to exhaustion; returns settled label ids per target index.
    fn run(&mut self, source: NodeId, targets: &[NodeId], expand_targets: bool) -> Vec<Vec<u32>> {
        let net = self.space.net;
        let dim = self.space.dim();
        let target_index: BTreeMap<NodeId, usize> = targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut fronts: Vec<Vec<CriteriaVector>> = vec![Vec::new(); targets.len()];
        let mut settled: Vec<Vec<u32>> = vec![Vec::new(); targets.len()];
        let mut heap = BinaryHeap::new();
        if !self.h.reachable(source) {
            return settled;
        }

        self.labels.push(Label {
            node: source,
            parent: None,
            crit: CriteriaVector::zero(dim),
            cost: net.zero_cost(),
            shared: net.zero_cost(),
        });
        let f0 = self.f_of(source, &CriteriaVector::zero(dim));
        heap.push(Queued { key: self.key(&f0), f: f0, id: 0 });

        while let Some(Queued { f, id, .. }) = heap.pop() {
            let v = self.labels[id as usize].node;
            let crit = self.labels[id as usize].crit;
            if self.closed_dominates(v, &crit) {
                continue;
            }
            let pruned = !fronts.is_empty() && fronts.iter().all(|front| front.iter().any(|g| le_tol(g, &f)));
            if pruned {
                continue;
            }
            self.closed[v.index()].push(id);
            if let Some(&ti) = target_index.get(&v) {
                fronts[ti].push(crit);
                settled[ti].push(id);
                if !expand_targets {
                    continue;
                }
            }
            if v != source && self.space.is_terminal(v) {
                continue;
            }
            for &e in net.out_edges(v) {
                if self.space.is_blocked(e) {
                    continue;
                }
                let w = net.edge(e).head;
                if !self.h.reachable(w) || self.on_path(id, w) {
                    continue;
                }
                let ncrit = crit + self.edge_vec[e.index()];
                if self.closed_dominates(w, &ncrit) {
                    continue;
                }
                let ecost = net.edge(e).cost;
                let shared_add = match self.space.shared {
                    Some(m) if m.contains(e) => ecost,
                    _ => net.zero_cost(),
                };
                let parent = &self.labels[id as usize];
                let label =
                    Label { node: w, parent: Some((id, e)), crit: ncrit, cost: parent.cost + ecost, shared: parent.shared + shared_add };
                let nf = self.f_of(w, &ncrit);
                let nid = self.labels.len() as u32;
                self.labels.push(label);
                heap.push(Queued { key: self.key(&nf), f: nf, id: nid });
            }
        }
        settled
    }
}

/// Pareto-optimal simple `s`-`t` paths within `space`.
pub fn mc_shortest(space: &SearchSpace<'_>, s: NodeId, t: NodeId) -> Result<ReducedSet> {
    space.net.check_node(s)?;
    space.net.check_node(t)?;
    if s == t {
        return Ok(ReducedSet::singleton(LabeledPath::trivial(space.net, s, space.dim())));
    }
    let mut search = Search::new(space, s, &[t]);
    let settled = search.run(s, &[t], false);
    Ok(simple_cull(settled[0].iter().map(|&id| search.to_labeled(id)).collect()))
}

/// Pareto-optimal simple paths from `s` to each of `targets`, from one search.
pub fn mc_multi_target(space: &SearchSpace<'_>, s: NodeId, targets: &[NodeId]) -> Result<BTreeMap<NodeId, ReducedSet>> {
    space.net.check_node(s)?;
    let mut uniq: Vec<NodeId> = Vec::with_capacity(targets.len());
    for &t in targets {
        space.net.check_node(t)?;
        if !uniq.contains(&t) {
            uniq.push(t);
        }
    }
    let mut out = BTreeMap::new();
    if uniq.is_empty() {
        return Ok(out);
    }
    let mut search = Search::new(space, s, &uniq);
    let settled = search.run(s, &uniq, true);
    for (t, ids) in uniq.iter().zip(settled) {
        out.insert(*t, simple_cull(ids.iter().map(|&id| search.to_labeled(id)).collect()));
    }
    Ok(out)
}
