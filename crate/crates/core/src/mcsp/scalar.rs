use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::network::{EdgeId, EdgeMask, Network, NodeId, Path};

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: NodeId,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Distances from every node to the nearest of `targets` under `weight`,
/// ignoring `blocked` edges. Unreachable nodes get `+∞`.
pub fn distances_to(net: &Network, targets: &[NodeId], blocked: Option<&EdgeMask>, weight: impl Fn(EdgeId) -> f64) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; net.node_count()];
    let mut heap = BinaryHeap::new();
    for &t in targets {
        dist[t.index()] = 0.0;
        heap.push(Entry { dist: 0.0, node: t });
    }
    while let Some(Entry { dist: d, node }) = heap.pop() {
        if d > dist[node.index()] {
            continue;
        }
        for &e in net.in_edges(node) {
            if blocked.is_some_and(|m| m.contains(e)) {
                continue;
            }
            let tail = net.edge(e).tail;
            let nd = d + weight(e);
            if nd < dist[tail.index()] {
                dist[tail.index()] = nd;
                heap.push(Entry { dist: nd, node: tail });
            }
        }
    }
    dist
}

/// Scalar shortest `s`-`t` path; ties go to the lower node / edge ids.
pub fn shortest_path(net: &Network, s: NodeId, t: NodeId, weight: impl Fn(EdgeId) -> f64) -> Option<(Path, f64)> {
    let mut dist = vec![f64::INFINITY; net.node_count()];
    let mut pred: Vec<Option<EdgeId>> = vec![None; net.node_count()];
    let mut heap = BinaryHeap::new();
    dist[s.index()] = 0.0;
    heap.push(Entry { dist: 0.0, node: s });
    while let Some(Entry { dist: d, node }) = heap.pop() {
        if d > dist[node.index()] {
            continue;
        }
        if node == t {
            break;
        }
        for &e in net.out_edges(node) {
            let head = net.edge(e).head;
            let nd = d + weight(e);
            if nd < dist[head.index()] {
                dist[head.index()] = nd;
                pred[head.index()] = Some(e);
                heap.push(Entry { dist: nd, node: head });
            }
        }
    }
    if !dist[t.index()].is_finite() {
        return None;
    }
    let mut edges = Vec::new();
    let mut v = t;
    while let Some(e) = pred[v.index()] {
        edges.push(e);
        v = net.edge(e).tail;
    }
    edges.reverse();
    let path = Path::from_edges(net, s, edges).expect("predecessor chain forms a path");
    Some((path, dist[t.index()]))
}
