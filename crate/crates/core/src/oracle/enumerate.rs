use crate::error::{Error, Result};
use crate::network::{EdgeId, Network, NodeId, Path};

pub const DEFAULT_PATH_LIMIT: usize = 1_000_000;

/// Every simple `s`-`t` path, by depth-first search in edge-id order.
pub fn enumerate_simple_paths(net: &Network, s: NodeId, t: NodeId, limit: usize) -> Result<Vec<Path>> {
    net.check_node(s)?;
    net.check_node(t)?;
    let mut out = Vec::new();
    if s == t {
        out.push(Path::trivial(s));
        return Ok(out);
    }
    let mut on_path = vec![false; net.node_count()];
    let mut vertices = vec![s];
    let mut edges: Vec<EdgeId> = Vec::new();
    on_path[s.index()] = true;
    // explicit stack of (node, next out-edge position)
    let mut stack: Vec<(NodeId, usize)> = vec![(s, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, pos) = *top;
        let out_edges = net.out_edges(v);
        if pos == out_edges.len() {
            stack.pop();
            on_path[v.index()] = false;
            vertices.pop();
            edges.pop();
            continue;
        }
        top.1 += 1;
        let e = out_edges[pos];
        let w = net.edge(e).head;
        if on_path[w.index()] {
            continue;
        }
        if w == t {
            if out.len() == limit {
                return Err(Error::EnumerationLimit(limit));
            }
            let mut vs = vertices.clone();
            vs.push(w);
            let mut es = edges.clone();
            es.push(e);
            out.push(Path::from_parts_unchecked(vs, es));
            continue;
        }
        on_path[w.index()] = true;
        vertices.push(w);
        edges.push(e);
        stack.push((w, 0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{CostFn, CostMode, NetworkBuilder};

    fn unit() -> CostFn {
        CostFn::quadratic(1.0, 1.0).unwrap()
    }

    #[test]
    fn parallel_edges() {
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        b.add_node("s", None).unwrap();
        b.add_node("t", None).unwrap();
        b.add_edge_by_name("s", "t", unit()).unwrap();
        b.add_edge_by_name("s", "t", unit()).unwrap();
        let net = b.build();
        assert_eq!(enumerate_simple_paths(&net, NodeId(0), NodeId(1), 10).unwrap().len(), 2);
        assert!(matches!(enumerate_simple_paths(&net, NodeId(0), NodeId(1), 1), Err(Error::EnumerationLimit(1))));
    }

    #[test]
    fn complete_graph_on_four_nodes() {
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        for i in 0..4 {
            b.add_node(format!("{i}"), None).unwrap();
        }
        for i in 0..4u32 {
            for j in 0..4u32 {
                if i != j {
                    b.add_edge(NodeId(i), NodeId(j), unit()).unwrap();
                }
            }
        }
        let net = b.build();
        let paths = enumerate_simple_paths(&net, NodeId(0), NodeId(3), 100).unwrap();
        assert_eq!(paths.len(), 5);
        assert!(paths.iter().all(|p| p.is_simple() && p.target() == NodeId(3)));
    }

    #[test]
    fn disconnected() {
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        b.add_node("s", None).unwrap();
        b.add_node("t", None).unwrap();
        b.add_edge_by_name("t", "s", unit()).unwrap();
        let net = b.build();
        assert!(enumerate_simple_paths(&net, NodeId(0), NodeId(1), 10).unwrap().is_empty());
    }
}
