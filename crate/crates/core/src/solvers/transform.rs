use crate::error::Result;
use crate::network::{EdgeId, Network, NetworkBuilder, NodeId, Path};

/// The single-diversion network: each interior route vertex `v` gets a copy
/// `v'`. The original `v` keeps its out-edges and only the route edge in;
/// the copy keeps the in-edges and only the route edge out.
#[derive(Debug, Clone)]
pub struct Transformed {
    pub net: Network,
    /// Original edge behind each transformed edge.
    pub edge_origin: Vec<EdgeId>,
    /// Original node behind each transformed node.
    pub node_origin: Vec<NodeId>,
}

impl Transformed {
    /// Projects a transformed path back onto the original network.
    pub fn map_back(&self, p: &Path) -> Path {
        Path::from_parts_unchecked(
            p.vertices().iter().map(|v| self.node_origin[v.index()]).collect(),
            p.edges().iter().map(|e| self.edge_origin[e.index()]).collect(),
        )
    }

    /// The transformed edge set covering the given original edges.
    pub fn lift_mask(&self, original: &crate::network::EdgeMask) -> crate::network::EdgeMask {
        crate::network::EdgeMask::from_edges(
            &self.net,
            (0..self.net.edge_count()).map(|i| EdgeId(i as u32)).filter(|e| original.contains(self.edge_origin[e.index()])),
        )
    }
}

pub fn transform_1d(net: &Network, q: &Path) -> Result<Transformed> {
    q.validate_route()?;
    let verts = q.vertices();
    let qn = verts.len();
    let mut b = NetworkBuilder::new(net.mode());
    let mut node_origin: Vec<NodeId> = Vec::with_capacity(net.node_count() + qn.saturating_sub(2));
    for (i, n) in net.nodes().iter().enumerate() {
        b.add_node(n.name.clone(), n.coord)?;
        node_origin.push(NodeId(i as u32));
    }
    // copy index per original node, for interior route vertices
    let mut copy: Vec<Option<NodeId>> = vec![None; net.node_count()];
    for &v in &verts[1..qn - 1] {
        let mut name = format!("{}'", net.name(v));
        while b.node(&name).is_some() {
            name.push('\'');
        }
        let id = b.add_node(name, net.node(v).coord)?;
        copy[v.index()] = Some(id);
        node_origin.push(v);
    }
    let incoming = |w: NodeId| copy[w.index()].unwrap_or(w);

    let mut edge_origin = Vec::new();
    for (i, e) in net.edges().iter().enumerate() {
        b.add_edge(e.tail, incoming(e.head), e.cost)?;
        edge_origin.push(EdgeId(i as u32));
    }
    for (k, &e) in q.edges().iter().enumerate() {
        let (tail, head) = (verts[k], verts[k + 1]);
        let cost = net.edge(e).cost;
        // outgoing side: original to original
        if copy[head.index()].is_some() {
            b.add_edge(tail, head, cost)?;
            edge_origin.push(e);
        }
        // incoming side: copy to copy (or to the target)
        if let Some(t) = copy[tail.index()] {
            b.add_edge(t, incoming(head), cost)?;
            edge_origin.push(e);
        }
    }
    Ok(Transformed { net: b.build(), edge_origin, node_origin })
}

/// Like [`transform_1d`], with a third copy `v''` of each interior route
/// vertex that takes the vertex's non-route edges in both directions. A
/// detour may then pass through route vertices, so every path whose edges
/// off the route form one contiguous stretch is represented. Transformed
/// paths may map back to walks that repeat a vertex; callers filter those.
pub fn transform_1d_layered(net: &Network, q: &Path) -> Result<Transformed> {
    q.validate_route()?;
    let verts = q.vertices();
    let qn = verts.len();
    let mut b = NetworkBuilder::new(net.mode());
    let mut node_origin: Vec<NodeId> = Vec::with_capacity(net.node_count() + 2 * qn.saturating_sub(2));
    for (i, n) in net.nodes().iter().enumerate() {
        b.add_node(n.name.clone(), n.coord)?;
        node_origin.push(NodeId(i as u32));
    }
    let mut rejoin: Vec<Option<NodeId>> = vec![None; net.node_count()];
    let mut pass: Vec<Option<NodeId>> = vec![None; net.node_count()];
    for &v in &verts[1..qn - 1] {
        for (slot, mark) in [(&mut rejoin, "'"), (&mut pass, "''")] {
            let mut name = format!("{}{mark}", net.name(v));
            while b.node(&name).is_some() {
                name.push('~');
            }
            slot[v.index()] = Some(b.add_node(name, net.node(v).coord)?);
            node_origin.push(v);
        }
    }
    let on_route = crate::network::EdgeMask::from_edges(net, q.edges().iter().copied());
    let mut edge_origin = Vec::new();
    for (i, e) in net.edges().iter().enumerate() {
        if on_route.contains(EdgeId(i as u32)) {
            continue;
        }
        let tails = [Some(e.tail), pass[e.tail.index()]];
        let heads = match (rejoin[e.head.index()], pass[e.head.index()]) {
            (Some(r), Some(p)) => [Some(r), Some(p)],
            _ => [Some(e.head), None],
        };
        for t in tails.into_iter().flatten() {
            for h in heads.into_iter().flatten() {
                b.add_edge(t, h, e.cost)?;
                edge_origin.push(EdgeId(i as u32));
            }
        }
    }
    for (k, &e) in q.edges().iter().enumerate() {
        let (tail, head) = (verts[k], verts[k + 1]);
        let cost = net.edge(e).cost;
        b.add_edge(tail, head, cost)?;
        edge_origin.push(e);
        if let Some(t) = rejoin[tail.index()] {
            b.add_edge(t, rejoin[head.index()].unwrap_or(head), cost)?;
            edge_origin.push(e);
        }
    }
    Ok(Transformed { net: b.build(), edge_origin, node_origin })
}
