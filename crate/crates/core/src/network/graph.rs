use std::collections::HashMap;
use std::fmt;

use super::cost::{CostFn, CostMode, CriteriaVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub name: String,
    /// `(lon, lat)`
    pub coord: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub cost: CostFn,
}

/// Immutable directed multigraph with one cost function per edge.
#[derive(Debug, Clone)]
pub struct Network {
    mode: CostMode,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    by_name: HashMap<String, NodeId>,
    out_start: Vec<u32>,
    out_edges: Vec<EdgeId>,
    in_start: Vec<u32>,
    in_edges: Vec<EdgeId>,
}

#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    mode: CostMode,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    by_name: HashMap<String, NodeId>,
}

impl NetworkBuilder {
    pub fn new(mode: CostMode) -> Self {
        NetworkBuilder { mode, nodes: Vec::new(), edges: Vec::new(), by_name: HashMap::new() }
    }

    pub fn mode(&self) -> CostMode {
        self.mode
    }

    pub fn add_node(&mut self, name: impl Into<String>, coord: Option<(f64, f64)>) -> Result<NodeId> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(Error::DuplicateNode(name));
        }
        let id = NodeId(self.nodes.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.nodes.push(Node { name, coord });
        Ok(id)
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.by_name.get(name).copied()
    }

    pub fn add_edge(&mut self, tail: NodeId, head: NodeId, cost: CostFn) -> Result<EdgeId> {
        for n in [tail, head] {
            if n.index() >= self.nodes.len() {
                return Err(Error::UnknownNode(n.index()));
            }
        }
        if tail == head {
            return Err(Error::SelfLoop(self.nodes[tail.index()].name.clone()));
        }
        if cost.mode() != self.mode {
            return Err(Error::ModeMismatch { expected: self.mode.name(), found: cost.mode().name() });
        }
        if cost.is_zero() {
            return Err(Error::InvalidCost("edge cost is identically zero".into()));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Edge { tail, head, cost });
        Ok(id)
    }

    pub fn add_edge_by_name(&mut self, tail: &str, head: &str, cost: CostFn) -> Result<EdgeId> {
        let t = self.node(tail).ok_or_else(|| Error::DanglingNode(tail.to_string()))?;
        let h = self.node(head).ok_or_else(|| Error::DanglingNode(head.to_string()))?;
        self.add_edge(t, h, cost)
    }

    pub fn build(self) -> Network {
        let n = self.nodes.len();
        let (out_start, out_edges) = csr(n, &self.edges, |e| e.tail);
        let (in_start, in_edges) = csr(n, &self.edges, |e| e.head);
        Network { mode: self.mode, nodes: self.nodes, edges: self.edges, by_name: self.by_name, out_start, out_edges, in_start, in_edges }
    }
}

fn csr(n: usize, edges: &[Edge], key: impl Fn(&Edge) -> NodeId) -> (Vec<u32>, Vec<EdgeId>) {
    let mut start = vec![0u32; n + 1];
    for e in edges {
        start[key(e).index() + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut list = vec![EdgeId(0); edges.len()];
    // edge ids stay ascending within each bucket
    for (i, e) in edges.iter().enumerate() {
        let slot = &mut fill[key(e).index()];
        list[*slot as usize] = EdgeId(i as u32);
        *slot += 1;
    }
    (start, list)
}

impl Network {
    pub fn mode(&self) -> CostMode {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.index()]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.nodes[id.index()].name
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.nodes.len()
    }

    pub fn check_node(&self, id: NodeId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownNode(id.index()))
        }
    }

    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        let i = v.index();
        &self.out_edges[self.out_start[i] as usize..self.out_start[i + 1] as usize]
    }

    pub fn in_edges(&self, v: NodeId) -> &[EdgeId] {
        let i = v.index();
        &self.in_edges[self.in_start[i] as usize..self.in_start[i + 1] as usize]
    }

    /// Lowest-id edge from `tail` to `head`.
    pub fn find_edge(&self, tail: NodeId, head: NodeId) -> Option<EdgeId> {
        self.out_edges(tail).iter().copied().find(|&e| self.edges[e.index()].head == head)
    }

    pub fn has_coordinates(&self) -> bool {
        self.nodes.iter().all(|n| n.coord.is_some())
    }

    pub fn zero_cost(&self) -> CostFn {
        CostFn::zero(self.mode)
    }
}

/// Membership mask over the edges of one network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMask(Vec<bool>);

impl EdgeMask {
    pub fn empty(net: &Network) -> Self {
        EdgeMask(vec![false; net.edge_count()])
    }

    pub fn from_edges(net: &Network, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut m = Self::empty(net);
        for e in edges {
            m.0[e.index()] = true;
        }
        m
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.0[e.index()]
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|b| *b)
    }
}

/// Membership mask over the nodes of one network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMask(Vec<bool>);

impl NodeMask {
    pub fn empty(net: &Network) -> Self {
        NodeMask(vec![false; net.node_count()])
    }

    pub fn from_nodes(net: &Network, nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let mut m = Self::empty(net);
        for v in nodes {
            m.0[v.index()] = true;
        }
        m
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.0[v.index()]
    }

    pub fn insert(&mut self, v: NodeId) {
        self.0[v.index()] = true;
    }

    pub fn remove(&mut self, v: NodeId) {
        self.0[v.index()] = false;
    }
}

/// A path as a vertex sequence plus the edges used between consecutive
/// vertices (the network is a multigraph, so vertices alone are ambiguous).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<NodeId>,
    edges: Vec<EdgeId>,
}

impl Path {
    /// The empty path sitting at `v`.
    pub fn trivial(v: NodeId) -> Self {
        Path { vertices: vec![v], edges: Vec::new() }
    }

    pub fn from_edges(net: &Network, start: NodeId, edges: Vec<EdgeId>) -> Result<Self> {
        net.check_node(start)?;
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        vertices.push(start);
        for &e in &edges {
            if e.index() >= net.edge_count() {
                return Err(Error::InvalidRoute(format!("unknown edge {}", e.0)));
            }
            let edge = net.edge(e);
            if edge.tail != *vertices.last().unwrap() {
                return Err(Error::InvalidRoute("edges do not form a walk".into()));
            }
            vertices.push(edge.head);
        }
        Ok(Path { vertices, edges })
    }

    /// Resolves a vertex sequence; between parallel edges the lowest id is used.
    pub fn from_vertices(net: &Network, vertices: Vec<NodeId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidRoute("empty vertex sequence".into()));
        }
        for &v in &vertices {
            net.check_node(v)?;
        }
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let e = net
                .find_edge(w[0], w[1])
                .ok_or_else(|| Error::InvalidRoute(format!("no edge {} -> {}", net.name(w[0]), net.name(w[1]))))?;
            edges.push(e);
        }
        Ok(Path { vertices, edges })
    }

    /// Route validation: at least one edge, no repeated vertex.
    pub fn validate_route(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::InvalidRoute("a route needs at least two vertices".into()));
        }
        if !self.is_simple() {
            return Err(Error::InvalidRoute("route repeats a vertex".into()));
        }
        Ok(())
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<NodeId>, edges: Vec<EdgeId>) -> Self {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Path { vertices, edges }
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn source(&self) -> NodeId {
        self.vertices[0]
    }

    pub fn target(&self) -> NodeId {
        *self.vertices.last().unwrap()
    }

    pub fn hops(&self) -> usize {
        self.edges.len()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<NodeId> = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn cost(&self, net: &Network) -> CostFn {
        self.edges.iter().fold(net.zero_cost(), |acc, &e| acc + net.edge(e).cost)
    }

    /// Sum of the costs of the edges that lie in `mask`.
    pub fn masked_cost(&self, net: &Network, mask: &EdgeMask) -> CostFn {
        self.edges.iter().filter(|&&e| mask.contains(e)).fold(net.zero_cost(), |acc, &e| acc + net.edge(e).cost)
    }

    /// Concatenation of `self` (ending at `v`) with `other` (starting at `v`).
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.target() != other.source() {
            return Err(Error::EndpointMismatch);
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path { vertices, edges })
    }

    pub fn names<'a>(&self, net: &'a Network) -> Vec<&'a str> {
        self.vertices.iter().map(|&v| net.name(v)).collect()
    }

    /// Deterministic order: vertex sequence, then edge sequence.
    pub fn canonical_cmp(&self, other: &Path) -> std::cmp::Ordering {
        self.vertices.cmp(&other.vertices).then_with(|| self.edges.cmp(&other.edges))
    }

    /// Criteria vector of this path relative to `shared` (the original route's edges).
    pub fn criteria(&self, net: &Network, shared: &EdgeMask, demand: f64, dim: usize) -> CriteriaVector {
        let p = self.cost(net).pareto_point(demand);
        match dim {
            2 => p,
            3 => p.with_shared(self.masked_cost(net, shared).derivative_coeff()),
            _ => panic!("criteria dimension must be 2 or 3"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Network {
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        for n in ["s", "u", "w", "t"] {
            b.add_node(n, None).unwrap();
        }
        let q = |a, b| CostFn::quadratic(a, b).unwrap();
        b.add_edge_by_name("s", "u", q(1.0, 1.0)).unwrap();
        b.add_edge_by_name("u", "t", q(0.0, 8.0)).unwrap();
        b.add_edge_by_name("s", "w", q(4.0, 1.0)).unwrap();
        b.add_edge_by_name("w", "t", q(1.0, 1.0)).unwrap();
        b.add_edge_by_name("s", "t", q(1.0, 1.0)).unwrap();
        b.add_edge_by_name("s", "t", q(2.0, 1.0)).unwrap();
        b.build()
    }

    #[test]
    fn adjacency() {
        let net = diamond();
        let s = net.node_id("s").unwrap();
        assert_eq!(net.out_edges(s).len(), 4);
        assert_eq!(net.in_edges(net.node_id("t").unwrap()).len(), 4);
        // lowest id among parallel edges
        assert_eq!(net.find_edge(s, net.node_id("t").unwrap()), Some(EdgeId(4)));
    }

    #[test]
    fn builder_rejects_invalid_edges() {
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        let a = b.add_node("a", None).unwrap();
        assert!(matches!(b.add_edge(a, a, CostFn::quadratic(1.0, 1.0).unwrap()), Err(Error::SelfLoop(_))));
        assert!(matches!(b.add_edge_by_name("a", "zz", CostFn::quadratic(1.0, 1.0).unwrap()), Err(Error::DanglingNode(_))));
        let c = b.add_node("c", None).unwrap();
        assert!(matches!(b.add_edge(a, c, CostFn::affine(1.0, 1.0).unwrap()), Err(Error::ModeMismatch { .. })));
        assert!(b.add_node("c", None).is_err());
    }

    #[test]
    fn path_resolution_and_costs() {
        let net = diamond();
        let ids: Vec<NodeId> = ["s", "u", "t"].iter().map(|n| net.node_id(n).unwrap()).collect();
        let p = Path::from_vertices(&net, ids).unwrap();
        assert!(p.is_simple());
        let c = p.cost(&net);
        assert_eq!((c.slope(), c.offset()), (1.0, 9.0));
        let mask = EdgeMask::from_edges(&net, [EdgeId(0)]);
        assert_eq!(p.masked_cost(&net, &mask).slope(), 1.0);
        assert_eq!(p.criteria(&net, &mask, 2.0, 3).as_slice(), &[9.0, 13.0, 1.0]);

        let bad = Path::from_vertices(&net, vec![net.node_id("u").unwrap(), net.node_id("w").unwrap()]);
        assert!(bad.is_err());
    }

    #[test]
    fn concat_detects_repeats() {
        let net = diamond();
        let a = Path::from_edges(&net, NodeId(0), vec![EdgeId(0)]).unwrap();
        let b = Path::from_edges(&net, NodeId(1), vec![EdgeId(1)]).unwrap();
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab.vertices(), &[NodeId(0), NodeId(1), NodeId(3)]);
        assert!(b.concat(&a).is_err());
    }
}
