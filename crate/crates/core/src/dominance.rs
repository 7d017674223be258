//! Pareto dominance on criteria vectors and labeled paths, plus the reduced
//! set algebra (cull, union, join) used by the fewer-criteria dynamic program.
//!
//! Ties between equal vectors are resolved in favour of the path with the
//! lexicographically smaller vertex sequence, so every reduced set is canonical.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::network::{CostFn, CriteriaVector, EdgeMask, Network, NodeId, Path};

/// Componentwise `u <= v` (reflexive).
pub fn vec_dominates(u: &CriteriaVector, v: &CriteriaVector) -> Result<bool> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    Ok(u.le(v))
}

/// A path with its accumulated cost, the cost of its overlap with the
/// original route, and the cached criteria vector derived from both.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPath {
    path: Path,
    cost: CostFn,
    shared: CostFn,
    criteria: CriteriaVector,
}

impl LabeledPath {
    pub fn new(net: &Network, path: Path, original: &EdgeMask, demand: f64, dim: usize) -> Self {
        let cost = path.cost(net);
        let shared = path.masked_cost(net, original);
        let criteria = criteria_of(cost, shared, demand, dim);
        LabeledPath { path, cost, shared, criteria }
    }

    /// The empty path at `v`.
    pub fn trivial(net: &Network, v: NodeId, dim: usize) -> Self {
        LabeledPath { path: Path::trivial(v), cost: net.zero_cost(), shared: net.zero_cost(), criteria: CriteriaVector::zero(dim) }
    }

    pub(crate) fn from_parts(path: Path, cost: CostFn, shared: CostFn, criteria: CriteriaVector) -> Self {
        LabeledPath { path, cost, shared, criteria }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn into_path(self) -> Path {
        self.path
    }

    pub fn cost(&self) -> CostFn {
        self.cost
    }

    pub fn shared_cost(&self) -> CostFn {
        self.shared
    }

    pub fn criteria(&self) -> &CriteriaVector {
        &self.criteria
    }

    pub fn source(&self) -> NodeId {
        self.path.source()
    }

    pub fn target(&self) -> NodeId {
        self.path.target()
    }

    /// Lifts a two-criteria label to three criteria.
    pub fn with_shared_criterion(mut self) -> Self {
        if self.criteria.dim() == 2 {
            self.criteria = self.criteria.with_shared(self.shared.derivative_coeff());
        }
        self
    }

    /// Concatenation, or `None` when the result would repeat a vertex.
    pub fn concat(&self, other: &LabeledPath) -> Option<LabeledPath> {
        if self.target() != other.source() {
            return None;
        }
        let mut seen: Vec<NodeId> = self.path.vertices().to_vec();
        seen.sort_unstable();
        if other.path.vertices()[1..].iter().any(|v| seen.binary_search(v).is_ok()) {
            return None;
        }
        let path = self.path.concat(&other.path).ok()?;
        Some(LabeledPath {
            path,
            cost: self.cost + other.cost,
            shared: self.shared + other.shared,
            criteria: self.criteria + other.criteria,
        })
    }

    pub fn canonical_cmp(&self, other: &LabeledPath) -> Ordering {
        self.criteria.lex_cmp(&other.criteria).then_with(|| self.path.canonical_cmp(&other.path))
    }
}

fn criteria_of(cost: CostFn, shared: CostFn, demand: f64, dim: usize) -> CriteriaVector {
    let p = cost.pareto_point(demand);
    match dim {
        2 => p,
        3 => p.with_shared(shared.derivative_coeff()),
        _ => panic!("criteria dimension must be 2 or 3"),
    }
}

pub fn path_dominates(p1: &LabeledPath, p2: &LabeledPath) -> Result<bool> {
    if p1.source() != p2.source() || p1.target() != p2.target() {
        return Err(Error::EndpointMismatch);
    }
    vec_dominates(&p1.criteria, &p2.criteria)
}

/// Keeps the non-dominated items, resolving equal vectors by `tie`.
///
/// Items are visited in (vector, tie) lexicographic order; a dominator is
/// always lexicographically no larger than what it dominates, so one pass
/// against the survivors suffices.
pub fn cull_by<T>(mut items: Vec<T>, key: impl Fn(&T) -> &CriteriaVector, tie: impl Fn(&T, &T) -> Ordering) -> Vec<T> {
    items.sort_by(|a, b| key(a).lex_cmp(key(b)).then_with(|| tie(a, b)));
    let mut kept: Vec<T> = Vec::new();
    for item in items {
        let v = key(&item);
        if !kept.iter().any(|k| key(k).le(v)) {
            kept.push(item);
        }
    }
    kept
}

pub fn cull_vectors(vectors: Vec<CriteriaVector>) -> Vec<CriteriaVector> {
    cull_by(vectors, |v| v, |_, _| Ordering::Equal)
}

/// A set of paths sharing endpoints with no member dominating another.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReducedSet {
    paths: Vec<LabeledPath>,
}

impl ReducedSet {
    pub fn empty() -> Self {
        ReducedSet { paths: Vec::new() }
    }

    pub fn singleton(path: LabeledPath) -> Self {
        ReducedSet { paths: vec![path] }
    }

    pub fn paths(&self) -> &[LabeledPath] {
        &self.paths
    }

    pub fn into_paths(self) -> Vec<LabeledPath> {
        self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn endpoints(&self) -> Option<(NodeId, NodeId)> {
        self.paths.first().map(|p| (p.source(), p.target()))
    }

    pub fn vectors(&self) -> Vec<CriteriaVector> {
        self.paths.iter().map(|p| p.criteria).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledPath> {
        self.paths.iter()
    }
}

impl<'a> IntoIterator for &'a ReducedSet {
    type Item = &'a LabeledPath;
    type IntoIter = std::slice::Iter<'a, LabeledPath>;

    fn into_iter(self) -> Self::IntoIter {
        self.paths.iter()
    }
}

/// O(n²) pairwise cull; the output is sorted by vector, then vertex sequence.
pub fn simple_cull(paths: Vec<LabeledPath>) -> ReducedSet {
    debug_assert!(paths.windows(2).all(|w| w[0].source() == w[1].source() && w[0].target() == w[1].target()));
    // exact duplicates collapse under the tie-break
    let mut kept = cull_by(paths, |p| &p.criteria, |a, b| a.path.canonical_cmp(&b.path));
    kept.dedup_by(|a, b| a.path == b.path);
    ReducedSet { paths: kept }
}

pub fn reduced_union(a: &ReducedSet, b: &ReducedSet) -> Result<ReducedSet> {
    if let (Some(x), Some(y)) = (a.endpoints(), b.endpoints()) {
        if x != y {
            return Err(Error::EndpointMismatch);
        }
    }
    Ok(simple_cull(a.paths.iter().chain(&b.paths).cloned().collect()))
}

/// Concatenates every path of `a` with every path of `b`, drops non-simple
/// results and culls.
pub fn reduced_join(a: &ReducedSet, b: &ReducedSet) -> Result<ReducedSet> {
    if let (Some((_, mid_a)), Some((mid_b, _))) = (a.endpoints(), b.endpoints()) {
        if mid_a != mid_b {
            return Err(Error::EndpointMismatch);
        }
    }
    let joined = a.paths.iter().flat_map(|p| b.paths.iter().filter_map(move |q| p.concat(q))).collect();
    Ok(simple_cull(joined))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{CostMode, EdgeId, NetworkBuilder};

    fn v2(a: f64, b: f64) -> CriteriaVector {
        CriteriaVector::pair(a, b)
    }

    #[test]
    fn vector_dominance() {
        let t = |a, b, c| CriteriaVector::triple(a, b, c);
        assert!(vec_dominates(&t(1.0, 5.0, 0.0), &t(1.0, 9.0, 0.0)).unwrap());
        assert!(!vec_dominates(&v2(1.0, 5.0), &v2(2.0, 3.0)).unwrap());
        assert!(!vec_dominates(&v2(2.0, 3.0), &v2(1.0, 5.0)).unwrap());
        assert!(vec_dominates(&v2(1.0, 5.0), &v2(1.0, 5.0)).unwrap());
        assert!(vec_dominates(&v2(1.0, 5.0), &t(1.0, 5.0, 0.0)).is_err());
    }

    #[test]
    fn cull_small_sets() {
        let out = cull_vectors(vec![v2(1.0, 5.0), v2(2.0, 3.0), v2(3.0, 4.0)]);
        assert_eq!(out, vec![v2(1.0, 5.0), v2(2.0, 3.0)]);
        assert!(cull_vectors(Vec::new()).is_empty());
        assert!(simple_cull(Vec::new()).is_empty());
    }

    /// s -> t via two parallel edges, plus a two-hop route through m.
    fn parallel() -> Network {
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        for n in ["s", "m", "t"] {
            b.add_node(n, None).unwrap();
        }
        let q = |a, b| CostFn::quadratic(a, b).unwrap();
        b.add_edge_by_name("s", "t", q(1.0, 1.0)).unwrap();
        b.add_edge_by_name("s", "t", q(2.0, 1.0)).unwrap();
        b.add_edge_by_name("s", "m", q(0.5, 1.0)).unwrap();
        b.add_edge_by_name("m", "t", q(0.5, 1.0)).unwrap();
        b.add_edge_by_name("m", "s", q(0.5, 1.0)).unwrap();
        b.build()
    }

    fn lp(net: &Network, start: u32, edges: &[u32], q: &EdgeMask, dim: usize) -> LabeledPath {
        let path = Path::from_edges(net, NodeId(start), edges.iter().map(|&e| EdgeId(e)).collect()).unwrap();
        LabeledPath::new(net, path, q, 2.0, dim)
    }

    #[test]
    fn path_dominance_disjoint() {
        let net = parallel();
        let none = EdgeMask::empty(&net);
        let p1 = lp(&net, 0, &[0], &none, 2);
        let p2 = lp(&net, 0, &[1], &none, 2);
        assert_eq!(p1.criteria().as_slice(), &[1.0, 5.0]);
        assert_eq!(p2.criteria().as_slice(), &[1.0, 9.0]);
        assert!(path_dominates(&p1, &p2).unwrap());
        assert!(!path_dominates(&p2, &p1).unwrap());
        assert!(path_dominates(&p1, &p1).unwrap());
        let other = lp(&net, 0, &[2], &none, 2);
        assert_eq!(path_dominates(&p1, &other), Err(Error::EndpointMismatch));
    }

    #[test]
    fn cull_keeps_lexicographically_smaller_duplicate() {
        let net = parallel();
        let none = EdgeMask::empty(&net);
        let direct = lp(&net, 0, &[0], &none, 2);
        let a = simple_cull(vec![direct.clone(), direct.clone()]);
        assert_eq!(a.len(), 1);
        let u = reduced_union(&a, &a).unwrap();
        assert_eq!(u.len(), 1);
    }

    #[test]
    fn join_sums_and_filters() {
        let net = parallel();
        let none = EdgeMask::empty(&net);
        let sm = ReducedSet::singleton(lp(&net, 0, &[2], &none, 3));
        let mt = ReducedSet::singleton(lp(&net, 1, &[3], &none, 3));
        let j = reduced_join(&sm, &mt).unwrap();
        assert_eq!(j.len(), 1);
        let expect = sm.paths()[0].criteria().checked_add(*mt.paths()[0].criteria()).unwrap();
        assert_eq!(j.paths()[0].criteria(), &expect);
        assert_eq!(j.paths()[0].path().vertices(), &[NodeId(0), NodeId(1), NodeId(2)]);

        // m -> s revisits s
        let ms = ReducedSet::singleton(lp(&net, 1, &[4], &none, 3));
        assert!(reduced_join(&sm, &ms).unwrap().is_empty());
        assert_eq!(reduced_join(&mt, &mt), Err(Error::EndpointMismatch));
    }

    #[test]
    fn join_of_plain_vectors() {
        let net = parallel();
        let none = EdgeMask::empty(&net);
        let mut a = lp(&net, 0, &[2], &none, 3);
        a.criteria = CriteriaVector::triple(1.0, 2.0, 0.0);
        let mut b = lp(&net, 1, &[3], &none, 3);
        b.criteria = CriteriaVector::triple(2.0, 1.0, 0.0);
        let j = reduced_join(&ReducedSet::singleton(a), &ReducedSet::singleton(b)).unwrap();
        assert_eq!(j.paths()[0].criteria().as_slice(), &[3.0, 3.0, 0.0]);
    }

    #[test]
    fn steeper_shared_segment_blocks_dominance() {
        // P1 is cheaper on [0, d] but shares an edge with Q that is steeper
        // than the one P2 shares.
        let mut b = NetworkBuilder::new(CostMode::Quadratic);
        for n in ["s", "x", "y", "t"] {
            b.add_node(n, None).unwrap();
        }
        let q = |a, b| CostFn::quadratic(a, b).unwrap();
        b.add_edge_by_name("s", "x", q(4.0, 1.0)).unwrap(); // 0, on Q
        b.add_edge_by_name("x", "t", q(0.0, 1.0)).unwrap(); // 1
        b.add_edge_by_name("s", "y", q(5.0, 2.0)).unwrap(); // 2
        b.add_edge_by_name("y", "t", q(1.0, 3.0)).unwrap(); // 3, on Q
        b.add_edge_by_name("x", "y", q(0.1, 0.1)).unwrap(); // 4, on Q
        let net = b.build();
        let qmask = EdgeMask::from_edges(&net, [EdgeId(0), EdgeId(4), EdgeId(3)]);
        let p1 = lp(&net, 0, &[0, 1], &qmask, 3);
        let p2 = lp(&net, 0, &[2, 3], &qmask, 3);
        let (t1, t2) = (p1.cost(), p2.cost());
        // grid-sampled definition of the relation
        let grid = (0..=1000).map(|i| 2.0 * i as f64 / 1000.0);
        assert!(grid.clone().all(|x| t1.value(x) <= t2.value(x)));
        let by_definition = grid.clone().all(|x| t1.value(x) <= t2.value(x))
            && grid.clone().all(|x| 2.0 * p1.shared_cost().slope() * x <= 2.0 * p2.shared_cost().slope() * x);
        assert!(!by_definition);
        assert_eq!(path_dominates(&p1, &p2).unwrap(), by_definition);
    }
}
