//! Line-oriented text formats for networks and routes.
//!
//! Network file:
//!
//! ```text
//! # comment
//! mode quadratic
//! node 1 13.40 52.52
//! node 2
//! edge 1 2 a=0.5 b=3
//! edge 2 1 bpr len=100 speed=10 cap=50
//! ```
//!
//! In affine mode edges are written `edge <tail> <head> b=<f> c=<f>` for `b·x + c`.
//! BPR lines accept optional `alpha=` and `beta=` (defaults 0.15 and 2).
//!
//! Route file: a single line `route <demand> <v1> <v2> ... <vq>`.

use std::fmt::Write;

use super::cost::{CostFn, CostMode, BPR_ALPHA, BPR_BETA};
use super::graph::{Network, NetworkBuilder, NodeId, Path};
use crate::error::{Error, Location, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { at: Location { line }, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn number(line: usize, what: &str, tok: &str) -> Result<f64> {
    tok.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| parse_err(line, format!("invalid number `{tok}` for {what}")))
}

fn keyed(line: usize, tokens: &[&str]) -> Result<Vec<(String, f64)>> {
    tokens
        .iter()
        .map(|tok| {
            let (k, v) = tok.split_once('=').ok_or_else(|| parse_err(line, format!("expected key=value, got `{tok}`")))?;
            Ok((k.to_string(), number(line, k, v)?))
        })
        .collect()
}

fn take(line: usize, pairs: &[(String, f64)], key: &str) -> Result<f64> {
    pairs.iter().find(|(k, _)| k == key).map(|(_, v)| *v).ok_or_else(|| parse_err(line, format!("missing `{key}=`")))
}

fn parse_edge_cost(line: usize, mode: CostMode, spec: &[&str]) -> Result<CostFn> {
    let wrap = |e: Error| parse_err(line, e.to_string());
    if spec.first() == Some(&"bpr") {
        if mode != CostMode::Quadratic {
            return Err(parse_err(line, "mixed cost modes: BPR edges require quadratic mode"));
        }
        let pairs = keyed(line, &spec[1..])?;
        check_keys(line, &pairs, &["len", "speed", "cap", "alpha", "beta"])?;
        let alpha = pairs.iter().find(|(k, _)| k == "alpha").map_or(BPR_ALPHA, |(_, v)| *v);
        let beta = pairs.iter().find(|(k, _)| k == "beta").map_or(BPR_BETA, |(_, v)| *v);
        return CostFn::from_bpr(take(line, &pairs, "len")?, take(line, &pairs, "speed")?, take(line, &pairs, "cap")?, alpha, beta)
            .map_err(wrap);
    }
    let pairs = keyed(line, spec)?;
    match mode {
        CostMode::Quadratic => {
            if pairs.iter().any(|(k, _)| k == "c") {
                return Err(parse_err(line, "mixed cost modes: `c=` is an affine coefficient"));
            }
            check_keys(line, &pairs, &["a", "b"])?;
            CostFn::quadratic(take(line, &pairs, "a")?, take(line, &pairs, "b")?).map_err(wrap)
        }
        CostMode::Affine => {
            if pairs.iter().any(|(k, _)| k == "a") {
                return Err(parse_err(line, "mixed cost modes: `a=` is a quadratic coefficient"));
            }
            check_keys(line, &pairs, &["b", "c"])?;
            CostFn::affine(take(line, &pairs, "b")?, take(line, &pairs, "c")?).map_err(wrap)
        }
    }
}

fn check_keys(line: usize, pairs: &[(String, f64)], allowed: &[&str]) -> Result<()> {
    for (k, _) in pairs {
        if !allowed.contains(&k.as_str()) {
            return Err(parse_err(line, format!("unexpected key `{k}`")));
        }
    }
    Ok(())
}

pub fn parse_network(text: &str) -> Result<Network> {
    let mut mode: Option<CostMode> = None;
    let mut edges = Vec::new();
    let mut builder: Option<NetworkBuilder> = None;
    for (line, toks) in content_lines(text) {
        match toks[0] {
            "mode" => {
                let m = match toks.get(1).copied() {
                    Some("quadratic") => CostMode::Quadratic,
                    Some("affine") => CostMode::Affine,
                    other => return Err(parse_err(line, format!("unknown mode {other:?}"))),
                };
                if toks.len() != 2 {
                    return Err(parse_err(line, "expected `mode <quadratic|affine>`"));
                }
                match mode {
                    Some(prev) if prev != m => return Err(parse_err(line, "mixed cost modes")),
                    Some(_) => return Err(parse_err(line, "duplicate mode header")),
                    None => {
                        mode = Some(m);
                        builder = Some(NetworkBuilder::new(m));
                    }
                }
            }
            "node" => {
                let b = builder.as_mut().ok_or_else(|| parse_err(line, "`mode` header must come first"))?;
                let coord = match toks.len() {
                    2 => None,
                    4 => Some((number(line, "lon", toks[2])?, number(line, "lat", toks[3])?)),
                    _ => return Err(parse_err(line, "expected `node <id> [<lon> <lat>]`")),
                };
                b.add_node(toks[1], coord).map_err(|e| parse_err(line, e.to_string()))?;
            }
            "edge" => {
                let m = mode.ok_or_else(|| parse_err(line, "`mode` header must come first"))?;
                if toks.len() < 4 {
                    return Err(parse_err(line, "expected `edge <tail> <head> <cost>`"));
                }
                let cost = parse_edge_cost(line, m, &toks[3..])?;
                edges.push((line, toks[1].to_string(), toks[2].to_string(), cost));
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    let mut b = builder.ok_or_else(|| parse_err(1, "missing `mode` header"))?;
    for (line, tail, head, cost) in edges {
        b.add_edge_by_name(&tail, &head, cost).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(b.build())
}

/// A route line before resolution against a network.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteSpec {
    pub demand: f64,
    pub vertices: Vec<String>,
}

pub fn parse_route_spec(text: &str) -> Result<RouteSpec> {
    let mut found = None;
    for (line, toks) in content_lines(text) {
        if toks[0] != "route" {
            return Err(parse_err(line, format!("unknown record `{}`", toks[0])));
        }
        if found.is_some() {
            return Err(parse_err(line, "only one route per file"));
        }
        if toks.len() < 4 {
            return Err(parse_err(line, "expected `route <d> <v1> <v2> ...`"));
        }
        let demand = number(line, "demand", toks[1])?;
        if demand <= 0.0 {
            return Err(parse_err(line, "demand must be positive"));
        }
        found = Some(RouteSpec { demand, vertices: toks[2..].iter().map(|s| s.to_string()).collect() });
    }
    found.ok_or_else(|| parse_err(1, "missing `route` line"))
}

impl RouteSpec {
    pub fn resolve(&self, net: &Network) -> Result<Path> {
        let ids =
            self.vertices.iter().map(|n| net.node_id(n).ok_or_else(|| Error::DanglingNode(n.clone()))).collect::<Result<Vec<NodeId>>>()?;
        let path = Path::from_vertices(net, ids)?;
        path.validate_route()?;
        Ok(path)
    }
}

/// Parses and validates a route against `net`, returning it with its demand.
pub fn parse_route(text: &str, net: &Network) -> Result<(Path, f64)> {
    let spec = parse_route_spec(text)?;
    Ok((spec.resolve(net)?, spec.demand))
}

pub fn write_network(net: &Network) -> String {
    let mut out = String::new();
    writeln!(out, "mode {}", net.mode()).unwrap();
    for n in net.nodes() {
        match n.coord {
            Some((lon, lat)) => writeln!(out, "node {} {lon} {lat}", n.name).unwrap(),
            None => writeln!(out, "node {}", n.name).unwrap(),
        }
    }
    for e in net.edges() {
        let (t, h) = (net.name(e.tail), net.name(e.head));
        match net.mode() {
            CostMode::Quadratic => writeln!(out, "edge {t} {h} a={} b={}", e.cost.slope(), e.cost.offset()).unwrap(),
            CostMode::Affine => writeln!(out, "edge {t} {h} b={} c={}", e.cost.slope(), e.cost.offset()).unwrap(),
        }
    }
    out
}

pub fn write_route(net: &Network, route: &Path, demand: f64) -> String {
    let mut out = format!("route {demand}");
    for name in route.names(net) {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    out
}
