use crate::error::{Error, Result};
use crate::network::{CostFn, CostMode, EdgeMask, Network, Path};

use super::cfunc::CFunction;

const BISECT_REL_TOL: f64 = 1e-12;
const BISECT_MAX_ITER: usize = 200;

/// The three partial cost functions of an alternative `P` relative to `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathParts {
    /// `τ_{P\Q}`
    pub only_p: CostFn,
    /// `τ_{Q\P}`
    pub only_q: CostFn,
    /// `τ_{P∩Q}`
    pub shared: CostFn,
    pub demand: f64,
}

impl PathParts {
    pub fn new(net: &Network, p: &Path, q: &Path, demand: f64) -> Result<Self> {
        if p.source() != q.source() || p.target() != q.target() {
            return Err(Error::EndpointMismatch);
        }
        let q_mask = EdgeMask::from_edges(net, q.edges().iter().copied());
        let p_mask = EdgeMask::from_edges(net, p.edges().iter().copied());
        let mut parts = PathParts::from_costs(net.zero_cost(), net.zero_cost(), net.zero_cost(), demand);
        for &e in p.edges() {
            let c = net.edge(e).cost;
            if q_mask.contains(e) {
                parts.shared += c;
            } else {
                parts.only_p += c;
            }
        }
        for &e in q.edges() {
            if !p_mask.contains(e) {
                parts.only_q += net.edge(e).cost;
            }
        }
        Ok(parts)
    }

    pub fn from_costs(only_p: CostFn, only_q: CostFn, shared: CostFn, demand: f64) -> Self {
        PathParts { only_p, only_q, shared, demand }
    }

    pub fn mode(&self) -> CostMode {
        self.only_p.mode()
    }

    /// `τ_P = τ_{P\Q} + τ_{P∩Q}`
    pub fn alternative(&self) -> CostFn {
        self.only_p + self.shared
    }

    /// `τ_Q = τ_{Q\P} + τ_{P∩Q}`
    pub fn original(&self) -> CostFn {
        self.only_q + self.shared
    }

    /// Per-agent time on `P` when `x` agents take it.
    pub fn time_on_p(&self, x: f64) -> f64 {
        self.only_p.value(x) + self.shared.value(self.demand)
    }

    /// Per-agent time on `Q` when `x` agents take `P`.
    pub fn time_on_q(&self, x: f64) -> f64 {
        self.only_q.value(self.demand - x) + self.shared.value(self.demand)
    }

    /// Total travel time with `x` agents on `P` and the rest on `Q`.
    pub fn overall(&self, x: f64) -> f64 {
        let d = self.demand;
        x * self.only_p.value(x) + (d - x) * self.only_q.value(d - x) + d * self.shared.value(d)
    }

    fn split_at(&self, x: f64, boundary: Boundary) -> SplitResult {
        SplitResult { x_p: x, cost: self.overall(x), time_p: self.time_on_p(x), time_q: self.time_on_q(x), boundary }
    }

    pub(crate) fn split_with_fraction(&self, fraction: f64) -> Result<SplitResult> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::InvalidModel(format!("split fraction {fraction} outside [0, 1]")));
        }
        let x = fraction * self.demand;
        Ok(self.split_at(x, Boundary::classify(x, self.demand)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Interior,
    /// Nobody takes the alternative.
    ClampedZero,
    /// Everybody takes the alternative.
    ClampedDemand,
}

impl Boundary {
    fn classify(x: f64, d: f64) -> Self {
        if x <= 0.0 {
            Boundary::ClampedZero
        } else if x >= d {
            Boundary::ClampedDemand
        } else {
            Boundary::Interior
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Boundary::Interior => "interior",
            Boundary::ClampedZero => "clamped-0",
            Boundary::ClampedDemand => "clamped-d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitResult {
    pub x_p: f64,
    pub cost: f64,
    /// Per-agent travel time on the alternative.
    pub time_p: f64,
    /// Per-agent travel time on the original route.
    pub time_q: f64,
    pub boundary: Boundary,
}

/// Overall travel time (agent-seconds) with `x` agents on `P`.
pub fn overall_cost(net: &Network, p: &Path, q: &Path, d: f64, x: f64) -> Result<f64> {
    if !(0.0..=d).contains(&x) {
        return Err(Error::FlowOutOfRange(x));
    }
    Ok(PathParts::new(net, p, q, d)?.overall(x))
}

/// Real roots of `a·x² + b·x + c`.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    let qv = -0.5 * (b + b.signum() * s);
    if qv == 0.0 {
        return vec![0.0];
    }
    vec![qv / a, c / qv]
}

/// Minimizer of the overall cost over `[0, d]` from the stationary points of
/// its derivative together with both endpoints.
pub fn split_system_optimum(parts: &PathParts) -> SplitResult {
    let d = parts.demand;
    let (a1, b1) = (parts.only_p.slope(), parts.only_p.offset());
    let (a2, b2) = (parts.only_q.slope(), parts.only_q.offset());
    let roots = match parts.mode() {
        // C'(x) = 3a1 x² + b1 - 3a2 (d-x)² - b2
        CostMode::Quadratic => quadratic_roots(3.0 * (a1 - a2), 6.0 * a2 * d, b1 - b2 - 3.0 * a2 * d * d),
        // C'(x) = 2a1 x + b1 - 2a2 (d-x) - b2
        CostMode::Affine => quadratic_roots(0.0, 2.0 * (a1 + a2), b1 - b2 - 2.0 * a2 * d),
    };
    let mut best = parts.split_at(0.0, Boundary::ClampedZero);
    let mut consider = |x: f64, b: Boundary| {
        let cand = parts.split_at(x, b);
        if cand.cost < best.cost {
            best = cand;
        }
    };
    for r in roots {
        if r > 0.0 && r < d {
            consider(r, Boundary::Interior);
        }
    }
    consider(d, Boundary::ClampedDemand);
    best
}

/// Quotient model: the root of
/// `F(x) = τ_{Q\P}(d-x) + τ_{P∩Q}(d) - c(x)·(τ_{P\Q}(x) + τ_{P∩Q}(d))`,
/// clamped to `0` or `d` when `F` has no sign change on `[0, d]`.
pub fn split_quotient(parts: &PathParts, c: &CFunction) -> Result<SplitResult> {
    let d = parts.demand;
    c.validate(d)?;
    let f = |x: f64| parts.time_on_q(x) - c.eval(x, d) * parts.time_on_p(x);
    if f(0.0) < 0.0 {
        return Ok(parts.split_at(0.0, Boundary::ClampedZero));
    }
    if f(d) > 0.0 {
        return Ok(parts.split_at(d, Boundary::ClampedDemand));
    }
    let (mut lo, mut hi) = (0.0, d);
    for _ in 0..BISECT_MAX_ITER {
        if hi - lo <= BISECT_REL_TOL * d {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(parts.split_at(x, Boundary::classify(x, d)))
}

/// Closed-form user equilibrium split, used to cross-check the bisection.
pub fn split_ue_closed_form(parts: &PathParts) -> SplitResult {
    let d = parts.demand;
    // a1 x^k + b1 = a2 (d-x)^k + b2
    let (a1, b1) = (parts.only_p.slope(), parts.only_p.offset());
    let (a2, b2) = (parts.only_q.slope(), parts.only_q.offset());
    let g = |x: f64| parts.only_q.value(d - x) - parts.only_p.value(x);
    if g(0.0) < 0.0 {
        return parts.split_at(0.0, Boundary::ClampedZero);
    }
    if g(d) > 0.0 {
        return parts.split_at(d, Boundary::ClampedDemand);
    }
    let roots = match parts.mode() {
        CostMode::Quadratic => quadratic_roots(a1 - a2, 2.0 * a2 * d, b1 - b2 - a2 * d * d),
        CostMode::Affine => quadratic_roots(0.0, a1 + a2, b1 - b2 - a2 * d),
    };
    let x = roots.into_iter().filter(|r| (-1e-9 * d..=d * (1.0 + 1e-9)).contains(r)).map(|r| r.clamp(0.0, d)).next().unwrap_or(0.0);
    parts.split_at(x, Boundary::classify(x, d))
}
