//! Congestion cost functions and their Pareto representation.
//!
//! Every edge carries a latency function from one of two closed families:
//!
//! * quadratic: `a·x² + b` with `a ≥ 0`, `b > 0`
//! * affine: `b·x + c` with `b, c ≥ 0`
//!
//! Both families are closed under addition and any two members cross at most
//! once on `[0, ∞)`. Pointwise order on `[0, d]` is therefore decided by the
//! values at `0` and `d` alone, which gives the two-entry [`CriteriaVector`]
//! returned by [`CostFn::pareto_point`]. The derivative of a quadratic member
//! is `2a·x` and the derivative of an affine member is the constant `b`, so in
//! both cases derivatives are ordered by a single coefficient
//! ([`CostFn::derivative_coeff`]).

use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostMode {
    Quadratic,
    Affine,
}

impl CostMode {
    pub fn name(self) -> &'static str {
        match self {
            CostMode::Quadratic => "quadratic",
            CostMode::Affine => "affine",
        }
    }
}

impl fmt::Display for CostMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// BPR parameters; `beta` must be 2 for the result to stay in the quadratic family.
pub const BPR_ALPHA: f64 = 0.15;
pub const BPR_BETA: f64 = 2.0;

/// A latency function `slope·x^k + offset` with `k = 2` (quadratic) or `k = 1` (affine).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostFn {
    mode: CostMode,
    slope: f64,
    offset: f64,
}

impl CostFn {
    /// `a·x² + b` as used on road edges.
    pub fn quadratic(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::InvalidCost(format!("congestion coefficient a={a} must be finite and >= 0")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidCost(format!("free-flow time b={b} must be finite and > 0")));
        }
        Ok(CostFn { mode: CostMode::Quadratic, slope: a, offset: b })
    }

    /// `b·x + c`, the family used by the subset-sum gadget.
    pub fn affine(b: f64, c: f64) -> Result<Self> {
        if !(b.is_finite() && b >= 0.0 && c.is_finite() && c >= 0.0) {
            return Err(Error::InvalidCost(format!("affine coefficients b={b}, c={c} must be finite and >= 0")));
        }
        Ok(CostFn { mode: CostMode::Affine, slope: b, offset: c })
    }

    /// The additive identity of `mode`. Not a valid edge cost, but the cost of an
    /// empty edge set.
    pub const fn zero(mode: CostMode) -> Self {
        CostFn { mode, slope: 0.0, offset: 0.0 }
    }

    /// Builds `ℓ/s·(1 + α(x/c)^β)` expanded into `a·x² + b`.
    pub fn from_bpr(length: f64, speed: f64, capacity: f64, alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("length", length), ("speed", speed), ("capacity", capacity)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidCost(format!("BPR {name}={v} must be positive")));
            }
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidCost(format!("BPR alpha={alpha} must be >= 0")));
        }
        if beta != BPR_BETA {
            return Err(Error::InvalidCost(format!("BPR beta={beta} is not supported; only beta=2 yields a quadratic cost")));
        }
        let free_flow = length / speed;
        CostFn::quadratic(free_flow * alpha / (capacity * capacity), free_flow)
    }

    pub fn mode(&self) -> CostMode {
        self.mode
    }

    /// Coefficient of the flow-dependent term (`a` quadratic, `b` affine).
    pub fn slope(&self) -> f64 {
        self.slope
    }

    /// Constant term (`b` quadratic, `c` affine); equals the value at zero flow.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.slope == 0.0 && self.offset == 0.0
    }

    /// Unchecked evaluation for hot paths; callers guarantee `x >= 0`.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match self.mode {
            CostMode::Quadratic => self.slope * x * x + self.offset,
            CostMode::Affine => self.slope * x + self.offset,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::FlowOutOfRange(x));
        }
        Ok(self.value(x))
    }

    pub fn checked_add(self, other: CostFn) -> Result<CostFn> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch { expected: self.mode.name(), found: other.mode.name() });
        }
        Ok(CostFn { mode: self.mode, slope: self.slope + other.slope, offset: self.offset + other.offset })
    }

    /// `(τ(0), τ(d))`.
    pub fn pareto_point(&self, demand: f64) -> CriteriaVector {
        CriteriaVector::pair(self.offset, self.value(demand))
    }

    pub fn derivative_coeff(&self) -> f64 {
        self.slope
    }

    /// Exponent of the flow-dependent term.
    pub fn degree(&self) -> i32 {
        match self.mode {
            CostMode::Quadratic => 2,
            CostMode::Affine => 1,
        }
    }
}

/// Sums within a single network; mixing modes is a logic error.
impl Add for CostFn {
    type Output = CostFn;

    fn add(self, rhs: CostFn) -> CostFn {
        debug_assert_eq!(self.mode, rhs.mode, "adding cost functions of different modes");
        CostFn { mode: self.mode, slope: self.slope + rhs.slope, offset: self.offset + rhs.offset }
    }
}

impl AddAssign for CostFn {
    fn add_assign(&mut self, rhs: CostFn) {
        *self = *self + rhs;
    }
}

impl fmt::Display for CostFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            CostMode::Quadratic => write!(f, "{}·x² + {}", self.slope, self.offset),
            CostMode::Affine => write!(f, "{}·x + {}", self.slope, self.offset),
        }
    }
}

/// Cost criteria of a path: `(τ(0), τ(d))`, optionally followed by the
/// derivative coefficient of the part shared with the original route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriteriaVector {
    values: [f64; 3],
    dim: u8,
}

impl CriteriaVector {
    pub const fn zero(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3);
        CriteriaVector { values: [0.0; 3], dim: dim as u8 }
    }

    pub const fn pair(at_zero: f64, at_demand: f64) -> Self {
        CriteriaVector { values: [at_zero, at_demand, 0.0], dim: 2 }
    }

    pub const fn triple(at_zero: f64, at_demand: f64, shared_slope: f64) -> Self {
        CriteriaVector { values: [at_zero, at_demand, shared_slope], dim: 3 }
    }

    pub fn from_slice(values: &[f64]) -> Self {
        match *values {
            [a, b] => Self::pair(a, b),
            [a, b, c] => Self::triple(a, b, c),
            _ => panic!("criteria vectors have 2 or 3 entries, got {}", values.len()),
        }
    }

    /// Appends the third criterion to a pair.
    pub fn with_shared(self, shared_slope: f64) -> Self {
        Self::triple(self.values[0], self.values[1], shared_slope)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values[..self.dim as usize]
    }

    pub fn get(&self, i: usize) -> f64 {
        self.as_slice()[i]
    }

    pub fn checked_add(self, other: CriteriaVector) -> Result<CriteriaVector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self + other)
    }

    /// Lexicographic total order (used for deterministic tie-breaking).
    pub fn lex_cmp(&self, other: &CriteriaVector) -> std::cmp::Ordering {
        for (a, b) in self.as_slice().iter().zip(other.as_slice()) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim.cmp(&other.dim)
    }

    /// Componentwise `self <= other`; callers guarantee equal dimension.
    #[inline]
    pub fn le(&self, other: &CriteriaVector) -> bool {
        self.as_slice().iter().zip(other.as_slice()).all(|(a, b)| a <= b)
    }
}

impl Add for CriteriaVector {
    type Output = CriteriaVector;

    fn add(self, rhs: CriteriaVector) -> CriteriaVector {
        debug_assert_eq!(self.dim, rhs.dim);
        let mut values = self.values;
        for (v, r) in values.iter_mut().zip(rhs.values) {
            *v += r;
        }
        CriteriaVector { values, dim: self.dim }
    }
}

impl fmt::Display for CriteriaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bpr_expansion() {
        let t = CostFn::from_bpr(100.0, 10.0, 50.0, BPR_ALPHA, BPR_BETA).unwrap();
        // 10 · 0.15 / 2500
        assert!((t.slope() - 0.0006).abs() < 1e-15);
        assert_eq!(t.offset(), 10.0);
        assert!((t.value(50.0) - 11.5).abs() < 1e-12);
    }

    #[test]
    fn bpr_rejects_bad_input() {
        assert!(CostFn::from_bpr(0.0, 10.0, 50.0, BPR_ALPHA, 2.0).is_err());
        assert!(CostFn::from_bpr(100.0, 10.0, 50.0, BPR_ALPHA, 3.0).is_err());
        assert!(CostFn::from_bpr(100.0, -1.0, 50.0, BPR_ALPHA, 2.0).is_err());
    }

    #[test]
    fn addition_is_componentwise() {
        let s = CostFn::quadratic(1.0, 1.0).unwrap().checked_add(CostFn::quadratic(2.0, 3.0).unwrap()).unwrap();
        assert_eq!((s.slope(), s.offset()), (3.0, 4.0));

        let t = CostFn::affine(3.0, 3.0).unwrap();
        assert_eq!(t.checked_add(CostFn::zero(CostMode::Affine)).unwrap(), t);

        let gadget = CostFn::affine(4.0, 0.0).unwrap() + CostFn::affine(0.0, 7.0).unwrap();
        assert_eq!((gadget.slope(), gadget.offset()), (4.0, 7.0));
    }

    #[test]
    fn addition_rejects_mixed_modes() {
        let q = CostFn::quadratic(1.0, 1.0).unwrap();
        let a = CostFn::affine(1.0, 1.0).unwrap();
        assert!(matches!(q.checked_add(a), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn evaluation() {
        assert_eq!(CostFn::affine(3.0, 3.0).unwrap().eval(2.0).unwrap(), 9.0);
        assert_eq!(CostFn::quadratic(2.5, 7.0).unwrap().eval(0.0).unwrap(), 7.0);
        assert!(CostFn::quadratic(1.0, 1.0).unwrap().eval(-0.5).is_err());
    }

    #[test]
    fn validation() {
        assert!(CostFn::quadratic(0.0, 1.0).is_ok());
        assert!(CostFn::quadratic(1.0, 0.0).is_err());
        assert!(CostFn::quadratic(-1.0, 1.0).is_err());
        assert!(CostFn::affine(0.0, 0.0).is_ok());
        assert!(CostFn::affine(-1.0, 0.0).is_err());
    }

    #[test]
    fn pareto_points() {
        let t1 = CostFn::quadratic(1.0, 1.0).unwrap();
        let t2 = CostFn::quadratic(2.0, 1.0).unwrap();
        assert_eq!(t1.pareto_point(2.0).as_slice(), &[1.0, 5.0]);
        assert_eq!(t2.pareto_point(2.0).as_slice(), &[1.0, 9.0]);
        assert!(t1.pareto_point(2.0).le(&t2.pareto_point(2.0)));
        // pointwise check on [0, 2]
        assert!((0..=200).all(|i| {
            let x = i as f64 / 100.0;
            t1.value(x) <= t2.value(x)
        }));
        assert_eq!(CostFn::zero(CostMode::Quadratic).pareto_point(3.0).as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn derivative_coefficients() {
        assert_eq!(CostFn::quadratic(3.0, 7.0).unwrap().derivative_coeff(), 3.0);
        assert_eq!(CostFn::affine(5.0, 1.0).unwrap().derivative_coeff(), 5.0);
        let s = CostFn::quadratic(3.0, 7.0).unwrap() + CostFn::quadratic(0.5, 1.0).unwrap();
        assert_eq!(s.derivative_coeff(), 3.5);
    }

    #[test]
    fn criteria_dimension_mismatch() {
        let a = CriteriaVector::pair(1.0, 2.0);
        let b = CriteriaVector::triple(1.0, 2.0, 0.0);
        assert!(matches!(a.checked_add(b), Err(Error::DimensionMismatch(2, 3))));
    }
}
