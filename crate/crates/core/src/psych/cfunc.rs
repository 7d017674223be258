use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Points used when checking properties of a c-function on `[0, d]`.
pub const CONFORMITY_GRID: usize = 10_000;

type Callback = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Target ratio `c(x)` of per-agent times on the original and the alternative route.
#[derive(Clone)]
pub enum CFunction {
    /// `c(x) = k`; `k = 1` is user equilibrium.
    Constant(f64),
    /// `c(x) = c·x/d`.
    Linear(f64),
    /// `c(x) = tanh(a·x/d)`.
    Tanh(f64),
    /// Arbitrary `c(x, d)`.
    Custom(Callback),
}

impl fmt::Debug for CFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CFunction::Constant(k) => write!(f, "Constant({k})"),
            CFunction::Linear(c) => write!(f, "Linear({c})"),
            CFunction::Tanh(a) => write!(f, "Tanh({a})"),
            CFunction::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl CFunction {
    pub fn custom(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        CFunction::Custom(Arc::new(f))
    }

    pub fn eval(&self, x: f64, d: f64) -> f64 {
        match self {
            CFunction::Constant(k) => *k,
            CFunction::Linear(c) => c * x / d,
            CFunction::Tanh(a) => (a * x / d).tanh(),
            CFunction::Custom(f) => f(x, d),
        }
    }

    /// `c'(x)`; central differences with step `d·1e-6` for callbacks.
    pub fn derivative(&self, x: f64, d: f64) -> f64 {
        match self {
            CFunction::Constant(_) => 0.0,
            CFunction::Linear(c) => c / d,
            CFunction::Tanh(a) => {
                let t = (a * x / d).tanh();
                a / d * (1.0 - t * t)
            }
            CFunction::Custom(_) => {
                let h = d * 1e-6;
                let lo = (x - h).max(0.0);
                let hi = (x + h).min(d);
                (self.eval(hi, d) - self.eval(lo, d)) / (hi - lo)
            }
        }
    }

    /// Non-decreasing and non-negative on `[0, d]` with `c(d) > 0`.
    pub fn validate(&self, d: f64) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidModel(format!("{self:?}: {m}")));
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidModel(format!("demand must be positive, got {d}")));
        }
        match self {
            CFunction::Constant(k) | CFunction::Linear(k) | CFunction::Tanh(k) => {
                if !(k.is_finite() && *k > 0.0) {
                    return bad("parameter must be positive and finite");
                }
            }
            CFunction::Custom(_) => {
                let mut prev = f64::NEG_INFINITY;
                for i in 0..=CONFORMITY_GRID {
                    let x = d * i as f64 / CONFORMITY_GRID as f64;
                    let c = self.eval(x, d);
                    if !c.is_finite() || c < 0.0 {
                        return bad("negative or non-finite value");
                    }
                    if c < prev {
                        return bad("decreasing");
                    }
                    prev = c;
                }
                if self.eval(d, d) <= 0.0 {
                    return bad("c(d) must be positive");
                }
            }
        }
        Ok(())
    }
}

/// Sufficient condition for the quotient model to respect dominance:
/// `c(d) <= 1` and `c(x)(1 - c(x)) - x·c'(x) <= 0` on a grid over `[0, d]`.
pub fn check_quotient_conformity(c: &CFunction, d: f64) -> bool {
    if c.validate(d).is_err() || c.eval(d, d) > 1.0 {
        return false;
    }
    (0..=CONFORMITY_GRID).all(|i| {
        let x = d * i as f64 / CONFORMITY_GRID as f64;
        let v = c.eval(x, d);
        v * (1.0 - v) - x * c.derivative(x, d) <= 1e-12
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conformity_of_standard_families() {
        for d in [1.0, 2.0, 100.0, 3000.0] {
            assert!(check_quotient_conformity(&CFunction::Constant(1.0), d));
            for c in [0.25, 0.5, 1.0] {
                assert!(check_quotient_conformity(&CFunction::Linear(c), d));
            }
            for a in [0.5, 1.0, 3.0] {
                assert!(check_quotient_conformity(&CFunction::Tanh(a), d));
            }
            assert!(!check_quotient_conformity(&CFunction::Constant(1.5), d));
            assert!(!check_quotient_conformity(&CFunction::Linear(1.2), d));
        }
    }

    #[test]
    fn constant_below_one_is_not_conform() {
        // c(1-c) > 0 for 0 < c < 1
        assert!(!check_quotient_conformity(&CFunction::Constant(0.5), 2.0));
    }

    #[test]
    fn custom_matches_builtin() {
        let lin = CFunction::custom(|x, d| x / d);
        assert!(check_quotient_conformity(&lin, 2.0));
        assert!((lin.derivative(1.0, 2.0) - 0.5).abs() < 1e-6);
        let t = CFunction::Tanh(2.0);
        let tc = CFunction::custom(|x, d| (2.0 * x / d).tanh());
        for x in [0.0, 0.3, 1.0, 2.0] {
            assert!((t.derivative(x, 2.0) - tc.derivative(x, 2.0)).abs() < 1e-5);
        }
    }

    #[test]
    fn validation() {
        assert!(CFunction::Constant(0.0).validate(1.0).is_err());
        assert!(CFunction::Linear(-1.0).validate(1.0).is_err());
        assert!(CFunction::custom(|x, d| 1.0 - x / d).validate(1.0).is_err());
        assert!(CFunction::custom(|_, _| 0.0).validate(1.0).is_err());
        assert!(CFunction::Constant(1.0).validate(0.0).is_err());
        assert!(CFunction::custom(|x, _| x).validate(3.0).is_ok());
    }
}
