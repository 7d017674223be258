use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::cfunc::{check_quotient_conformity, CFunction};
use super::split::{split_quotient, split_system_optimum, Boundary, PathParts, SplitResult};
use crate::error::{Error, Result};
use crate::network::{Network, Path};

/// A model given directly as the fraction of agents choosing the alternative.
pub trait SplitPlugin: Send + Sync {
    fn name(&self) -> String;
    /// Fraction in `[0, 1]` of the demand that takes `P`.
    fn fraction(&self, parts: &PathParts) -> f64;
}

/// How agents divide between the original route and the suggested one.
#[derive(Clone)]
pub enum PsychModel {
    SystemOptimum,
    Quotient(CFunction),
    Custom(Arc<dyn SplitPlugin>),
}

impl fmt::Debug for PsychModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PsychModel({self})")
    }
}

impl fmt::Display for PsychModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsychModel::SystemOptimum => write!(f, "so"),
            PsychModel::Quotient(CFunction::Constant(k)) if *k == 1.0 => write!(f, "ue"),
            PsychModel::Quotient(CFunction::Constant(k)) => write!(f, "quotient:const:{k}"),
            PsychModel::Quotient(CFunction::Linear(c)) => write!(f, "linear:{c}"),
            PsychModel::Quotient(CFunction::Tanh(a)) => write!(f, "quotient:tanh:{a}"),
            PsychModel::Quotient(CFunction::Custom(_)) => write!(f, "quotient:custom"),
            PsychModel::Custom(p) => write!(f, "{}", p.name()),
        }
    }
}

impl PsychModel {
    pub fn user_equilibrium() -> Self {
        PsychModel::Quotient(CFunction::Constant(1.0))
    }

    pub fn linear(c: f64) -> Self {
        PsychModel::Quotient(CFunction::Linear(c))
    }

    pub fn plugin(p: impl SplitPlugin + 'static) -> Self {
        PsychModel::Custom(Arc::new(p))
    }

    /// Parses `so`, `ue`, `linear:<c>`, `quotient:tanh:<a>`,
    /// `quotient:const:<k>` or `indicator:<w>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidModel(format!("unknown model `{spec}`"));
        let num = |s: &str| s.parse::<f64>().ok().filter(|v| v.is_finite() && *v > 0.0).ok_or_else(bad);
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let model = match parts.as_slice() {
            ["so"] => PsychModel::SystemOptimum,
            ["ue"] => PsychModel::user_equilibrium(),
            ["linear", c] => PsychModel::linear(num(c)?),
            ["quotient", "tanh", a] => PsychModel::Quotient(CFunction::Tanh(num(a)?)),
            ["quotient", "const", k] => PsychModel::Quotient(CFunction::Constant(num(k)?)),
            ["indicator", w] => {
                let w: u64 = w.parse().ok().filter(|w| *w >= 1).ok_or_else(bad)?;
                PsychModel::plugin(IndicatorModel { target: w })
            }
            _ => return Err(bad()),
        };
        Ok(model)
    }

    pub fn split(&self, parts: &PathParts) -> Result<SplitResult> {
        match self {
            PsychModel::SystemOptimum => Ok(split_system_optimum(parts)),
            PsychModel::Quotient(c) => split_quotient(parts, c),
            PsychModel::Custom(p) => parts.split_with_fraction(p.fraction(parts)),
        }
    }

    /// Whether the model is known to respect dominance at demand `d`.
    /// Plug-ins are not analysed and report `false`.
    pub fn is_pareto_conform(&self, d: f64) -> bool {
        match self {
            PsychModel::SystemOptimum => true,
            PsychModel::Quotient(c) => check_quotient_conformity(c, d),
            PsychModel::Custom(_) => false,
        }
    }
}

/// Puts everybody on `P` exactly when `τ_P(x) = w·x + (s - w)`, where `s` is
/// the constant of `τ_Q`; nobody otherwise. Coefficients are compared as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndicatorModel {
    pub target: u64,
}

fn as_int(v: f64) -> Option<i128> {
    (v.fract() == 0.0 && v.abs() < 9.0e15).then_some(v as i128)
}

impl SplitPlugin for IndicatorModel {
    fn name(&self) -> String {
        format!("indicator:{}", self.target)
    }

    fn fraction(&self, parts: &PathParts) -> f64 {
        let tp = parts.alternative();
        let s = as_int(parts.original().offset());
        let w = self.target as i128;
        let hit = match (as_int(tp.slope()), as_int(tp.offset()), s) {
            (Some(a), Some(b), Some(s)) => a == w && b == s - w,
            _ => false,
        };
        if hit {
            1.0
        } else {
            0.0
        }
    }
}

/// A fixed share of the demand takes the alternative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedFraction(pub f64);

impl SplitPlugin for FixedFraction {
    fn name(&self) -> String {
        format!("fixed:{}", self.0)
    }

    fn fraction(&self, _: &PathParts) -> f64 {
        self.0
    }
}

/// The candidate with minimal overall cost; ties go to the lexicographically
/// smaller vertex sequence. Scoring `q` itself puts the whole demand on it.
pub fn score<'p>(
    net: &Network,
    candidates: impl IntoIterator<Item = &'p Path>,
    q: &Path,
    d: f64,
    model: &PsychModel,
) -> Result<(Path, SplitResult)> {
    let mut best: Option<(&Path, SplitResult)> = None;
    for p in candidates {
        let parts = PathParts::new(net, p, q, d)?;
        let split = if p == q {
            let t = parts.time_on_q(0.0);
            SplitResult { x_p: 0.0, cost: parts.overall(0.0), time_p: t, time_q: t, boundary: Boundary::ClampedZero }
        } else {
            model.split(&parts)?
        };
        let better = match &best {
            None => true,
            Some((bp, bs)) => match split.cost.total_cmp(&bs.cost) {
                Ordering::Less => true,
                Ordering::Equal => p.vertices() < bp.vertices(),
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((p, split));
        }
    }
    best.map(|(p, s)| (p.clone(), s)).ok_or(Error::NoAlternative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{CostFn, EdgeId, NetworkBuilder};

    fn two_routes(p: CostFn, q: CostFn) -> (Network, Path, Path) {
        let mut b = NetworkBuilder::new(p.mode());
        let s = b.add_node("s", None).unwrap();
        let t = b.add_node("t", None).unwrap();
        b.add_edge(s, t, p).unwrap();
        b.add_edge(s, t, q).unwrap();
        let net = b.build();
        let pp = Path::from_edges(&net, s, vec![EdgeId(0)]).unwrap();
        let qp = Path::from_edges(&net, s, vec![EdgeId(1)]).unwrap();
        (net, pp, qp)
    }

    #[test]
    fn parse_round_trip() {
        for s in ["so", "ue", "linear:0.5", "quotient:tanh:2", "quotient:const:1.5", "indicator:3"] {
            assert_eq!(PsychModel::parse(s).unwrap().to_string(), s);
        }
        for s in ["", "UE!", "linear", "linear:-1", "linear:x", "quotient:tanh", "indicator:0", "so:1"] {
            assert!(PsychModel::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn conformity_flags() {
        assert!(PsychModel::SystemOptimum.is_pareto_conform(2.0));
        assert!(PsychModel::user_equilibrium().is_pareto_conform(2.0));
        assert!(!PsychModel::parse("quotient:const:1.5").unwrap().is_pareto_conform(2.0));
    }

    #[test]
    fn scoring_picks_cheapest() {
        let q = |a, b| CostFn::quadratic(a, b).unwrap();
        let (net, p, qr) = two_routes(q(1.0, 1.0), q(1.0, 4.0));
        let (best, split) = score(&net, [&p], &qr, 2.0, &PsychModel::SystemOptimum).unwrap();
        assert_eq!(best, p);
        assert!((split.cost - 6.625).abs() < 1e-12);
        // Q as a candidate costs d·τ_Q(d) = 16; the alternative wins
        let (best, _) = score(&net, [&qr, &p], &qr, 2.0, &PsychModel::SystemOptimum).unwrap();
        assert_eq!(best, p);
        let (_, stay) = score(&net, [&qr], &qr, 2.0, &PsychModel::user_equilibrium()).unwrap();
        assert_eq!(stay.cost, 16.0);
        assert!(matches!(score(&net, [], &qr, 2.0, &PsychModel::SystemOptimum), Err(Error::NoAlternative)));
    }

    #[test]
    fn plugins() {
        let a = |b, c| CostFn::affine(b, c).unwrap();
        // s = 3, w = 3: τ_P = 3x matches, τ_P = 3x + 1 does not
        let (net, p, qr) = two_routes(a(3.0, 0.0), a(3.0, 3.0));
        let ind = PsychModel::parse("indicator:3").unwrap();
        let hit = ind.split(&PathParts::new(&net, &p, &qr, 2.0).unwrap()).unwrap();
        assert_eq!(hit.x_p, 2.0);
        assert_eq!(hit.cost, 12.0);
        let (net, p, qr) = two_routes(a(3.0, 1.0), a(3.0, 3.0));
        let miss = ind.split(&PathParts::new(&net, &p, &qr, 2.0).unwrap()).unwrap();
        assert_eq!(miss.x_p, 0.0);
        assert_eq!(miss.cost, 2.0 * 9.0);

        let half = PsychModel::plugin(FixedFraction(0.5));
        assert_eq!(half.split(&PathParts::new(&net, &p, &qr, 2.0).unwrap()).unwrap().x_p, 1.0);
        let broken = PsychModel::plugin(FixedFraction(1.5));
        assert!(broken.split(&PathParts::new(&net, &p, &qr, 2.0).unwrap()).is_err());
    }
}
