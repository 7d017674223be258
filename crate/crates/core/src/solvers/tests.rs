use super::*;
use crate::network::{CostFn, CostMode, EdgeId, NetworkBuilder};
use crate::oracle::{brute_force_optimum, is_feasible, OracleConfig};
use crate::synth::{random_cases, RandomSpec};

fn q(a: f64, b: f64) -> CostFn {
    CostFn::quadratic(a, b).unwrap()
}

/// `s → t` twice: the alternative `x²+1` and the route `x²+4`.
fn parallel() -> (Network, Path) {
    let mut b = NetworkBuilder::new(CostMode::Quadratic);
    let s = b.add_node("s", None).unwrap();
    let t = b.add_node("t", None).unwrap();
    b.add_edge(s, t, q(1.0, 1.0)).unwrap();
    b.add_edge(s, t, q(1.0, 4.0)).unwrap();
    let net = b.build();
    let route = Path::from_edges(&net, s, vec![EdgeId(1)]).unwrap();
    (net, route)
}

fn route_only() -> (Network, Path) {
    let mut b = NetworkBuilder::new(CostMode::Quadratic);
    let s = b.add_node("s", None).unwrap();
    let m = b.add_node("m", None).unwrap();
    let t = b.add_node("t", None).unwrap();
    b.add_edge(s, m, q(1.0, 1.0)).unwrap();
    b.add_edge(m, t, q(1.0, 1.0)).unwrap();
    let net = b.build();
    let route = Path::from_edges(&net, s, vec![EdgeId(0), EdgeId(1)]).unwrap();
    (net, route)
}

const ALL: [(Variant, Algorithm); 5] = [
    (Variant::Sap, Algorithm::Direct),
    (Variant::Sap, Algorithm::FewerCriteria),
    (Variant::OneDisjoint, Algorithm::Direct),
    (Variant::OneDisjoint, Algorithm::FewerCriteria),
    (Variant::Disjoint, Algorithm::Direct),
];

#[test]
fn parallel_edge_instance() {
    let (net, route) = parallel();
    for (v, a) in ALL {
        let ue = Instance::new(&net, route.clone(), 2.0, PsychModel::user_equilibrium()).unwrap().with_variant(v).with_algorithm(a);
        let sol = solve(&ue).unwrap();
        assert!((sol.cost() - 8.125).abs() < 1e-9, "{v} {a}");
        assert_eq!(sol.path.edges(), &[EdgeId(0)]);
        assert!(!sol.no_alternative);
        let so = Instance { model: PsychModel::SystemOptimum, ..ue };
        assert!((solve(&so).unwrap().cost() - 6.625).abs() < 1e-9);
    }
}

#[test]
fn route_only_network() {
    let (net, route) = route_only();
    for (v, a) in ALL {
        let inst = Instance::new(&net, route.clone(), 2.0, PsychModel::user_equilibrium()).unwrap().with_variant(v).with_algorithm(a);
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.path, route);
        assert_eq!(sol.cost(), 2.0 * 10.0);
        assert!(sol.no_alternative, "{v} {a}");
    }
}

#[test]
fn disjoint_variant_without_detour() {
    // removing the route edge disconnects s from t
    let (net, route) = route_only();
    let inst = Instance::new(&net, route, 3.0, PsychModel::SystemOptimum).unwrap().with_variant(Variant::Disjoint);
    let sol = solve_d_sap(&inst).unwrap();
    assert!(sol.no_alternative);
    assert_eq!(sol.cost(), sol.baselines.original);
    assert_eq!(sol.frontier_size, 0);
}

#[test]
fn baselines_on_parallel_edges() {
    let mut b = NetworkBuilder::new(CostMode::Quadratic);
    let s = b.add_node("s", None).unwrap();
    let t = b.add_node("t", None).unwrap();
    b.add_edge(s, t, q(1.0, 1.0)).unwrap();
    b.add_edge(s, t, q(0.1, 5.0)).unwrap();
    let net = b.build();
    let (p1, c1) = baseline_sp(&net, s, t, 1.0, 10.0).unwrap();
    let (pd, cd) = baseline_sp(&net, s, t, 10.0, 10.0).unwrap();
    assert_eq!(p1.edges(), &[EdgeId(0)]);
    assert_eq!(pd.edges(), &[EdgeId(1)]);
    assert!((c1 - 1010.0).abs() < 1e-9);
    assert!((cd - 150.0).abs() < 1e-9);
    let (p0, _) = baseline_sp(&net, s, t, 1e-9, 10.0).unwrap();
    assert_eq!(p0.edges(), &[EdgeId(0)]);
    assert!(baseline_sp(&net, t, s, 1.0, 1.0).is_err());
}

#[test]
fn invalid_instances() {
    let (net, route) = parallel();
    assert!(Instance::new(&net, route.clone(), 0.0, PsychModel::SystemOptimum).is_err());
    assert!(Instance::new(&net, Path::trivial(NodeId(0)), 1.0, PsychModel::SystemOptimum).is_err());
    assert!("x".parse::<Variant>().is_err());
    assert_eq!("1d-sap".parse::<Variant>().unwrap(), Variant::OneDisjoint);
    assert_eq!("fc".parse::<Algorithm>().unwrap(), Algorithm::FewerCriteria);
}

#[test]
fn agrees_with_brute_force() {
    let models = [PsychModel::SystemOptimum, PsychModel::user_equilibrium(), PsychModel::linear(1.0)];
    let cases = random_cases(11, 60, RandomSpec { max_nodes: 9, ..RandomSpec::default() });
    for (k, case) in cases.iter().enumerate() {
        let model = models[k % models.len()].clone();
        let base = Instance::new(&case.net, case.route.clone(), case.demand, model.clone()).unwrap();
        let mut costs = std::collections::BTreeMap::new();
        for (v, a) in ALL {
            let inst = base.clone().with_variant(v).with_algorithm(a);
            let sol = solve(&inst).unwrap();
            assert!(sol.path == case.route || is_feasible(v, &sol.path, &case.route), "case {k}: {v} {a} infeasible");
            assert!(sol.cost() <= sol.baselines.original * (1.0 + 1e-12));
            let want = brute_force_optimum(&case.net, &case.route, case.demand, &model, v, OracleConfig::default()).unwrap();
            assert!((sol.cost() - want.cost).abs() <= 1e-6 * want.cost, "case {k}: {v} {a} {} vs {}", sol.cost(), want.cost);
            costs.insert((v, a), sol.cost());
        }
        let sap = costs[&(Variant::Sap, Algorithm::Direct)];
        let one = costs[&(Variant::OneDisjoint, Algorithm::Direct)];
        let dis = costs[&(Variant::Disjoint, Algorithm::Direct)];
        assert!(sap <= one * (1.0 + 1e-12) && one <= dis * (1.0 + 1e-12));
    }
}

#[test]
fn structural_validity() {
    let cases = random_cases(12, 40, RandomSpec::default());
    for case in &cases {
        let base = Instance::new(&case.net, case.route.clone(), case.demand, PsychModel::user_equilibrium()).unwrap();
        let d = solve_d_sap(&base).unwrap();
        if !d.no_alternative && d.path != case.route {
            assert!(d.path.edges().iter().all(|e| !case.route.edges().contains(e)));
        }
        let one = solve_1d_sap(&base).unwrap();
        let off: Vec<usize> =
            one.path.edges().iter().enumerate().filter(|(_, e)| !case.route.edges().contains(e)).map(|(i, _)| i).collect();
        if let (Some(first), Some(last)) = (off.first(), off.last()) {
            assert_eq!(last - first + 1, off.len());
        }
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let cases = random_cases(13, 20, RandomSpec::default());
    for case in &cases {
        for (v, a) in ALL {
            let inst = Instance::new(&case.net, case.route.clone(), case.demand, PsychModel::linear(0.5))
                .unwrap()
                .with_variant(v)
                .with_algorithm(a);
            let one = solve_with_threads(&inst, 1).unwrap();
            let many = solve_with_threads(&inst, 4).unwrap();
            assert_eq!(one.path, many.path);
            assert_eq!(one.cost().to_bits(), many.cost().to_bits());
            assert_eq!(one.frontier_size, many.frontier_size);
        }
    }
}
