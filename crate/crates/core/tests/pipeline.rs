use altroute_core::network::{write_network, write_route};
use altroute_core::oracle::{brute_force_optimum, build_gadget, OracleConfig};
use altroute_core::psych::PsychModel;
use altroute_core::solvers::{solve, Algorithm, Instance, Variant};
use altroute_core::{parse_network, parse_route};

// Diamond with a congested direct link and two bypasses; the second bypass
// reuses the last route edge.
const NETWORK: &str = "\
mode quadratic
node s 13.40 52.50
node a 13.41 52.51
node b 13.41 52.49
node m 13.42 52.50
node t 13.43 52.50
edge s m a=2 b=1
edge m t a=1 b=1
edge s a a=0.5 b=2
edge a t a=0.5 b=2
edge s b a=0.25 b=1.5
edge b m a=0.25 b=1
";

const ROUTE: &str = "route 4 s m t\n";

#[test]
fn text_files_to_solutions() {
    let net = parse_network(NETWORK).unwrap();
    let (route, demand) = parse_route(ROUTE, &net).unwrap();
    assert_eq!(demand, 4.0);
    assert_eq!(route.names(&net), ["s", "m", "t"]);
    for model in ["so", "ue", "linear:1", "quotient:tanh:2"] {
        let model = PsychModel::parse(model).unwrap();
        for variant in Variant::ALL {
            let oracle = brute_force_optimum(&net, &route, demand, &model, variant, OracleConfig::default()).unwrap();
            for algorithm in [Algorithm::Direct, Algorithm::FewerCriteria] {
                if variant == Variant::Disjoint && algorithm == Algorithm::FewerCriteria {
                    continue;
                }
                let inst =
                    Instance::new(&net, route.clone(), demand, model.clone()).unwrap().with_variant(variant).with_algorithm(algorithm);
                let sol = solve(&inst).unwrap();
                assert!((sol.cost() - oracle.cost).abs() <= 1e-6 * oracle.cost, "{model} {variant} {algorithm}");
                assert!(sol.cost() <= sol.baselines.original + 1e-9);
            }
        }
    }
}

#[test]
fn written_files_parse_back() {
    let net = parse_network(NETWORK).unwrap();
    let (route, demand) = parse_route(ROUTE, &net).unwrap();
    let again = parse_network(&write_network(&net)).unwrap();
    assert_eq!(again.node_count(), net.node_count());
    assert_eq!(again.edges(), net.edges());
    let (r2, d2) = parse_route(&write_route(&again, &route, demand), &again).unwrap();
    assert_eq!((r2.vertices(), d2), (route.vertices(), demand));
}

#[test]
fn gadget_files_solve_like_the_gadget() {
    let g = build_gadget(&[3, 5, 7], 8).unwrap();
    let net = parse_network(&g.network_text()).unwrap();
    let (route, demand) = parse_route(&g.route_text(), &net).unwrap();
    assert_eq!(route.edges(), g.route.edges());
    let direct = solve(&Instance::new(&g.net, g.route.clone(), g.demand, g.model.clone()).unwrap()).unwrap();
    let from_text = solve(&Instance::new(&net, route, demand, g.model.clone()).unwrap()).unwrap();
    assert_eq!(direct.cost(), from_text.cost());
    assert!(direct.cost() < g.threshold());
}
