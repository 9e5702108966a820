use domtsp::dense::build_cover;
use domtsp::dominate::{domination_exact, domination_mc, solve, weight_histogram, within_mean_ceiling, SolveOptions};
use domtsp::extend::{algorithm_a, extend_matching_traced};
use domtsp::instance::{
    parse_graph, parse_instance, parse_tour, parse_weighting, serialize_graph, serialize_instance, serialize_tour,
    serialize_weighting,
};
use domtsp::matching::{matching_weight_01, max_matching, min_matching_weight_01, min_weight_optimal_matching_01};
use domtsp::oracle::{brute_force_max_matching, brute_force_min_optimal_matching_weight};
use domtsp::sparse::dirac_hamilton_forced;
use domtsp::{classify, edge, Graph, HamiltonCycle, Instance01, Matching, Weighting};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn instance(max_n: usize) -> impl Strategy<Value = Instance01> {
    graph(max_n).prop_map(|g| Instance01::from_graph(g).unwrap())
}

fn with_tour(max_n: usize) -> impl Strategy<Value = (Instance01, HamiltonCycle)> {
    instance(max_n).prop_flat_map(|inst| {
        let n = inst.vertex_count();
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |order| (inst.clone(), HamiltonCycle::new(order).unwrap()))
    })
}

fn weighting(max_n: usize) -> impl Strategy<Value = Weighting> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-12i64..=12, n * (n - 1) / 2)
            .prop_map(move |num| Weighting::from_scaled(n, 12, num).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(128) })]

    #[test]
    fn tour_weight_ignores_rotation_and_direction((inst, tour) in with_tour(14), shift in 0usize..14) {
        let w = inst.tour_weight(&tour).unwrap();
        let mut order = tour.order().to_vec();
        let len = order.len();
        order.rotate_left(shift % len);
        prop_assert_eq!(inst.tour_weight(&HamiltonCycle::new(order.clone()).unwrap()).unwrap(), w);
        order.reverse();
        let reversed = HamiltonCycle::new(order).unwrap();
        prop_assert_eq!(inst.tour_weight(&reversed).unwrap(), w);
        prop_assert_eq!(reversed, tour);
    }

    #[test]
    fn files_round_trip((inst, tour) in with_tour(20), w in weighting(9), g in graph(12)) {
        prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
        prop_assert_eq!(parse_tour(&serialize_tour(&tour)).unwrap(), tour);
        prop_assert_eq!(parse_weighting(&serialize_weighting(&w)).unwrap(), w);
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn maximum_matching_is_maximum(g in graph(11)) {
        let m = max_matching(&g);
        prop_assert!(m.is_subgraph_of(&g));
        prop_assert_eq!(m.len(), brute_force_max_matching(&g).unwrap().len());
    }

    #[test]
    fn min_weight_matching_is_optimal_and_lightest(inst in instance(10)) {
        let m = min_weight_optimal_matching_01(&inst);
        prop_assert!(m.is_optimal());
        prop_assert_eq!(m.len(), inst.vertex_count() / 2);
        let w = matching_weight_01(&inst, &m);
        prop_assert_eq!(w, min_matching_weight_01(&inst));
        prop_assert_eq!(w, brute_force_min_optimal_matching_weight(&inst).unwrap());
    }

    #[test]
    fn algorithm_a_meets_the_mean(inst in instance(30)) {
        let tour = algorithm_a(&inst).unwrap();
        prop_assert_eq!(tour.len(), inst.vertex_count());
        prop_assert!(within_mean_ceiling(&inst, inst.tour_weight(&tour).unwrap()));
    }

    #[test]
    fn extension_keeps_the_matching(w in weighting(16), seed in any::<u64>()) {
        let n = w.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left((seed % n as u64) as usize);
        let m = Matching::new(n, order.chunks_exact(2).map(|p| edge(p[0], p[1]))).unwrap();
        let ext = extend_matching_traced(&w, &m).unwrap();
        prop_assert!(ext.satisfies_bound());
        prop_assert!(ext.is_monotone());
        for &(u, v) in m.edges() {
            prop_assert!(ext.cycle.contains_edge(u, v));
        }
    }

    #[test]
    fn solve_returns_a_tour_and_consistent_report(inst in instance(10)) {
        let rep = solve(&inst, &SolveOptions { exact: true, ..Default::default() }).unwrap();
        prop_assert_eq!(rep.tour_weight, inst.tour_weight(&rep.tour).unwrap());
        prop_assert_eq!(&rep.classification, &classify(&inst, SolveOptions::default().eps));
        let p = rep.empirical.unwrap().exact.unwrap();
        prop_assert_eq!(p, domination_exact(&inst, &rep.tour).unwrap());
        let ratio = rep.guarantee.ratio.unwrap_or(0.0);
        prop_assert!((0.0..=1.0).contains(&ratio));
    }

    #[test]
    fn histogram_counts_every_cycle(inst in instance(9)) {
        let n = inst.vertex_count() as u64;
        let cycles: u64 = (3..n).product::<u64>().max(1);
        prop_assert_eq!(weight_histogram(&inst).unwrap().iter().sum::<u64>(), cycles);
    }

    #[test]
    fn cover_covers_the_zero_graph(inst in instance(16), s in 2usize..5) {
        let zeros = inst.zero_graph();
        if let Ok(cover) = build_cover(&zeros, s) {
            prop_assert!(cover.is_vertex_cover_of(&zeros));
        }
    }

    #[test]
    fn forced_edges_on_dense_graphs(n in 8usize..40, missing in proptest::collection::vec((0usize..40, 0usize..40), 0..6)) {
        let mut g = Graph::complete(n);
        for (u, v) in missing {
            if u < n && v < n && u != v {
                g.remove_edge(u, v);
            }
        }
        let forced: Vec<_> = (0..n / 20 + 1).map(|k| (2 * k, 2 * k + 1)).filter(|&(u, v)| g.has_edge(u, v)).collect();
        prop_assume!(2 * g.min_degree() >= n + 3 * forced.len());
        let h = dirac_hamilton_forced(&g, &forced).unwrap();
        prop_assert!(h.edges().all(|(u, v)| g.has_edge(u, v)));
        for &(u, v) in &forced {
            prop_assert!(h.contains_edge(u, v));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(16) })]

    #[test]
    fn monte_carlo_ignores_worker_count((inst, tour) in with_tour(13), seed in any::<u64>()) {
        let one = domination_mc(&inst, &tour, 10_000, seed, 1).unwrap();
        let three = domination_mc(&inst, &tour, 10_000, seed, 3).unwrap();
        prop_assert_eq!(one, three);
    }
}
