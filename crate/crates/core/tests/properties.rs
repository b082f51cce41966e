use proptest::prelude::*;

use gauntlet_core::ga::operators::{bitflip_mutation, one_point_crossover, order_crossover, swap_mutation};
use gauntlet_core::generate::{random_euclidean_tsp, random_graph, random_knapsack, random_matrix_tsp, random_set_cover, KnapsackClass};
use gauntlet_core::heuristics::{greedy_independent_set_with, DegreeRule};
use gauntlet_core::instances::{tour_length, Graph, KnapsackInstance, ProblemInstance, ProblemKind, Selection};
use gauntlet_core::io::{parse_instance, write_instance};
use gauntlet_core::lab::mann_whitney_u;
use gauntlet_core::{run_ga, solve_adhoc, GaConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..25, 0.0f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cover_complement_is_independent(g in graph(), mask in any::<u32>()) {
        let n = g.vertex_count();
        let s = Selection::from_indices(n, (0..n).filter(|i| mask >> (i % 32) & 1 == 1));
        prop_assert_eq!(g.is_vertex_cover(&s).unwrap(), g.is_independent_set(&s.complement()).unwrap());
    }

    #[test]
    fn both_degree_rules_give_maximal_independent_sets(g in graph()) {
        for rule in [DegreeRule::Original, DegreeRule::Residual] {
            let s = greedy_independent_set_with(&g, rule);
            prop_assert!(g.is_independent_set(&s).unwrap());
            for v in (0..g.vertex_count()).filter(|&v| !s.contains(v)) {
                prop_assert!(g.neighbors(v).iter().any(|&u| s.contains(u as usize)), "{v} could be added");
            }
        }
    }

    #[test]
    fn tour_length_ignores_rotation_and_direction(
        (n, seed, order, shift) in (3usize..30, any::<u64>())
            .prop_flat_map(|(n, s)| (Just(n), Just(s), permutation(n), 0..n))
    ) {
        let inst = random_matrix_tsp(n, 1000, seed).unwrap();
        let base = tour_length(&inst, &order).unwrap();
        let mut rotated = order.clone();
        rotated.rotate_left(shift);
        let mut reversed = order.clone();
        reversed.reverse();
        prop_assert_eq!(base, tour_length(&inst, &rotated).unwrap());
        prop_assert_eq!(base, tour_length(&inst, &reversed).unwrap());
    }

    #[test]
    fn knapsack_value_is_additive(n in 1usize..40, seed in any::<u64>(), split in any::<u64>()) {
        let k = random_knapsack(n, KnapsackClass::Uncorrelated, 1000, 10.0, seed).unwrap();
        let a = Selection::from_indices(n, (0..n).filter(|i| split >> (i % 64) & 1 == 1));
        let b = a.complement();
        let all = Selection::full(n);
        let v = |s: &Selection| k.evaluate(s).unwrap().value;
        prop_assert_eq!(v(&a) + v(&b), v(&all));
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,200}", kind in 0usize..6) {
        let _ = parse_instance(&text, ProblemKind::ALL[kind]);
    }

    #[test]
    fn parsers_never_panic_on_near_valid_input(
        lines in proptest::collection::vec("(p edge|e|c|NAME:|DIMENSION:|EOF|NODE_COORD_SECTION|[0-9 .-]{0,12})", 0..12),
        kind in 0usize..6,
    ) {
        let _ = parse_instance(&lines.join("\n"), ProblemKind::ALL[kind]);
    }

    #[test]
    fn written_instances_parse_back(seed in any::<u64>(), n in 3usize..25, kind in 0usize..6) {
        let kind = ProblemKind::ALL[kind];
        let inst = match kind {
            ProblemKind::Knapsack => ProblemInstance::Knapsack(random_knapsack(n, KnapsackClass::WeaklyCorrelated, 100, 0.5, seed).unwrap()),
            ProblemKind::EuclideanTsp => ProblemInstance::EuclideanTsp(random_euclidean_tsp(n, 1000, seed).unwrap()),
            ProblemKind::MatrixTsp => ProblemInstance::MatrixTsp(random_matrix_tsp(n, 1000, seed).unwrap()),
            ProblemKind::VertexCover => ProblemInstance::VertexCover(random_graph(n, 0.3, seed).unwrap()),
            ProblemKind::IndependentSet => ProblemInstance::IndependentSet(random_graph(n, 0.3, seed).unwrap()),
            ProblemKind::SetCover => ProblemInstance::SetCover(random_set_cover(n, n, 0.2, seed).unwrap()),
        };
        let text = write_instance("roundtrip", &inst);
        prop_assert_eq!(parse_instance(&text, kind).unwrap(), inst);
    }

    #[test]
    fn operators_stay_in_the_search_space(
        (a, b) in (2usize..40).prop_flat_map(|n| (permutation(n), permutation(n))),
        bits in proptest::collection::vec(any::<bool>(), 1..60),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut child = order_crossover(&a, &b, &mut rng).unwrap();
        swap_mutation(&mut child, 1.0, &mut rng);
        let mut sorted = child.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..a.len()).collect::<Vec<_>>());

        let other: Vec<bool> = bits.iter().map(|b| !b).collect();
        let (mut c, d) = one_point_crossover(&bits, &other, &mut rng).unwrap();
        bitflip_mutation(&mut c, 0.3, &mut rng);
        prop_assert_eq!(c.len(), bits.len());
        prop_assert_eq!(d.len(), bits.len());
    }

    #[test]
    fn mwu_u_values_sum_to_nm(
        a in proptest::collection::vec(-50i32..50, 1..15),
        b in proptest::collection::vec(-50i32..50, 1..15),
    ) {
        let a: Vec<f64> = a.into_iter().map(f64::from).collect();
        let b: Vec<f64> = b.into_iter().map(f64::from).collect();
        let r = mann_whitney_u(&a, &b).unwrap();
        prop_assert!((r.u_a + r.u_b - (a.len() * b.len()) as f64).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&r.p_value));
        let swapped = mann_whitney_u(&b, &a).unwrap();
        prop_assert!((r.p_value - swapped.p_value).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seeded_ga_never_loses_to_its_seed(seed in any::<u64>(), n in 4usize..30, kind in 0usize..6) {
        let kind = ProblemKind::ALL[kind];
        let inst = match kind {
            ProblemKind::Knapsack => ProblemInstance::Knapsack(random_knapsack(n, KnapsackClass::StronglyCorrelated, 100, 0.4, seed).unwrap()),
            ProblemKind::EuclideanTsp => ProblemInstance::EuclideanTsp(random_euclidean_tsp(n, 1000, seed).unwrap()),
            ProblemKind::MatrixTsp => ProblemInstance::MatrixTsp(random_matrix_tsp(n, 1000, seed).unwrap()),
            ProblemKind::VertexCover => ProblemInstance::VertexCover(random_graph(n, 0.3, seed).unwrap()),
            ProblemKind::IndependentSet => ProblemInstance::IndependentSet(random_graph(n, 0.3, seed).unwrap()),
            ProblemKind::SetCover => ProblemInstance::SetCover(random_set_cover(n, n, 0.2, seed).unwrap()),
        };
        let adhoc = inst.objective(&solve_adhoc(&inst)).unwrap();
        let cfg = GaConfig { population_size: 20, generations: 10, rng_seed: seed, seeded: true, ..GaConfig::default() };
        let best = run_ga(&inst, &cfg, &[]).unwrap().best_value;
        prop_assert!(!inst.sense().better(adhoc, best), "ad-hoc {adhoc} beat seeded best {best}");
    }
}

#[test]
fn greedy_knapsack_fits_capacity_on_tight_instance() {
    let k = KnapsackInstance::from_pairs(&[(10.0, 6.0), (7.0, 5.0), (7.0, 5.0)], 10.0).unwrap();
    let inst = ProblemInstance::Knapsack(k);
    let sol = solve_adhoc(&inst);
    assert!(inst.is_feasible(&sol).unwrap());
    assert_eq!(inst.objective(&sol).unwrap(), 10.0);
}
