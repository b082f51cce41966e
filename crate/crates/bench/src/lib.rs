//! Fixed instances shared by the criterion benches.

use gauntlet_core::generate::{random_euclidean_tsp, random_graph, random_knapsack, KnapsackClass};
use gauntlet_core::ProblemInstance;

pub fn knapsack(n: usize) -> ProblemInstance {
    let k = random_knapsack(n, KnapsackClass::WeaklyCorrelated, 1000, 0.5, 7).expect("valid parameters");
    ProblemInstance::Knapsack(k)
}

pub fn euclidean_tsp(n: usize) -> ProblemInstance {
    ProblemInstance::EuclideanTsp(random_euclidean_tsp(n, 1000, 7).expect("valid parameters"))
}

pub fn graph(n: usize, p: f64) -> gauntlet_core::Graph {
    random_graph(n, p, 7).expect("valid parameters")
}
