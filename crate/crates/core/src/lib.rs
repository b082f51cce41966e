//! Benchmark suite comparing a generational genetic algorithm against greedy
//! heuristics on six problems spanning the approximability hierarchy.

pub mod ga;
pub mod generate;
pub mod heuristics;
pub mod instances;
pub mod io;
pub mod lab;

pub use ga::{run_ga, GaConfig, GaError, GaRunResult, Genome};
pub use heuristics::solve_adhoc;
pub use instances::{
    overcost, ApproxClass, Distances, EuclideanTspInstance, Graph, InstanceError, KnapsackInstance,
    MatrixTspInstance, ProblemInstance, ProblemKind, Selection, Sense, SetCoverInstance, Solution, Tour,
};
pub use io::{load_instance, InstanceFile, IoError};
pub use lab::{ComparisonReport, ExperimentSpec, LabError, RunStats, UTestResult};
