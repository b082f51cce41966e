//! Generational genetic algorithm with tournament selection.
//!
//! The loop evaluates the whole population, draws `N` parents by tournament,
//! pairs them for crossover, mutates the offspring and replaces the
//! generation wholesale. There is no elitism; the best individual ever
//! evaluated is tracked separately and reported.
//!
//! Subset problems use a bitstring encoding with a problem-specific repair
//! step run before each evaluation; tour problems use permutations.

pub mod operators;
mod repair;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::heuristics::solve_adhoc;
use crate::instances::{
    cycle_length, Distances, ProblemInstance, Selection, Sense, Solution, Tour,
};

pub use operators::{
    bitflip_mutation, one_point_crossover, one_point_crossover_at, order_crossover,
    order_crossover_segment, swap_mutation, swap_positions, tournament_select,
};
pub use repair::repair;

use repair::{IndependentSetRepair, KnapsackRepair, SetCoverRepair, VertexCoverRepair};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaError {
    #[error("invalid GA configuration: {0}")]
    Config(String),
    #[error("genome dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("genome encoding does not match the problem")]
    Encoding,
    #[error("tournament over an empty population")]
    EmptyPopulation,
    #[error("parents have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Engine parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    /// `None` selects the encoding default: `1/L` per gene for bitstrings,
    /// `0.1` per individual for tours.
    pub mutation_rate: Option<f64>,
    pub rng_seed: u64,
    /// Inject the ad-hoc solution when no explicit seeds are supplied.
    pub seeded: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            generations: 500,
            tournament_size: 3,
            crossover_rate: 0.9,
            mutation_rate: None,
            rng_seed: 0,
            seeded: false,
        }
    }
}

pub const DEFAULT_TOUR_MUTATION_RATE: f64 = 0.1;

impl GaConfig {
    pub fn validate(&self) -> Result<(), GaError> {
        if self.population_size == 0 || !self.population_size.is_multiple_of(2) {
            return Err(GaError::Config(format!(
                "population size must be positive and even, got {}",
                self.population_size
            )));
        }
        if self.generations == 0 {
            return Err(GaError::Config("generations must be positive".into()));
        }
        if self.tournament_size == 0 {
            return Err(GaError::Config("tournament size must be at least 1".into()));
        }
        let in_unit = |p: f64| (0.0..=1.0).contains(&p);
        if !in_unit(self.crossover_rate) {
            return Err(GaError::Config(format!("crossover rate {} not in [0,1]", self.crossover_rate)));
        }
        if let Some(pm) = self.mutation_rate {
            if !in_unit(pm) {
                return Err(GaError::Config(format!("mutation rate {pm} not in [0,1]")));
            }
        }
        Ok(())
    }

    /// Evaluations performed by a generation-capped run.
    pub fn budget(&self) -> usize {
        self.population_size * self.generations
    }
}

/// Encoded individual.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Genome {
    Bits(Vec<bool>),
    Perm(Vec<usize>),
}

impl Genome {
    pub fn len(&self) -> usize {
        match self {
            Genome::Bits(b) => b.len(),
            Genome::Perm(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_ref(&self) -> GenomeRef<'_> {
        match self {
            Genome::Bits(b) => GenomeRef::Bits(b),
            Genome::Perm(p) => GenomeRef::Perm(p),
        }
    }

    pub fn into_solution(self) -> Solution {
        match self {
            Genome::Bits(b) => Solution::Subset(Selection::from(b)),
            Genome::Perm(p) => Solution::Tour(Tour::from_vec_unchecked(p)),
        }
    }
}

impl From<Solution> for Genome {
    fn from(s: Solution) -> Self {
        match s {
            Solution::Subset(sel) => Genome::Bits(sel.into_bits()),
            Solution::Tour(t) => Genome::Perm(t.into_order()),
        }
    }
}

/// Borrowed view of a genome, handed to evaluation inspectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenomeRef<'a> {
    Bits(&'a [bool]),
    Perm(&'a [usize]),
}

impl GenomeRef<'_> {
    pub fn to_solution(self) -> Solution {
        Genome::from(self).into_solution()
    }
}

impl From<GenomeRef<'_>> for Genome {
    fn from(g: GenomeRef<'_>) -> Self {
        match g {
            GenomeRef::Bits(b) => Genome::Bits(b.to_vec()),
            GenomeRef::Perm(p) => Genome::Perm(p.to_vec()),
        }
    }
}

/// A genome with its fitness (the objective of the repaired phenotype).
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaRunResult {
    pub best_solution: Solution,
    pub best_value: f64,
    pub evaluations_used: usize,
    /// Best-ever value after each completed generation.
    pub best_by_generation: Vec<f64>,
    /// `(elapsed, best-ever)` at every improvement; timed runs only.
    pub best_by_time: Option<Vec<(Duration, f64)>>,
}

/// Genome representation plus the problem-specific parts of the loop.
pub(crate) trait Encoding: Sync {
    type Gene: Clone + Send;

    fn sense(&self) -> Sense;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Gene;
    /// Repairs in place and returns the objective.
    fn evaluate(&self, gene: &mut Self::Gene) -> f64;
    fn crossover(&self, a: &Self::Gene, b: &Self::Gene, rng: &mut ChaCha8Rng) -> (Self::Gene, Self::Gene);
    fn mutate(&self, gene: &mut Self::Gene, rate: f64, rng: &mut ChaCha8Rng);
    fn default_mutation_rate(&self) -> f64;
    fn view<'g>(&self, gene: &'g Self::Gene) -> GenomeRef<'g>;
    fn adopt(&self, genome: &Genome) -> Result<Self::Gene, GaError>;
    fn export(&self, gene: Self::Gene) -> Genome;
}

/// Repair + objective for a bitstring-encoded problem.
pub(crate) trait BitProblem: Sync {
    fn len(&self) -> usize;
    fn sense(&self) -> Sense;
    fn repair_eval(&self, bits: &mut [bool]) -> f64;
}

pub(crate) struct BitEncoding<P>(pub P);

impl<P: BitProblem> Encoding for BitEncoding<P> {
    type Gene = Vec<bool>;

    fn sense(&self) -> Sense {
        self.0.sense()
    }


    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<bool> {
        (0..self.0.len()).map(|_| rng.random::<bool>()).collect()
    }

    fn evaluate(&self, gene: &mut Vec<bool>) -> f64 {
        self.0.repair_eval(gene)
    }

    fn crossover(&self, a: &Vec<bool>, b: &Vec<bool>, rng: &mut ChaCha8Rng) -> (Vec<bool>, Vec<bool>) {
        one_point_crossover(a, b, rng).expect("population genomes share a length")
    }

    fn mutate(&self, gene: &mut Vec<bool>, rate: f64, rng: &mut ChaCha8Rng) {
        bitflip_mutation(gene, rate, rng);
    }

    fn default_mutation_rate(&self) -> f64 {
        match self.0.len() {
            0 => 0.0,
            l => 1.0 / l as f64,
        }
    }

    fn view<'g>(&self, gene: &'g Vec<bool>) -> GenomeRef<'g> {
        GenomeRef::Bits(gene)
    }

    fn adopt(&self, genome: &Genome) -> Result<Vec<bool>, GaError> {
        match genome {
            Genome::Bits(b) if b.len() == self.0.len() => Ok(b.clone()),
            Genome::Bits(b) => Err(GaError::Dimension { expected: self.0.len(), found: b.len() }),
            Genome::Perm(_) => Err(GaError::Encoding),
        }
    }

    fn export(&self, gene: Vec<bool>) -> Genome {
        Genome::Bits(gene)
    }
}

pub(crate) struct PermEncoding<'a, D: ?Sized>(pub &'a D);

impl<D: Distances + Sync + ?Sized> Encoding for PermEncoding<'_, D> {
    type Gene = Vec<usize>;

    fn sense(&self) -> Sense {
        Sense::Minimize
    }


    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<usize> {
        use rand::seq::SliceRandom;
        let mut p: Vec<usize> = (0..self.0.n()).collect();
        p.shuffle(rng);
        p
    }

    fn evaluate(&self, gene: &mut Vec<usize>) -> f64 {
        cycle_length(self.0, gene)
    }

    fn crossover(&self, a: &Vec<usize>, b: &Vec<usize>, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
        let n = a.len();
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        let (lo, hi) = (i.min(j), i.max(j));
        let c1 = order_crossover_segment(a, b, lo, hi).expect("population genomes share a length");
        let c2 = order_crossover_segment(b, a, lo, hi).expect("population genomes share a length");
        (c1, c2)
    }

    fn mutate(&self, gene: &mut Vec<usize>, rate: f64, rng: &mut ChaCha8Rng) {
        swap_mutation(gene, rate, rng);
    }

    fn default_mutation_rate(&self) -> f64 {
        DEFAULT_TOUR_MUTATION_RATE
    }

    fn view<'g>(&self, gene: &'g Vec<usize>) -> GenomeRef<'g> {
        GenomeRef::Perm(gene)
    }

    fn adopt(&self, genome: &Genome) -> Result<Vec<usize>, GaError> {
        match genome {
            Genome::Perm(p) if p.len() == self.0.n() => {
                crate::instances::validate_permutation(p).map_err(|_| GaError::Encoding)?;
                Ok(p.clone())
            }
            Genome::Perm(p) => Err(GaError::Dimension { expected: self.0.n(), found: p.len() }),
            Genome::Bits(_) => Err(GaError::Encoding),
        }
    }

    fn export(&self, gene: Vec<usize>) -> Genome {
        Genome::Perm(gene)
    }
}

/// When a run stops.
#[derive(Debug, Clone, Copy)]
enum Stop {
    Generations(usize),
    /// Generation cap lifted; stop once the wall-clock budget is spent.
    Deadline(Duration),
}

type Inspector<'a> = Option<&'a mut dyn FnMut(GenomeRef<'_>, f64)>;

/// Best gene, its value, evaluations used, per-generation and timed traces.
type Outcome<G> = (G, f64, usize, Vec<f64>, Option<Vec<(Duration, f64)>>);

fn drive<E: Encoding>(
    enc: &E,
    cfg: &GaConfig,
    seeds: &[Genome],
    stop: Stop,
    mut inspect: Inspector<'_>,
) -> Result<Outcome<E::Gene>, GaError> {
    cfg.validate()?;
    if seeds.len() > cfg.population_size {
        return Err(GaError::Config(format!(
            "{} seeds exceed the population size {}",
            seeds.len(),
            cfg.population_size
        )));
    }
    let sense = enc.sense();
    let mutation_rate = cfg.mutation_rate.unwrap_or_else(|| enc.default_mutation_rate());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);

    let mut population: Vec<E::Gene> = (0..cfg.population_size).map(|_| enc.random(&mut rng)).collect();
    // Each seed replaces a distinct, uniformly chosen member.
    let slots = rand::seq::index::sample(&mut rng, cfg.population_size, seeds.len());
    for (slot, seed) in slots.into_iter().zip(seeds) {
        population[slot] = enc.adopt(seed)?;
    }

    let started = Instant::now();
    let timed = matches!(stop, Stop::Deadline(_));
    let mut best: Option<(E::Gene, f64)> = None;
    let mut evaluations = 0usize;
    let mut history = Vec::new();
    let mut by_time = timed.then(Vec::new);
    let mut fitness = vec![0.0; cfg.population_size];

    'generations: for generation in 0.. {
        if let Stop::Generations(cap) = stop {
            if generation == cap {
                break;
            }
        }
        for (gene, fit) in population.iter_mut().zip(fitness.iter_mut()) {
            *fit = enc.evaluate(gene);
            evaluations += 1;
            if let Some(f) = inspect.as_mut() {
                f(enc.view(gene), *fit);
            }
            let improved = match &best {
                None => true,
                Some((_, b)) => sense.better(*fit, *b),
            };
            if improved {
                best = Some((gene.clone(), *fit));
                if let Some(log) = by_time.as_mut() {
                    log.push((started.elapsed(), *fit));
                }
            }
            if let Stop::Deadline(budget) = stop {
                if started.elapsed() >= budget {
                    break 'generations;
                }
            }
        }
        history.push(best.as_ref().map(|b| b.1).expect("population is non-empty"));

        let parents: Vec<usize> = (0..cfg.population_size)
            .map(|_| tournament_select(&fitness, cfg.tournament_size, sense, &mut rng))
            .collect::<Result<_, _>>()?;
        let mut offspring = Vec::with_capacity(cfg.population_size);
        for pair in parents.chunks_exact(2) {
            let (a, b) = (&population[pair[0]], &population[pair[1]]);
            let (mut c1, mut c2) = if rng.random::<f64>() < cfg.crossover_rate {
                enc.crossover(a, b, &mut rng)
            } else {
                (a.clone(), b.clone())
            };
            enc.mutate(&mut c1, mutation_rate, &mut rng);
            enc.mutate(&mut c2, mutation_rate, &mut rng);
            offspring.push(c1);
            offspring.push(c2);
        }
        population = offspring;
    }

    let (gene, value) = best.expect("at least one evaluation");
    // A deadline can cut a generation short after an improvement.
    if history.last() != Some(&value) {
        debug_assert!(timed);
        history.push(value);
    }
    Ok((gene, value, evaluations, history, by_time))
}

fn run_encoded<E: Encoding>(
    enc: &E,
    cfg: &GaConfig,
    seeds: &[Genome],
    stop: Stop,
    inspect: Inspector<'_>,
) -> Result<GaRunResult, GaError> {
    let (gene, best_value, evaluations_used, best_by_generation, best_by_time) =
        drive(enc, cfg, seeds, stop, inspect)?;
    Ok(GaRunResult {
        best_solution: enc.export(gene).into_solution(),
        best_value,
        evaluations_used,
        best_by_generation,
        best_by_time,
    })
}

fn dispatch(
    problem: &ProblemInstance,
    cfg: &GaConfig,
    seeds: &[Genome],
    stop: Stop,
    inspect: Inspector<'_>,
) -> Result<GaRunResult, GaError> {
    let adhoc;
    let seeds = if seeds.is_empty() && cfg.seeded {
        adhoc = [Genome::from(solve_adhoc(problem))];
        &adhoc[..]
    } else {
        seeds
    };
    match problem {
        ProblemInstance::Knapsack(k) => {
            run_encoded(&BitEncoding(KnapsackRepair::new(k)), cfg, seeds, stop, inspect)
        }
        ProblemInstance::VertexCover(g) => {
            run_encoded(&BitEncoding(VertexCoverRepair::new(g)), cfg, seeds, stop, inspect)
        }
        ProblemInstance::SetCover(s) => {
            run_encoded(&BitEncoding(SetCoverRepair::new(s)), cfg, seeds, stop, inspect)
        }
        ProblemInstance::IndependentSet(g) => {
            run_encoded(&BitEncoding(IndependentSetRepair::new(g)), cfg, seeds, stop, inspect)
        }
        ProblemInstance::EuclideanTsp(t) => run_encoded(&PermEncoding(t), cfg, seeds, stop, inspect),
        ProblemInstance::MatrixTsp(m) => run_encoded(&PermEncoding(m), cfg, seeds, stop, inspect),
    }
}

/// Runs the GA for `cfg.generations` generations.
///
/// Each seed replaces one random member of the initial population. With
/// `cfg.seeded` and no explicit seeds, the ad-hoc solution is injected.
pub fn run_ga(problem: &ProblemInstance, cfg: &GaConfig, seeds: &[Genome]) -> Result<GaRunResult, GaError> {
    dispatch(problem, cfg, seeds, Stop::Generations(cfg.generations), None)
}

/// Like [`run_ga`], calling `inspect` with every evaluated (repaired)
/// genome and its fitness.
pub fn run_ga_inspected(
    problem: &ProblemInstance,
    cfg: &GaConfig,
    seeds: &[Genome],
    inspect: &mut dyn FnMut(GenomeRef<'_>, f64),
) -> Result<GaRunResult, GaError> {
    dispatch(problem, cfg, seeds, Stop::Generations(cfg.generations), Some(inspect))
}

/// Runs without a generation cap until `budget` wall-clock time is spent,
/// logging best-so-far improvements in `best_by_time`.
pub fn run_ga_timed(
    problem: &ProblemInstance,
    cfg: &GaConfig,
    seeds: &[Genome],
    budget: Duration,
) -> Result<GaRunResult, GaError> {
    dispatch(problem, cfg, seeds, Stop::Deadline(budget), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heuristics::greedy_knapsack;
    use crate::instances::{Graph, KnapsackInstance, MatrixTspInstance};

    fn small_cfg(seed: u64) -> GaConfig {
        GaConfig { population_size: 20, generations: 30, rng_seed: seed, ..GaConfig::default() }
    }

    fn knapsack() -> ProblemInstance {
        let pairs: Vec<(f64, f64)> =
            (0..15).map(|i| (((i * 7) % 11 + 1) as f64, ((i * 5) % 9 + 1) as f64)).collect();
        ProblemInstance::Knapsack(KnapsackInstance::from_pairs(&pairs, 20.0).unwrap())
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        assert!(GaConfig { population_size: 7, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { population_size: 0, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { tournament_size: 0, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { crossover_rate: 1.5, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { mutation_rate: Some(-0.1), ..GaConfig::default() }.validate().is_err());
        assert_eq!(GaConfig::default().budget(), 50_000);
    }

    #[test]
    fn budget_is_exact() {
        let cfg = small_cfg(3);
        let mut counted = 0;
        let r = run_ga_inspected(&knapsack(), &cfg, &[], &mut |_, _| counted += 1).unwrap();
        assert_eq!(r.evaluations_used, 600);
        assert_eq!(counted, 600);
        assert_eq!(r.best_by_generation.len(), 30);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_ga(&knapsack(), &small_cfg(11), &[]).unwrap();
        let b = run_ga(&knapsack(), &small_cfg(11), &[]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn history_is_monotone_and_ends_at_best() {
        let r = run_ga(&knapsack(), &small_cfg(5), &[]).unwrap();
        assert!(r.best_by_generation.windows(2).all(|w| w[1] >= w[0]));
        assert_eq!(*r.best_by_generation.last().unwrap(), r.best_value);
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let r = run_ga(&ProblemInstance::VertexCover(g), &small_cfg(5), &[]).unwrap();
        assert!(r.best_by_generation.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn seeded_run_never_worse_than_seed() {
        let p = knapsack();
        let ProblemInstance::Knapsack(k) = &p else { unreachable!() };
        let adhoc = k.evaluate(&greedy_knapsack(k)).unwrap().value;
        let cfg = GaConfig { seeded: true, generations: 2, ..small_cfg(1) };
        let r = run_ga(&p, &cfg, &[]).unwrap();
        assert!(r.best_value >= adhoc);
    }

    #[test]
    fn seed_dimension_checked() {
        let err = run_ga(&knapsack(), &small_cfg(0), &[Genome::Bits(vec![true; 3])]).unwrap_err();
        assert_eq!(err, GaError::Dimension { expected: 15, found: 3 });
        let err = run_ga(&knapsack(), &small_cfg(0), &[Genome::Perm(vec![0, 1, 2])]).unwrap_err();
        assert_eq!(err, GaError::Encoding);
        let too_many = vec![Genome::Bits(vec![false; 15]); 21];
        assert!(matches!(run_ga(&knapsack(), &small_cfg(0), &too_many), Err(GaError::Config(_))));
    }

    #[test]
    fn tour_runs_produce_permutations() {
        let rows: Vec<Vec<u64>> = (0..8)
            .map(|i| (0..8).map(|j: u64| if i == j { 0 } else { (i + j) * 3 % 17 + 1 }).collect())
            .collect();
        let m = MatrixTspInstance::new(rows).unwrap();
        let p = ProblemInstance::MatrixTsp(m);
        let r = run_ga_inspected(&p, &small_cfg(2), &[], &mut |g, f| {
            let GenomeRef::Perm(order) = g else { panic!("bits for a tour problem") };
            assert!(crate::instances::validate_permutation(order).is_ok());
            assert!(f > 0.0);
        })
        .unwrap();
        assert_eq!(p.objective(&r.best_solution).unwrap(), r.best_value);
    }

    #[test]
    fn timed_run_logs_improvements() {
        let cfg = small_cfg(9);
        let r = run_ga_timed(&knapsack(), &cfg, &[], Duration::from_millis(5)).unwrap();
        let log = r.best_by_time.unwrap();
        assert!(!log.is_empty());
        assert!(log.windows(2).all(|w| w[0].0 <= w[1].0 && w[1].1 > w[0].1));
        assert_eq!(log.last().unwrap().1, r.best_value);
    }
}
