//! Repeated runs of the three methods on one instance.

use std::fmt;

use rayon::prelude::*;

use super::spec::{ExperimentSpec, Method};
use super::stats::{mann_whitney_u, RunStats, UTestResult};
use super::LabError;
use crate::ga::run_ga;
use crate::heuristics::solve_adhoc;
use crate::instances::{overcost, ApproxClass, ProblemKind, Sense};
use crate::io::{load_instance, InstanceFile};

/// Significance level of the U test.
pub const ALPHA: f64 = 0.05;
/// Hybrid gains below this (percentage points of overcost, or percent of
/// the ad-hoc value for raw objectives) count as no gain.
pub const NEGLIGIBLE_GAIN: f64 = 0.1;

/// What the reported numbers measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Percentage overcost against a known optimum; lower is better.
    Overcost,
    /// Raw objective values, used when no optimum is known.
    Objective(Sense),
}

impl Metric {
    pub fn sense(self) -> Sense {
        match self {
            Metric::Overcost => Sense::Minimize,
            Metric::Objective(s) => s,
        }
    }

    /// Improvement of `to` over `from`, in the unit of [`NEGLIGIBLE_GAIN`].
    fn gain(self, from: f64, to: f64) -> f64 {
        match self {
            Metric::Overcost => from - to,
            Metric::Objective(s) => {
                let diff = match s {
                    Sense::Minimize => from - to,
                    Sense::Maximize => to - from,
                };
                if from == 0.0 {
                    diff
                } else {
                    100.0 * diff / from.abs()
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Winner {
    AdHoc,
    Hybrid,
    Genetic,
}

impl Winner {
    pub const ALL: [Winner; 3] = [Winner::AdHoc, Winner::Hybrid, Winner::Genetic];

    pub fn label(self) -> &'static str {
        match self {
            Winner::AdHoc => "Ad-hoc",
            Winner::Hybrid => "Genetic + ad-hoc",
            Winner::Genetic => "Genetic",
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Decides which approach is preferable on one instance.
///
/// The ad-hoc algorithm wins when seeding the GA with it brings a negligible
/// gain. Otherwise the plain GA wins when it beats the ad-hoc value while
/// being statistically indistinguishable from the hybrid, or when it is
/// significantly better than the hybrid; in every other case the hybrid wins.
pub fn tag_winner(metric: Metric, adhoc: f64, ga_mean: f64, hybrid_mean: f64, p_value: f64) -> Winner {
    let sense = metric.sense();
    if metric.gain(adhoc, hybrid_mean) < NEGLIGIBLE_GAIN {
        return Winner::AdHoc;
    }
    let ga_wins = if p_value >= ALPHA { sense.better(ga_mean, adhoc) } else { sense.better(ga_mean, hybrid_mean) };
    if ga_wins {
        Winner::Genetic
    } else {
        Winner::Hybrid
    }
}

/// Majority vote over per-instance winners. A tie goes to the tied tag
/// that appears on the latest (largest) instance.
pub fn class_winner(tags: &[Winner]) -> Option<Winner> {
    let count = |w: Winner| tags.iter().filter(|&&t| t == w).count();
    let top = Winner::ALL.iter().map(|&w| count(w)).max()?;
    if top == 0 {
        return None;
    }
    tags.iter().rev().copied().find(|&w| count(w) == top)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub instance: String,
    pub metric: Metric,
    pub optimum: Option<f64>,
    pub adhoc: Option<f64>,
    pub ga: Option<RunStats>,
    pub hybrid: Option<RunStats>,
    /// GA against hybrid.
    pub u_test: Option<UTestResult>,
    pub winner: Option<Winner>,
}

impl ComparisonRow {
    /// Fills in `u_test` (when both GA samples are present) and `winner`.
    pub fn finish(&mut self) -> Result<(), LabError> {
        if let (Some(ga), Some(hy)) = (&self.ga, &self.hybrid) {
            if !ga.values.is_empty() && !hy.values.is_empty() {
                self.u_test = Some(mann_whitney_u(&ga.values, &hy.values)?);
            }
        }
        self.winner = match (self.adhoc, &self.ga, &self.hybrid, &self.u_test) {
            (Some(a), Some(g), Some(h), Some(u)) => Some(tag_winner(self.metric, a, g.mean, h.mean, u.p_value)),
            _ => None,
        };
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub problem: ProblemKind,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn class(&self) -> ApproxClass {
        self.problem.class()
    }

    pub fn metric(&self) -> Metric {
        self.rows.first().map_or(Metric::Overcost, |r| r.metric)
    }

    pub fn class_winner(&self) -> Option<Winner> {
        let tags: Vec<Winner> = self.rows.iter().filter_map(|r| r.winner).collect();
        class_winner(&tags)
    }

    /// Concatenates per-instance reports of the same problem.
    pub fn merge(reports: Vec<ComparisonReport>) -> Result<ComparisonReport, LabError> {
        let mut it = reports.into_iter();
        let mut first = it.next().ok_or_else(|| LabError::Config("nothing to merge".into()))?;
        for r in it {
            if r.problem != first.problem {
                return Err(LabError::Config(format!("cannot merge {} with {}", first.problem, r.problem)));
            }
            first.rows.extend(r.rows);
        }
        if first.rows.windows(2).any(|w| w[0].metric != w[1].metric) {
            return Err(LabError::Config("cannot mix overcost and raw-objective rows".into()));
        }
        Ok(first)
    }
}

/// How many worker threads run repetitions; 0 runs them on the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threads(pub usize);

fn map_reps<T, F>(reps: usize, threads: Threads, f: F) -> Result<Vec<T>, LabError>
where
    T: Send,
    F: Fn(usize) -> Result<T, LabError> + Sync + Send,
{
    if threads.0 == 0 {
        return (0..reps).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.0)
        .build()
        .map_err(|e| LabError::Config(format!("thread pool: {e}")))?;
    // Indexed collection keeps results in repetition order.
    pool.install(|| (0..reps).into_par_iter().map(f).collect())
}

/// Loads the spec's instance and runs the experiment on it.
pub fn run_experiment(spec: &ExperimentSpec, threads: Threads) -> Result<ComparisonReport, LabError> {
    let file = load_instance(&spec.instance, spec.problem, spec.optimum)?;
    run_on_instance(spec, &file, threads)
}

/// Runs every method in `spec` on an already loaded instance.
pub fn run_on_instance(spec: &ExperimentSpec, file: &InstanceFile, threads: Threads) -> Result<ComparisonReport, LabError> {
    spec.validate()?;
    let inst = &file.instance;
    let sense = inst.sense();
    let metric = if file.optimum.is_some() { Metric::Overcost } else { Metric::Objective(sense) };
    let measure = |v: f64| -> Result<f64, LabError> {
        match file.optimum {
            Some(opt) => Ok(overcost(v, opt, sense)?),
            None => Ok(v),
        }
    };

    let adhoc = if spec.has(Method::AdHoc) {
        let sol = solve_adhoc(inst);
        Some(measure(inst.objective(&sol)?)?)
    } else {
        None
    };
    let ga_runs = |seeded: bool| -> Result<Option<RunStats>, LabError> {
        let method = if seeded { Method::Hybrid } else { Method::Genetic };
        if !spec.has(method) {
            return Ok(None);
        }
        let values = map_reps(spec.repetitions, threads, |rep| {
            let res = run_ga(inst, &spec.ga_config(rep, seeded), &[])?;
            log::debug!("{} {} rep {rep}: {}", file.name, method.id(), res.best_value);
            measure(res.best_value)
        })?;
        Ok(Some(RunStats::from_values(&values, metric.sense())?))
    };
    let ga = ga_runs(false)?;
    let hybrid = ga_runs(true)?;

    let mut row = ComparisonRow {
        instance: file.name.clone(),
        metric,
        optimum: file.optimum,
        adhoc,
        ga,
        hybrid,
        u_test: None,
        winner: None,
    };
    row.finish()?;
    Ok(ComparisonReport { problem: spec.problem, rows: vec![row] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winner_rule_cases() {
        let m = Metric::Overcost;
        assert_eq!(tag_winner(m, 3.0, 1.0, 2.95, 0.01), Winner::AdHoc);
        assert_eq!(tag_winner(m, 3.0, 2.0, 1.0, 0.3), Winner::Genetic);
        assert_eq!(tag_winner(m, 3.0, 4.0, 1.0, 0.3), Winner::Hybrid);
        assert_eq!(tag_winner(m, 3.0, 2.0, 1.0, 0.001), Winner::Hybrid);
        assert_eq!(tag_winner(m, 3.0, 0.5, 1.0, 0.001), Winner::Genetic);
        let raw = Metric::Objective(Sense::Minimize);
        assert_eq!(tag_winner(raw, 388.0, 275.0, 248.0, 0.5), Winner::Genetic);
        assert_eq!(tag_winner(raw, 100.0, 95.0, 99.95, 0.5), Winner::AdHoc);
        let max = Metric::Objective(Sense::Maximize);
        assert_eq!(tag_winner(max, 100.0, 90.0, 120.0, 0.5), Winner::Hybrid);
    }

    #[test]
    fn class_vote() {
        use Winner::*;
        assert_eq!(class_winner(&[Genetic, AdHoc, AdHoc]), Some(AdHoc));
        assert_eq!(class_winner(&[Genetic, Hybrid, AdHoc]), Some(AdHoc));
        assert_eq!(class_winner(&[Hybrid, Genetic]), Some(Genetic));
        assert_eq!(class_winner(&[]), None);
    }
}
