//! GA quality as a function of time, in multiples of the ad-hoc runtime.

use std::time::{Duration, Instant};

use super::spec::ExperimentSpec;
use super::LabError;
use crate::ga::run_ga_timed;
use crate::heuristics::solve_adhoc;
use crate::instances::{overcost, ProblemInstance};
use crate::io::InstanceFile;

/// Shortest ad-hoc runtime the profile trusts.
pub const CLOCK_FLOOR: Duration = Duration::from_micros(1);

/// 1, 250, 500, ..., 30000.
pub fn default_multiples() -> Vec<u32> {
    std::iter::once(1).chain((250..=30_000).step_by(250)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeProfile {
    pub instance: String,
    /// Mean ad-hoc wall-clock time.
    pub t0: Duration,
    pub adhoc_overcost: f64,
    pub multiples: Vec<u32>,
    /// Mean best-so-far overcost at each multiple.
    pub mean: Vec<f64>,
    /// `per_run[r][i]`: repetition `r` at `multiples[i]`.
    pub per_run: Vec<Vec<f64>>,
}

/// Averages `loops` runs of the ad-hoc algorithm.
pub fn time_adhoc(inst: &ProblemInstance, loops: usize) -> Result<Duration, LabError> {
    let loops = loops.max(1);
    let start = Instant::now();
    for _ in 0..loops {
        std::hint::black_box(solve_adhoc(std::hint::black_box(inst)));
    }
    let t0 = start.elapsed() / loops as u32;
    if t0 < CLOCK_FLOOR {
        return Err(LabError::Timing(format!(
            "ad-hoc run took {t0:?}, below the {CLOCK_FLOOR:?} floor; time more loops"
        )));
    }
    Ok(t0)
}

fn check_multiples(multiples: &[u32]) -> Result<(), LabError> {
    if multiples.is_empty() {
        return Err(LabError::Config("no time multiples given".into()));
    }
    if multiples.contains(&0) {
        return Err(LabError::Config("time multiples must be positive".into()));
    }
    if multiples.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::Config("time multiples must be strictly ascending".into()));
    }
    Ok(())
}

/// Best-so-far value at `at`: the last log entry not after it, or the first
/// entry when the GA had not yet evaluated anything by then.
fn value_at(log: &[(Duration, f64)], at: Duration) -> f64 {
    let idx = log.partition_point(|&(t, _)| t <= at);
    log[idx.saturating_sub(1)].1
}

/// Runs `spec.repetitions` timed GA runs for the largest multiple and samples
/// their best-so-far overcost at each multiple of the ad-hoc time.
pub fn time_profile(
    spec: &ExperimentSpec,
    file: &InstanceFile,
    multiples: &[u32],
    loops: usize,
) -> Result<TimeProfile, LabError> {
    spec.validate()?;
    check_multiples(multiples)?;
    let optimum = file.require_optimum()?;
    let inst = &file.instance;
    let sense = inst.sense();
    let t0 = time_adhoc(inst, loops)?;
    let adhoc_overcost = overcost(inst.objective(&solve_adhoc(inst))?, optimum, sense)?;
    let horizon = t0 * *multiples.last().expect("checked non-empty");

    let mut per_run = Vec::with_capacity(spec.repetitions);
    for rep in 0..spec.repetitions {
        let res = run_ga_timed(inst, &spec.ga_config(rep, false), &[], horizon)?;
        let log = res.best_by_time.expect("timed runs log");
        let row = multiples
            .iter()
            .map(|&m| overcost(value_at(&log, t0 * m), optimum, sense))
            .collect::<Result<Vec<_>, _>>()?;
        per_run.push(row);
    }
    let reps = per_run.len() as f64;
    let mean = (0..multiples.len()).map(|i| per_run.iter().map(|r| r[i]).sum::<f64>() / reps).collect();
    Ok(TimeProfile { instance: file.name.clone(), t0, adhoc_overcost, multiples: multiples.to_vec(), mean, per_run })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder() {
        let m = default_multiples();
        assert_eq!(&m[..3], &[1, 250, 500]);
        assert_eq!(*m.last().unwrap(), 30_000);
        assert!(check_multiples(&m).is_ok());
        assert!(check_multiples(&[0, 5]).is_err());
        assert!(check_multiples(&[5, 5]).is_err());
        assert!(check_multiples(&[]).is_err());
    }

    #[test]
    fn sampling_log() {
        let ms = Duration::from_millis;
        let log = [(ms(2), 10.0), (ms(5), 8.0), (ms(9), 3.0)];
        assert_eq!(value_at(&log, ms(1)), 10.0);
        assert_eq!(value_at(&log, ms(5)), 8.0);
        assert_eq!(value_at(&log, ms(8)), 8.0);
        assert_eq!(value_at(&log, ms(100)), 3.0);
    }
}
