//! Experiment harness: repeated runs, statistics, time profiles and reports.

mod experiment;
mod profile;
mod render;
mod spec;
mod stats;

use thiserror::Error;

pub use experiment::{
    class_winner, run_experiment, run_on_instance, tag_winner, ComparisonReport, ComparisonRow, Metric, Threads,
    Winner, ALPHA, NEGLIGIBLE_GAIN,
};
pub use profile::{default_multiples, time_adhoc, time_profile, TimeProfile, CLOCK_FLOOR};
pub use render::{caption, render_profile, render_report, render_summary, summary_row, Format};
pub use spec::{ExperimentSpec, Method};
pub use stats::{
    mann_whitney_u, mann_whitney_u_with, summarize_runs, Alternative, PMethod, RunStats, StatsError, UTestResult,
    EXACT_MAX_N,
};

use crate::ga::GaError;
use crate::instances::InstanceError;
use crate::io::IoError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("spec line {line}: {message}")]
    Spec { line: usize, message: String },
    #[error("{0}")]
    Config(String),
    #[error("timing: {0}")]
    Timing(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Ga(#[from] GaError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}
