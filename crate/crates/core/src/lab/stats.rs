//! Run summaries and the Mann-Whitney U test.

use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::instances::Sense;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("cannot summarise an empty sample")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFinite,
}

/// Mean, sample standard deviation and best of repeated runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub mean: f64,
    /// Sample (n - 1) standard deviation; 0 for a single run.
    pub std: f64,
    pub best: f64,
    pub values: Vec<f64>,
}

impl RunStats {
    pub fn from_values(values: &[f64], sense: Sense) -> Result<Self, StatsError> {
        if values.is_empty() {
            return Err(StatsError::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::NonFinite);
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let best = values.iter().copied().fold(values[0], |b, v| sense.best_of(b, v));
        Ok(RunStats { mean, std, best, values: values.to_vec() })
    }

    /// Stats known only through their summary (e.g. transcribed tables).
    pub fn from_summary(mean: f64, std: f64, best: f64) -> Self {
        RunStats { mean, std, best, values: Vec::new() }
    }

    pub fn runs(&self) -> usize {
        self.values.len()
    }
}

/// Summary of overcost percentages, where lower is better.
pub fn summarize_runs(values: &[f64]) -> Result<RunStats, StatsError> {
    RunStats::from_values(values, Sense::Minimize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alternative {
    #[default]
    TwoSided,
    /// `a` tends to be smaller than `b`.
    Less,
    /// `a` tends to be larger than `b`.
    Greater,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PMethod {
    /// Exact when both samples have at most [`EXACT_MAX_N`] values and
    /// there are no ties; normal approximation otherwise.
    #[default]
    Auto,
    Exact,
    Normal,
}

pub const EXACT_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct UTestResult {
    /// `R_a - n_a (n_a + 1) / 2`, with midranks for ties.
    pub u_a: f64,
    pub u_b: f64,
    pub p_value: f64,
    pub n_a: usize,
    pub n_b: usize,
    /// `Exact` or `Normal`; never `Auto`.
    pub method: PMethod,
}

/// Midranks (1-based) of the pooled sample, plus the tie groups' sizes.
fn pooled_ranks(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut pooled: Vec<(f64, usize)> = a.iter().chain(b).copied().zip(0..).collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j + 1 < pooled.len() && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        let mid = (i + j) as f64 / 2.0 + 1.0;
        for p in &pooled[i..=j] {
            ranks[p.1] = mid;
        }
        if j > i {
            ties.push(j - i + 1);
        }
        i = j + 1;
    }
    (ranks, ties)
}

/// Number of arrangements of `n` a-labels and `m` b-labels giving each value
/// of `U_a` (the count of (a, b) pairs with a above b).
fn exact_counts(n: usize, m: usize) -> Vec<f64> {
    // counts[i][j] is the distribution for sizes (i, j); built row by row.
    let mut prev: Vec<Vec<f64>> = (0..=m).map(|_| vec![1.0]).collect();
    for i in 1..=n {
        let mut cur: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        cur.push(vec![1.0]);
        for j in 1..=m {
            // The largest value is either an `a` (beating all j b's) or a `b`.
            let mut d = vec![0.0; i * j + 1];
            for (u, &c) in prev[j].iter().enumerate() {
                d[u + j] += c;
            }
            for (u, &c) in cur[j - 1].iter().enumerate() {
                d[u] += c;
            }
            cur.push(d);
        }
        prev = cur;
    }
    prev.swap_remove(m)
}

fn exact_p(u_a: f64, n: usize, m: usize, alt: Alternative) -> f64 {
    let counts = exact_counts(n, m);
    let total: f64 = counts.iter().sum();
    let u = u_a.round() as usize;
    let lower: f64 = counts[..=u].iter().sum::<f64>() / total;
    let upper: f64 = counts[u..].iter().sum::<f64>() / total;
    match alt {
        Alternative::TwoSided => (2.0 * lower.min(upper)).min(1.0),
        Alternative::Less => lower,
        Alternative::Greater => upper,
    }
}

fn normal_p(u_a: f64, n: usize, m: usize, ties: &[usize], alt: Alternative) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let total = nf + mf;
    let mean = nf * mf / 2.0;
    let tie_term: f64 = ties.iter().map(|&t| (t as f64).powi(3) - t as f64).sum();
    let var = nf * mf / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let sd = var.sqrt();
    let std_normal = Normal::standard();
    let p = match alt {
        Alternative::TwoSided => {
            let z = ((u_a - mean).abs() - 0.5).max(0.0) / sd;
            2.0 * std_normal.sf(z)
        }
        Alternative::Less => std_normal.cdf((u_a - mean + 0.5) / sd),
        Alternative::Greater => std_normal.sf((u_a - mean - 0.5) / sd),
    };
    p.clamp(0.0, 1.0)
}

/// Two-sided test, exact for small tie-free samples.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<UTestResult, StatsError> {
    mann_whitney_u_with(a, b, Alternative::TwoSided, PMethod::Auto)
}

pub fn mann_whitney_u_with(
    a: &[f64],
    b: &[f64],
    alternative: Alternative,
    method: PMethod,
) -> Result<UTestResult, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let (n, m) = (a.len(), b.len());
    let (ranks, ties) = pooled_ranks(a, b);
    let rank_sum_a: f64 = ranks[..n].iter().sum();
    let u_a = rank_sum_a - (n * (n + 1)) as f64 / 2.0;
    let u_b = (n * m) as f64 - u_a;
    let use_exact = match method {
        PMethod::Exact => true,
        PMethod::Normal => false,
        PMethod::Auto => n <= EXACT_MAX_N && m <= EXACT_MAX_N && ties.is_empty(),
    };
    let (p_value, method) = if use_exact {
        (exact_p(u_a, n, m, alternative), PMethod::Exact)
    } else {
        (normal_p(u_a, n, m, &ties, alternative), PMethod::Normal)
    };
    Ok(UTestResult { u_a, u_b, p_value, n_a: n, n_b: m, method })
}
