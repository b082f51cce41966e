//! CSV, markdown and plot-data output.

use std::fmt::Write as _;
use std::str::FromStr;

use super::experiment::{ComparisonReport, ComparisonRow, Metric, Winner};
use super::profile::TimeProfile;
use super::stats::RunStats;
use super::LabError;
use crate::instances::{ApproxClass, ProblemKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    PlotData,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            "plot" | "plot-data" => Ok(Format::PlotData),
            other => Err(LabError::Config(format!("unknown format `{other}` (csv, markdown, plot-data)"))),
        }
    }
}

/// Value as printed in tables: two decimals, no unit.
fn num(v: f64) -> String {
    format!("{v:.2}")
}

fn p_value(p: f64) -> String {
    if p < 1e-4 {
        "<0.0001".into()
    } else {
        format!("{p:.4}")
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_else(|| "-".into())
}

fn stats_cells(s: &Option<RunStats>) -> [String; 3] {
    match s {
        Some(s) => [num(s.mean), num(s.std), num(s.best)],
        None => ["-".into(), "-".into(), "-".into()],
    }
}

pub fn caption(report: &ComparisonReport) -> String {
    let what = match report.metric() {
        Metric::Overcost => "Overcost (%) with respect to the optimal solution",
        Metric::Objective(_) => "Best solutions found",
    };
    format!("{}-{}: {}", report.class().label(), report.problem.title(), what)
}

pub fn render_report(report: &ComparisonReport, format: Format) -> Result<String, LabError> {
    match format {
        Format::Csv => report_csv(report),
        Format::Markdown => Ok(report_markdown(report)),
        Format::PlotData => Ok(report_plot(report)),
    }
}

fn report_markdown(report: &ComparisonReport) -> String {
    let mut out = String::new();
    writeln!(out, "{}\n", caption(report)).unwrap();
    out.push_str("| Instance | Ad-hoc | Genetic | | | Genetic + Ad hoc | | |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    out.push_str("| | | Mean | Std | Best | Mean | Std | Best |\n");
    for row in &report.rows {
        let [gm, gs, gb] = stats_cells(&row.ga);
        let [hm, hs, hb] = stats_cells(&row.hybrid);
        writeln!(out, "| {} | {} | {gm} | {gs} | {gb} | {hm} | {hs} | {hb} |", row.instance, opt_num(row.adhoc)).unwrap();
    }
    out.push_str("\n| Instance | Class | U | p-value | Winner |\n");
    out.push_str("|---|---|---|---|---|\n");
    for row in &report.rows {
        let (u, p) = match &row.u_test {
            Some(t) if t.u_a.is_finite() => (format!("{:.1}", t.u_a), p_value(t.p_value)),
            Some(t) => ("-".into(), p_value(t.p_value)),
            None => ("-".into(), "-".into()),
        };
        let winner = row.winner.map_or("-", Winner::label);
        writeln!(out, "| {} | {} | {u} | {p} | {winner} |", row.instance, report.class().label()).unwrap();
    }
    out
}

fn csv_err(e: impl std::fmt::Display) -> LabError {
    LabError::Config(format!("csv output: {e}"))
}

fn report_csv(report: &ComparisonReport) -> Result<String, LabError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance", "problem", "class", "metric", "method", "runs", "mean", "std", "best", "u", "p_value", "winner"])
        .map_err(csv_err)?;
    for row in &report.rows {
        let metric = match row.metric {
            Metric::Overcost => "overcost",
            Metric::Objective(_) => "objective",
        };
        let (u, p) = match &row.u_test {
            Some(t) => (format!("{:.1}", t.u_a), format!("{:.6e}", t.p_value)),
            None => (String::new(), String::new()),
        };
        let winner = row.winner.map_or("", Winner::label);
        let mut put = |method: &str, runs: usize, s: [String; 3]| {
            let [mean, std, best] = s;
            w.write_record([
                row.instance.as_str(),
                report.problem.id(),
                report.class().label(),
                metric,
                method,
                &runs.to_string(),
                &mean,
                &std,
                &best,
                &u,
                &p,
                winner,
            ])
        };
        let six = |v: f64| format!("{v:.6}");
        if let Some(a) = row.adhoc {
            put("adhoc", 1, [six(a), six(0.0), six(a)]).map_err(csv_err)?;
        }
        for (name, s) in [("ga", &row.ga), ("ga-seeded", &row.hybrid)] {
            if let Some(s) = s {
                put(name, s.runs(), [six(s.mean), six(s.std), six(s.best)]).map_err(csv_err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

/// One series per method and instance: `(repetition, value)` pairs.
fn report_plot(report: &ComparisonReport) -> String {
    let mut out = String::new();
    for row in &report.rows {
        let mut series = |name: &str, values: &[f64]| {
            writeln!(out, "# {} {name}", row.instance).unwrap();
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{} {v}", i + 1).unwrap();
            }
            out.push('\n');
        };
        if let Some(a) = row.adhoc {
            series("adhoc", &[a]);
        }
        if let Some(s) = &row.ga {
            series("ga", &s.values);
        }
        if let Some(s) = &row.hybrid {
            series("ga-seeded", &s.values);
        }
    }
    out
}

pub fn render_profile(profile: &TimeProfile, format: Format) -> Result<String, LabError> {
    let secs = |m: u32| (profile.t0 * m).as_secs_f64();
    let mut out = String::new();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["instance", "multiple", "seconds", "mean_overcost", "adhoc_overcost"]).map_err(csv_err)?;
            for (m, v) in profile.multiples.iter().zip(&profile.mean) {
                w.write_record([
                    profile.instance.clone(),
                    m.to_string(),
                    format!("{:.9}", secs(*m)),
                    format!("{v:.6}"),
                    format!("{:.6}", profile.adhoc_overcost),
                ])
                .map_err(csv_err)?;
            }
            return String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err);
        }
        Format::Markdown => {
            writeln!(
                out,
                "{}: mean overcost (%) by time, t0 = {:.3e} s, ad-hoc overcost {:.2}\n",
                profile.instance,
                profile.t0.as_secs_f64(),
                profile.adhoc_overcost
            )
            .unwrap();
            out.push_str("| Multiple of t0 | Seconds | Mean overcost |\n|---|---|---|\n");
            for (m, v) in profile.multiples.iter().zip(&profile.mean) {
                writeln!(out, "| {m} | {:.4} | {} |", secs(*m), num(*v)).unwrap();
            }
        }
        Format::PlotData => {
            writeln!(out, "# {} t0={:.9} adhoc={:.6}", profile.instance, profile.t0.as_secs_f64(), profile.adhoc_overcost)
                .unwrap();
            for (m, v) in profile.multiples.iter().zip(&profile.mean) {
                writeln!(out, "{m} {v}").unwrap();
            }
        }
    }
    Ok(out)
}

fn example_name(kind: ProblemKind) -> &'static str {
    match kind {
        ProblemKind::Knapsack => "Knapsack",
        ProblemKind::EuclideanTsp => "Euclidean TSP",
        ProblemKind::VertexCover => "Minimum vertex cover",
        ProblemKind::SetCover => "Minimum set covering",
        ProblemKind::IndependentSet => "Maximum independent set",
        ProblemKind::MatrixTsp => "Traveling Salesman Problem",
    }
}

/// One line per approximation class marking the class-level winner.
pub fn render_summary(reports: &[ComparisonReport]) -> String {
    let mut out = String::from("| Approximation class | Example | Ad-hoc | Genetic + ad-hoc | Genetic |\n");
    out.push_str("|---|---|---|---|---|\n");
    for class in ApproxClass::ALL {
        let kind = ProblemKind::for_class(class);
        let winner = reports.iter().find(|r| r.problem == kind).and_then(ComparisonReport::class_winner);
        let mark = |w: Winner| if winner == Some(w) { "X" } else { "" };
        writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            class.label(),
            example_name(kind),
            mark(Winner::AdHoc),
            mark(Winner::Hybrid),
            mark(Winner::Genetic)
        )
        .unwrap();
    }
    out
}

/// Row built from published-style summary numbers; used for re-tagging
/// transcribed results.
pub fn summary_row(
    instance: &str,
    metric: Metric,
    adhoc: f64,
    ga: RunStats,
    hybrid: RunStats,
    p: f64,
) -> ComparisonRow {
    let winner = Some(super::experiment::tag_winner(metric, adhoc, ga.mean, hybrid.mean, p));
    ComparisonRow {
        instance: instance.to_string(),
        metric,
        optimum: None,
        adhoc: Some(adhoc),
        ga: Some(ga),
        hybrid: Some(hybrid),
        u_test: Some(super::stats::UTestResult {
            u_a: f64::NAN,
            u_b: f64::NAN,
            p_value: p,
            n_a: 0,
            n_b: 0,
            method: super::stats::PMethod::Normal,
        }),
        winner,
    }
}
