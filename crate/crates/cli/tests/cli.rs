use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(file)
}

fn gauntlet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauntlet")).args(args).env_remove("APPROX_GAUNTLET_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn mwu_on_two_tiny_samples() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    std::fs::write(&a, "1\n2\n").unwrap();
    std::fs::write(&b, "# second sample\n3\n4\n").unwrap();
    let out = gauntlet(&["stats", "mwu", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("U = 0\n"), "{text}");
    assert!(text.contains("p = 0.333333\n"), "{text}");
    assert!(text.contains("method = exact\n"), "{text}");
}

#[test]
fn missing_instance_is_a_usage_error() {
    let out = gauntlet(&["solve", "--problem", "knapsack", "--method", "adhoc"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.starts_with("error[usage]:") && err.contains("--instance"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(gauntlet(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(gauntlet(&["--help"]).status.code(), Some(0));
    assert_eq!(gauntlet(&["--version"]).status.code(), Some(0));
}

#[test]
fn missing_file_is_an_io_error() {
    let out = gauntlet(&["solve", "--problem", "tsp", "--method", "adhoc", "--instance", "/no/such/file.tsp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[io]:"));
}

#[test]
fn wrong_format_is_a_parse_error() {
    let berlin = data("berlin52.tsp");
    let out = gauntlet(&["solve", "--problem", "mvc", "--method", "adhoc", "--instance", berlin.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[parse]:"), "{}", stderr(&out));
}

#[test]
fn solve_reports_overcost_from_sidecar() {
    let graph = data("frb30-15-1.mis");
    let out = gauntlet(&["solve", "--problem", "mvc", "--method", "adhoc", "--instance", graph.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("objective: 429\n"), "{text}");
    assert!(text.contains("overcost: 2.14%\n"), "{text}");
}

#[test]
fn seeded_solve_is_deterministic() {
    let knap = data("knap200.txt");
    let args = [
        "solve", "--problem", "knapsack", "--method", "ga-seeded", "--instance", knap.to_str().unwrap(),
        "--seed", "9", "--pop", "20", "--gens", "40", "--format", "csv",
    ];
    let (a, b) = (gauntlet(&args), gauntlet(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("instance,problem,method,objective,overcost,solution\n"));
}

#[test]
fn experiment_output_ignores_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("knap.spec");
    std::fs::write(
        &spec,
        format!("problem = knapsack\ninstance = {}\nrepetitions = 6\npop = 20\ngens = 20\nseed = 2\n", data("knap100.txt").display()),
    )
    .unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_gauntlet"))
            .args(["experiment", "--spec", spec.to_str().unwrap(), "--format", "csv"])
            .env("APPROX_GAUNTLET_THREADS", threads)
            .output()
            .unwrap()
    };
    let (seq, par) = (run("0"), run("4"));
    assert!(seq.status.success(), "{}", stderr(&seq));
    assert_eq!(seq.stdout, par.stdout);

    let bad = run("many");
    assert_eq!(bad.status.code(), Some(1), "{}", stderr(&bad));
}

#[test]
fn unknown_spec_key_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.spec");
    std::fs::write(&spec, "problem = knapsack\ninstance = x.txt\ngenerations = 5\n").unwrap();
    let out = gauntlet(&["experiment", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn generators_write_parseable_instances() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.tsp");
    let out = gauntlet(&["gen-matrix", "--n", "12", "--seed", "4", "--out", m.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let solved = gauntlet(&["solve", "--problem", "matrix-tsp", "--method", "adhoc", "--instance", m.to_str().unwrap()]);
    assert!(solved.status.success(), "{}", stderr(&solved));
    assert!(stdout(&solved).contains("instance: rand12-4\n"));

    let k = dir.path().join("k.txt");
    let out = gauntlet(&["gen-knapsack", "--n", "30", "--seed", "1", "--out", k.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let solved = gauntlet(&["solve", "--problem", "knapsack", "--method", "adhoc", "--instance", k.to_str().unwrap()]);
    assert!(solved.status.success(), "{}", stderr(&solved));
}
