//! `key = value` experiment descriptions.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::LabError;
use crate::ga::GaConfig;
use crate::instances::ProblemKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    AdHoc,
    Genetic,
    Hybrid,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::AdHoc, Method::Genetic, Method::Hybrid];

    pub fn id(self) -> &'static str {
        match self {
            Method::AdHoc => "adhoc",
            Method::Genetic => "ga",
            Method::Hybrid => "ga-seeded",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "adhoc" | "ad-hoc" => Ok(Method::AdHoc),
            "ga" | "genetic" => Ok(Method::Genetic),
            "ga-seeded" | "hybrid" | "seeded" => Ok(Method::Hybrid),
            other => Err(format!("unknown method `{other}` (expected adhoc, ga or ga-seeded)")),
        }
    }
}

/// One experiment: a problem, an instance and the methods to run on it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub problem: ProblemKind,
    pub instance: PathBuf,
    pub optimum: Option<f64>,
    pub methods: Vec<Method>,
    pub repetitions: usize,
    /// Population size, generations, operators and base seed. Repetition
    /// `i` runs with seed `base + i`.
    pub ga: GaConfig,
}

impl ExperimentSpec {
    pub fn new(problem: ProblemKind, instance: impl Into<PathBuf>) -> Self {
        ExperimentSpec {
            problem,
            instance: instance.into(),
            optimum: None,
            methods: Method::ALL.to_vec(),
            repetitions: 20,
            ga: GaConfig::default(),
        }
    }

    pub fn has(&self, m: Method) -> bool {
        self.methods.contains(&m)
    }

    /// GA configuration for repetition `rep`.
    pub fn ga_config(&self, rep: usize, seeded: bool) -> GaConfig {
        GaConfig { rng_seed: self.ga.rng_seed.wrapping_add(rep as u64), seeded, ..self.ga.clone() }
    }

    /// Parses a spec; a relative `instance` path is resolved against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, LabError> {
        let mut problem = None;
        let mut instance = None;
        let mut spec = ExperimentSpec::new(ProblemKind::Knapsack, PathBuf::new());
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| LabError::Spec { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(err(format!("empty value for `{key}`")));
            }
            fn num<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
                value.parse().map_err(|_| format!("invalid value `{value}` for `{key}`"))
            }
            let res: Result<(), String> = (|| {
                match key {
                    "problem" => problem = Some(value.parse::<ProblemKind>().map_err(|e| e.to_string())?),
                    "instance" => instance = Some(PathBuf::from(value)),
                    "optimum" => spec.optimum = Some(num(key, value)?),
                    "methods" => {
                        let mut ms = Vec::new();
                        for m in value.split(',') {
                            let m: Method = m.parse()?;
                            if !ms.contains(&m) {
                                ms.push(m);
                            }
                        }
                        ms.sort();
                        spec.methods = ms;
                    }
                    "repetitions" => spec.repetitions = num(key, value)?,
                    "pop" => spec.ga.population_size = num(key, value)?,
                    "gens" => spec.ga.generations = num(key, value)?,
                    "k" => spec.ga.tournament_size = num(key, value)?,
                    "pc" => spec.ga.crossover_rate = num(key, value)?,
                    "pm" => spec.ga.mutation_rate = Some(num(key, value)?),
                    "seed" => spec.ga.rng_seed = num(key, value)?,
                    other => return Err(format!("unknown key `{other}`")),
                }
                Ok(())
            })();
            res.map_err(err)?;
        }
        let missing = |k: &str| LabError::Spec { line: 0, message: format!("missing required key `{k}`") };
        spec.problem = problem.ok_or_else(|| missing("problem"))?;
        let instance = instance.ok_or_else(|| missing("instance"))?;
        spec.instance = if instance.is_relative() { base_dir.join(instance) } else { instance };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self, LabError> {
        let text = fs::read_to_string(path)
            .map_err(|source| crate::io::IoError::Io { path: path.to_path_buf(), source })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, dir)
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if self.repetitions == 0 {
            return Err(LabError::Config("repetitions must be positive".into()));
        }
        if self.methods.is_empty() {
            return Err(LabError::Config("no methods selected".into()));
        }
        self.ga.validate()?;
        Ok(())
    }
}
