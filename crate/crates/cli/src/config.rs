//! Run configuration: a TOML document whose (dotted) keys override a base
//! spec, by default the benchmark setup of the model problem.
//!
//! ```toml
//! [experiment]
//! kind = "sweep_theta"        # sweep_theta | bound_compare | kernels
//! theta_list = [0.2, 0.4, 0.5, 0.6, 0.8]
//! k_list = [1, 2, 3]
//! time_samples = 200
//! horizons = [2.0, 200.0]     # defaults to [run.T]
//!
//! [geometry]
//! a = 2.0                     # Neumann subdomain (0, a)
//! b = 3.0                     # Dirichlet subdomain (-b, 0)
//!
//! [grid]
//! dx = 0.02
//! dt = 4e-4
//!
//! [run]
//! theta = 0.5
//! T = 2.0
//! max_iter = 10
//! tol = 0.0
//! initial_guess = "ramp"      # ramp | zero
//! flux = "conservative"       # conservative | one_sided
//!
//! [problem]
//! kind = "model"              # model | homogeneous
//!
//! [output]
//! path = "sweep_theta.csv"
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dnwr_core::{DnwrConfig, FluxScheme, InitialGuess, ProblemData};
use toml::{Table, Value};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    SweepTheta,
    BoundCompare,
    Kernels,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SweepTheta => "sweep_theta",
            ExperimentKind::BoundCompare => "bound_compare",
            ExperimentKind::Kernels => "kernels",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Source, initial and boundary data of the benchmark problem.
    Model,
    /// All data zero, so the iterates are the interface errors themselves.
    Homogeneous,
}

impl ProblemKind {
    pub fn data(self) -> ProblemData {
        match self {
            ProblemKind::Model => ProblemData::model_problem(),
            ProblemKind::Homogeneous => ProblemData::homogeneous(),
        }
    }
}

/// Named starting points for the configuration document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Relaxation sweep on the short window `T = 2`.
    Fig1Short,
    /// Relaxation sweep on the long window `T = 200`.
    Fig1Long,
    /// Error against the continuous model and both bounds, `T = 2` and `T = 200`.
    Fig2,
    /// Kernels `F_1, F_2, F_3` for `a = 3`, `b = 2` on `(0, 20]`.
    Fig3,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1Short, Preset::Fig1Long, Preset::Fig2, Preset::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1Short => "fig1-short",
            Preset::Fig1Long => "fig1-long",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
        }
    }

    pub fn spec(self) -> ExperimentSpec {
        let mut spec = ExperimentSpec {
            output_path: Some(PathBuf::from(format!("{}.csv", self.name()))),
            ..ExperimentSpec::default()
        };
        match self {
            Preset::Fig1Short => {}
            Preset::Fig1Long => spec.set_horizon(200.0),
            Preset::Fig2 => {
                spec.kind = ExperimentKind::BoundCompare;
                spec.horizons = vec![2.0, 200.0];
            }
            Preset::Fig3 => {
                spec.kind = ExperimentKind::Kernels;
                spec.config.a = 3.0;
                spec.config.b = 2.0;
                spec.set_horizon(20.0);
            }
        }
        spec
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}` (expected fig1-short, fig1-long, fig2 or fig3)"))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Engine settings; `config.horizon` is `run.T`.
    pub config: DnwrConfig,
    pub problem_kind: ProblemKind,
    pub theta_list: Vec<f64>,
    pub k_list: Vec<usize>,
    /// Configured destination; `None` means `<kind>.csv`.
    pub output_path: Option<PathBuf>,
    /// Number of points of `(0, T]` for kernel and continuous-error curves.
    pub time_samples: usize,
    /// Time windows for `sweep_theta` and `bound_compare`, one output file each.
    pub horizons: Vec<f64>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            kind: ExperimentKind::SweepTheta,
            config: DnwrConfig::model_problem(2.0),
            problem_kind: ProblemKind::Model,
            theta_list: vec![0.2, 0.4, 0.5, 0.6, 0.8],
            k_list: vec![1, 2, 3],
            output_path: None,
            time_samples: 200,
            horizons: vec![2.0],
        }
    }
}

impl ExperimentSpec {
    /// Sets `run.T` and makes it the only time window.
    pub fn set_horizon(&mut self, horizon: f64) {
        self.config.horizon = horizon;
        self.horizons = vec![horizon];
    }

    pub fn output_path(&self) -> PathBuf {
        self.output_path
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.csv", self.kind.name())))
    }

    /// Engine configuration for one time window.
    pub fn config_for(&self, horizon: f64) -> DnwrConfig {
        let mut config = self.config.clone();
        config.horizon = horizon;
        config
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |msg: String| Err(ConfigError::Validation(msg));
        let mut horizons = self.horizons.clone();
        horizons.push(self.config.horizon);
        for &horizon in &horizons {
            self.config_for(horizon)
                .validate()
                .or_else(|e| invalid(e.to_string()))?;
        }
        if self.time_samples == 0 {
            return invalid("experiment.time_samples must be at least 1".into());
        }
        if self.output_path().file_name().is_none() {
            return invalid(format!(
                "output.path `{}` has no file name",
                self.output_path().display()
            ));
        }
        match self.kind {
            ExperimentKind::SweepTheta => {
                if self.theta_list.is_empty() {
                    return invalid("experiment.theta_list must not be empty".into());
                }
                if let Some(theta) = self.theta_list.iter().find(|&&t| !(t > 0.0 && t <= 1.0)) {
                    return invalid(format!("theta = {theta} in experiment.theta_list is outside (0, 1]"));
                }
            }
            ExperimentKind::BoundCompare => {
                if (self.config.theta - 0.5).abs() > 1e-12 {
                    return invalid(format!(
                        "bound_compare needs run.theta = 0.5, got {}",
                        self.config.theta
                    ));
                }
            }
            ExperimentKind::Kernels => {
                if self.k_list.is_empty() || self.k_list.contains(&0) {
                    return invalid("experiment.k_list must be a nonempty list of positive powers".into());
                }
                if self.config.a == self.config.b {
                    return invalid("kernels need a != b; the symbol vanishes for a = b".into());
                }
            }
        }
        Ok(())
    }
}

/// Parses a configuration document on top of [`ExperimentSpec::default`].
pub fn parse_config(text: &str) -> Result<ExperimentSpec, ConfigError> {
    parse_config_with_base(text, ExperimentSpec::default())
}

/// Parses a configuration document on top of `base`, e.g. a [`Preset`].
pub fn parse_config_with_base(text: &str, base: ExperimentSpec) -> Result<ExperimentSpec, ConfigError> {
    let table: Table = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    let mut entries = Vec::new();
    flatten("", &table, &mut entries);

    let mut spec = base;
    let mut horizons = None;
    let mut horizon = None;
    for (key, value) in &entries {
        let v = Field { key, value };
        match key.as_str() {
            "experiment.kind" => {
                spec.kind = match v.string()? {
                    "sweep_theta" => ExperimentKind::SweepTheta,
                    "bound_compare" => ExperimentKind::BoundCompare,
                    "kernels" => ExperimentKind::Kernels,
                    _ => return Err(v.expected("one of sweep_theta, bound_compare, kernels")),
                }
            }
            "experiment.theta_list" => spec.theta_list = v.floats()?,
            "experiment.k_list" => spec.k_list = v.counts()?,
            "experiment.time_samples" => spec.time_samples = v.count()?,
            "experiment.horizons" => horizons = Some(v.floats()?),
            "geometry.a" => spec.config.a = v.float()?,
            "geometry.b" => spec.config.b = v.float()?,
            "grid.dx" => spec.config.dx = v.float()?,
            "grid.dt" => spec.config.dt = v.float()?,
            "run.theta" => spec.config.theta = v.float()?,
            "run.T" => horizon = Some(v.float()?),
            "run.max_iter" => spec.config.max_iter = v.count()?,
            "run.tol" => spec.config.tol = v.float()?,
            "run.initial_guess" => {
                spec.config.initial_guess = match v.string()? {
                    "ramp" => InitialGuess::Ramp,
                    "zero" => InitialGuess::Zero,
                    _ => return Err(v.expected("one of ramp, zero")),
                }
            }
            "run.flux" => {
                spec.config.flux_scheme = match v.string()? {
                    "conservative" => FluxScheme::Conservative,
                    "one_sided" => FluxScheme::OneSided,
                    _ => return Err(v.expected("one of conservative, one_sided")),
                }
            }
            "problem.kind" => {
                spec.problem_kind = match v.string()? {
                    "model" => ProblemKind::Model,
                    "homogeneous" => ProblemKind::Homogeneous,
                    _ => return Err(v.expected("one of model, homogeneous")),
                };
                spec.config.problem = spec.problem_kind.data();
            }
            "output.path" => spec.output_path = Some(PathBuf::from(v.string()?)),
            _ => return Err(ConfigError::UnknownKey(key.clone())),
        }
    }
    if let Some(t) = horizon {
        spec.set_horizon(t);
    }
    if let Some(list) = horizons {
        spec.horizons = list;
    }
    if spec.horizons.is_empty() {
        return Err(ConfigError::Validation("experiment.horizons must not be empty".into()));
    }
    spec.validate()?;
    Ok(spec)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path, base: ExperimentSpec) -> Result<ExperimentSpec, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_with_base(&text, base)
}

fn flatten(prefix: &str, table: &Table, out: &mut Vec<(String, Value)>) {
    for (name, value) in table {
        let key = if prefix.is_empty() {
            name.clone()
        } else {
            format!("{prefix}.{name}")
        };
        match value {
            Value::Table(inner) => flatten(&key, inner, out),
            other => out.push((key, other.clone())),
        }
    }
}

struct Field<'a> {
    key: &'a str,
    value: &'a Value,
}

impl Field<'_> {
    fn expected(&self, expected: &'static str) -> ConfigError {
        ConfigError::Type {
            key: self.key.to_string(),
            expected,
        }
    }

    fn string(&self) -> Result<&str, ConfigError> {
        self.value.as_str().ok_or_else(|| self.expected("a string"))
    }

    fn float(&self) -> Result<f64, ConfigError> {
        as_float(self.value).ok_or_else(|| self.expected("a number"))
    }

    fn count(&self) -> Result<usize, ConfigError> {
        as_count(self.value).ok_or_else(|| self.expected("a non-negative integer"))
    }

    fn floats(&self) -> Result<Vec<f64>, ConfigError> {
        self.value
            .as_array()
            .and_then(|items| items.iter().map(as_float).collect())
            .ok_or_else(|| self.expected("an array of numbers"))
    }

    fn counts(&self) -> Result<Vec<usize>, ConfigError> {
        self.value
            .as_array()
            .and_then(|items| items.iter().map(as_count).collect())
            .ok_or_else(|| self.expected("an array of non-negative integers"))
    }
}

fn as_float(value: &Value) -> Option<f64> {
    match value {
        Value::Float(x) => Some(*x),
        Value::Integer(n) => Some(*n as f64),
        _ => None,
    }
}

fn as_count(value: &Value) -> Option<usize> {
    value.as_integer().and_then(|n| usize::try_from(n).ok())
}
