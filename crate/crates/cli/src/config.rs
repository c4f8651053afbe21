//! Experiment configuration: a single flat JSON document.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qfi_core::freefermion::{LambdaStar, FF_MAX_SITES};
use qfi_core::{
    Couplings, EtaKernel, ModelFamily, ModelSpec, Pauli, PauliString, QuenchSpec, MAX_ED_SITES,
};

/// Largest chain accepted for randomized bound checks.
pub const BOUND_CHECK_MAX_SITES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Experiment {
    QfiTimeseries,
    ScalingSweep,
    Heatmap,
    EtaTable,
    Asymptote,
    BoundCheck,
}

impl Experiment {
    /// Engine used when the config leaves `engine` unset.
    pub fn default_engine(self) -> Engine {
        match self {
            Experiment::EtaTable | Experiment::Asymptote => Engine::FreeFermion,
            _ => Engine::Ed,
        }
    }

    fn allowed_engines(self) -> &'static [Engine] {
        match self {
            Experiment::ScalingSweep => &[Engine::Ed, Engine::FreeFermion, Engine::Both],
            Experiment::EtaTable | Experiment::Asymptote => &[Engine::FreeFermion],
            _ => &[Engine::Ed],
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Experiment::QfiTimeseries => "QFI_TIMESERIES",
            Experiment::ScalingSweep => "SCALING_SWEEP",
            Experiment::Heatmap => "HEATMAP",
            Experiment::EtaTable => "ETA_TABLE",
            Experiment::Asymptote => "ASYMPTOTE",
            Experiment::BoundCheck => "BOUND_CHECK",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
#[value(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Engine {
    Ed,
    FreeFermion,
    Both,
}

impl Engine {
    pub fn includes_ed(self) -> bool {
        matches!(self, Engine::Ed | Engine::Both)
    }

    pub fn includes_free_fermion(self) -> bool {
        matches!(self, Engine::FreeFermion | Engine::Both)
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Ed => "ED",
            Engine::FreeFermion => "FREE_FERMION",
            Engine::Both => "BOTH",
        })
    }
}

/// `λ*` as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaStarConfig {
    Finite(f64),
    Named(InfinityTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfinityTag {
    #[serde(rename = "inf")]
    Inf,
}

impl LambdaStarConfig {
    pub fn resolve(self) -> LambdaStar {
        match self {
            LambdaStarConfig::Finite(v) => LambdaStar::Finite(v),
            LambdaStarConfig::Named(InfinityTag::Inf) => LambdaStar::Infinite,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingsConfig {
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<LambdaStarConfig>,
}

impl CouplingsConfig {
    fn model_couplings(&self) -> Couplings {
        Couplings {
            j: self.j,
            h: self.h,
            lambda: self.lambda,
            alpha_exponent: self.alpha_exponent,
        }
    }
}

/// A Pauli string as `{"factors": [[site, "X"], ...], "coefficient": c}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub factors: Vec<(usize, Pauli)>,
    pub coefficient: f64,
}

impl TermConfig {
    fn realize(&self, n_sites: usize) -> qfi_core::Result<PauliString> {
        PauliString::real(n_sites, self.factors.iter().copied(), self.coefficient)
    }
}

/// Time grid as an explicit list or `{"start", "stop", "num"}` inclusive linspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeGrid {
    List(Vec<f64>),
    Linspace(Linspace),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Linspace {
    pub start: f64,
    pub stop: f64,
    pub num: usize,
}

impl TimeGrid {
    pub fn points(&self) -> Vec<f64> {
        match self {
            TimeGrid::List(v) => v.clone(),
            TimeGrid::Linspace(l) => match l.num {
                0 => vec![],
                1 => vec![l.start],
                n => (0..n)
                    .map(|i| l.start + (l.stop - l.start) * i as f64 / (n - 1) as f64)
                    .collect(),
            },
        }
    }
}

fn default_theta() -> f64 {
    std::f64::consts::FRAC_PI_2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<ModelFamily>,
    #[serde(default)]
    pub couplings: CouplingsConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub custom_terms: Vec<TermConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensing_terms: Option<Vec<TermConfig>>,
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<TimeGrid>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub n_grid: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<Engine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_kernel: Option<EtaKernel>,
}

/// One violated rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub field: String,
    pub rule: String,
}

impl Diagnostic {
    fn new(field: &str, rule: impl Into<String>) -> Self {
        Self { field: field.to_string(), rule: rule.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed config {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
}

pub fn load(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| ConfigError::Parse { path: path.to_path_buf(), source })
}

pub fn parse(text: &str) -> serde_json::Result<ExperimentConfig> {
    serde_json::from_str(text)
}

/// Default grid for randomized bound checks: 50 points on `[0, 0.2]`.
pub fn default_bound_grid() -> Vec<f64> {
    TimeGrid::Linspace(Linspace { start: 0.0, stop: 0.2, num: 50 }).points()
}

impl ExperimentConfig {
    pub fn engine(&self) -> Engine {
        self.engine.unwrap_or_else(|| self.experiment.default_engine())
    }

    pub fn times(&self) -> Vec<f64> {
        match (&self.t_grid, self.experiment) {
            (Some(g), _) => g.points(),
            (None, Experiment::BoundCheck) => default_bound_grid(),
            (None, _) => vec![],
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        if self.n_grid.is_empty() && self.experiment == Experiment::BoundCheck {
            return (2..=BOUND_CHECK_MAX_SITES).collect();
        }
        self.n_grid.clone()
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("results"))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn instances(&self) -> usize {
        self.instances.unwrap_or(100)
    }

    /// Model at chain length `n`.
    pub fn model(&self, n: usize) -> qfi_core::Result<ModelSpec> {
        let family = self.family.unwrap_or(ModelFamily::TfiPeriodic);
        let mut spec = ModelSpec::new(family, n, self.couplings.model_couplings());
        spec.custom_terms = self.custom_terms.iter().map(|t| t.realize(n)).collect::<Result<_, _>>()?;
        spec.sensing_terms = match &self.sensing_terms {
            Some(s) => Some(s.iter().map(|t| t.realize(n)).collect::<Result<_, _>>()?),
            None => None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn quench(&self) -> Option<QuenchSpec> {
        let c = &self.couplings;
        QuenchSpec::new(c.j?, c.lambda?, c.lambda_star?.resolve()).ok()
    }

    /// Every violated rule; empty iff `run` accepts the config.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut d = Vec::new();
        let exp = self.experiment;
        let engine = self.engine();

        if !exp.allowed_engines().contains(&engine) {
            d.push(Diagnostic::new("engine", format!("{exp} does not support engine {engine}")));
        }
        if !self.theta.is_finite() || !self.phi.is_finite() {
            d.push(Diagnostic::new("theta", "theta and phi must be finite"));
        }

        let only_for = |d: &mut Vec<Diagnostic>, set: bool, field: &str, allowed: Experiment| {
            if set && exp != allowed {
                d.push(Diagnostic::new(field, format!("only allowed for {allowed}")));
            }
        };
        only_for(&mut d, self.seed.is_some(), "seed", Experiment::BoundCheck);
        only_for(&mut d, self.instances.is_some(), "instances", Experiment::BoundCheck);
        only_for(&mut d, self.eta_kernel.is_some(), "eta_kernel", Experiment::EtaTable);
        only_for(&mut d, self.couplings.lambda_star.is_some(), "couplings.lambda_star", Experiment::Asymptote);

        match exp {
            Experiment::Asymptote => self.validate_asymptote(&mut d),
            Experiment::BoundCheck => self.validate_bound_check(&mut d),
            _ => self.validate_model_run(&mut d, engine),
        }
        d
    }

    fn validate_times(&self, d: &mut Vec<Diagnostic>, strictly_increasing: bool) {
        let t = self.times();
        if t.is_empty() {
            d.push(Diagnostic::new("t_grid", "must contain at least one time"));
        } else if t.iter().any(|x| !x.is_finite() || *x < 0.0) {
            d.push(Diagnostic::new("t_grid", "times must be finite and non-negative"));
        } else if strictly_increasing && t.windows(2).any(|w| w[1] <= w[0]) {
            d.push(Diagnostic::new("t_grid", "times must be strictly increasing"));
        }
    }

    fn validate_model_run(&self, d: &mut Vec<Diagnostic>, engine: Engine) {
        let exp = self.experiment;
        if self.family.is_none() {
            d.push(Diagnostic::new("family", format!("required for {exp}")));
        }
        let family = self.family.unwrap_or(ModelFamily::TfiPeriodic);
        if family != ModelFamily::Custom {
            if !self.custom_terms.is_empty() {
                d.push(Diagnostic::new("custom_terms", "only allowed for family CUSTOM"));
            }
            if self.sensing_terms.is_some() {
                d.push(Diagnostic::new("sensing_terms", "only allowed for family CUSTOM"));
            }
        }
        if engine.includes_free_fermion() && family != ModelFamily::TfiPeriodic {
            d.push(Diagnostic::new(
                "engine",
                format!("FREE_FERMION requires family TFI_PERIODIC, got {family}"),
            ));
        }
        if exp == Experiment::EtaTable && !self.t_grid.as_ref().is_some_and(|g| g.points().len() == 1) {
            d.push(Diagnostic::new("t_grid", "ETA_TABLE takes exactly one time"));
        }
        self.validate_times(d, exp == Experiment::QfiTimeseries);

        let sizes = self.sizes();
        if sizes.is_empty() {
            d.push(Diagnostic::new("n_grid", "must contain at least one size"));
        }
        let single = matches!(exp, Experiment::QfiTimeseries | Experiment::Heatmap | Experiment::EtaTable);
        if single && sizes.len() > 1 {
            d.push(Diagnostic::new("n_grid", format!("{exp} takes exactly one size")));
        }
        let mut seen = std::collections::BTreeSet::new();
        if sizes.iter().any(|n| !seen.insert(*n)) {
            d.push(Diagnostic::new("n_grid", "sizes must be distinct"));
        }
        if engine.includes_ed() && sizes.iter().any(|&n| n > MAX_ED_SITES) {
            d.push(Diagnostic::new("n_grid", format!("entries must be <= {MAX_ED_SITES} with the ED engine")));
        }
        if engine.includes_free_fermion()
            && sizes.iter().any(|&n| n < 4 || !n.is_multiple_of(2) || n > FF_MAX_SITES)
        {
            d.push(Diagnostic::new(
                "n_grid",
                format!("FREE_FERMION requires even sizes in [4, {FF_MAX_SITES}]"),
            ));
        }
        if exp == Experiment::ScalingSweep && sizes.len() < 3 {
            d.push(Diagnostic::new("n_grid", "SCALING_SWEEP needs at least 3 sizes for the fit"));
        }
        // model rules are checked once, at the smallest size, to avoid duplicates
        if let Some(&n) = sizes.iter().filter(|&&n| n > 0).min() {
            if let Err(e) = self.model(n) {
                d.push(Diagnostic::new("couplings", e.to_string()));
            }
        }
        if sizes.contains(&0) {
            d.push(Diagnostic::new("n_grid", "sizes must be positive"));
        }
    }

    fn validate_asymptote(&self, d: &mut Vec<Diagnostic>) {
        if self.family.is_some_and(|f| f != ModelFamily::TfiPeriodic) {
            d.push(Diagnostic::new("family", "ASYMPTOTE requires TFI_PERIODIC"));
        }
        let c = &self.couplings;
        match (c.j, c.lambda, c.lambda_star) {
            (Some(j), Some(l), Some(ls)) => {
                if let Err(e) = QuenchSpec::new(j, l, ls.resolve()) {
                    d.push(Diagnostic::new("couplings", e.to_string()));
                }
            }
            _ => d.push(Diagnostic::new("couplings", "ASYMPTOTE requires J, lambda and lambda_star")),
        }
        for (set, field) in [
            (self.t_grid.is_some(), "t_grid"),
            (!self.n_grid.is_empty(), "n_grid"),
            (!self.custom_terms.is_empty(), "custom_terms"),
            (self.sensing_terms.is_some(), "sensing_terms"),
        ] {
            if set {
                d.push(Diagnostic::new(field, "not used by ASYMPTOTE"));
            }
        }
    }

    fn validate_bound_check(&self, d: &mut Vec<Diagnostic>) {
        for (set, field) in [
            (self.family.is_some(), "family"),
            (self.couplings != CouplingsConfig::default(), "couplings"),
            (!self.custom_terms.is_empty(), "custom_terms"),
            (self.sensing_terms.is_some(), "sensing_terms"),
        ] {
            if set {
                d.push(Diagnostic::new(field, "BOUND_CHECK draws random models; remove this key"));
            }
        }
        if self.instances() == 0 {
            d.push(Diagnostic::new("instances", "must be positive"));
        }
        self.validate_times(d, true);
        let sizes = self.sizes();
        if sizes.is_empty() || sizes.iter().any(|&n| !(2..=BOUND_CHECK_MAX_SITES).contains(&n)) {
            d.push(Diagnostic::new(
                "n_grid",
                format!("BOUND_CHECK sizes must lie in [2, {BOUND_CHECK_MAX_SITES}]"),
            ));
        }
    }
}
