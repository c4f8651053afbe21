//! Configuration-driven experiment runner for `qfi-core`.
//!
//! A run reads one JSON [`ExperimentConfig`], validates it, executes the
//! experiment on a rayon pool and writes CSV tables plus `manifest.json`.

pub mod config;
pub mod experiments;
pub mod output;
pub mod presets;
pub mod random;

use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub use config::{Diagnostic, Engine, Experiment, ExperimentConfig};
pub use output::Table;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for an invalid or unreadable config.
pub const EXIT_VALIDATION: i32 = 1;
/// Exit status when a numerical invariant fails.
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub output_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub engine: Option<Engine>,
    pub quiet: bool,
}

#[derive(Debug)]
pub struct RunReport {
    pub output_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub tables: Vec<Table>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    pub wall_time_seconds: f64,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_INVARIANT
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid config:\n{}", .0.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n"))]
    Validation(Vec<Diagnostic>),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] qfi_core::Error),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot build thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Numerical(_) => EXIT_INVARIANT,
            _ => EXIT_VALIDATION,
        }
    }
}

/// Applies command-line overrides to a config.
pub fn resolve(mut cfg: ExperimentConfig, opts: &RunOptions) -> ExperimentConfig {
    if let Some(e) = opts.engine {
        cfg.engine = Some(e);
    }
    if let Some(d) = &opts.output_dir {
        cfg.output_dir = Some(d.clone());
    }
    if cfg.engine.is_none() {
        cfg.engine = Some(cfg.engine());
    }
    cfg
}

/// Validates, computes and writes one experiment.
pub fn run(cfg: ExperimentConfig, opts: &RunOptions) -> Result<RunReport, RunError> {
    let cfg = resolve(cfg, opts);
    let diagnostics = cfg.validate();
    if !diagnostics.is_empty() {
        return Err(RunError::Validation(diagnostics));
    }
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let clock = Instant::now();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let engine = cfg.engine();
    if !opts.quiet {
        eprintln!("[qfi] {} with engine {engine} on {} threads", cfg.experiment, pool.current_num_threads());
    }
    let outcome = pool.install(|| experiments::execute(&cfg, engine))?;

    let dir = cfg.output_dir();
    std::fs::create_dir_all(&dir)?;
    let mut files = outcome.tables.iter().map(|t| t.write(&dir)).collect::<Result<Vec<_>, _>>()?;
    let wall_time_seconds = clock.elapsed().as_secs_f64();
    let manifest = output::Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: &cfg,
        engine: engine.to_string(),
        rng: random::RNG_NAME,
        threads: pool.current_num_threads(),
        started_unix_seconds: started,
        wall_time_seconds,
        files: outcome.tables.iter().map(|t| t.file_name.to_string()).collect(),
        invariant_violations: &outcome.violations,
    };
    files.push(manifest.write(&dir)?);

    if !opts.quiet {
        for n in &outcome.notes {
            eprintln!("[qfi] note: {n}");
        }
        for v in &outcome.violations {
            eprintln!("[qfi] INVARIANT VIOLATION: {v}");
        }
        eprintln!("[qfi] wrote {} files to {} in {wall_time_seconds:.2} s", files.len(), dir.display());
    }
    Ok(RunReport {
        output_dir: dir,
        files,
        tables: outcome.tables,
        violations: outcome.violations,
        notes: outcome.notes,
        wall_time_seconds,
    })
}
