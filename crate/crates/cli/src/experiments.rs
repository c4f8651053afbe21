//! Experiment drivers. Each returns its tables plus any invariant violations.

use rand::Rng;
use rayon::prelude::*;

use qfi_core::freefermion::{eta_table, qfi_product_state_ff, quench_asymptote_closed, LambdaStar};
use qfi_core::{
    classify, fit_scaling_exponent, local_sensing_terms, realize_product_state, EtaFamily,
    ProductStateSpec, Result, SensingProblem,
};

use crate::config::{Engine, Experiment, ExperimentConfig};
use crate::output::{fmt_f64, Table};
use crate::random::{instance_rng, random_instance};

/// Tolerance on `bound_slack` for randomized bound checks.
pub const BOUND_SLACK_TOL: f64 = 1e-4;
/// ED vs free-fermion agreement, absolute or relative.
pub const CROSS_ENGINE_TOL: f64 = 1e-8;

#[derive(Debug, Default)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

pub fn execute(cfg: &ExperimentConfig, engine: Engine) -> Result<Outcome> {
    match cfg.experiment {
        Experiment::QfiTimeseries => timeseries(cfg),
        Experiment::ScalingSweep => scaling_sweep(cfg, engine),
        Experiment::Heatmap => heatmap(cfg),
        Experiment::EtaTable => eta(cfg),
        Experiment::Asymptote => asymptote(cfg),
        Experiment::BoundCheck => bound_check(cfg),
    }
}

fn product_state(cfg: &ExperimentConfig, n: usize) -> qfi_core::StateVector {
    realize_product_state(&ProductStateSpec::new(n, cfg.theta, cfg.phi))
}

/// Whether the uniform product state lies in the even-parity sector,
/// where the free-fermion engine is exact.
pub fn is_even_parity_state(theta: f64, n: usize) -> bool {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    s.abs() < 1e-15 || (c.abs() < 1e-15 && n.is_multiple_of(2))
}

fn timeseries(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.sizes()[0];
    let problem = SensingProblem::from_model(&cfg.model(n)?)?;
    let records = problem.verify_growth_bound(&product_state(cfg, n), &cfg.times())?;
    let mut table = Table::new("qfi_timeseries.csv", &["t", "qfi", "gamma", "sqrt_qfi_rate", "bound_slack"]);
    let mut out = Outcome::default();
    for r in &records {
        table.push(vec![fmt_f64(r.t), fmt_f64(r.qfi), fmt_f64(r.gamma), fmt_f64(r.sqrt_qfi_rate), fmt_f64(r.bound_slack)]);
        if !r.within_tolerance {
            out.violations.push(format!(
                "growth bound violated at t={}: slack {:.3e} below -{:.3e}",
                r.t, r.bound_slack, r.tol_rate
            ));
        }
    }
    out.tables.push(table);
    Ok(out)
}

struct SweepPoint {
    t: f64,
    n: usize,
    ed: Option<f64>,
    ff: Option<f64>,
}

fn scaling_sweep(cfg: &ExperimentConfig, engine: Engine) -> Result<Outcome> {
    let times = cfg.times();
    let sizes = cfg.sizes();
    let c = &cfg.couplings;
    // one job per N; each owns its eigendecomposition
    let per_n: Vec<Vec<SweepPoint>> = sizes
        .par_iter()
        .map(|&n| -> Result<Vec<SweepPoint>> {
            let ed = if engine.includes_ed() {
                let problem = SensingProblem::from_model(&cfg.model(n)?)?;
                let psi = product_state(cfg, n);
                Some(times.iter().map(|&t| problem.qfi(&psi, t)).collect::<Result<Vec<_>>>()?)
            } else {
                None
            };
            times
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    let ff = if engine.includes_free_fermion() {
                        let (j, l) = (c.j.unwrap_or_default(), c.lambda.unwrap_or_default());
                        Some(qfi_product_state_ff(j, l, t, n, cfg.theta, cfg.phi)?)
                    } else {
                        None
                    };
                    Ok(SweepPoint { t, n, ed: ed.as_ref().map(|v| v[i]), ff })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut points: Vec<SweepPoint> = per_n.into_iter().flatten().collect();
    points.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.n.cmp(&b.n)));

    let both = engine == Engine::Both;
    let mut header = vec!["t", "n", "qfi", "qfi_over_n", "engine"];
    if both {
        header.push("abs_delta_qfi");
    }
    let mut table = Table::new("qfi_scaling.csv", &header);
    let mut out = Outcome::default();
    for p in &points {
        let delta = match (p.ed, p.ff) {
            (Some(a), Some(b)) => Some((a - b).abs()),
            _ => None,
        };
        for (label, value) in [("ED", p.ed), ("FREE_FERMION", p.ff)] {
            let Some(q) = value else { continue };
            let mut row = vec![fmt_f64(p.t), p.n.to_string(), fmt_f64(q), fmt_f64(q / p.n as f64), label.to_string()];
            if let Some(d) = delta {
                row.push(fmt_f64(d));
            }
            table.push(row);
        }
        if let (Some(d), Some(a)) = (delta, p.ed) {
            if d > CROSS_ENGINE_TOL * a.abs().max(1.0) {
                let msg = format!("ED and FREE_FERMION differ by {d:.3e} at N={}, t={}", p.n, p.t);
                if is_even_parity_state(cfg.theta, p.n) {
                    out.violations.push(msg);
                } else {
                    out.notes.push(format!("{msg} (odd-parity component: free-fermion value is approximate)"));
                }
            }
        }
    }

    let mut fits = Table::new(
        "qfi_scaling_fit.csv",
        &["t", "engine", "alpha", "alpha_stderr", "log_prefactor", "r_squared", "n_points", "classification"],
    );
    for &t in &times {
        for (label, pick) in [("ED", 0), ("FREE_FERMION", 1)] {
            let data: Vec<(usize, f64)> = points
                .iter()
                .filter(|p| p.t == t)
                .filter_map(|p| if pick == 0 { p.ed } else { p.ff }.map(|q| (p.n, q)))
                .collect();
            if data.is_empty() {
                continue;
            }
            match fit_scaling_exponent(&data) {
                Ok(f) => fits.push(vec![
                    fmt_f64(t),
                    label.to_string(),
                    fmt_f64(f.alpha),
                    fmt_f64(f.alpha_stderr),
                    fmt_f64(f.log_prefactor),
                    fmt_f64(f.r_squared),
                    f.n_points.to_string(),
                    classify(&f).to_string(),
                ]),
                Err(e) => out.notes.push(format!("no {label} fit at t={t}: {e}")),
            }
        }
    }
    out.tables.push(table);
    out.tables.push(fits);
    Ok(out)
}

fn heatmap(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.sizes()[0];
    let model = cfg.model(n)?;
    let problem = SensingProblem::from_model(&model)?;
    let terms = local_sensing_terms(&model)?;
    let psi = product_state(cfg, n);
    let maps = cfg
        .times()
        .par_iter()
        .map(|&t| problem.covariance_map(&terms, &psi, t))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new("heatmap.csv", &["t", "j", "k", "cov"]);
    for m in &maps {
        for ((j, k), v) in m.matrix.indexed_iter() {
            table.push(vec![fmt_f64(m.t), (j + 1).to_string(), (k + 1).to_string(), fmt_f64(*v)]);
        }
    }
    Ok(Outcome { tables: vec![table], ..Outcome::default() })
}

fn eta(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.sizes()[0];
    let t = cfg.times()[0];
    let c = &cfg.couplings;
    let kernel = cfg.eta_kernel.unwrap_or_default();
    let table_data = eta_table(c.j.unwrap_or_default(), c.lambda.unwrap_or_default(), t, n, kernel)?;
    let mut table = Table::new("eta.csv", &["family", "i", "j", "eta"]);
    for f in EtaFamily::ALL {
        for (i, j, v) in table_data.entries(f) {
            table.push(vec![f.label().to_string(), (i + 1).to_string(), (j + 1).to_string(), fmt_f64(v)]);
        }
    }
    Ok(Outcome { tables: vec![table], ..Outcome::default() })
}

fn asymptote(cfg: &ExperimentConfig) -> Result<Outcome> {
    let c = &cfg.couplings;
    let q = qfi_core::QuenchSpec::new(
        c.j.unwrap_or_default(),
        c.lambda.unwrap_or_default(),
        c.lambda_star.map(|l| l.resolve()).unwrap_or(LambdaStar::Infinite),
    )?;
    let value = quench_asymptote_closed(&q)?;
    let star = match q.lambda_star {
        LambdaStar::Finite(v) => fmt_f64(v),
        LambdaStar::Infinite => "inf".to_string(),
    };
    let mut table = Table::new("asymptote.csv", &["J", "lambda", "lambda_star", "branch", "value"]);
    table.push(vec![fmt_f64(q.j), fmt_f64(q.lambda), star, q.branch()?.to_string(), fmt_f64(value)]);
    Ok(Outcome { tables: vec![table], ..Outcome::default() })
}

fn bound_check(cfg: &ExperimentConfig) -> Result<Outcome> {
    let sizes = cfg.sizes();
    let times = cfg.times();
    let seed = cfg.seed();
    let runs = (0..cfg.instances())
        .into_par_iter()
        .map(|index| {
            let mut rng = instance_rng(seed, index);
            let n = sizes[rng.random_range(0..sizes.len())];
            let inst = random_instance(n, &mut rng);
            let problem = SensingProblem::from_model(&inst.model)?;
            Ok((index, n, problem.verify_growth_bound(&inst.state(), &times)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(
        "bound_check.csv",
        &["instance", "n", "t", "qfi", "gamma", "sqrt_qfi_rate", "bound_slack"],
    );
    let mut out = Outcome::default();
    for (index, n, records) in &runs {
        for r in records {
            table.push(vec![
                index.to_string(),
                n.to_string(),
                fmt_f64(r.t),
                fmt_f64(r.qfi),
                fmt_f64(r.gamma),
                fmt_f64(r.sqrt_qfi_rate),
                fmt_f64(r.bound_slack),
            ]);
        }
        let worst = records.iter().map(|r| r.bound_slack).fold(f64::INFINITY, f64::min);
        if worst < -BOUND_SLACK_TOL {
            out.violations.push(format!("instance {index} (N={n}): bound_slack {worst:.3e} < -{BOUND_SLACK_TOL:e}"));
        }
    }
    out.tables.push(table);
    Ok(out)
}
