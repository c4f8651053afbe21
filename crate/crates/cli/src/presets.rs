//! Built-in scaling-sweep configurations.
//!
//! Couplings: TFI J=2, λ=5; chaotic Ising J=h=λ=1; long-range J=1, λ=0.5,
//! α=3; φ=0 throughout. The times and initial angles are choices.

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use qfi_core::ModelFamily;

use crate::config::{CouplingsConfig, Engine, Experiment, ExperimentConfig, TimeGrid};

pub const EARLY_T: f64 = 0.5;
pub const LATE_T: f64 = 5e4;

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: ExperimentConfig,
}

fn sweep(name: &str, family: ModelFamily, couplings: CouplingsConfig, theta: f64, t: f64) -> ExperimentConfig {
    ExperimentConfig {
        experiment: Experiment::ScalingSweep,
        family: Some(family),
        couplings,
        custom_terms: vec![],
        sensing_terms: None,
        theta,
        phi: 0.0,
        t_grid: Some(TimeGrid::List(vec![t])),
        n_grid: vec![4, 5, 6, 7, 8, 9, 10, 11, 12],
        engine: Some(Engine::Ed),
        output_dir: Some(PathBuf::from("results").join(name)),
        seed: None,
        instances: None,
        eta_kernel: None,
    }
}

fn tfi() -> CouplingsConfig {
    CouplingsConfig { j: Some(2.0), lambda: Some(5.0), ..Default::default() }
}

fn chaotic() -> CouplingsConfig {
    CouplingsConfig { j: Some(1.0), h: Some(1.0), lambda: Some(1.0), ..Default::default() }
}

fn long_range() -> CouplingsConfig {
    CouplingsConfig { j: Some(1.0), lambda: Some(0.5), alpha_exponent: Some(3.0), ..Default::default() }
}

pub fn all() -> Vec<Preset> {
    vec![
        Preset {
            name: "fig2c",
            description: "TFI J=2, lambda=5, theta=pi/2, phi=0; QFI vs N at early time t=0.5",
            config: sweep("fig2c", ModelFamily::TfiPeriodic, tfi(), FRAC_PI_2, EARLY_T),
        },
        Preset {
            name: "fig2d",
            description: "TFI J=2, lambda=5, theta=pi/2, phi=0; QFI vs N at late time t=5e4",
            config: sweep("fig2d", ModelFamily::TfiPeriodic, tfi(), FRAC_PI_2, LATE_T),
        },
        Preset {
            name: "fig3c",
            description: "chaotic Ising J=h=lambda=1, theta=pi/2; QFI vs N at early time t=0.5",
            config: sweep("fig3c", ModelFamily::ChaoticIsingOpen, chaotic(), FRAC_PI_2, EARLY_T),
        },
        Preset {
            name: "fig3d",
            description: "chaotic Ising J=h=lambda=1, theta=pi/2; QFI vs N at late time t=5e4",
            config: sweep("fig3d", ModelFamily::ChaoticIsingOpen, chaotic(), FRAC_PI_2, LATE_T),
        },
        Preset {
            name: "fig3g",
            description: "long-range Ising J=1, lambda=0.5, alpha=3, theta=0; QFI vs N at early time t=0.5",
            config: sweep("fig3g", ModelFamily::LongRangeIsing, long_range(), 0.0, EARLY_T),
        },
        Preset {
            name: "fig3h",
            description: "long-range Ising J=1, lambda=0.5, alpha=3, theta=0; QFI vs N at late time t=5e4",
            config: sweep("fig3h", ModelFamily::LongRangeIsing, long_range(), 0.0, LATE_T),
        },
    ]
}

pub fn find(name: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.name == name)
}
