//! Power-law fits `I ∝ N^α` and their classification against the shot-noise
//! (`α = 1`) and Heisenberg (`α = 2`) limits.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Extra allowance beyond two standard errors when classifying an exponent.
pub const CLASSIFY_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    pub alpha: f64,
    pub alpha_stderr: f64,
    pub log_prefactor: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScalingClass {
    SnlOrBelow,
    SuperSnl,
    HeisenbergLike,
}

impl fmt::Display for ScalingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalingClass::SnlOrBelow => "SNL_OR_BELOW",
            ScalingClass::SuperSnl => "SUPER_SNL",
            ScalingClass::HeisenbergLike => "HEISENBERG_LIKE",
        })
    }
}

/// Ordinary least squares of `ln I` against `ln N`.
pub fn fit_scaling_exponent(points: &[(usize, f64)]) -> Result<ScalingFit> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InvalidFit(format!("need at least 3 points, got {n}")));
    }
    let mut sizes: Vec<usize> = points.iter().map(|p| p.0).collect();
    sizes.sort_unstable();
    if sizes.windows(2).any(|w| w[0] == w[1]) || sizes[0] == 0 {
        return Err(Error::InvalidFit("chain lengths must be distinct and positive".into()));
    }
    if let Some(&(size, qfi)) = points.iter().find(|p| !(p.1 > 0.0 && p.1.is_finite())) {
        return Err(Error::InvalidFit(format!("QFI at N = {size} is not positive: {qfi}")));
    }
    // sort so the result does not depend on input order
    let mut xy: Vec<(f64, f64)> =
        points.iter().map(|&(s, q)| ((s as f64).ln(), q.ln())).collect();
    xy.sort_by(|a, b| a.0.total_cmp(&b.0));

    let nf = n as f64;
    let xm = xy.iter().map(|p| p.0).sum::<f64>() / nf;
    let ym = xy.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = xy.iter().map(|p| (p.0 - xm).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - xm) * (p.1 - ym)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - ym).powi(2)).sum();
    let alpha = sxy / sxx;
    let log_prefactor = ym - alpha * xm;
    let ss_res: f64 = xy.iter().map(|p| (p.1 - log_prefactor - alpha * p.0).powi(2)).sum();
    let alpha_stderr = (ss_res / (nf - 2.0) / sxx).sqrt();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(ScalingFit { alpha, alpha_stderr, log_prefactor, r_squared, n_points: n })
}

pub fn classify(fit: &ScalingFit) -> ScalingClass {
    let slack = 2.0 * fit.alpha_stderr + CLASSIFY_MARGIN;
    if fit.alpha <= 1.0 + slack {
        ScalingClass::SnlOrBelow
    } else if fit.alpha >= 2.0 - slack {
        ScalingClass::HeisenbergLike
    } else {
        ScalingClass::SuperSnl
    }
}
