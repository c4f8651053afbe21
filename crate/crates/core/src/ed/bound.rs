//! Finite-difference check of `d√I/dt ≤ Γ(t)` on a user time grid.

use serde::Serialize;

/// Floor of the finite-difference tolerance on `bound_slack`.
pub const MIN_RATE_TOL: f64 = 1e-4;
/// Below this QFI the rate is taken from the series `√I ≈ Γ(0⁺) t`.
const QFI_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QfiRecord {
    pub t: f64,
    pub qfi: f64,
    pub gamma: f64,
    /// Finite-difference `d√I/dt`.
    pub sqrt_qfi_rate: f64,
    /// `gamma - sqrt_qfi_rate`.
    pub bound_slack: f64,
    /// `max(1e-4, C Δt²)` with `C` from third differences of `√I`.
    pub tol_rate: f64,
    pub within_tolerance: bool,
}

/// Second-order derivative of samples `f` on a strictly increasing grid `t`:
/// three-point central stencils inside, three-point one-sided at the ends.
pub fn central_rates(t: &[f64], f: &[f64]) -> Vec<f64> {
    let n = t.len();
    assert_eq!(n, f.len());
    match n {
        0 => return vec![],
        1 => return vec![0.0],
        2 => {
            let d = (f[1] - f[0]) / (t[1] - t[0]);
            return vec![d, d];
        }
        _ => {}
    }
    let mut out = Vec::with_capacity(n);
    let (h1, h2) = (t[1] - t[0], t[2] - t[1]);
    out.push(
        -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1]
            - h1 / (h2 * (h1 + h2)) * f[2],
    );
    for i in 1..n - 1 {
        let (h1, h2) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        out.push(
            -h2 / (h1 * (h1 + h2)) * f[i - 1]
                + (h2 - h1) / (h1 * h2) * f[i]
                + h1 / (h2 * (h1 + h2)) * f[i + 1],
        );
    }
    let (h1, h2) = (t[n - 2] - t[n - 3], t[n - 1] - t[n - 2]);
    out.push(
        h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2]
            + (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * f[n - 1],
    );
    out
}

/// `max |f'''|` from third divided differences; zero with fewer than four points.
fn third_derivative_bound(t: &[f64], f: &[f64]) -> f64 {
    let mut d = f.to_vec();
    for order in 1..=3 {
        d = (0..d.len().saturating_sub(1))
            .map(|i| (d[i + 1] - d[i]) / (t[i + order] - t[i]))
            .collect();
        if d.is_empty() {
            return 0.0;
        }
    }
    6.0 * d.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub(crate) fn assemble_records(t: &[f64], qfi: &[f64], gamma: &[f64]) -> Vec<QfiRecord> {
    let root: Vec<f64> = qfi.iter().map(|&i| i.max(0.0).sqrt()).collect();
    let rates = central_rates(t, &root);
    // three-point stencil errors are at most f''' h²/3
    let c = third_derivative_bound(t, &root) / 3.0;
    (0..t.len())
        .map(|i| {
            let sqrt_qfi_rate = if qfi[i] < QFI_ZERO { gamma[i] } else { rates[i] };
            let left = if i > 0 { t[i] - t[i - 1] } else { 0.0 };
            let right = if i + 1 < t.len() { t[i + 1] - t[i] } else { 0.0 };
            let h = left.max(right);
            let tol_rate = MIN_RATE_TOL.max(c * h * h);
            let bound_slack = gamma[i] - sqrt_qfi_rate;
            QfiRecord {
                t: t[i],
                qfi: qfi[i],
                gamma: gamma[i],
                sqrt_qfi_rate,
                bound_slack,
                tol_rate,
                within_tolerance: bound_slack >= -tol_rate,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_quadratics() {
        let t = [0.0, 0.1, 0.35, 0.4, 1.0];
        let f: Vec<f64> = t.iter().map(|x| 3.0 * x * x - x + 2.0).collect();
        for (x, d) in t.iter().zip(central_rates(&t, &f)) {
            assert!((d - (6.0 * x - 1.0)).abs() < 1e-12, "t={x}: {d}");
        }
    }

    #[test]
    fn third_difference_of_cubic() {
        let t = [0.0, 0.5, 0.7, 1.3, 2.0];
        let f: Vec<f64> = t.iter().map(|x| 2.0 * x * x * x).collect();
        assert!((third_derivative_bound(&t, &f) - 12.0).abs() < 1e-10);
        assert_eq!(third_derivative_bound(&t[..3], &f[..3]), 0.0);
    }

    #[test]
    fn zero_qfi_takes_gamma_as_rate() {
        let t = [0.0, 0.1, 0.2];
        let recs = assemble_records(&t, &[0.0, 0.04, 0.16], &[2.0, 2.0, 2.0]);
        assert_eq!(recs[0].sqrt_qfi_rate, 2.0);
        assert!(recs.iter().all(|r| r.bound_slack.abs() < 1e-12 && r.within_tolerance));
    }
}
