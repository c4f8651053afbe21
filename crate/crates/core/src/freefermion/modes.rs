use std::f64::consts::PI;

use num_complex::Complex64;

use super::check_chain;
use crate::kernel::g_imag;
use crate::Result;

/// One Bogoliubov mode of the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumMode {
    pub k: f64,
    /// `ε_k = 2√(J² + λ² - 2Jλ cos k)`.
    pub epsilon: f64,
    /// Angle with `sin θ_k = -2J sin k / ε_k`, `cos θ_k = 2(λ - J cos k)/ε_k`.
    pub theta_k: f64,
    pub sin_theta: f64,
    pub cos_theta: f64,
}

/// Antiperiodic grid `k = 2π(n + ½)/N`, `n = -N/2, …, N/2 - 1`.
pub fn momentum_grid(n: usize) -> Result<Vec<f64>> {
    check_chain(n)?;
    let half = (n / 2) as i64;
    Ok((-half..half).map(|m| 2.0 * PI * (m as f64 + 0.5) / n as f64).collect())
}

pub fn mode(j: f64, lambda: f64, k: f64) -> MomentumMode {
    let a = lambda - j * k.cos();
    let b = j * k.sin();
    let epsilon = 2.0 * a.hypot(b);
    let (sin_theta, cos_theta) = if epsilon > 0.0 {
        (-2.0 * b / epsilon, 2.0 * a / epsilon)
    } else {
        (0.0, 1.0)
    };
    MomentumMode { k, epsilon, theta_k: sin_theta.atan2(cos_theta), sin_theta, cos_theta }
}

/// Kernels `(𝒜, ℬ, 𝒟)` of the time-averaged generator `G(t)/t`.
pub fn abd_time_averaged(j: f64, lambda: f64, t: f64, k: f64) -> (Complex64, Complex64, Complex64) {
    let m = mode(j, lambda, k);
    let (s, c) = (m.sin_theta, m.cos_theta);
    let gp = g_imag(2.0 * m.epsilon * t);
    let gm = g_imag(-2.0 * m.epsilon * t);
    let osc = 0.5 * s * s * (gp + gm);
    let a = 1.0 + c * c + osc;
    let b = 1.0 - c * c - osc;
    let i = Complex64::i();
    let d = i * s * c * (0.5 * (gp + gm) - 1.0) + 0.5 * i * s * (gp - gm);
    (a, b, d)
}

/// Kernels `(A, B, D)` of the instantaneous Heisenberg operator `(∂_λH)^(H)(t)`.
pub fn abd_instantaneous(j: f64, lambda: f64, t: f64, k: f64) -> (Complex64, Complex64, Complex64) {
    let m = mode(j, lambda, k);
    let (s, c) = (m.sin_theta, m.cos_theta);
    let (sin2, cos2) = (2.0 * m.epsilon * t).sin_cos();
    let a = Complex64::new(1.0 + c * c + s * s * cos2, 0.0);
    let b = Complex64::new(1.0 - c * c - s * s * cos2, 0.0);
    let d = Complex64::new(-s * sin2, s * c * (cos2 - 1.0));
    (a, b, d)
}

/// `F̃(ℓ) = (1/N) Σ_k F(k) e^{ikℓ}`.
pub fn fourier_tilde(ks: &[f64], values: &[Complex64], ell: i64) -> Complex64 {
    let sum: Complex64 = ks
        .iter()
        .zip(values)
        .map(|(&k, &f)| f * Complex64::from_polar(1.0, k * ell as f64))
        .sum();
    sum / ks.len() as f64
}

/// Ground energy of the even-parity sector, `-Σ_k ε_k/2`.
pub fn ground_state_energy(j: f64, lambda: f64, n: usize) -> Result<f64> {
    Ok(-momentum_grid(n)?.iter().map(|&k| mode(j, lambda, k).epsilon).sum::<f64>() / 2.0)
}
