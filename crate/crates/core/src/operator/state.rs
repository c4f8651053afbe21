use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Complex amplitudes in the computational basis.
pub type StateVector = Array1<Complex64>;

/// Spin-coherent product state `⊗_i [cos(θ/2)|↑⟩ + sin(θ/2) e^{iφ}|↓⟩]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductStateSpec {
    pub n_sites: usize,
    pub theta: f64,
    pub phi: f64,
}

impl ProductStateSpec {
    pub fn new(n_sites: usize, theta: f64, phi: f64) -> Self {
        Self { n_sites, theta, phi }
    }

    /// Single-site spinor `(⟨↑|s⟩, ⟨↓|s⟩)`.
    pub fn spinor(&self) -> [Complex64; 2] {
        spinor(self.theta, self.phi)
    }
}

pub(crate) fn spinor(theta: f64, phi: f64) -> [Complex64; 2] {
    [
        Complex64::new((0.5 * theta).cos(), 0.0),
        Complex64::from_polar((0.5 * theta).sin(), phi),
    ]
}

pub fn realize_product_state(s: &ProductStateSpec) -> StateVector {
    let [up, down] = s.spinor();
    let n = s.n_sites;
    // amplitude depends only on the number of down spins
    let powers: Vec<Complex64> =
        (0..=n).map(|k| up.powu((n - k) as u32) * down.powu(k as u32)).collect();
    Array1::from_shape_fn(1 << n, |b| powers[b.count_ones() as usize])
}

/// Product state with its own `(θ_i, φ_i)` on every site, site 0 first.
pub fn realize_site_product_state(angles: &[(f64, f64)]) -> StateVector {
    let mut psi = Array1::from_elem(1, Complex64::new(1.0, 0.0));
    for &(theta, phi) in angles {
        let [up, down] = spinor(theta, phi);
        let mut next = Array1::zeros(psi.len() * 2);
        for (b, &a) in psi.iter().enumerate() {
            next[2 * b] = a * up;
            next[2 * b + 1] = a * down;
        }
        psi = next;
    }
    psi
}

/// `|‖ψ‖ - 1|`.
pub fn state_norm_deviation(psi: &StateVector) -> f64 {
    (psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs()
}
