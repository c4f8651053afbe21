use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::Serialize;

use super::eigen::{eigendecompose, EigenDecomposition, EigenbasisOperator};
use crate::kernel::g_imag;
use crate::operator::{
    build_hamiltonian, realize_product_state, state_norm_deviation, ModelSpec, ProductStateSpec,
    SparseOperator, StateVector,
};
use crate::{Error, Result};

/// Largest accepted deviation of `‖ψ‖` from 1.
pub const NORM_TOL: f64 = 1e-8;
/// Agreement required between the Heisenberg and Schrödinger evaluations of Γ.
pub const TWO_FORM_TOL: f64 = 1e-10;
/// Largest `|arg⟨Φ̇_0|Φ_0⟩|` accepted as a real, positive overlap.
pub const PHASE_TOL: f64 = 1e-6;
/// QFI values down to `-QFI_FLOOR` are rounding noise and clamp to zero.
const QFI_FLOOR: f64 = 1e-9;

/// Both evaluations of the growth-rate bound `Γ(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaEval {
    /// `2 √Var[(∂_λH)^(H)(t)]` over `ψ_0`.
    pub heisenberg: f64,
    /// `2 √Var[∂_λH]` over `U(t) ψ_0`.
    pub schrodinger: f64,
}

/// Symmetrized covariances `½⟨{h_j^(H), h_k^(H)}⟩ - ⟨h_j^(H)⟩⟨h_k^(H)⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMap {
    pub t: f64,
    pub matrix: Array2<f64>,
}

impl CovarianceMap {
    /// `4 Σ_{jk} Cov_jk`, which equals `Γ(t)²` when the terms sum to `∂_λH`.
    pub fn gamma_squared(&self) -> f64 {
        4.0 * self.matrix.sum()
    }

    /// `|Cov_{0k}| / Cov_{00}` as a function of `k`.
    pub fn profile_from_first_site(&self) -> Vec<f64> {
        let d = self.matrix[[0, 0]];
        self.matrix.row(0).iter().map(|c| c.abs() / d).collect()
    }
}

/// Departure from the saturation condition `c(t)|Φ̇_0⟩ = |Φ_0⟩`, `c ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaturationResidual {
    /// `1 - |⟨Φ̇_0|Φ_0⟩|² / (‖Φ̇_0‖² ‖Φ_0‖²)`, zero iff the vectors are parallel.
    pub collinearity: f64,
    /// `⟨Φ̇_0|Φ_0⟩` is real and non-negative.
    pub phase_ok: bool,
}

impl SaturationResidual {
    pub fn saturated(&self, tol: f64) -> bool {
        self.collinearity <= tol && self.phase_ok
    }
}

/// A diagonalized `H_λ` together with `∂_λH_λ`, ready for time evaluations.
#[derive(Debug, Clone)]
pub struct SensingProblem {
    eig: EigenDecomposition,
    dh: SparseOperator,
    dh_eig: EigenbasisOperator,
}

fn check_norm(psi: &StateVector, dim: usize) -> Result<()> {
    if psi.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: psi.len() });
    }
    let deviation = state_norm_deviation(psi);
    if deviation > NORM_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

fn dot(a: &Array1<Complex64>, b: &Array1<Complex64>) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `(⟨A⟩, (A - ⟨A⟩)ψ)` given `ψ` and `Aψ`.
fn centered(psi: &Array1<Complex64>, a_psi: &Array1<Complex64>) -> (Complex64, Array1<Complex64>) {
    let mean = dot(psi, a_psi);
    let mut r = a_psi.clone();
    r.scaled_add(-mean, psi);
    (mean, r)
}

/// `Var[A] = ‖(A - ⟨A⟩)ψ‖²`, the form without cancellation.
fn variance(psi: &Array1<Complex64>, a_psi: &Array1<Complex64>) -> f64 {
    let (_, r) = centered(psi, a_psi);
    r.iter().map(|z| z.norm_sqr()).sum()
}

fn clamp_qfi(v: f64) -> f64 {
    if (-QFI_FLOOR..0.0).contains(&v) { 0.0 } else { v }
}

/// `I = 4 Var[G]` for an explicit generator.
pub fn qfi(g: &SparseOperator, psi: &StateVector) -> Result<f64> {
    check_norm(psi, g.dim())?;
    Ok(clamp_qfi(4.0 * variance(psi, &g.matvec(psi.view()))))
}

impl SensingProblem {
    pub fn new(eig: EigenDecomposition, dh: SparseOperator) -> Result<Self> {
        if dh.dim() != eig.dim() {
            return Err(Error::DimensionMismatch { expected: eig.dim(), got: dh.dim() });
        }
        let deviation = dh.hermiticity_deviation();
        if deviation >= crate::operator::HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let dh_eig = eig.operator_to_eigenbasis(&dh);
        Ok(Self { eig, dh, dh_eig })
    }

    pub fn from_model(m: &ModelSpec) -> Result<Self> {
        let (h, dh) = build_hamiltonian(m)?;
        Self::new(eigendecompose(&h)?, dh)
    }

    pub fn eig(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn dh(&self) -> &SparseOperator {
        &self.dh
    }

    pub fn dh_eigenbasis(&self) -> &EigenbasisOperator {
        &self.dh_eig
    }

    pub fn n_sites(&self) -> usize {
        self.eig.n_sites()
    }

    fn amplitudes(&self, psi: &StateVector) -> Result<Array1<Complex64>> {
        check_norm(psi, self.eig.dim())?;
        Ok(self.eig.to_eigenbasis(psi))
    }

    fn liouvillian(&self, m: usize, n: usize) -> f64 {
        let e = self.eig.energies();
        e[m] - e[n]
    }

    /// `t g(i L_mn t)`, or `t` on the degenerate branch `|L_mn| ≤ tol_deg`.
    fn generator_kernel(&self, m: usize, n: usize, t: f64) -> Complex64 {
        let l = self.liouvillian(m, n);
        if l.abs() <= self.eig.tol_deg() {
            Complex64::new(t, 0.0)
        } else {
            t * g_imag(l * t)
        }
    }

    /// `G(t)` in the eigenbasis of `H`.
    pub fn generator_eigenbasis(&self, t: f64) -> Result<Array2<Complex64>> {
        check_time(t)?;
        let dim = self.eig.dim();
        Ok(Array2::from_shape_fn((dim, dim), |(m, n)| {
            self.dh_eig.get(m, n) * self.generator_kernel(m, n, t)
        }))
    }

    /// `G(t) = ∫_0^t (∂_λH)^(H)(τ) dτ` in the computational basis.
    pub fn generator(&self, t: f64) -> Result<SparseOperator> {
        let dense = self.eig.eigenbasis_to_dense(&self.generator_eigenbasis(t)?);
        Ok(SparseOperator::from_dense(self.n_sites(), &dense))
    }

    fn generator_apply(&self, c: &Array1<Complex64>, t: f64) -> Array1<Complex64> {
        self.dh_eig.kernel_matvec(c, |m, n| self.generator_kernel(m, n, t))
    }

    /// `(∂_λH)^(H)(t) c` in the eigenbasis: `e^{iE_m t} Σ_n X_mn e^{-iE_n t} c_n`.
    fn heisenberg_apply(&self, c: &Array1<Complex64>, t: f64) -> Array1<Complex64> {
        let e = self.eig.energies();
        let rotated = Array1::from_shape_fn(c.len(), |n| Complex64::from_polar(1.0, -e[n] * t) * c[n]);
        let mut y = self.dh_eig.matvec(&rotated);
        for (m, y) in y.iter_mut().enumerate() {
            *y *= Complex64::from_polar(1.0, e[m] * t);
        }
        y
    }

    /// `U(t)ψ = V e^{-iEt} V†ψ`.
    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        let c = self.amplitudes(psi)?;
        Ok(self.evolve_amplitudes(&c, t))
    }

    fn evolve_amplitudes(&self, c: &Array1<Complex64>, t: f64) -> StateVector {
        let e = self.eig.energies();
        let ct = Array1::from_shape_fn(c.len(), |m| Complex64::from_polar(1.0, -e[m] * t) * c[m]);
        self.eig.from_eigenbasis(&ct)
    }

    /// `I(t) = 4 Var[G(t)]` over `ψ`.
    pub fn qfi(&self, psi: &StateVector, t: f64) -> Result<f64> {
        check_time(t)?;
        let c = self.amplitudes(psi)?;
        Ok(self.qfi_amplitudes(&c, t))
    }

    fn qfi_amplitudes(&self, c: &Array1<Complex64>, t: f64) -> f64 {
        clamp_qfi(4.0 * variance(c, &self.generator_apply(c, t)))
    }

    /// Γ(t) from the Heisenberg-picture derivative and from the evolved state.
    pub fn gamma_forms(&self, psi: &StateVector, t: f64) -> Result<GammaEval> {
        check_time(t)?;
        let c = self.amplitudes(psi)?;
        Ok(self.gamma_forms_amplitudes(&c, t))
    }

    fn gamma_forms_amplitudes(&self, c: &Array1<Complex64>, t: f64) -> GammaEval {
        let heisenberg = 2.0 * variance(c, &self.heisenberg_apply(c, t)).sqrt();
        let psi_t = self.evolve_amplitudes(c, t);
        let schrodinger = 2.0 * variance(&psi_t, &self.dh.matvec(psi_t.view())).sqrt();
        GammaEval { heisenberg, schrodinger }
    }

    fn checked_gamma(g: GammaEval) -> Result<f64> {
        if (g.heisenberg - g.schrodinger).abs() > TWO_FORM_TOL * g.heisenberg.max(1.0) {
            return Err(Error::UnitarityViolation {
                heisenberg: g.heisenberg,
                schrodinger: g.schrodinger,
            });
        }
        Ok(g.heisenberg)
    }

    /// `Γ(t) = 2 √Var[(∂_λH)^(H)(t)]`, cross-checked against the evolved-state form.
    pub fn gamma_rate(&self, psi: &StateVector, t: f64) -> Result<f64> {
        Self::checked_gamma(self.gamma_forms(psi, t)?)
    }

    /// QFI, Γ and the finite-difference rate `d√I/dt` on a time grid.
    pub fn verify_growth_bound(
        &self,
        psi: &StateVector,
        t_grid: &[f64],
    ) -> Result<Vec<super::QfiRecord>> {
        if t_grid.is_empty()
            || t_grid[0] < 0.0
            || t_grid.windows(2).any(|w| w[1] <= w[0])
            || t_grid.iter().any(|t| !t.is_finite())
        {
            return Err(Error::InvalidTimeGrid);
        }
        let c = self.amplitudes(psi)?;
        let mut qfi = Vec::with_capacity(t_grid.len());
        let mut gamma = Vec::with_capacity(t_grid.len());
        for &t in t_grid {
            qfi.push(self.qfi_amplitudes(&c, t));
            gamma.push(Self::checked_gamma(self.gamma_forms_amplitudes(&c, t))?);
        }
        Ok(super::bound::assemble_records(t_grid, &qfi, &gamma))
    }

    /// Covariance matrix of the Heisenberg-evolved local terms.
    ///
    /// Evaluated on `U(t)ψ`, where `⟨h_j^(H) h_k^(H)⟩_ψ = ⟨h_j h_k⟩_{U(t)ψ}`.
    /// When the terms sum to `∂_λH`, `4 Σ Cov = Γ²` is checked to `1e-8`.
    pub fn covariance_map(
        &self,
        terms: &[SparseOperator],
        psi: &StateVector,
        t: f64,
    ) -> Result<CovarianceMap> {
        check_time(t)?;
        let c = self.amplitudes(psi)?;
        let psi_t = self.evolve_amplitudes(&c, t);
        let residuals: Vec<Array1<Complex64>> = terms
            .iter()
            .map(|h| centered(&psi_t, &h.matvec(psi_t.view())).1)
            .collect();
        let n = terms.len();
        let mut matrix = Array2::zeros((n, n));
        for j in 0..n {
            for k in j..n {
                // ½⟨{A,B}⟩ - ⟨A⟩⟨B⟩ = Re⟨(A-⟨A⟩)ψ|(B-⟨B⟩)ψ⟩ for Hermitian A, B
                let v = dot(&residuals[j], &residuals[k]).re;
                matrix[[j, k]] = v;
                matrix[[k, j]] = v;
            }
        }
        let map = CovarianceMap { t, matrix };

        let sum: SparseOperator = terms.iter().cloned().sum();
        if (&sum - &self.dh).max_abs() < 1e-12 {
            let gamma = Self::checked_gamma(self.gamma_forms_amplitudes(&c, t))?;
            let (lhs, rhs) = (map.gamma_squared(), gamma * gamma);
            if (lhs - rhs).abs() > 1e-8 * rhs.max(1.0) {
                return Err(Error::CovarianceInconsistent { four_sum: lhs, gamma_squared: rhs });
            }
        }
        Ok(map)
    }

    /// `lim_{t→∞} I(t)/t²`: 4 Var of `∂_λH` projected onto the Liouvillian kernel.
    pub fn long_time_qfi_density(&self, psi: &StateVector) -> Result<f64> {
        let c = self.amplitudes(psi)?;
        let e = self.eig.energies();
        let tol = self.eig.tol_deg();
        let dim = e.len();
        let mut y = Array1::zeros(dim);
        for m in 0..dim {
            let lo = e.as_slice().unwrap().partition_point(|&x| x < e[m] - tol);
            let mut acc = Complex64::new(0.0, 0.0);
            for n in lo..dim {
                if e[n] > e[m] + tol {
                    break;
                }
                acc += self.dh_eig.get(m, n) * c[n];
            }
            y[m] = acc;
        }
        Ok(clamp_qfi(4.0 * variance(&c, &y)))
    }

    /// Collinearity of `Φ_0 = (G - ⟨G⟩)ψ` and `Φ̇_0 = ((∂_λH)^(H) - ⟨·⟩)ψ`.
    ///
    /// Returns `(0, true)` when `Φ_0 = 0`, the `t → 0` convention.
    pub fn saturation_residual(&self, psi: &StateVector, t: f64) -> Result<SaturationResidual> {
        check_time(t)?;
        let c = self.amplitudes(psi)?;
        let (_, phi) = centered(&c, &self.generator_apply(&c, t));
        let (_, phi_dot) = centered(&c, &self.heisenberg_apply(&c, t));
        let n_phi: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
        let n_dot: f64 = phi_dot.iter().map(|z| z.norm_sqr()).sum();
        // relative to ‖∂_λH‖² t², the scale of ‖Φ_0‖²
        let scale = (self.dh.max_abs() * t).powi(2).max(f64::MIN_POSITIVE);
        if n_phi <= 1e-24 * scale {
            return Ok(SaturationResidual { collinearity: 0.0, phase_ok: true });
        }
        if n_dot == 0.0 {
            return Ok(SaturationResidual { collinearity: 1.0, phase_ok: false });
        }
        let overlap = dot(&phi_dot, &phi);
        let collinearity = (1.0 - overlap.norm_sqr() / (n_phi * n_dot)).clamp(0.0, 1.0);
        let phase_ok = overlap.re > 0.0 && overlap.im.abs() <= PHASE_TOL * overlap.re;
        Ok(SaturationResidual { collinearity, phase_ok })
    }
}

/// `Γ/(2√N)` per chain length for a uniform product state, averaged over `times`.
///
/// A single time is valid; several times smooth out finite-size revivals.
pub fn snl_gamma_monitor(
    model: &ModelSpec,
    n_list: &[usize],
    theta: f64,
    phi: f64,
    times: &[f64],
) -> Result<Vec<(usize, f64)>> {
    if times.is_empty() {
        return Err(Error::InvalidTimeGrid);
    }
    n_list
        .iter()
        .map(|&n| {
            let problem = SensingProblem::from_model(&model.with_n_sites(n))?;
            let psi = realize_product_state(&ProductStateSpec::new(n, theta, phi));
            let mut total = 0.0;
            for &t in times {
                total += problem.gamma_rate(&psi, t)?;
            }
            Ok((n, total / times.len() as f64 / (2.0 * (n as f64).sqrt())))
        })
        .collect()
}
