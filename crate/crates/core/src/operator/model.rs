use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{realize_pauli_string, Pauli, PauliString, SparseOperator};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModelFamily {
    /// `-J Σ_i σ^x_i σ^x_{i+1} - λ Σ_i σ^z_i` with `σ_{N} ≡ σ_0`.
    TfiPeriodic,
    /// `-Σ_i (J σ^x_i σ^x_{i+1} + h σ^x_i + λ σ^z_i)`, open chain.
    ChaoticIsingOpen,
    /// `-J Σ_{i<j} σ^x_i σ^x_j / |i-j|^α - λ Σ_i σ^z_i`, open-chain distances.
    LongRangeIsing,
    /// User terms plus `λ Σ_i h_i` with user or default `h_i = -σ^z_i`.
    Custom,
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelFamily::TfiPeriodic => "TFI_PERIODIC",
            ModelFamily::ChaoticIsingOpen => "CHAOTIC_ISING_OPEN",
            ModelFamily::LongRangeIsing => "LONG_RANGE_ISING",
            ModelFamily::Custom => "CUSTOM",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Couplings {
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_exponent: Option<f64>,
}

impl Couplings {
    pub fn tfi(j: f64, lambda: f64) -> Self {
        Self { j: Some(j), lambda: Some(lambda), ..Self::default() }
    }

    pub fn chaotic(j: f64, h: f64, lambda: f64) -> Self {
        Self { j: Some(j), h: Some(h), lambda: Some(lambda), ..Self::default() }
    }

    pub fn long_range(j: f64, lambda: f64, alpha_exponent: f64) -> Self {
        Self {
            j: Some(j),
            lambda: Some(lambda),
            alpha_exponent: Some(alpha_exponent),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub family: ModelFamily,
    pub n_sites: usize,
    pub couplings: Couplings,
    /// `H_1` for [`ModelFamily::Custom`]; ignored otherwise.
    pub custom_terms: Vec<PauliString>,
    /// Local sensing terms `h_i` for [`ModelFamily::Custom`]; `None` means `-σ^z_i`.
    pub sensing_terms: Option<Vec<PauliString>>,
}

impl ModelSpec {
    pub fn new(family: ModelFamily, n_sites: usize, couplings: Couplings) -> Self {
        Self { family, n_sites, couplings, custom_terms: Vec::new(), sensing_terms: None }
    }

    pub fn tfi(n_sites: usize, j: f64, lambda: f64) -> Self {
        Self::new(ModelFamily::TfiPeriodic, n_sites, Couplings::tfi(j, lambda))
    }

    pub fn chaotic(n_sites: usize, j: f64, h: f64, lambda: f64) -> Self {
        Self::new(ModelFamily::ChaoticIsingOpen, n_sites, Couplings::chaotic(j, h, lambda))
    }

    pub fn long_range(n_sites: usize, j: f64, lambda: f64, alpha_exponent: f64) -> Self {
        Self::new(
            ModelFamily::LongRangeIsing,
            n_sites,
            Couplings::long_range(j, lambda, alpha_exponent),
        )
    }

    pub fn custom(n_sites: usize, lambda: f64, terms: Vec<PauliString>) -> Self {
        let mut m = Self::new(ModelFamily::Custom, n_sites, Couplings {
            lambda: Some(lambda),
            ..Couplings::default()
        });
        m.custom_terms = terms;
        m
    }

    /// Same family and couplings on a chain of a different length.
    pub fn with_n_sites(&self, n_sites: usize) -> Self {
        Self { n_sites, ..self.clone() }
    }

    fn require(&self, value: Option<f64>, name: &'static str) -> Result<f64> {
        let v = value.ok_or(Error::MissingCoupling { family: self.family, name })?;
        if !v.is_finite() {
            return Err(Error::InvalidModel(format!("coupling `{name}` must be finite")));
        }
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        self.terms().map(|_| ())
    }

    /// `(H_1 terms, sensing terms)` as Pauli strings, with `H = H_1 + λ Σ h_i`.
    fn terms(&self) -> Result<(Vec<PauliString>, Vec<PauliString>, f64)> {
        let n = self.n_sites;
        if n == 0 {
            return Err(Error::InvalidModel("n_sites must be positive".into()));
        }
        let lambda = self.require(self.couplings.lambda, "lambda")?;
        let default_sensing = || -> Result<Vec<PauliString>> {
            (0..n).map(|i| PauliString::real(n, [(i, Pauli::Z)], -1.0)).collect()
        };
        let xx = |i: usize, j: usize, w: f64| PauliString::real(n, [(i, Pauli::X), (j, Pauli::X)], w);

        let (h1, sensing) = match self.family {
            ModelFamily::TfiPeriodic => {
                let j = self.require(self.couplings.j, "J")?;
                if n < 2 {
                    return Err(Error::InvalidModel("TFI_PERIODIC needs n_sites >= 2".into()));
                }
                // At N = 2 the bonds (0,1) and (1,0) coincide and add to 2J.
                let bonds = (0..n).map(|i| xx(i, (i + 1) % n, -j)).collect::<Result<_>>()?;
                (bonds, default_sensing()?)
            }
            ModelFamily::ChaoticIsingOpen => {
                let j = self.require(self.couplings.j, "J")?;
                let h = self.require(self.couplings.h, "h")?;
                let mut t: Vec<_> = (0..n - 1).map(|i| xx(i, i + 1, -j)).collect::<Result<_>>()?;
                for i in 0..n {
                    t.push(PauliString::real(n, [(i, Pauli::X)], -h)?);
                }
                (t, default_sensing()?)
            }
            ModelFamily::LongRangeIsing => {
                let j = self.require(self.couplings.j, "J")?;
                let alpha = self.require(self.couplings.alpha_exponent, "alpha_exponent")?;
                if alpha < 0.0 {
                    return Err(Error::InvalidModel("alpha_exponent must be >= 0".into()));
                }
                let mut t = Vec::with_capacity(n * (n - 1) / 2);
                for a in 0..n {
                    for b in a + 1..n {
                        t.push(xx(a, b, -j / ((b - a) as f64).powf(alpha))?);
                    }
                }
                (t, default_sensing()?)
            }
            ModelFamily::Custom => {
                if self.custom_terms.is_empty() {
                    return Err(Error::EmptyCustomTerms);
                }
                let h1 = self.custom_terms.iter().map(|p| p.embedded(n)).collect::<Result<_>>()?;
                let sensing = match &self.sensing_terms {
                    Some(s) if s.is_empty() => {
                        return Err(Error::InvalidModel("sensing_terms is empty".into()))
                    }
                    Some(s) => s.iter().map(|p| p.embedded(n)).collect::<Result<_>>()?,
                    None => default_sensing()?,
                };
                (h1, sensing)
            }
        };
        Ok((h1, sensing, lambda))
    }
}

/// Returns `(H_λ, ∂_λH_λ)`.
pub fn build_hamiltonian(m: &ModelSpec) -> Result<(SparseOperator, SparseOperator)> {
    let (h1, sensing, lambda) = m.terms()?;
    let total = |ps: &[PauliString]| -> SparseOperator {
        std::iter::once(SparseOperator::zeros(m.n_sites))
            .chain(ps.iter().map(realize_pauli_string))
            .sum()
    };
    let (d_h, h_1) = (total(&sensing), total(&h1));
    let h = &h_1 + &d_h.scaled(Complex64::new(lambda, 0.0));
    for op in [&h, &d_h] {
        let deviation = op.hermiticity_deviation();
        if deviation >= super::HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
    }
    Ok((h, d_h))
}

/// The local terms `h_i` whose sum is `∂_λH_λ`, one per sensing string.
pub fn local_sensing_terms(m: &ModelSpec) -> Result<Vec<SparseOperator>> {
    let (_, sensing, _) = m.terms()?;
    Ok(sensing.iter().map(realize_pauli_string).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    fn dense_max_diff(a: &SparseOperator, b: &SparseOperator) -> f64 {
        (&a.to_dense() - &b.to_dense()).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn tfi_two_sites_doubles_the_bond() {
        let (h, _) = build_hamiltonian(&ModelSpec::tfi(2, 1.0, 0.0)).unwrap();
        let xx = realize_pauli_string(
            &PauliString::real(2, [(0, Pauli::X), (1, Pauli::X)], -2.0).unwrap(),
        );
        assert_eq!(dense_max_diff(&h, &xx), 0.0);
    }

    #[test]
    fn decoupled_tfi_is_diagonal() {
        let (h, dh) = build_hamiltonian(&ModelSpec::tfi(3, 0.0, 1.0)).unwrap();
        assert!(h.is_diagonal());
        assert_eq!(h.get(0, 0), Complex64::new(-3.0, 0.0));
        assert_eq!(dense_max_diff(&h, &dh), 0.0);
        assert!(h.commutator_max_norm(&dh) < 1e-12);
    }

    #[test]
    fn long_range_tends_to_open_tfi() {
        let lri = ModelSpec::long_range(3, 1.3, 0.7, 50.0);
        let open = ModelSpec::chaotic(3, 1.3, 0.0, 0.7);
        let (a, _) = build_hamiltonian(&lri).unwrap();
        let (b, _) = build_hamiltonian(&open).unwrap();
        assert!(dense_max_diff(&a, &b) < 1e-10);
    }

    #[test]
    fn sensing_terms_sum_to_dh() {
        for m in [
            ModelSpec::tfi(4, 2.0, 5.0),
            ModelSpec::chaotic(3, 1.0, 1.0, 1.0),
            ModelSpec::long_range(4, 1.0, 0.5, 3.0),
        ] {
            let (_, dh) = build_hamiltonian(&m).unwrap();
            let terms = local_sensing_terms(&m).unwrap();
            assert_eq!(terms.len(), m.n_sites);
            let sum: SparseOperator = terms.into_iter().sum();
            assert!(dense_max_diff(&sum, &dh) < 1e-12);
        }
    }

    #[test]
    fn sensing_term_widths() {
        let m = ModelSpec::tfi(4, 1.0, 1.0);
        for t in local_sensing_terms(&m).unwrap() {
            let d = t.to_dense();
            let diag: Vec<f64> = (0..16).map(|i| d[[i, i]].re).collect();
            let width = diag.iter().cloned().fold(f64::MIN, f64::max)
                - diag.iter().cloned().fold(f64::MAX, f64::min);
            assert_eq!(width, 2.0);
        }
        let (_, dh) = build_hamiltonian(&m).unwrap();
        assert_eq!((dh.get(15, 15) - dh.get(0, 0)).re, 8.0);
    }

    #[test]
    fn missing_couplings_are_reported() {
        let mut m = ModelSpec::tfi(4, 1.0, 1.0);
        m.couplings.j = None;
        assert!(matches!(
            build_hamiltonian(&m),
            Err(Error::MissingCoupling { name: "J", .. })
        ));
        let ci = ModelSpec::new(ModelFamily::ChaoticIsingOpen, 3, Couplings::tfi(1.0, 1.0));
        assert!(matches!(ci.validate(), Err(Error::MissingCoupling { name: "h", .. })));
        let lri = ModelSpec::new(ModelFamily::LongRangeIsing, 3, Couplings::tfi(1.0, 1.0));
        assert!(matches!(
            lri.validate(),
            Err(Error::MissingCoupling { name: "alpha_exponent", .. })
        ));
    }

    #[test]
    fn custom_requires_terms() {
        let m = ModelSpec::custom(3, 1.0, vec![]);
        assert!(matches!(build_hamiltonian(&m), Err(Error::EmptyCustomTerms)));
    }

    #[test]
    fn custom_with_anti_hermitian_term_is_rejected() {
        let p = PauliString::new(2, [(0, Pauli::Y)], Complex64::new(0.0, 1.0)).unwrap();
        let m = ModelSpec::custom(2, 1.0, vec![p]);
        assert!(matches!(build_hamiltonian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn custom_reproduces_tfi() {
        let n = 4;
        let terms = (0..n)
            .map(|i| PauliString::real(n, [(i, Pauli::X), ((i + 1) % n, Pauli::X)], -2.0))
            .collect::<Result<Vec<_>>>()
            .unwrap();
        let (a, da) = build_hamiltonian(&ModelSpec::custom(n, 5.0, terms)).unwrap();
        let (b, db) = build_hamiltonian(&ModelSpec::tfi(n, 2.0, 5.0)).unwrap();
        assert_eq!(dense_max_diff(&a, &b), 0.0);
        assert_eq!(dense_max_diff(&da, &db), 0.0);
    }

    #[test]
    fn named_models_are_real_symmetric() {
        for m in [ModelSpec::chaotic(4, 1.0, 0.3, 0.8), ModelSpec::long_range(4, 1.0, 0.5, 1.5)] {
            let (h, _) = build_hamiltonian(&m).unwrap();
            assert!(h.is_real());
            let d: Array2<Complex64> = h.to_dense();
            assert!((&d - &d.t()).iter().all(|v| v.norm() == 0.0));
        }
    }
}
