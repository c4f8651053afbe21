use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modes::{abd_instantaneous, abd_time_averaged, fourier_tilde, momentum_grid};
use crate::{Error, Result};

/// Largest imaginary part tolerated in `Ã(ℓ)` and `B̃(ℓ)`, which are real by symmetry.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

/// The four Hermitian two-body families
/// `O¹ = c_i†c_j + h.c.`, `O² = c_i c_j† + h.c.`, `O³ = c_i†c_j† + h.c.`,
/// `O⁴ = i(c_i†c_j† - h.c.)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EtaFamily {
    One,
    Two,
    Three,
    Four,
}

impl EtaFamily {
    pub const ALL: [EtaFamily; 4] = [Self::One, Self::Two, Self::Three, Self::Four];

    /// 1-based label.
    pub fn label(self) -> usize {
        self as usize + 1
    }

    pub fn from_label(label: usize) -> Option<Self> {
        Self::ALL.get(label.checked_sub(1)?).copied()
    }
}

impl fmt::Display for EtaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Which momentum kernel feeds the Fourier transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EtaKernel {
    /// `(A, B, D)` of the instantaneous `(∂_λH)^(H)(t)`.
    #[default]
    Instantaneous,
    /// `(𝒜, ℬ, 𝒟)` of `G(t)/t`. At finite `N` only this kernel converges as
    /// `t → ∞`, because `Σ_k cos(2ε_k t) e^{ikℓ}/N` never decays.
    TimeAveraged,
}

/// η coefficients of a translation-invariant operator.
///
/// Every family depends on `ℓ = j - i` only, so the table stores one row per
/// family with the diagonal convention `η¹_ii = -Ã(0)/2` already applied.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaTable {
    pub n_sites: usize,
    /// `f64::INFINITY` for closed-form tables.
    pub t: f64,
    /// `None` for closed-form tables.
    pub kernel: Option<EtaKernel>,
    rows: [Vec<f64>; 4],
}

impl EtaTable {
    fn from_tilde(
        n_sites: usize,
        t: f64,
        kernel: Option<EtaKernel>,
        tilde: impl Fn(usize) -> (f64, f64, Complex64),
    ) -> Self {
        let mut rows: [Vec<f64>; 4] = Default::default();
        for ell in 0..n_sites {
            let (a, b, d) = tilde(ell);
            let (e1, e2, e3, e4) = if ell == 0 {
                (-a / 2.0, -b / 2.0, 0.0, 0.0)
            } else {
                (-a, -b, -2.0 * d.re, -2.0 * d.im)
            };
            rows[0].push(e1);
            rows[1].push(e2);
            rows[2].push(e3);
            rows[3].push(e4);
        }
        Self { n_sites, t, kernel, rows }
    }

    /// Table built from the `N → ∞, t → ∞` closed forms, truncated at `ℓ = N - 1`.
    pub fn from_closed_form(j: f64, lambda: f64, n_sites: usize) -> Result<Self> {
        check_positive(j, lambda)?;
        Ok(Self::from_tilde(n_sites, f64::INFINITY, None, |ell| {
            let (a, b, d) = eta_closed_form(j, lambda, ell);
            (a, b, Complex64::new(d, 0.0))
        }))
    }

    /// `η^α_ij` for 0-based `i ≤ j`; zero below the diagonal.
    pub fn get(&self, family: EtaFamily, i: usize, j: usize) -> f64 {
        assert!(i < self.n_sites && j < self.n_sites, "site out of range");
        if j < i { 0.0 } else { self.rows[family as usize][j - i] }
    }

    /// `η^α_{i,i+ℓ}`.
    pub fn by_distance(&self, family: EtaFamily) -> &[f64] {
        &self.rows[family as usize]
    }

    /// Upper-triangular entries `(i, j, η)` with 0-based sites.
    pub fn entries(&self, family: EtaFamily) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n_sites;
        let row = &self.rows[family as usize];
        (0..n).flat_map(move |i| (i..n).map(move |j| (i, j, row[j - i])))
    }
}

fn check_positive(j: f64, lambda: f64) -> Result<()> {
    if !(j > 0.0 && j.is_finite()) {
        return Err(Error::NonPositiveParameter("J"));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositiveParameter("lambda"));
    }
    Ok(())
}

/// Finite-`N` η table from the discrete Fourier transforms of the chosen kernel.
pub fn eta_table(j: f64, lambda: f64, t: f64, n: usize, kernel: EtaKernel) -> Result<EtaTable> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    let ks = momentum_grid(n)?;
    let kern = match kernel {
        EtaKernel::Instantaneous => abd_instantaneous,
        EtaKernel::TimeAveraged => abd_time_averaged,
    };
    let (mut a, mut b, mut d) = (Vec::new(), Vec::new(), Vec::new());
    for &k in &ks {
        let (x, y, z) = kern(j, lambda, t, k);
        a.push(x);
        b.push(y);
        d.push(z);
    }
    let mut tildes = Vec::with_capacity(n);
    for ell in 0..n as i64 {
        let at = fourier_tilde(&ks, &a, ell);
        let bt = fourier_tilde(&ks, &b, ell);
        let residue = at.im.abs().max(bt.im.abs());
        if residue > IMAGINARY_RESIDUE_TOL {
            return Err(Error::ImaginaryResidue(residue));
        }
        tildes.push((at.re, bt.re, fourier_tilde(&ks, &d, ell)));
    }
    Ok(EtaTable::from_tilde(n, t, Some(kernel), |ell| tildes[ell]))
}

/// `(Ã(ℓ), B̃(ℓ), D̃(ℓ))` in the limit `N → ∞, t → ∞`, for `J, λ > 0`.
///
/// Tails decay as `p^ℓ` with `p = J/λ` for `J < λ` and `p = λ/J` for `J > λ`;
/// at `J = λ` they vanish beyond `ℓ = 1`.
pub fn eta_closed_form(j: f64, lambda: f64, ell: usize) -> (f64, f64, f64) {
    if j == lambda {
        return match ell {
            0 => (1.5, 0.5, 0.0),
            1 => (-0.25, 0.25, -0.25),
            _ => (0.0, 0.0, 0.0),
        };
    }
    let (j2, l2) = (j * j, lambda * lambda);
    if j < lambda {
        let p = j / lambda;
        let amp = (l2 - j2) / (4.0 * l2);
        match ell {
            0 => (2.0 - j2 / (2.0 * l2), j2 / (2.0 * l2), 0.0),
            1 => {
                let l3 = l2 * lambda;
                (-j2 * j / (4.0 * l3), j2 * j / (4.0 * l3), (j2 * j - 2.0 * j * l2) / (4.0 * l3))
            }
            _ => {
                let tail = amp * p.powi(ell as i32);
                (tail, -tail, -tail)
            }
        }
    } else {
        let q = lambda / j;
        let amp = (j2 - l2) / (4.0 * j2);
        match ell {
            0 => (1.5, 0.5, 0.0),
            1 => (-lambda / (4.0 * j), lambda / (4.0 * j), -lambda / (4.0 * j)),
            _ => {
                let tail = amp * q.powi(ell as i32 - 2);
                (tail, -tail, tail)
            }
        }
    }
}

/// `C_N^α(k) = Σ_{i ≤ k} Σ_{j ≥ k} |η^α_ij|` for a 1-based cut `k`.
pub fn eta_tail_sum(table: &EtaTable, family: EtaFamily, k_cut: usize) -> Result<f64> {
    let n = table.n_sites;
    if k_cut == 0 || k_cut > n {
        return Err(Error::CutOutOfRange { k_cut, n });
    }
    let row = table.by_distance(family);
    let k = k_cut - 1;
    let mut total = 0.0;
    for i in 0..=k {
        for jj in k..n {
            total += row[jj - i].abs();
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_time_table_is_diagonal() {
        for kernel in [EtaKernel::Instantaneous, EtaKernel::TimeAveraged] {
            let table = eta_table(2.0, 5.0, 0.0, 8, kernel).unwrap();
            for f in [EtaFamily::Three, EtaFamily::Four] {
                assert!(table.by_distance(f).iter().all(|v| v.abs() < 1e-14));
            }
            let one = table.by_distance(EtaFamily::One);
            assert!((one[0] + 1.0).abs() < 1e-14);
            assert!(one[1..].iter().all(|v| v.abs() < 1e-14));
            assert!(table.by_distance(EtaFamily::Two).iter().all(|v| v.abs() < 1e-14));
        }
    }

    #[test]
    fn closed_form_sample_entries() {
        assert_eq!(eta_closed_form(1.0, 1.0, 0), (1.5, 0.5, 0.0));
        let (a, _, _) = eta_closed_form(5.0, 2.0, 1);
        assert!((a - (-2.0 / 20.0)).abs() < 1e-16);
        let (a, b, _) = eta_closed_form(2.0, 5.0, 0);
        assert_eq!(a, 1.92);
        assert!((b - 0.08).abs() < 1e-16);
    }

    #[test]
    fn tail_sum_at_zero_time() {
        let table = eta_table(2.0, 5.0, 0.0, 12, EtaKernel::Instantaneous).unwrap();
        for k in [1, 5, 12] {
            let c = eta_tail_sum(&table, EtaFamily::One, k).unwrap();
            assert!((c - 1.0).abs() < 1e-13);
            assert!(eta_tail_sum(&table, EtaFamily::Three, k).unwrap() < 1e-13);
        }
        assert!(matches!(eta_tail_sum(&table, EtaFamily::One, 0), Err(Error::CutOutOfRange { .. })));
        assert!(eta_tail_sum(&table, EtaFamily::One, 13).is_err());
    }

    #[test]
    fn family_labels_round_trip() {
        for f in EtaFamily::ALL {
            assert_eq!(EtaFamily::from_label(f.label()), Some(f));
        }
        assert_eq!(EtaFamily::from_label(0), None);
        assert_eq!(EtaFamily::from_label(5), None);
    }

    #[test]
    fn entries_cover_upper_triangle() {
        let table = EtaTable::from_closed_form(2.0, 5.0, 5).unwrap();
        assert_eq!(table.entries(EtaFamily::One).count(), 15);
        assert_eq!(table.get(EtaFamily::One, 3, 1), 0.0);
        assert_eq!(table.get(EtaFamily::One, 1, 3), -eta_closed_form(2.0, 5.0, 2).0);
    }
}
