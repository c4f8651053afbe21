//! Long-time QFI density after preparing the ground state at field `λ*` and
//! sensing at field `λ`: `lim I(t)/(N t²)`.

use std::fmt;

use super::modes::momentum_grid;
use crate::{Error, Result};

/// Preparation field `λ*`; `Infinite` is the fully polarized state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaStar {
    Finite(f64),
    Infinite,
}

impl fmt::Display for LambdaStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaStar::Finite(v) => write!(f, "{v}"),
            LambdaStar::Infinite => f.write_str("inf"),
        }
    }
}

/// Parameter region of `(λ, λ*)` relative to `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuenchBranch {
    /// `0 < λ, λ* < J`
    Ferro,
    /// `J < λ, λ*`
    Para,
    /// `λ* < J < λ`
    FerroToPara,
    /// `λ < J < λ*`
    ParaToFerro,
}

impl fmt::Display for QuenchBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuenchBranch::Ferro => "FERRO",
            QuenchBranch::Para => "PARA",
            QuenchBranch::FerroToPara => "FERRO_TO_PARA",
            QuenchBranch::ParaToFerro => "PARA_TO_FERRO",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchSpec {
    pub j: f64,
    pub lambda: f64,
    pub lambda_star: LambdaStar,
}

impl QuenchSpec {
    pub fn new(j: f64, lambda: f64, lambda_star: LambdaStar) -> Result<Self> {
        let q = Self { j, lambda, lambda_star };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.j) {
            return Err(Error::NonPositiveParameter("J"));
        }
        if !positive(self.lambda) {
            return Err(Error::NonPositiveParameter("lambda"));
        }
        if let LambdaStar::Finite(ls) = self.lambda_star {
            if !positive(ls) {
                return Err(Error::NonPositiveParameter("lambda_star"));
            }
            if ls == self.j {
                return Err(Error::CriticalQuench);
            }
        }
        if self.lambda == self.j {
            return Err(Error::CriticalQuench);
        }
        Ok(())
    }

    pub fn branch(&self) -> Result<QuenchBranch> {
        self.validate()?;
        let para = self.lambda > self.j;
        let prep_para = match self.lambda_star {
            LambdaStar::Infinite => true,
            LambdaStar::Finite(ls) => ls > self.j,
        };
        Ok(match (prep_para, para) {
            (false, false) => QuenchBranch::Ferro,
            (true, true) => QuenchBranch::Para,
            (false, true) => QuenchBranch::FerroToPara,
            (true, false) => QuenchBranch::ParaToFerro,
        })
    }
}

/// `8J²(λ-λ*)²/N Σ_k (λ - J cos k)² sin²k / [(J² + λ² - 2Jλ cos k)² (J² + λ*² - 2Jλ* cos k)]`.
///
/// For infinite `λ*` the factor `(λ-λ*)²/(J² + λ*² - 2Jλ* cos k)` is replaced
/// by its limit 1.
pub fn quench_asymptote_ksum(q: &QuenchSpec, n: usize) -> Result<f64> {
    q.validate()?;
    let (j, l) = (q.j, q.lambda);
    let sum: f64 = momentum_grid(n)?
        .iter()
        .map(|&k| {
            let (s, c) = k.sin_cos();
            let e = j * j + l * l - 2.0 * j * l * c;
            let prep = match q.lambda_star {
                LambdaStar::Infinite => 1.0,
                LambdaStar::Finite(ls) => (l - ls).powi(2) / (j * j + ls * ls - 2.0 * j * ls * c),
            };
            (l - j * c).powi(2) * s * s / (e * e) * prep
        })
        .sum();
    Ok(8.0 * j * j * sum / n as f64)
}

/// Residue-theorem value of `lim_{N→∞} lim_{t→∞} I(t)/(N t²)`.
pub fn quench_asymptote_closed(q: &QuenchSpec) -> Result<f64> {
    let branch = q.branch()?;
    let (j, l) = (q.j, q.lambda);
    let (j2, l2) = (j * j, l * l);
    let ls = match q.lambda_star {
        LambdaStar::Infinite => {
            return Ok(match branch {
                QuenchBranch::Para => j2 * (4.0 * l2 - 3.0 * j2) / (l2 * l2),
                _ => 1.0,
            });
        }
        LambdaStar::Finite(ls) => ls,
    };
    let d = j2 - l * ls;
    Ok(match branch {
        QuenchBranch::Ferro => (l - ls).powi(2) / (d * d) * (j2 - 2.0 * l * ls + ls * ls),
        QuenchBranch::Para => {
            let j4 = j2 * j2;
            let poly = l * j4 + 2.0 * ls * j4 - 4.0 * l2 * ls * j2 - 3.0 * l * ls * ls * j2
                + 4.0 * l2 * l * ls * ls;
            j2 * (l - ls).powi(2) / (ls * ls * l2 * l * d * d) * poly
        }
        QuenchBranch::FerroToPara => {
            (2.0 * ls * j2 - 3.0 * l * j2 + l * (ls - 2.0 * l).powi(2)) / (l2 * l)
        }
        QuenchBranch::ParaToFerro => (j2 - 2.0 * l * ls + ls * ls) / (ls * ls),
    })
}
