use thiserror::Error;

use crate::operator::ModelFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("site index {site} out of range for a chain of {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("{family} requires coupling `{name}`")]
    MissingCoupling { family: ModelFamily, name: &'static str },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("CUSTOM model has no custom_terms")]
    EmptyCustomTerms,

    #[error("operator is not Hermitian (max |M - M†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("{n_sites} sites exceeds the exact-diagonalization cap of {max} sites")]
    DimensionTooLarge { n_sites: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state norm deviates from 1 by {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("LAPACK {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },

    #[error(
        "Heisenberg and Schrödinger evaluations of Γ disagree: {heisenberg} vs {schrodinger}"
    )]
    UnitarityViolation { heisenberg: f64, schrodinger: f64 },

    #[error("4·ΣCov = {four_sum} disagrees with Γ² = {gamma_squared}")]
    CovarianceInconsistent { four_sum: f64, gamma_squared: f64 },

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("time grid must be strictly increasing and non-negative")]
    InvalidTimeGrid,

    #[error("free-fermion engine needs an even chain with N >= 4, got N = {0}")]
    UnsupportedChainLength(usize),

    #[error("N = {n} exceeds the free-fermion string-engine cap of {max}")]
    FreeFermionCap { n: usize, max: usize },

    #[error("Fourier coefficients carry an imaginary residue of {0:e}")]
    ImaginaryResidue(f64),

    #[error("parameters must be positive: {0}")]
    NonPositiveParameter(&'static str),

    #[error("quench parameters sit on the critical line (λ = J or λ* = J)")]
    CriticalQuench,

    #[error("cut index {k_cut} outside 1..={n}")]
    CutOutOfRange { k_cut: usize, n: usize },

    #[error("scaling fit: {0}")]
    InvalidFit(String),
}
