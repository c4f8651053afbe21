//! Exact-diagonalization engine.
//!
//! One full diagonalization of `H_λ` is reused for every time and state: the
//! generator, Heisenberg-picture operators and evolved states all reduce to
//! phase factors and kernels on the spectrum.

mod bound;
mod eigen;
mod engine;

pub use bound::{central_rates, QfiRecord, MIN_RATE_TOL};
pub use eigen::{eigendecompose, EigenDecomposition, EigenbasisOperator, DEGENERACY_RTOL};
pub use engine::{
    qfi, snl_gamma_monitor, CovarianceMap, GammaEval, SaturationResidual, SensingProblem,
    NORM_TOL, PHASE_TOL, TWO_FORM_TOL,
};
