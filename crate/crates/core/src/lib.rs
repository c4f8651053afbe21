//! Quantum Fisher information (QFI) for spin-1/2 sensing chains.
//!
//! Two independent engines compute the same physics:
//!
//! * [`ed`] diagonalizes the full `2^N` Hamiltonian of any model built by
//!   [`operator`] and evaluates the time-integrated generator `G(t)`, the QFI
//!   `I(t) = 4 Var[G(t)]`, the growth-rate bound `Γ(t)`, covariance maps and
//!   long-time limits.
//! * [`freefermion`] solves the periodic transverse-field Ising chain through
//!   the Jordan-Wigner mapping in polynomial time, including the closed-form
//!   large-`N`, large-`t` limits obtained by contour integration.
//!
//! [`scaling`] fits `I ∝ N^α` and classifies the result against the shot-noise
//! and Heisenberg limits.
//!
//! Units: `ħ = 1`, energies and times are dimensionless. Sites are 0-based in
//! the API; user-facing output (CSV, CLI) is 1-based.

// LAPACK/BLAS symbols come from the system OpenBLAS.
extern crate openblas_src;

pub mod ed;
pub mod error;
pub mod freefermion;
pub mod kernel;
pub mod operator;
pub mod scaling;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use ed::{
    eigendecompose, CovarianceMap, EigenDecomposition, EigenbasisOperator, GammaEval, QfiRecord,
    SaturationResidual, SensingProblem,
};
pub use freefermion::{
    EtaFamily, EtaKernel, EtaTable, LambdaStar, MomentumMode, QuenchBranch, QuenchSpec,
};
pub use kernel::g_kernel;
pub use operator::{
    build_hamiltonian, local_sensing_terms, realize_pauli_string, realize_product_state,
    realize_site_product_state,
    Couplings, ModelFamily, ModelSpec, Pauli, PauliString, ProductStateSpec, SparseOperator,
    StateVector,
};
pub use scaling::{classify, fit_scaling_exponent, ScalingClass, ScalingFit};

/// Largest chain the exact engine accepts (Hilbert-space dimension 16384).
pub const MAX_ED_SITES: usize = 14;
