//! Analytic solution of the periodic transverse-field Ising chain
//! `H = -J Σ σ^x_i σ^x_{i+1} - λ Σ σ^z_i` in the even-fermion-parity sector.
//!
//! Jordan-Wigner convention: `c_i† = (Π_{l<i} σ^z_l) σ^-_i` with `σ^-|↑⟩ = |↓⟩`,
//! so the all-up state is the fermion vacuum and `c_i†c_i = (1 - σ^z_i)/2`.

mod eta;
mod modes;
mod quench;
mod strings;

pub use eta::{eta_closed_form, eta_table, eta_tail_sum, EtaFamily, EtaKernel, EtaTable};
pub use modes::{
    abd_instantaneous, abd_time_averaged, fourier_tilde, ground_state_energy, mode,
    momentum_grid, MomentumMode,
};
pub use quench::{
    quench_asymptote_closed, quench_asymptote_ksum, LambdaStar, QuenchBranch, QuenchSpec,
};
pub use strings::{qfi_product_state_ff, FF_MAX_SITES};

use crate::{Error, Result};

pub(crate) fn check_chain(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::UnsupportedChainLength(n));
    }
    Ok(())
}
