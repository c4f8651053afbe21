//! Many-body operators on `N` spin-1/2 sites in the `2^N` computational basis.
//!
//! Basis convention: bit `N-1-i` of a basis index holds site `i` (site 0 is the
//! most significant bit) and a zero bit is spin up, `σ^z = +1`. Index 0 is the
//! all-up state.

mod model;
mod pauli;
mod sparse;
mod state;

pub use model::{build_hamiltonian, local_sensing_terms, Couplings, ModelFamily, ModelSpec};
pub use pauli::{realize_pauli_string, Pauli, PauliString};
pub use sparse::{SparseOperator, HERMITIAN_TOL};
pub use state::{
    realize_product_state, realize_site_product_state, state_norm_deviation, ProductStateSpec,
    StateVector,
};

/// Bit mask selecting site `site` of an `n_sites` chain.
#[inline]
pub(crate) fn site_mask(n_sites: usize, site: usize) -> usize {
    1usize << (n_sites - 1 - site)
}
