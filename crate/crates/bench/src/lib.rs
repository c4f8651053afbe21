//! Fixtures shared by the criterion benchmarks in `benches/`.

use qfi_core::{realize_product_state, ModelSpec, ProductStateSpec, SensingProblem, StateVector};

pub const J: f64 = 2.0;
pub const LAMBDA: f64 = 5.0;

pub fn tfi(n: usize) -> ModelSpec {
    ModelSpec::tfi(n, J, LAMBDA)
}

/// Exact-engine problem and `θ = π/2` product state for a TFI ring.
pub fn tfi_problem(n: usize) -> (SensingProblem, StateVector) {
    let problem = SensingProblem::from_model(&tfi(n)).expect("valid model");
    let psi = realize_product_state(&ProductStateSpec::new(n, std::f64::consts::FRAC_PI_2, 0.0));
    (problem, psi)
}
