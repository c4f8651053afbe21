//! Randomized invariants.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qfi_core::freefermion::{abd_instantaneous, abd_time_averaged, mode};
use qfi_core::{
    build_hamiltonian, fit_scaling_exponent, g_kernel, local_sensing_terms, realize_product_state,
    realize_site_product_state, ModelSpec, Pauli, PauliString, ProductStateSpec, SensingProblem,
    SparseOperator,
};

fn named_model() -> impl Strategy<Value = ModelSpec> {
    let c = -3.0..3.0f64;
    prop_oneof![
        (2usize..=6, c.clone(), c.clone()).prop_map(|(n, j, l)| ModelSpec::tfi(n, j, l)),
        (1usize..=6, c.clone(), c.clone(), c.clone())
            .prop_map(|(n, j, h, l)| ModelSpec::chaotic(n, j, h, l)),
        (1usize..=6, c.clone(), c, 0.0..6.0f64)
            .prop_map(|(n, j, l, a)| ModelSpec::long_range(n, j, l, a)),
    ]
}

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

/// Random 1- and 2-site terms on a chain of `n` sites.
fn custom_model(n: usize) -> impl Strategy<Value = ModelSpec> {
    let term = (0..n, 0..n, pauli(), pauli(), -1.0..1.0f64, any::<bool>()).prop_map(
        move |(a, b, pa, pb, w, two)| {
            if two && a != b {
                PauliString::real(n, [(a, pa), (b, pb)], w).unwrap()
            } else {
                PauliString::real(n, [(a, pa)], w).unwrap()
            }
        },
    );
    (prop::collection::vec(term, 1..8), -1.0..1.0f64)
        .prop_map(move |(terms, l)| ModelSpec::custom(n, l, terms))
}

fn state_angles(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, 0.0..2.0 * PI), n)
        .prop_map(|v| v.into_iter().map(|(u, phi)| (u.acos(), phi)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamiltonians_are_hermitian_and_sensing_terms_sum_to_dh(m in named_model()) {
        let (h, dh) = build_hamiltonian(&m).unwrap();
        prop_assert!(h.hermiticity_deviation() < 1e-12);
        prop_assert!(dh.hermiticity_deviation() < 1e-12);
        let sum: SparseOperator = local_sensing_terms(&m).unwrap().into_iter().sum();
        prop_assert!((&sum - &dh).max_abs() < 1e-12);
    }

    #[test]
    fn product_states_are_normalized(n in 1usize..=8, theta in -10.0..10.0f64, phi in -10.0..10.0f64) {
        let psi = realize_product_state(&ProductStateSpec::new(n, theta, phi));
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        prop_assert!((norm.sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dispersion_identity(j in 0.01..5.0f64, l in 0.01..5.0f64, k in -PI..PI) {
        let m = mode(j, l, k);
        let rhs = 4.0 * (l - j * k.cos()).powi(2) + 4.0 * j * j * k.sin().powi(2);
        prop_assert!((m.epsilon * m.epsilon - rhs).abs() < 1e-10 * rhs.max(1.0));
        prop_assert!((m.sin_theta.powi(2) + m.cos_theta.powi(2) - 1.0).abs() < 1e-12);
        prop_assert!((m.epsilon - 2.0 * (j * j + l * l - 2.0 * j * l * k.cos()).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kernel_pairs_sum_to_two(j in 0.01..5.0f64, l in 0.01..5.0f64, t in 0.0..1e3f64, k in -PI..PI) {
        let (a, b, _) = abd_time_averaged(j, l, t, k);
        prop_assert!((a + b - 2.0).norm() < 1e-12);
        let (a, b, _) = abd_instantaneous(j, l, t, k);
        prop_assert!((a + b - 2.0).norm() < 1e-12);
    }

    #[test]
    fn g_kernel_is_continuous_across_series_cutoff(r in 1e-8..1e-4f64, phase in 0.0..2.0 * PI) {
        let x = Complex64::from_polar(r, phase);
        let reference = Complex64::new(1.0, 0.0) + x / 2.0 + x * x / 6.0 + x * x * x / 24.0 + x.powu(4) / 120.0;
        prop_assert!((g_kernel(x) - reference).norm() < 1e-15);
    }

    #[test]
    fn scaling_fit_is_scale_and_order_invariant(
        alpha in 0.2..2.5f64,
        noise in prop::collection::vec(-0.05..0.05f64, 5),
        scale in 1e-3..1e3f64,
        rot in 0usize..5,
    ) {
        let pts: Vec<(usize, f64)> = [4usize, 6, 8, 10, 12]
            .iter()
            .zip(&noise)
            .map(|(&n, e)| (n, (n as f64).powf(alpha) * e.exp()))
            .collect();
        let base = fit_scaling_exponent(&pts).unwrap();
        let scaled: Vec<_> = pts.iter().map(|&(n, q)| (n, q * scale)).collect();
        let s = fit_scaling_exponent(&scaled).unwrap();
        prop_assert!((s.alpha - base.alpha).abs() < 1e-12);
        prop_assert!((s.r_squared - base.r_squared).abs() < 1e-12);
        prop_assert!((s.log_prefactor - base.log_prefactor - scale.ln()).abs() < 1e-10);
        let mut rotated = pts.clone();
        rotated.rotate_left(rot);
        let r = fit_scaling_exponent(&rotated).unwrap();
        prop_assert_eq!(r.alpha, base.alpha);
        prop_assert!((0.0..=1.0).contains(&base.r_squared) && base.alpha_stderr >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_local_models_respect_the_growth_bound(
        (m, angles) in (2usize..=4).prop_flat_map(|n| (custom_model(n), state_angles(n)))
    ) {
        let problem = SensingProblem::from_model(&m).unwrap();
        let psi = realize_site_product_state(&angles);
        let grid: Vec<f64> = (0..50).map(|i| 0.2 * i as f64 / 49.0).collect();
        let n = m.n_sites as f64;
        for r in problem.verify_growth_bound(&psi, &grid).unwrap() {
            prop_assert!(r.bound_slack >= -1e-4, "{:?}", r);
            prop_assert!(r.gamma <= 2.0 * n + 1e-10);
        }
    }

    #[test]
    fn gamma_forms_agree_and_qfi_is_sign_invariant(
        (m, angles) in (2usize..=4).prop_flat_map(|n| (custom_model(n), state_angles(n))),
        t in 0.0..20.0f64,
    ) {
        let problem = SensingProblem::from_model(&m).unwrap();
        let psi = realize_site_product_state(&angles);
        let g = problem.gamma_forms(&psi, t).unwrap();
        prop_assert!((g.heisenberg - g.schrodinger).abs() < 1e-10 * g.heisenberg.max(1.0));

        // flipping the sign of ∂_λH leaves I and Γ unchanged
        let flipped = SensingProblem::new(problem.eig().clone(), -problem.dh()).unwrap();
        let (a, b) = (problem.qfi(&psi, t).unwrap(), flipped.qfi(&psi, t).unwrap());
        prop_assert!((a - b).abs() < 1e-10 * a.max(1.0));
        let gf = flipped.gamma_rate(&psi, t).unwrap();
        prop_assert!((gf - g.heisenberg).abs() < 1e-10 * gf.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decoupled_tfi_commutes_with_its_derivative(n in 2usize..=7, l in -3.0..3.0f64) {
        let (h, dh) = build_hamiltonian(&ModelSpec::tfi(n, 0.0, l)).unwrap();
        prop_assert!(h.commutator_max_norm(&dh) < 1e-12);
    }

    #[test]
    fn momentum_transform_round_trips(
        half in 2usize..=8,
        values in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 16),
    ) {
        let n = 2 * half;
        let ks = qfi_core::freefermion::momentum_grid(n).unwrap();
        let f: Vec<Complex64> = values[..n].iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let tilde: Vec<Complex64> =
            (0..n as i64).map(|l| qfi_core::freefermion::fourier_tilde(&ks, &f, l)).collect();
        for (k, fk) in ks.iter().zip(&f) {
            let back: Complex64 = tilde
                .iter()
                .enumerate()
                .map(|(l, v)| v * Complex64::from_polar(1.0, -k * l as f64))
                .sum();
            prop_assert!((back - fk).norm() < 1e-12);
        }
    }

    #[test]
    fn generator_is_hermitian(
        m in (2usize..=4).prop_flat_map(custom_model),
        t in 0.0..50.0f64,
    ) {
        let g = SensingProblem::from_model(&m).unwrap().generator(t).unwrap();
        prop_assert!(g.hermiticity_deviation() < 1e-10 * g.max_abs().max(1.0));
    }
}
