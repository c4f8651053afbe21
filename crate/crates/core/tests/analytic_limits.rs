//! Finite sums against their closed-form limits.

use qfi_core::freefermion::{
    eta_closed_form, eta_table, eta_tail_sum, quench_asymptote_closed, quench_asymptote_ksum,
    EtaFamily, EtaKernel, EtaTable, LambdaStar, QuenchBranch, QuenchSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random off-critical `(J, λ, λ*)` inside one branch, kept away from `J`.
fn sample(rng: &mut ChaCha8Rng, branch: QuenchBranch) -> QuenchSpec {
    let j: f64 = rng.random_range(0.5..3.0);
    let below = |rng: &mut ChaCha8Rng| j * rng.random_range(0.1..0.8);
    let above = |rng: &mut ChaCha8Rng| j * rng.random_range(1.25..4.0);
    let (l, ls) = match branch {
        QuenchBranch::Ferro => (below(rng), below(rng)),
        QuenchBranch::Para => (above(rng), above(rng)),
        QuenchBranch::FerroToPara => (above(rng), below(rng)),
        QuenchBranch::ParaToFerro => (below(rng), above(rng)),
    };
    let q = QuenchSpec::new(j, l, LambdaStar::Finite(ls)).unwrap();
    assert_eq!(q.branch().unwrap(), branch);
    q
}

#[test]
fn momentum_sum_matches_residue_formula_in_every_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for branch in [
        QuenchBranch::Ferro,
        QuenchBranch::Para,
        QuenchBranch::FerroToPara,
        QuenchBranch::ParaToFerro,
    ] {
        for _ in 0..20 {
            let q = sample(&mut rng, branch);
            let closed = quench_asymptote_closed(&q).unwrap();
            let ksum = quench_asymptote_ksum(&q, 2000).unwrap();
            assert!((ksum - closed).abs() < 1e-6 * closed, "{q:?}: {ksum} vs {closed}");
        }
    }
}

#[test]
fn branches_are_continuous_at_large_prepared_field() {
    for (j, l) in [(2.0, 5.0), (1.0, 3.5), (2.0, 1.0), (3.0, 0.4)] {
        let inf = quench_asymptote_closed(&QuenchSpec::new(j, l, LambdaStar::Infinite).unwrap()).unwrap();
        let big = quench_asymptote_closed(&QuenchSpec::new(j, l, LambdaStar::Finite(1e6)).unwrap()).unwrap();
        assert!((big - inf).abs() < 1e-4 * inf, "J={j} λ={l}: {big} vs {inf}");
        let ksum = quench_asymptote_ksum(&QuenchSpec::new(j, l, LambdaStar::Infinite).unwrap(), 2000).unwrap();
        assert!((ksum - inf).abs() < 1e-6 * inf);
    }
}

#[test]
fn time_averaged_fourier_coefficients_approach_closed_forms() {
    let (n, t) = (4096, 1e4);
    for (j, l) in [(2.0, 5.0), (5.0, 2.0), (1.0, 1.0)] {
        let table = eta_table(j, l, t, n, EtaKernel::TimeAveraged).unwrap();
        let closed = EtaTable::from_closed_form(j, l, n).unwrap();
        for f in EtaFamily::ALL {
            for ell in 0..8 {
                let (a, b) = (table.by_distance(f)[ell], closed.by_distance(f)[ell]);
                assert!((a - b).abs() < 1e-2, "J={j} λ={l} family {f} ℓ={ell}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn geometric_decay_of_eta_tails() {
    let table = eta_table(2.0, 5.0, 1e4, 256, EtaKernel::TimeAveraged).unwrap();
    let row = table.by_distance(EtaFamily::One);
    for ell in 2..=6 {
        let ratio = row[ell + 1].abs() / row[ell].abs();
        assert!((ratio - 0.4).abs() < 0.02, "ℓ={ell}: {ratio}");
    }
    // J = λ: tails vanish beyond nearest neighbours
    let crit = eta_table(1.0, 1.0, 1e4, 256, EtaKernel::TimeAveraged).unwrap();
    assert!(crit.by_distance(EtaFamily::One)[2..8].iter().all(|v| v.abs() < 1e-3));
}

#[test]
fn closed_form_tables_per_regime() {
    let (j, l) = (2.0_f64, 5.0_f64);
    let p = j / l;
    let amp = (l * l - j * j) / (4.0 * l * l);
    for ell in 2..10 {
        let (a, b, d) = eta_closed_form(j, l, ell);
        let tail = amp * p.powi(ell as i32);
        assert!((a - tail).abs() < 1e-16 && (b + tail).abs() < 1e-16 && (d + tail).abs() < 1e-16);
    }
    let (a1, b1, d1) = eta_closed_form(5.0, 2.0, 1);
    assert_eq!((a1, b1, d1), (-0.1, 0.1, -0.1));
    assert_eq!(eta_closed_form(3.0, 3.0, 1), (-0.25, 0.25, -0.25));
}

#[test]
fn tail_sums_are_stable_under_doubling() {
    for (j, l) in [(2.0, 5.0), (5.0, 2.0)] {
        let small = EtaTable::from_closed_form(j, l, 256).unwrap();
        let large = EtaTable::from_closed_form(j, l, 512).unwrap();
        for f in EtaFamily::ALL {
            let a = eta_tail_sum(&small, f, 10).unwrap();
            let b = eta_tail_sum(&large, f, 10).unwrap();
            assert!((a - b).abs() <= 0.01 * a.max(1e-300), "family {f}: {a} vs {b}");
        }
    }
}
