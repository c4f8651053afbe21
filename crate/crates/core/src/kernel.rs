//! The kernel `g(x) = (e^x - 1)/x` that turns an instantaneous Heisenberg
//! operator into its time average: `G(t)/t = g(i t L) ∂_λH` for the Liouvillian
//! `L = [H, ·]`.

use num_complex::Complex64;

/// Below this modulus `g` is evaluated from its Taylor series.
pub const SERIES_CUTOFF: f64 = 1e-6;

/// `g(x) = (e^x - 1)/x` with `g(0) = 1`.
///
/// The numerator is formed as `expm1(a)·cos b - 2 sin²(b/2) + i e^a sin b` for
/// `x = a + ib`, so there is no cancellation even for tiny `|x|` above the
/// series cutoff.
pub fn g_kernel(x: Complex64) -> Complex64 {
    if x.norm() < SERIES_CUTOFF {
        // 1 + x/2 + x²/6 + x³/24; the next term is below 1e-25 here.
        return Complex64::new(1.0, 0.0) + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
    }
    expm1(x) / x
}

/// `g(i y)` for real `y`, the only form the engines need.
pub fn g_imag(y: f64) -> Complex64 {
    g_kernel(Complex64::new(0.0, y))
}

/// Complex `e^x - 1` without cancellation.
pub fn expm1(x: Complex64) -> Complex64 {
    let (a, b) = (x.re, x.im);
    let half = (0.5 * b).sin();
    let re = a.exp_m1() * b.cos() - 2.0 * half * half;
    let im = a.exp() * b.sin();
    Complex64::new(re, im)
}
