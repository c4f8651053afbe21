//! QFI of the periodic TFI chain for a uniform product state, evaluated on
//! Jordan-Wigner strings without any `2^N` object.
//!
//! `G(t)/t` is a sum of fermion bilinears. Each bilinear is a tensor product
//! of single-site operators, so expectations of one string and of a product of
//! two strings factorize site by site over the product state.

use std::collections::HashMap;

use num_complex::Complex64;

use super::check_chain;
use super::modes::{abd_time_averaged, fourier_tilde, momentum_grid};
use crate::operator::ProductStateSpec;
use crate::{Error, Result};

/// Default cap on the chain length of the string engine.
pub const FF_MAX_SITES: usize = 64;

/// Single-site operators closed under multiplication up to sign or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
enum Site {
    I,
    Z,
    /// `σ^+ = |↑⟩⟨↓|`
    P,
    /// `σ^- = |↓⟩⟨↑|`
    M,
    /// `|↑⟩⟨↑|`
    Up,
    /// `|↓⟩⟨↓|`
    Dn,
}

const SITES: [Site; 6] = [Site::I, Site::Z, Site::P, Site::M, Site::Up, Site::Dn];

impl Site {
    fn matrix(self) -> [[i8; 2]; 2] {
        match self {
            Site::I => [[1, 0], [0, 1]],
            Site::Z => [[1, 0], [0, -1]],
            Site::P => [[0, 1], [0, 0]],
            Site::M => [[0, 0], [1, 0]],
            Site::Up => [[1, 0], [0, 0]],
            Site::Dn => [[0, 0], [0, 1]],
        }
    }
}

/// `a·b = sign · c`, or `None` when the product vanishes.
type ProductTable = [[Option<(i8, Site)>; 6]; 6];

fn product_table() -> ProductTable {
    let mut table = [[None; 6]; 6];
    for (ia, &a) in SITES.iter().enumerate() {
        for (ib, &b) in SITES.iter().enumerate() {
            let (x, y) = (a.matrix(), b.matrix());
            let mut m = [[0i8; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    m[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
                }
            }
            if m == [[0, 0], [0, 0]] {
                continue;
            }
            let found = SITES.iter().find_map(|&s| {
                let sm = s.matrix();
                [1i8, -1].into_iter().find(|&sg| {
                    (0..2).all(|r| (0..2).all(|c| sm[r][c] * sg == m[r][c]))
                }).map(|sg| (sg, s))
            });
            table[ia][ib] = Some(found.expect("site algebra is closed"));
        }
    }
    table
}

#[derive(Debug, Clone)]
struct JwString {
    coef: Complex64,
    ops: Vec<Site>,
}

fn multiply(table: &ProductTable, a: &JwString, b: &JwString) -> Option<JwString> {
    let mut coef = a.coef * b.coef;
    let mut ops = Vec::with_capacity(a.ops.len());
    for (&x, &y) in a.ops.iter().zip(&b.ops) {
        let (sign, s) = table[x as usize][y as usize]?;
        if sign < 0 {
            coef = -coef;
        }
        ops.push(s);
    }
    Some(JwString { coef, ops })
}

/// `c_i†` (`creation = true`) or `c_i` on `n` sites.
fn fermion(n: usize, i: usize, creation: bool) -> JwString {
    let mut ops = vec![Site::I; n];
    ops[..i].fill(Site::Z);
    ops[i] = if creation { Site::M } else { Site::P };
    JwString { coef: Complex64::new(1.0, 0.0), ops }
}

/// `I(t) = 4 Var[G(t)]` over `⊗[cos(θ/2)|↑⟩ + sin(θ/2)e^{iφ}|↓⟩]`.
///
/// Exact for even-parity states (`θ = 0`); for other `θ` the odd-parity
/// component is treated with the even-sector solution, which is an
/// approximation at finite `N`.
pub fn qfi_product_state_ff(
    j: f64,
    lambda: f64,
    t: f64,
    n: usize,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    check_chain(n)?;
    if n > FF_MAX_SITES {
        return Err(Error::FreeFermionCap { n, max: FF_MAX_SITES });
    }
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let ks = momentum_grid(n)?;
    let (mut a, mut b, mut d, mut dc) = (vec![], vec![], vec![], vec![]);
    for &k in &ks {
        let (x, y, z) = abd_time_averaged(j, lambda, t, k);
        a.push(x);
        b.push(y);
        d.push(z);
        dc.push(z.conj());
    }
    let span = 2 * n - 1;
    let offset = (n - 1) as i64;
    let tilde = |v: &[Complex64]| -> Vec<Complex64> {
        (0..span as i64).map(|l| fourier_tilde(&ks, v, l - offset)).collect()
    };
    let (at, bt, dt, dct) = (tilde(&a), tilde(&b), tilde(&d), tilde(&dc));
    let at_l = |l: i64| at[(l + offset) as usize];
    let bt_l = |l: i64| bt[(l + offset) as usize];
    let dt_l = |l: i64| dt[(l + offset) as usize];
    let dct_l = |l: i64| dct[(l + offset) as usize];

    // G/t = Σ_ij [Ã(j-i) c_i†c_j + B̃(i-j) c_i c_j† + D̃(j-i) c_i†c_j† + D̃*(j-i) c_i c_j] - N
    let table = product_table();
    let cdag: Vec<JwString> = (0..n).map(|i| fermion(n, i, true)).collect();
    let c: Vec<JwString> = (0..n).map(|i| fermion(n, i, false)).collect();
    let mut merged: HashMap<Vec<Site>, Complex64> = HashMap::new();
    let mut push = |w: Complex64, x: &JwString, y: &JwString| {
        if let Some(s) = multiply(&table, x, y) {
            *merged.entry(s.ops).or_default() += w * s.coef;
        }
    };
    for i in 0..n {
        for jj in 0..n {
            let l = jj as i64 - i as i64;
            push(at_l(l), &cdag[i], &c[jj]);
            push(bt_l(-l), &c[i], &cdag[jj]);
            push(dt_l(l), &cdag[i], &cdag[jj]);
            push(dct_l(l), &c[i], &c[jj]);
        }
    }

    let [up, down] = ProductStateSpec::new(n, theta, phi).spinor();
    let mut site_mean = [Complex64::new(0.0, 0.0); 6];
    for (idx, s) in SITES.iter().enumerate() {
        let m = s.matrix();
        let amp = [up, down];
        let mut v = Complex64::new(0.0, 0.0);
        for r in 0..2 {
            for cc in 0..2 {
                v += amp[r].conj() * f64::from(m[r][cc]) * amp[cc];
            }
        }
        site_mean[idx] = v;
    }

    struct Term {
        w: Complex64,
        ops: Vec<Site>,
        lo: usize,
        hi: usize,
        mean: Complex64,
    }
    let mut terms: Vec<Term> = merged
        .into_iter()
        .filter(|(_, w)| w.norm() > 0.0)
        .filter_map(|(ops, w)| {
            let lo = ops.iter().position(|&s| s != Site::I)?;
            let hi = ops.iter().rposition(|&s| s != Site::I)?;
            let mean = ops[lo..=hi].iter().map(|&s| site_mean[s as usize]).product();
            Some(Term { w, ops, lo, hi, mean })
        })
        .collect();
    // deterministic summation order
    terms.sort_by(|x, y| (x.lo, x.hi, &x.ops).cmp(&(y.lo, y.hi, &y.ops)));

    let mut var = Complex64::new(0.0, 0.0);
    for ta in &terms {
        for tb in &terms {
            if tb.lo > ta.hi || ta.lo > tb.hi {
                continue;
            }
            let (lo, hi) = (ta.lo.min(tb.lo), ta.hi.max(tb.hi));
            let mut pair = Complex64::new(1.0, 0.0);
            for s in lo..=hi {
                match table[ta.ops[s] as usize][tb.ops[s] as usize] {
                    Some((sign, op)) => pair *= f64::from(sign) * site_mean[op as usize],
                    None => {
                        pair = Complex64::new(0.0, 0.0);
                        break;
                    }
                }
            }
            var += ta.w * tb.w * (pair - ta.mean * tb.mean);
        }
    }
    Ok((4.0 * t * t * var.re).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn site_algebra() {
        let t = product_table();
        let get = |a: Site, b: Site| t[a as usize][b as usize];
        assert_eq!(get(Site::P, Site::Z), Some((-1, Site::P)));
        assert_eq!(get(Site::Z, Site::P), Some((1, Site::P)));
        assert_eq!(get(Site::M, Site::Z), Some((1, Site::M)));
        assert_eq!(get(Site::P, Site::M), Some((1, Site::Up)));
        assert_eq!(get(Site::M, Site::P), Some((1, Site::Dn)));
        assert_eq!(get(Site::Dn, Site::Z), Some((-1, Site::Dn)));
        assert_eq!(get(Site::P, Site::P), None);
        assert_eq!(get(Site::Z, Site::Z), Some((1, Site::I)));
    }

    #[test]
    fn number_operator_string() {
        // c_2† c_2 = Dn on site 2
        let t = product_table();
        let s = multiply(&t, &fermion(4, 2, true), &fermion(4, 2, false)).unwrap();
        assert_eq!(s.ops, vec![Site::I, Site::I, Site::Dn, Site::I]);
        assert_eq!(s.coef, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn commuting_limit() {
        for n in [4, 6, 8] {
            let i0 = qfi_product_state_ff(0.0, 1.3, 0.7, n, 0.0, 0.0).unwrap();
            assert!(i0.abs() < 1e-12);
            let t: f64 = 0.7;
            let i = qfi_product_state_ff(0.0, 1.3, t, n, std::f64::consts::FRAC_PI_2, 0.3).unwrap();
            let want = 4.0 * n as f64 * t * t;
            assert!((i - want).abs() < 1e-10 * want);
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(qfi_product_state_ff(1.0, 1.0, 1.0, 5, 0.0, 0.0), Err(Error::UnsupportedChainLength(5))));
        assert!(matches!(
            qfi_product_state_ff(1.0, 1.0, 1.0, 66, 0.0, 0.0),
            Err(Error::FreeFermionCap { .. })
        ));
        assert_eq!(qfi_product_state_ff(1.0, 2.0, 0.0, 4, 1.0, 0.0).unwrap(), 0.0);
    }
}
