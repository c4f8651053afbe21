use ndarray::{Array1, Array2, Zip};
use num_complex::Complex64;

use crate::operator::{SparseOperator, StateVector};
use crate::{Error, Result, MAX_ED_SITES};

/// Relative scale of the degeneracy tolerance: `tol_deg = 1e-9 ‖H‖_max`.
pub const DEGENERACY_RTOL: f64 = 1e-9;

/// Eigenvector storage, one eigenvector per row (`vt[m, i] = V_{i m}`).
#[derive(Debug, Clone)]
enum Vectors {
    Real(Array2<f64>),
    Complex(Array2<Complex64>),
}

/// Full spectrum of a Hermitian operator, energies ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    n_sites: usize,
    energies: Array1<f64>,
    vectors: Vectors,
    min_gap: Option<f64>,
    tol_deg: f64,
}

/// Diagonalizes `h` with LAPACK's divide-and-conquer driver.
///
/// Real symmetric input goes through `dsyevd`, anything else through `zheevd`.
pub fn eigendecompose(h: &SparseOperator) -> Result<EigenDecomposition> {
    let n_sites = h.n_sites();
    if n_sites > MAX_ED_SITES {
        return Err(Error::DimensionTooLarge { n_sites, max: MAX_ED_SITES });
    }
    let deviation = h.hermiticity_deviation();
    if deviation >= crate::operator::HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let dim = h.dim();
    let (energies, vectors) = if h.is_real() {
        let mut a = vec![0.0; dim * dim];
        for &(r, c, v) in h.entries() {
            a[c * dim + r] = v.re;
        }
        let w = dsyevd(dim, &mut a)?;
        (w, Vectors::Real(Array2::from_shape_vec((dim, dim), a).expect("square buffer")))
    } else {
        // column-major fill: a[c*dim + r] = H[r, c]
        let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
        for &(r, c, v) in h.entries() {
            a[c * dim + r] = v;
        }
        let w = zheevd(dim, &mut a)?;
        (w, Vectors::Complex(Array2::from_shape_vec((dim, dim), a).expect("square buffer")))
    };
    let tol_deg = DEGENERACY_RTOL * h.max_abs();
    let min_gap = smallest_gap(&energies, tol_deg);
    Ok(EigenDecomposition { n_sites, energies: Array1::from(energies), vectors, min_gap, tol_deg })
}

fn smallest_gap(energies: &[f64], tol: f64) -> Option<f64> {
    // For sorted energies, the closest partner above tolerance of E_m is the
    // first E_n with E_n - E_m > tol.
    let mut best: Option<f64> = None;
    for (m, &e) in energies.iter().enumerate() {
        let rest = &energies[m + 1..];
        let idx = rest.partition_point(|&x| x - e <= tol);
        if let Some(&x) = rest.get(idx) {
            let gap = x - e;
            best = Some(best.map_or(gap, |b: f64| b.min(gap)));
        }
    }
    best
}

fn lapack_check(routine: &'static str, info: i32) -> Result<()> {
    if info == 0 { Ok(()) } else { Err(Error::Lapack { routine, info }) }
}

fn dsyevd(n: usize, a: &mut [f64]) -> Result<Vec<f64>> {
    let ni = n as i32;
    let mut w = vec![0.0; n];
    let (mut work, mut iwork, mut info) = (vec![0.0; 1], vec![0i32; 1], 0);
    unsafe {
        lapack::dsyevd(b'V', b'U', ni, a, ni, &mut w, &mut work, -1, &mut iwork, -1, &mut info);
    }
    lapack_check("dsyevd", info)?;
    let (lwork, liwork) = (work[0] as i32, iwork[0]);
    work = vec![0.0; lwork as usize];
    iwork = vec![0; liwork as usize];
    unsafe {
        lapack::dsyevd(b'V', b'U', ni, a, ni, &mut w, &mut work, lwork, &mut iwork, liwork, &mut info);
    }
    lapack_check("dsyevd", info)?;
    Ok(w)
}

fn zheevd(n: usize, a: &mut [Complex64]) -> Result<Vec<f64>> {
    let ni = n as i32;
    let mut w = vec![0.0; n];
    let mut work = vec![Complex64::new(0.0, 0.0); 1];
    let (mut rwork, mut iwork, mut info) = (vec![0.0; 1], vec![0i32; 1], 0);
    unsafe {
        lapack::zheevd(
            b'V', b'U', ni, a, ni, &mut w, &mut work, -1, &mut rwork, -1, &mut iwork, -1, &mut info,
        );
    }
    lapack_check("zheevd", info)?;
    let (lwork, lrwork, liwork) = (work[0].re as i32, rwork[0] as i32, iwork[0]);
    work = vec![Complex64::new(0.0, 0.0); lwork as usize];
    rwork = vec![0.0; lrwork as usize];
    iwork = vec![0; liwork as usize];
    unsafe {
        lapack::zheevd(
            b'V', b'U', ni, a, ni, &mut w, &mut work, lwork, &mut rwork, lrwork, &mut iwork,
            liwork, &mut info,
        );
    }
    lapack_check("zheevd", info)?;
    Ok(w)
}

/// An operator expressed in the eigenbasis, `X = V† A V`.
#[derive(Debug, Clone)]
pub enum EigenbasisOperator {
    Real(Array2<f64>),
    Complex(Array2<Complex64>),
}

impl EigenbasisOperator {
    pub fn dim(&self) -> usize {
        match self {
            Self::Real(x) => x.nrows(),
            Self::Complex(x) => x.nrows(),
        }
    }

    #[inline]
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        match self {
            Self::Real(x) => Complex64::new(x[[m, n]], 0.0),
            Self::Complex(x) => x[[m, n]],
        }
    }

    pub fn matvec(&self, c: &Array1<Complex64>) -> Array1<Complex64> {
        match self {
            Self::Real(x) => real_matvec(x, c),
            Self::Complex(x) => x.dot(c),
        }
    }

    /// `y_m = Σ_n X_mn k(m, n) c_n` for an elementwise kernel `k`.
    pub fn kernel_matvec(
        &self,
        c: &Array1<Complex64>,
        k: impl Fn(usize, usize) -> Complex64,
    ) -> Array1<Complex64> {
        let dim = self.dim();
        Array1::from_shape_fn(dim, |m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..dim {
                let x = self.get(m, n);
                if x.re != 0.0 || x.im != 0.0 {
                    acc += x * k(m, n) * c[n];
                }
            }
            acc
        })
    }

    pub fn to_complex(&self) -> Array2<Complex64> {
        match self {
            Self::Real(x) => x.mapv(|v| Complex64::new(v, 0.0)),
            Self::Complex(x) => x.clone(),
        }
    }
}

/// Real matrix times complex vector as two real GEMVs.
fn real_matvec(x: &Array2<f64>, c: &Array1<Complex64>) -> Array1<Complex64> {
    let re = x.dot(&c.mapv(|v| v.re));
    let im = x.dot(&c.mapv(|v| v.im));
    Zip::from(&re).and(&im).map_collect(|&a, &b| Complex64::new(a, b))
}

impl EigenDecomposition {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &Array1<f64> {
        &self.energies
    }

    /// Smallest `|E_m - E_n|` above `tol_deg`; `None` when the spectrum is a
    /// single degenerate level.
    pub fn min_gap(&self) -> Option<f64> {
        self.min_gap
    }

    pub fn tol_deg(&self) -> f64 {
        self.tol_deg
    }

    pub fn has_real_vectors(&self) -> bool {
        matches!(self.vectors, Vectors::Real(_))
    }

    /// Eigenvector `m` in the computational basis.
    pub fn vector(&self, m: usize) -> StateVector {
        match &self.vectors {
            Vectors::Real(vt) => vt.row(m).mapv(|v| Complex64::new(v, 0.0)),
            Vectors::Complex(vt) => vt.row(m).to_owned(),
        }
    }

    /// Matrix with eigenvectors as columns.
    pub fn vectors(&self) -> Array2<Complex64> {
        match &self.vectors {
            Vectors::Real(vt) => vt.t().mapv(|v| Complex64::new(v, 0.0)),
            Vectors::Complex(vt) => vt.t().to_owned(),
        }
    }

    /// Amplitudes `c = V† ψ`.
    pub fn to_eigenbasis(&self, psi: &StateVector) -> Array1<Complex64> {
        match &self.vectors {
            Vectors::Real(vt) => real_matvec(vt, psi),
            Vectors::Complex(vt) => vt.mapv(|v| v.conj()).dot(psi),
        }
    }

    /// `ψ = V c`.
    pub fn from_eigenbasis(&self, c: &Array1<Complex64>) -> StateVector {
        match &self.vectors {
            Vectors::Real(vt) => real_matvec(&vt.t().to_owned(), c),
            Vectors::Complex(vt) => vt.t().dot(c),
        }
    }

    /// `V† A V` for a sparse `A`; real whenever both `A` and `V` are.
    pub fn operator_to_eigenbasis(&self, a: &SparseOperator) -> EigenbasisOperator {
        let dim = self.dim();
        assert_eq!(a.dim(), dim);
        match &self.vectors {
            Vectors::Real(vt) if a.is_real() => {
                let u = vt.t().as_standard_layout().into_owned();
                let mut au = Array2::<f64>::zeros((dim, dim));
                for &(r, c, v) in a.entries() {
                    au.row_mut(r).scaled_add(v.re, &u.row(c));
                }
                drop(u);
                EigenbasisOperator::Real(vt.dot(&au))
            }
            _ => {
                let vt = match &self.vectors {
                    Vectors::Real(vt) => vt.mapv(|v| Complex64::new(v, 0.0)),
                    Vectors::Complex(vt) => vt.clone(),
                };
                let u = vt.t().as_standard_layout().into_owned();
                let mut au = Array2::<Complex64>::zeros((dim, dim));
                for &(r, c, v) in a.entries() {
                    au.row_mut(r).scaled_add(v, &u.row(c));
                }
                EigenbasisOperator::Complex(vt.mapv(|v| v.conj()).dot(&au))
            }
        }
    }

    /// `V X V†`, back to the computational basis.
    pub fn eigenbasis_to_dense(&self, x: &Array2<Complex64>) -> Array2<Complex64> {
        let v = self.vectors();
        let vh = v.t().mapv(|z| z.conj());
        v.dot(x).dot(&vh)
    }

    /// `max |H V - V E| / ‖H‖_max`.
    pub fn residual(&self, h: &SparseOperator) -> f64 {
        let v = self.vectors();
        let hv = h.to_dense().dot(&v);
        let mut worst: f64 = 0.0;
        for ((i, m), &x) in hv.indexed_iter() {
            worst = worst.max((x - v[[i, m]] * self.energies[m]).norm());
        }
        worst / h.max_abs().max(f64::MIN_POSITIVE)
    }

    /// `max |V† V - 1|`.
    pub fn orthogonality_error(&self) -> f64 {
        let v = self.vectors();
        let g = v.t().mapv(|z| z.conj()).dot(&v);
        g.indexed_iter()
            .map(|((a, b), &z)| (z - if a == b { 1.0 } else { 0.0 }).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{build_hamiltonian, realize_pauli_string, ModelSpec, Pauli, PauliString};

    #[test]
    fn single_spin_field() {
        let h = realize_pauli_string(&PauliString::real(1, [(0, Pauli::Z)], -1.0).unwrap());
        let eig = eigendecompose(&h).unwrap();
        assert_eq!(eig.energies().to_vec(), vec![-1.0, 1.0]);
        assert_eq!(eig.min_gap(), Some(2.0));
    }

    #[test]
    fn tfi_two_sites_spectrum() {
        let (h, _) = build_hamiltonian(&ModelSpec::tfi(2, 1.0, 0.0)).unwrap();
        let eig = eigendecompose(&h).unwrap();
        let e = eig.energies();
        for (x, want) in e.iter().zip([-2.0, -2.0, 2.0, 2.0]) {
            assert!((x - want).abs() < 1e-12);
        }
        assert!((eig.min_gap().unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn invariants_real_and_complex_paths() {
        let (h, _) = build_hamiltonian(&ModelSpec::chaotic(5, 1.0, 0.4, 0.9)).unwrap();
        let eig = eigendecompose(&h).unwrap();
        assert!(eig.has_real_vectors());
        assert!(eig.residual(&h) < 1e-9);
        assert!(eig.orthogonality_error() < 1e-9);

        let n = 4;
        let terms = vec![
            PauliString::real(n, [(0, Pauli::Y)], 0.7).unwrap(),
            PauliString::real(n, [(1, Pauli::X), (2, Pauli::Y)], -0.3).unwrap(),
            PauliString::real(n, [(2, Pauli::Z), (3, Pauli::X)], 0.5).unwrap(),
        ];
        let (h, _) = build_hamiltonian(&ModelSpec::custom(n, 0.8, terms)).unwrap();
        assert!(!h.is_real());
        let eig = eigendecompose(&h).unwrap();
        assert!(!eig.has_real_vectors());
        assert!(eig.residual(&h) < 1e-9);
        assert!(eig.orthogonality_error() < 1e-9);
    }

    #[test]
    fn basis_round_trip_and_operator_transform() {
        let m = ModelSpec::tfi(4, 2.0, 5.0);
        let (h, dh) = build_hamiltonian(&m).unwrap();
        let eig = eigendecompose(&h).unwrap();
        let psi = crate::operator::realize_product_state(&crate::ProductStateSpec::new(4, 1.1, 0.4));
        let back = eig.from_eigenbasis(&eig.to_eigenbasis(&psi));
        assert!((&back - &psi).iter().all(|v| v.norm() < 1e-12));

        let x = eig.operator_to_eigenbasis(&dh).to_complex();
        let dense = eig.eigenbasis_to_dense(&x);
        assert!((&dense - &dh.to_dense()).iter().all(|v| v.norm() < 1e-12));
        // H is diagonal in its own eigenbasis
        let hx = eig.operator_to_eigenbasis(&h);
        for a in 0..16 {
            for b in 0..16 {
                let want = if a == b { eig.energies()[a] } else { 0.0 };
                assert!((hx.get(a, b).re - want).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_and_oversized() {
        let p = PauliString::new(1, [(0, Pauli::X)], Complex64::new(0.0, 1.0)).unwrap();
        assert!(matches!(
            eigendecompose(&realize_pauli_string(&p)),
            Err(Error::NotHermitian { .. })
        ));
        let big = SparseOperator::zeros(15);
        assert!(matches!(eigendecompose(&big), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn gap_search_skips_degeneracies() {
        assert_eq!(smallest_gap(&[0.0, 0.0, 1.0, 3.0], 1e-9), Some(1.0));
        assert_eq!(smallest_gap(&[1.0, 1.0], 1e-9), None);
        assert_eq!(smallest_gap(&[0.0, 1e-12, 0.5], 1e-9), Some(0.5 - 1e-12));
    }
}
