use std::ops::{Add, Mul, Neg, Sub};

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;

/// Hermiticity threshold for operators built from real-coefficient strings.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Coordinate-format complex matrix of dimension `2^n_sites`.
///
/// Entries are kept sorted by `(row, col)` with duplicates merged and exact
/// zeros dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    n_sites: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOperator {
    pub fn zeros(n_sites: usize) -> Self {
        Self { n_sites, entries: Vec::new() }
    }

    pub fn identity(n_sites: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::from_triplets(n_sites, (0..1usize << n_sites).map(|i| (i, i, one)))
    }

    pub fn from_triplets(
        n_sites: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let dim = 1usize << n_sites;
        let mut entries: Vec<_> = triplets.into_iter().collect();
        debug_assert!(entries.iter().all(|&(r, c, _)| r < dim && c < dim));
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != Complex64::new(0.0, 0.0));
        Self { n_sites, entries: merged }
    }

    /// Keeps every nonzero entry of a dense matrix.
    pub fn from_dense(n_sites: usize, m: &Array2<Complex64>) -> Self {
        assert_eq!(m.dim(), (1 << n_sites, 1 << n_sites));
        let triplets = m
            .indexed_iter()
            .filter(|(_, v)| v.norm_sqr() > 0.0)
            .map(|((r, c), &v)| (r, c, v));
        Self::from_triplets(n_sites, triplets)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map(|i| self.entries[i].2)
            .unwrap_or_default()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let triplets = self.entries.iter().map(|&(r, c, v)| (r, c, v * s));
        Self::from_triplets(self.n_sites, triplets)
    }

    pub fn adjoint(&self) -> Self {
        let triplets = self.entries.iter().map(|&(r, c, v)| (c, r, v.conj()));
        Self::from_triplets(self.n_sites, triplets)
    }

    /// Largest entry modulus, `‖M‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M†|` over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for &(r, c, v) in &self.entries {
            dev = dev.max((v - self.get(c, r).conj()).norm());
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() < HERMITIAN_TOL
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.2.im == 0.0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|e| e.0 == e.1)
    }

    pub fn matvec(&self, x: ArrayView1<Complex64>) -> Array1<Complex64> {
        assert_eq!(x.len(), self.dim());
        let mut y = Array1::zeros(self.dim());
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    pub fn to_dense(&self) -> Array2<Complex64> {
        let mut m = Array2::zeros((self.dim(), self.dim()));
        for &(r, c, v) in &self.entries {
            m[[r, c]] = v;
        }
        m
    }

    /// `max |(AB - BA)_{rc}|`, through dense matrices.
    pub fn commutator_max_norm(&self, other: &Self) -> f64 {
        let (a, b) = (self.to_dense(), other.to_dense());
        let comm = a.dot(&b) - b.dot(&a);
        comm.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        assert_eq!(self.n_sites, other.n_sites, "operators act on different chains");
        let rhs = other.entries.iter().map(|&(r, c, v)| (r, c, v * sign));
        Self::from_triplets(self.n_sites, self.entries.iter().copied().chain(rhs))
    }
}

impl Add for &SparseOperator {
    type Output = SparseOperator;
    fn add(self, rhs: Self) -> SparseOperator {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &SparseOperator {
    type Output = SparseOperator;
    fn sub(self, rhs: Self) -> SparseOperator {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &SparseOperator {
    type Output = SparseOperator;
    fn neg(self) -> SparseOperator {
        self.scaled(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<f64> for &SparseOperator {
    type Output = SparseOperator;
    fn mul(self, rhs: f64) -> SparseOperator {
        self.scaled(Complex64::new(rhs, 0.0))
    }
}

impl std::iter::Sum for SparseOperator {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut n_sites = None;
        let mut all = Vec::new();
        for op in iter {
            assert!(n_sites.is_none_or(|n| n == op.n_sites), "operators act on different chains");
            n_sites = Some(op.n_sites);
            all.extend(op.entries);
        }
        Self::from_triplets(n_sites.expect("sum of no operators has no dimension"), all)
    }
}
