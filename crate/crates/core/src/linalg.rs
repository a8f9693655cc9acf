//! Dense complex linear algebra for the small operators a walk needs.
//!
//! Matrices are stored row-major and indexed from zero internally. Public walk
//! APIs that take *sites* use 1-based labels to match vertex numbering.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hermiticity tolerance applied by [`HermitianOperator::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Off-diagonal Frobenius-norm tolerance for the Jacobi sweeps, relative to `max(1, ‖H‖_F)`.
pub const JACOBI_TOL: f64 = 1e-13;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Builds a matrix from row-major entries, checking squareness and finiteness.
    pub fn from_row_major(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::NotSquare { rows: dim, len: data.len() });
        }
        if let Some(pos) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { row: pos / dim, col: pos % dim });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::NotSquare { rows: dim, len: r.len() * dim });
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(dim, data)
    }

    pub fn from_real_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.dim, v.len());
        let n = self.dim;
        (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].iter().zip(v).fold(Complex::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// `max_{j,k} |A_jk - conj(A_kj)|` with the location of the worst pair.
    pub fn hermiticity_defect(&self) -> (T, usize, usize) {
        let n = self.dim;
        let mut worst = (T::zero(), 0, 0);
        for i in 0..n {
            for j in i..n {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }

    /// `max |A - B|` entrywise.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// `‖A†A − I‖_max`
    pub fn unitarity_defect(&self) -> T {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn column(&self, c: usize) -> Vec<Complex<T>> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn map<F: Fn(Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| f(z)).collect() }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.dim + c]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.dim + c]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

/// A complex matrix that has been checked to be Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> HermitianOperator<T> {
    /// Accepts `m` if `max |m_jk − conj(m_kj)| ≤ 1e−12`, reporting the worst pair otherwise.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerance(matrix, T::lit(HERMITIAN_TOL))
    }

    pub fn with_tolerance(matrix: ComplexMatrix<T>, tol: T) -> Result<Self> {
        let (dev, row, col) = matrix.hermiticity_defect();
        if dev > tol {
            return Err(Error::NotHermitian {
                row: row + 1,
                col: col + 1,
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { matrix })
    }

    /// Hermitian part `(A + A†)/2` together with the max-norm of the discarded anti-Hermitian part.
    pub fn hermitize(matrix: &ComplexMatrix<T>) -> (Self, T) {
        let adj = matrix.adjoint();
        let half = Complex::new(T::lit(0.5), T::zero());
        let herm = matrix.add(&adj).scale(half);
        let anti = matrix.sub(&adj).scale(half);
        (Self { matrix: herm }, anti.max_norm())
    }

    pub fn zeros(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::zeros(dim) }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// Adds `c·I`.
    pub fn shifted(&self, c: T) -> Self {
        let mut m = self.matrix.clone();
        for i in 0..m.dim() {
            m[(i, i)] = m[(i, i)] + Complex::new(c, T::zero());
        }
        Self { matrix: m }
    }

    /// `⟨ψ|A|ψ⟩` (real for Hermitian `A`).
    pub fn expectation(&self, psi: &StateVector<T>) -> T {
        let av = self.matrix.apply(psi.amplitudes());
        inner(psi.amplitudes(), &av).re
    }
}

/// Normalized state vector in the site basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Normalizes `amplitudes`; rejects the zero vector.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, actual: 0 });
        }
        let norm = amplitudes.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let inv = Complex::new(norm.recip(), T::zero());
        Ok(Self { amplitudes: amplitudes.into_iter().map(|z| z * inv).collect() })
    }

    /// `|site⟩`, 1-based.
    pub fn basis(dim: usize, site: usize) -> Result<Self> {
        check_site(site, dim)?;
        let mut a = vec![Complex::zero(); dim];
        a[site - 1] = Complex::one();
        Ok(Self { amplitudes: a })
    }

    /// `(1/√N) Σ_j |j⟩`
    pub fn uniform(dim: usize) -> Result<Self> {
        Self::new(vec![Complex::one(); dim])
    }

    /// `(|a⟩ + e^{iφ}|b⟩)/√2`, 1-based sites.
    pub fn pair_superposition(dim: usize, a: usize, b: usize, phi: T) -> Result<Self> {
        check_site(a, dim)?;
        check_site(b, dim)?;
        if a == b {
            return Err(Error::InvalidParameter(format!("superposition needs distinct sites, got {a} twice")));
        }
        let mut amp = vec![Complex::zero(); dim];
        amp[a - 1] = Complex::one();
        amp[b - 1] = Complex::from_polar(T::one(), phi);
        Self::new(amp)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex<T> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// `M|ψ⟩`, renormalized against rounding drift.
    pub fn evolve(&self, m: &ComplexMatrix<T>) -> Result<Self> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: m.dim() });
        }
        Self::new(m.apply(&self.amplitudes))
    }

    pub fn with_global_phase(&self, phase: T) -> Self {
        let g = Complex::from_polar(T::one(), phase);
        Self { amplitudes: self.amplitudes.iter().map(|&z| z * g).collect() }
    }
}

/// `Σ conj(a_i) b_i`
pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y)
}

pub(crate) fn check_site(site: usize, dim: usize) -> Result<()> {
    if site == 0 || site > dim {
        return Err(Error::SiteOutOfRange { site, dim });
    }
    Ok(())
}

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as matrix columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<T> {
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V·diag(E)·V†`
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let v = &self.eigenvectors;
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::zero();
                for (k, &e) in self.eigenvalues.iter().enumerate() {
                    acc = acc + v[(i, k)] * v[(j, k)].conj() * e;
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `⟨j|e^{−iHt}|k⟩` with 0-based indices, O(N).
    pub fn propagator_entry(&self, j: usize, k: usize, t: T) -> Complex<T> {
        let v = &self.eigenvectors;
        self.eigenvalues.iter().enumerate().fold(Complex::zero(), |acc, (n, &e)| {
            acc + Complex::from_polar(T::one(), -e * t) * v[(j, n)] * v[(k, n)].conj()
        })
    }
}

/// Diagonalizes a Hermitian operator with cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies a
/// real plane rotation, so the accumulated transform stays unitary. Sweeps stop
/// once the off-diagonal Frobenius norm falls below `1e−13·max(1, ‖H‖_F)` (floored
/// at a few ulps for single precision) or after 100 sweeps.
pub fn hermitian_eigendecompose<T: Real>(h: &HermitianOperator<T>) -> Result<SpectralDecomposition<T>> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(T::one());
    let tol = T::tolerance_floor(JACOBI_TOL) * scale;

    let off_norm = |a: &ComplexMatrix<T>| {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= tol;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_norm(&a) <= tol;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps, off_norm: off_norm(&a).to_f64().unwrap_or(f64::NAN) });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let eigenvalues: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, new)] = v[(r, old)];
        }
    }
    reorthonormalize_clusters(&eigenvalues, &mut vectors, scale);

    Ok(SpectralDecomposition { eigenvalues, eigenvectors: vectors })
}

/// Applies `A ← J†AJ`, `V ← VJ` for the unitary Jacobi rotation zeroing `a_pq`.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= T::min_positive_value() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // e^{iα} = a_pq / |a_pq|
    let phase = apq / r;

    let tau = (aqq - app) / (T::lit(2.0) * r);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // J = [[c, s], [-s e^{-iα}, c e^{-iα}]] on (p, q)
    let jpp = Complex::new(c, T::zero());
    let jpq = Complex::new(s, T::zero());
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(app - t * r, T::zero());
    a[(q, q)] = Complex::new(aqq + t * r, T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Modified Gram-Schmidt inside each cluster of (numerically) equal eigenvalues.
fn reorthonormalize_clusters<T: Real>(eigenvalues: &[T], v: &mut ComplexMatrix<T>, scale: T) {
    let n = eigenvalues.len();
    let gap = T::tolerance_floor(1e-9) * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] <= gap {
            end += 1;
        }
        if end - start > 1 {
            for c in start..end {
                let mut col = v.column(c);
                for prev in start..c {
                    let pv = v.column(prev);
                    let proj = inner(&pv, &col);
                    for (x, y) in col.iter_mut().zip(&pv) {
                        *x = *x - *y * proj;
                    }
                }
                let norm = col.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
                for (r, z) in col.into_iter().enumerate() {
                    v[(r, c)] = z / norm;
                }
            }
        }
        start = end;
    }
}

/// `U(t) = Σ_n e^{−iE_n t}|E_n⟩⟨E_n|`
pub fn spectral_propagator<T: Real>(decomp: &SpectralDecomposition<T>, t: T) -> ComplexMatrix<T> {
    let n = decomp.dim();
    let v = decomp.eigenvectors();
    let phases: Vec<Complex<T>> = decomp.eigenvalues().iter().map(|&e| Complex::from_polar(T::one(), -e * t)).collect();
    let mut u = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::zero();
            for (k, &ph) in phases.iter().enumerate() {
                acc = acc + v[(i, k)] * ph * v[(j, k)].conj();
            }
            u[(i, j)] = acc;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    #[test]
    fn zero_matrix_diagonalizes_to_identity() {
        let h = HermitianOperator::new(ComplexMatrix::<f64>::zeros(6)).unwrap();
        let d = hermitian_eigendecompose(&h).unwrap();
        assert!(d.eigenvalues().iter().all(|&e| e == 0.0));
        assert_eq!(d.eigenvectors(), &ComplexMatrix::identity(6));
        let u = spectral_propagator(&d, 3.7);
        assert_eq!(u, ComplexMatrix::identity(6));
    }

    #[test]
    fn non_hermitian_input_names_the_pair() {
        let mut m = ComplexMatrix::<f64>::zeros(3);
        m[(0, 2)] = c(1.0, 0.0);
        m[(2, 0)] = c(1.0, 1e-6);
        match HermitianOperator::new(m) {
            Err(Error::NotHermitian { row, col, deviation }) => {
                assert_eq!((row, col), (1, 3));
                assert!((deviation - 1e-6).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn complex_2x2_closed_form() {
        // [[a, b],[b*, d]] has eigenvalues (a+d)/2 ± sqrt(((a-d)/2)^2 + |b|^2)
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.3, -2.0)], vec![c(0.3, 2.0), c(-0.5, 0.0)]]).unwrap();
        let d = hermitian_eigendecompose(&HermitianOperator::new(m.clone()).unwrap()).unwrap();
        let mid = 0.25;
        let rad = (0.75f64 * 0.75 + 0.09 + 4.0).sqrt();
        assert!((d.eigenvalues()[0] - (mid - rad)).abs() < 1e-14);
        assert!((d.eigenvalues()[1] - (mid + rad)).abs() < 1e-14);
        assert!(d.reconstruct().max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn propagator_at_time_zero_is_identity() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(2.0, 0.0)]]).unwrap();
        let d = hermitian_eigendecompose(&HermitianOperator::new(m).unwrap()).unwrap();
        let u = spectral_propagator(&d, 0.0);
        assert!(u.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn degenerate_cluster_stays_orthonormal() {
        // K4 adjacency: spectrum {3, -1, -1, -1}
        let mut m = ComplexMatrix::<f64>::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    m[(i, j)] = c(1.0, 0.0);
                }
            }
        }
        let d = hermitian_eigendecompose(&HermitianOperator::new(m.clone()).unwrap()).unwrap();
        for (e, want) in d.eigenvalues().iter().zip([-1.0, -1.0, -1.0, 3.0]) {
            assert!((e - want).abs() < 1e-13);
        }
        assert!(d.eigenvectors().unitarity_defect() < 1e-13);
        assert!(d.reconstruct().max_abs_diff(&m) < 1e-13);
    }

    #[test]
    fn single_precision_variant_works() {
        let m = ComplexMatrix::<f32>::from_rows(&[
            vec![Complex::new(2.0, 0.0), Complex::new(0.0, 1.0)],
            vec![Complex::new(0.0, -1.0), Complex::new(2.0, 0.0)],
        ])
        .unwrap();
        let d = hermitian_eigendecompose(&HermitianOperator::new(m).unwrap()).unwrap();
        assert!((d.eigenvalues()[0] - 1.0).abs() < 1e-6);
        assert!((d.eigenvalues()[1] - 3.0).abs() < 1e-6);
    }

    #[test]
    fn state_normalization_and_errors() {
        let s = StateVector::new(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert_eq!(StateVector::<f64>::new(vec![C::zero(); 3]), Err(Error::ZeroNorm));
        assert_eq!(StateVector::<f64>::basis(6, 7), Err(Error::SiteOutOfRange { site: 7, dim: 6 }));
        assert_eq!(StateVector::<f64>::basis(6, 0), Err(Error::SiteOutOfRange { site: 0, dim: 6 }));
        let p = StateVector::pair_superposition(6, 1, 2, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((p.amplitudes()[1] - c(0.0, 0.5f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn non_finite_entries_rejected() {
        let r = ComplexMatrix::from_row_major(2, vec![c(0.0, 0.0), c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(r, Err(Error::NonFinite { row: 0, col: 1 }));
        assert!(matches!(ComplexMatrix::<f64>::from_row_major(2, vec![C::zero(); 3]), Err(Error::NotSquare { .. })));
    }
}
