//! Dense complex-matrix primitives.
//!
//! [`ComplexMatrix`] is a thin square-matrix wrapper over `nalgebra`. The
//! eigensolver behind [`hermitian_eig`] is nalgebra's Hermitian QR iteration;
//! everything else here (validation, square roots, sampling) is local.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 64;

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::DimTooSmall(dim))
    } else if dim > MAX_DIM {
        Err(Error::DimTooLarge { dim, max: MAX_DIM })
    } else {
        Ok(())
    }
}

/// Validation thresholds for [`DensityState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed `‖ρ − ρ†‖_HS`, multiplied by `d`.
    pub hermitian: f64,
    /// Allowed `|tr ρ − 1|`.
    pub trace: f64,
    /// Eigenvalues in `[-negative_eigenvalue, 0)` are clamped to zero.
    pub negative_eigenvalue: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            trace: 1e-12,
            negative_eigenvalue: 1e-10,
        }
    }
}

/// A square complex matrix with `2 <= dim <= MAX_DIM`.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from `dim²` entries in row-major order.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::BadShape {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self {
            inner: DMatrix::from_row_slice(dim, dim, &entries),
        })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            inner: DMatrix::from_fn(dim, dim, f),
        })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            inner: DMatrix::identity(dim, dim),
        })
    }

    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        let dim = values.len();
        Self::from_fn(dim, |i, j| if i == j { values[i] } else { Complex64::new(0.0, 0.0) })
    }

    /// `|v⟩⟨v|` for an arbitrary (not necessarily normalized) vector.
    pub fn outer(v: &[Complex64]) -> Result<Self> {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub(crate) fn from_nalgebra(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.is_square());
        Self { inner }
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let d = self.dim();
        (0..d * d).map(|n| self.inner[(n / d, n % d)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            inner: &self.inner * z,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    /// Hilbert-Schmidt norm `sqrt(tr(A A†))`.
    pub fn hs_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A − A†‖_HS`.
    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim();
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += (self.inner[(i, j)] - self.inner[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖A†A − 1‖_HS`.
    pub fn unitary_deviation(&self) -> f64 {
        let d = self.dim();
        let g = self.inner.adjoint() * &self.inner;
        (g - DMatrix::<Complex64>::identity(d, d))
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.inner.adjoint();
        Self {
            inner: (&self.inner + adj) * Complex64::new(0.5, 0.0),
        }
    }

    /// `U A U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimMismatch(u.dim(), self.dim()));
        }
        Ok(Self {
            inner: &u.inner * &self.inner * u.inner.adjoint(),
        })
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖_HS`.
    pub fn hs_distance(&self, other: &ComplexMatrix) -> f64 {
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix(d={}) ", self.dim())?;
        f.debug_list()
            .entries(self.inner.row_iter().map(|r| r.iter().copied().collect::<Vec<_>>()))
            .finish()
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in product");
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in sum");
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in difference");
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

/// Hilbert-Schmidt inner product `tr(a† b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    Ok(a.inner
        .iter()
        .zip(b.inner.iter())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = self.eigenvectors.as_nalgebra();
        let d = v.nrows();
        let mut scaled = v.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = Complex64::new(f(lambda), 0.0);
            for i in 0..d {
                scaled[(i, j)] *= w;
            }
        }
        ComplexMatrix::from_nalgebra(scaled * v.adjoint())
    }
}

pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let d = m.dim();
    let deviation = m.hermitian_deviation();
    if deviation > 1e-10 * d as f64 {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = m.hermitian_part().inner.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let vectors = DMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_nalgebra(vectors),
    })
}

/// Eigenvalues at or below this multiple of `d · ε · λ_max` are rounding
/// noise around an exact zero.
pub(crate) const RANK_CUTOFF_ULPS: f64 = 8.0;

/// Square root of a positive semidefinite matrix. Eigenvalues in
/// `[-clamp, 0)` are treated as zero; anything more negative is an error.
/// Eigenvalues within a few ulps of zero are also zeroed, since `√·` would
/// amplify `1e-17` of noise into `3e-9`.
pub fn psd_sqrt_matrix(m: &ComplexMatrix, clamp: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let (Some(&lowest), Some(&highest)) = (eig.eigenvalues.first(), eig.eigenvalues.last()) else {
        unreachable!("dimension is at least 2");
    };
    if lowest < -clamp {
        return Err(Error::NegativeEigenvalue(lowest));
    }
    let cutoff = RANK_CUTOFF_ULPS * m.dim() as f64 * f64::EPSILON * highest.max(0.0);
    Ok(eig
        .map_spectrum(|x| if x <= cutoff { 0.0 } else { x.sqrt() })
        .hermitian_part())
}

/// A validated density operator: Hermitian, unit trace, positive semidefinite.
///
/// The square root is computed at most once and then shared; the cache is a
/// `OnceLock`, so concurrent readers only ever see the finished value.
pub struct DensityState {
    rho: ComplexMatrix,
    clamp: f64,
    sqrt_rho: OnceLock<ComplexMatrix>,
}

impl DensityState {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(rho, Tolerances::default())
    }

    pub fn with_tolerances(rho: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        let d = rho.dim();
        let deviation = rho.hermitian_deviation();
        if deviation > tol.hermitian * d as f64 {
            return Err(Error::NotHermitian { deviation });
        }
        let rho = rho.hermitian_part();
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > tol.trace {
            return Err(Error::BadTrace(tr));
        }
        let eig = hermitian_eig(&rho)?;
        if eig.eigenvalues[0] < -tol.negative_eigenvalue {
            return Err(Error::NegativeEigenvalue(eig.eigenvalues[0]));
        }
        Ok(Self {
            rho,
            clamp: tol.negative_eigenvalue,
            sqrt_rho: OnceLock::new(),
        })
    }

    /// `|ψ⟩⟨ψ|`; the amplitudes must already be normalized to within `1e-10`.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        let v: Vec<Complex64> = amplitudes.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v)?)
    }

    /// Computational basis projector `|k⟩⟨k|`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        check_dim(dim)?;
        if k >= dim {
            return Err(Error::IndexOutOfRange { k, l: 0, dim });
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        Self::pure(&v)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let state = Self::new(ComplexMatrix::identity(dim)?.scale(Complex64::new(1.0 / dim as f64, 0.0)))?;
        let _ = state
            .sqrt_rho
            .set(ComplexMatrix::identity(dim)?.scale(Complex64::new(1.0 / (dim as f64).sqrt(), 0.0)));
        Ok(state)
    }

    /// Convex combination `Σ w_i ρ_i`; weights must be non-negative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityState)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::DimTooSmall(0))?;
        let d = first.1.dim();
        let mut acc = ComplexMatrix::zeros(d)?;
        for (w, s) in parts {
            if s.dim() != d {
                return Err(Error::DimMismatch(d, s.dim()));
            }
            if *w < 0.0 {
                return Err(Error::BadP(*w));
            }
            acc = &acc + &s.rho.scale(Complex64::new(*w, 0.0));
        }
        Self::new(acc)
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.rho.conjugate_by(u)?)
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.rho.hs_norm().powi(2)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.rho)
            .map(|e| e.eigenvalues)
            .unwrap_or_default()
    }

    /// The cached `√ρ`, computing it on first use.
    pub fn sqrt(&self) -> Result<&ComplexMatrix> {
        if let Some(s) = self.sqrt_rho.get() {
            return Ok(s);
        }
        let s = psd_sqrt_matrix(&self.rho, self.clamp)?;
        Ok(self.sqrt_rho.get_or_init(|| s))
    }

    pub fn has_cached_sqrt(&self) -> bool {
        self.sqrt_rho.get().is_some()
    }
}

impl Clone for DensityState {
    fn clone(&self) -> Self {
        let sqrt_rho = OnceLock::new();
        if let Some(s) = self.sqrt_rho.get() {
            let _ = sqrt_rho.set(s.clone());
        }
        Self {
            rho: self.rho.clone(),
            clamp: self.clamp,
            sqrt_rho,
        }
    }
}

impl fmt::Debug for DensityState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityState")
            .field("rho", &self.rho)
            .field("sqrt_cached", &self.has_cached_sqrt())
            .finish()
    }
}

/// `√ρ`, cached in the state.
pub fn psd_sqrt(rho: &DensityState) -> Result<ComplexMatrix> {
    rho.sqrt().cloned()
}

/// Deterministic generator for a given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for item `index` of a run seeded with `seed`: one ChaCha stream per index.
pub fn substream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector (normalized standard complex Gaussian).
pub fn random_unit_vector(d: usize, rng: &mut impl Rng) -> Result<Vec<Complex64>> {
    check_dim(d)?;
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return Ok(v.into_iter().map(|z| z / norm).collect());
        }
    }
}

pub fn random_pure_with(d: usize, rng: &mut impl Rng) -> Result<DensityState> {
    DensityState::pure(&random_unit_vector(d, rng)?)
}

/// Ginibre state `G G† / tr(G G†)` with `G` a `d × rank` complex Gaussian matrix.
pub fn random_mixed_with(d: usize, rank: usize, rng: &mut impl Rng) -> Result<DensityState> {
    check_dim(d)?;
    if rank == 0 || rank > d {
        return Err(Error::BadRank { rank, dim: d });
    }
    let g = DMatrix::<Complex64>::from_fn(d, rank, |_, _| gaussian(rng));
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    DensityState::new(ComplexMatrix::from_nalgebra(w / Complex64::new(tr, 0.0)))
}

pub fn random_pure(d: usize, seed: u64) -> Result<DensityState> {
    random_pure_with(d, &mut seeded_rng(seed))
}

pub fn random_mixed(d: usize, rank: usize, seed: u64) -> Result<DensityState> {
    random_mixed_with(d, rank, &mut seeded_rng(seed))
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s diagonal
/// moved into `Q`.
pub fn random_unitary_with(d: usize, rng: &mut impl Rng) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let g = DMatrix::<Complex64>::from_fn(d, d, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(ComplexMatrix::from_nalgebra(q))
}

pub fn random_unitary(d: usize, seed: u64) -> Result<ComplexMatrix> {
    random_unitary_with(d, &mut seeded_rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(d: usize, seed: u64) -> ComplexMatrix {
        let mut rng = seeded_rng(seed);
        let a = ComplexMatrix::from_fn(d, |_, _| gaussian(&mut rng)).unwrap();
        a.hermitian_part()
    }

    #[test]
    fn eig_of_diagonal_sorts_ascending() {
        let m = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0, 1.0]);
        let v = &e.eigenvectors;
        assert!((v.get(1, 0).norm() - 1.0).abs() < 1e-15);
        assert!((v.get(0, 1).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_of_scalar_matrix() {
        let m = ComplexMatrix::identity(2).unwrap().scale(c(0.5, 0.0));
        let e = hermitian_eig(&m).unwrap();
        for l in e.eigenvalues {
            assert!((l - 0.5).abs() < 1e-15);
        }
        assert!(e.eigenvectors.unitary_deviation() < 1e-14);
    }

    #[test]
    fn eig_of_sigma_x() {
        let sx = ComplexMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let e = hermitian_eig(&sx).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // columns are (1, -1)/√2 and (1, 1)/√2 up to a phase
        let v0 = [e.eigenvectors.get(0, 0), e.eigenvectors.get(1, 0)];
        let v1 = [e.eigenvectors.get(0, 1), e.eigenvectors.get(1, 1)];
        assert!(((v0[0].conj() * s - v0[1].conj() * s).norm() - 1.0).abs() < 1e-14);
        assert!(((v1[0].conj() * s + v1[1].conj() * s).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_reconstruction_up_to_d16() {
        for d in 2..=16 {
            for seed in 0..5 {
                let m = random_hermitian(d, 100 * d as u64 + seed);
                let e = hermitian_eig(&m).unwrap();
                let back = e.map_spectrum(|x| x);
                assert!(back.hs_distance(&m) / m.hs_norm() <= 1e-10, "d={d}");
                assert!(e.eigenvectors.unitary_deviation() <= 1e-10 * d as f64);
                assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let mm = DensityState::maximally_mixed(3).unwrap();
        let s = psd_sqrt(&mm).unwrap();
        let expect = ComplexMatrix::identity(3).unwrap().scale(c(1.0 / 3f64.sqrt(), 0.0));
        assert!(s.max_abs_diff(&expect) < 1e-15);

        let p0 = DensityState::basis(2, 0).unwrap();
        assert!(psd_sqrt(&p0).unwrap().max_abs_diff(p0.matrix()) < 1e-10);

        let diag = DensityState::new(ComplexMatrix::diagonal(&[c(0.25, 0.), c(0.75, 0.)]).unwrap()).unwrap();
        let s = psd_sqrt(&diag).unwrap();
        let expect = ComplexMatrix::diagonal(&[c(0.5, 0.), c(0.75f64.sqrt(), 0.)]).unwrap();
        assert!(s.max_abs_diff(&expect) < 1e-14);
        assert!(diag.has_cached_sqrt());
    }

    #[test]
    fn sqrt_of_random_states_squares_back() {
        for d in 2..=8 {
            for rank in 1..=d {
                let rho = random_mixed(d, rank, 7 * d as u64 + rank as u64).unwrap();
                let s = psd_sqrt(&rho).unwrap();
                assert!(s.hermitian_deviation() < 1e-12);
                assert!((&s * &s).hs_distance(rho.matrix()) <= 1e-9);
                let e = hermitian_eig(&s).unwrap();
                assert!(e.eigenvalues[0] >= -1e-12);
            }
        }
    }

    #[test]
    fn negative_eigenvalues() {
        // tiny negative dust is clamped
        let dust = ComplexMatrix::diagonal(&[c(1.0 + 5e-11, 0.), c(-5e-11, 0.)]).unwrap();
        let rho = DensityState::new(dust).unwrap();
        let s = psd_sqrt(&rho).unwrap();
        assert_eq!(s.get(1, 1), c(0.0, 0.0));
        // a genuinely invalid matrix is rejected
        let bad = ComplexMatrix::diagonal(&[c(1.1, 0.), c(-0.1, 0.)]).unwrap();
        assert!(matches!(DensityState::new(bad.clone()), Err(Error::NegativeEigenvalue(_))));
        assert!(matches!(psd_sqrt_matrix(&bad, 1e-10), Err(Error::NegativeEigenvalue(_))));
    }

    #[test]
    fn density_validation_errors() {
        let bad_trace = ComplexMatrix::identity(2).unwrap();
        assert!(matches!(DensityState::new(bad_trace), Err(Error::BadTrace(_))));
        let not_herm = ComplexMatrix::new(2, vec![c(0.5, 0.), c(0.1, 0.), c(0., 0.), c(0.5, 0.)]).unwrap();
        assert!(matches!(DensityState::new(not_herm), Err(Error::NotHermitian { .. })));
        assert!(matches!(ComplexMatrix::identity(1), Err(Error::DimTooSmall(1))));
        assert!(matches!(ComplexMatrix::identity(65), Err(Error::DimTooLarge { .. })));
        assert!(matches!(
            ComplexMatrix::new(2, vec![c(0., 0.); 3]),
            Err(Error::BadShape { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn hs_inner_examples() {
        let i3 = ComplexMatrix::identity(3).unwrap();
        assert!((hs_inner(&i3, &i3).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
        let sx = ComplexMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let sz = ComplexMatrix::diagonal(&[c(1., 0.), c(-1., 0.)]).unwrap();
        assert_eq!(hs_inner(&sx, &sz).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            hs_inner(&sx, &i3),
            Err(Error::DimMismatch(2, 3))
        ));
    }

    #[test]
    fn random_pure_properties() {
        for d in 2..=6 {
            for seed in 0..10 {
                let rho = random_pure(d, seed).unwrap();
                assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
                assert!((rho.purity() - 1.0).abs() < 1e-10);
            }
        }
        let a = random_pure(2, 1).unwrap();
        let b = random_pure(2, 2).unwrap();
        assert!(a.matrix().hs_distance(b.matrix()) > 1e-3);
        let again = random_pure(2, 1).unwrap();
        assert_eq!(a.matrix(), again.matrix());
    }

    #[test]
    fn random_mixed_properties() {
        assert!((random_mixed(4, 1, 3).unwrap().purity() - 1.0).abs() < 1e-10);
        for seed in 0..100 {
            let rho = random_mixed(3, 3, seed).unwrap();
            assert!(rho.eigenvalues()[0] > 1e-8, "seed {seed}");
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
        assert!(matches!(random_mixed(3, 0, 0), Err(Error::BadRank { .. })));
        assert!(matches!(random_mixed(3, 4, 0), Err(Error::BadRank { .. })));
    }

    #[test]
    fn haar_unitary_is_unitary() {
        for d in [2, 3, 5, 9] {
            assert!(random_unitary(d, 11).unwrap().unitary_deviation() < 1e-12 * d as f64);
        }
    }

    #[test]
    fn sqrt_cache_is_shared_across_threads() {
        let rho = random_mixed(4, 4, 5).unwrap();
        let roots: Vec<ComplexMatrix> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..4).map(|_| s.spawn(|| rho.sqrt().unwrap().clone())).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in &roots {
            assert_eq!(r, &roots[0]);
        }
    }

    proptest! {
        #[test]
        fn constructed_states_have_valid_spectrum(d in 2usize..7, rank_sel in 0usize..7, seed in any::<u64>()) {
            let rank = 1 + rank_sel % d;
            let rho = random_mixed(d, rank, seed).unwrap();
            let ev = rho.eigenvalues();
            prop_assert!(ev.iter().all(|&l| (-1e-10..=1.0 + 1e-10).contains(&l)));
            prop_assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }
}
