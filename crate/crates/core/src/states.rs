//! Canonical state families: qubit Bloch vectors, pure stabilizer states for
//! prime `d`, and SIC-POVM fiducials.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::matcore::{ComplexMatrix, DensityState};
use crate::weyl::{weyl_matrix, weyl_trace, WeylIndex};
use crate::{Error, Result};

/// Qubit Bloch vector, `ρ = ½(1 + r·σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    r1: f64,
    r2: f64,
    r3: f64,
}

impl BlochVector {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        let n2 = r1 * r1 + r2 * r2 + r3 * r3;
        if n2.is_nan() || n2 > 1.0 + 1e-12 {
            return Err(Error::BadBloch(n2.sqrt()));
        }
        Ok(Self { r1, r2, r3 })
    }

    pub fn components(&self) -> [f64; 3] {
        [self.r1, self.r2, self.r3]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }
}

pub fn bloch_to_state(b: BlochVector) -> Result<DensityState> {
    let h = |z: Complex64| z * 0.5;
    let [x, y, z] = b.components();
    DensityState::new(ComplexMatrix::new(
        2,
        vec![
            h(Complex64::new(1.0 + z, 0.0)),
            h(Complex64::new(x, -y)),
            h(Complex64::new(x, y)),
            h(Complex64::new(1.0 - z, 0.0)),
        ],
    )?)
}

/// `r_α = tr(ρ σ_α)`.
pub fn state_to_bloch(rho: &DensityState) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::WrongDim(rho.dim()));
    }
    let m = rho.matrix();
    let off = m.get(1, 0);
    let x = 2.0 * off.re;
    let y = 2.0 * off.im;
    let z = (m.get(0, 0) - m.get(1, 1)).re;
    BlochVector::new(x, y, z)
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|i| i * i <= n).all(|i| !n.is_multiple_of(i))
}

/// Largest `d` accepted by [`enumerate_stabilizer_states`].
pub const MAX_STABILIZER_DIM: usize = 13;

/// One pure stabilizer state: the eigenvector of a generator `D_{k,l}` with
/// eigenvalue `e^{i·phase}`.
#[derive(Debug, Clone)]
pub struct StabilizerState {
    pub generator: WeylIndex,
    /// Eigenvalue phase in `[0, 2π)`.
    pub eigenphase: f64,
    pub state: DensityState,
}

#[derive(Debug, Clone)]
pub struct StabilizerSet {
    dim: usize,
    states: Vec<StabilizerState>,
}

impl StabilizerSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn states(&self) -> &[StabilizerState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// All `d(d+1)` pure stabilizer states of a prime-dimensional qudit.
///
/// The maximal abelian subgroups are the cyclic groups generated by `D_{0,1}`
/// and `D_{1,m}`, `m ∈ Z_d`. Each generator satisfies `D^d = c·1`, so its
/// eigenvalues are the `d` distinct `d`-th roots of `c` and the eigenprojector
/// for `λ` is `(1/d) Σ_n (D/λ)^n`. States are ordered by generator, then by
/// eigenphase.
pub fn enumerate_stabilizer_states(d: usize) -> Result<StabilizerSet> {
    if d > MAX_STABILIZER_DIM {
        return Err(Error::DimTooLarge {
            dim: d,
            max: MAX_STABILIZER_DIM,
        });
    }
    if !is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    let generators = std::iter::once(WeylIndex::new(d, 0, 1))
        .chain((0..d).map(|m| WeylIndex::new(d, 1, m)))
        .collect::<Result<Vec<_>>>()?;
    let identity = ComplexMatrix::identity(d)?;
    let mut states = Vec::with_capacity(d * (d + 1));
    for g in generators {
        let op = weyl_matrix(g);
        let mut powers = vec![identity.clone()];
        for n in 1..=d {
            powers.push(&powers[n - 1] * &op);
        }
        let c = powers[d].get(0, 0);
        let deviation = powers[d].hs_distance(&identity.scale(c));
        if deviation > 1e-10 {
            return Err(Error::Constraint {
                what: "generator power is scalar",
                deviation,
                tolerance: 1e-10,
            });
        }
        let base = c.arg().rem_euclid(2.0 * PI) / d as f64;
        let mut phases: Vec<f64> = (0..d)
            .map(|j| (base + 2.0 * PI * j as f64 / d as f64).rem_euclid(2.0 * PI))
            .collect();
        phases.sort_by(f64::total_cmp);
        for eigenphase in phases {
            let lambda_inv = Complex64::from_polar(1.0, -eigenphase);
            let mut proj = ComplexMatrix::zeros(d)?;
            let mut coeff = Complex64::new(1.0 / d as f64, 0.0);
            for power in &powers[..d] {
                proj = &proj + &power.scale(coeff);
                coeff *= lambda_inv;
            }
            states.push(StabilizerState {
                generator: g,
                eigenphase,
                state: DensityState::new(proj.hermitian_part())?,
            });
        }
    }
    Ok(StabilizerSet { dim: d, states })
}

/// Result of checking `|⟨f|D_{k,l}|f⟩|² = 1/(d+1)` for all `(k,l) ≠ (0,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiducialCertificate {
    pub certified: bool,
    pub max_deviation: f64,
}

/// Tolerance on the overlap deviation for certification.
pub const FIDUCIAL_TOL: f64 = 1e-8;

pub fn certify_fiducial(f: &[Complex64]) -> Result<FiducialCertificate> {
    let d = f.len();
    let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    let proj = ComplexMatrix::outer(f)?;
    let target = 1.0 / (d as f64 + 1.0);
    let mut max_deviation: f64 = 0.0;
    for i in WeylIndex::all(d).filter(|i| !i.is_identity()) {
        // ⟨f|D|f⟩ = tr(D |f⟩⟨f|)
        let overlap = weyl_trace(i, &proj)?.norm_sqr();
        max_deviation = max_deviation.max((overlap - target).abs());
    }
    Ok(FiducialCertificate {
        certified: max_deviation <= FIDUCIAL_TOL,
        max_deviation,
    })
}

/// A candidate SIC fiducial vector together with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct FiducialCandidate {
    vector: Vec<Complex64>,
    certificate: FiducialCertificate,
}

impl FiducialCandidate {
    /// Certifies a user-supplied vector.
    pub fn new(vector: Vec<Complex64>) -> Result<Self> {
        let certificate = certify_fiducial(&vector)?;
        Ok(Self {
            vector,
            certificate,
        })
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &[Complex64] {
        &self.vector
    }

    pub fn certified(&self) -> bool {
        self.certificate.certified
    }

    pub fn certificate(&self) -> FiducialCertificate {
        self.certificate
    }

    pub fn density(&self) -> Result<DensityState> {
        DensityState::pure(&self.vector)
    }
}

/// Built-in fiducials: the qubit T state and `(0, 1, −1)/√2` for `d = 3`.
/// Both are re-certified on every call.
pub fn known_fiducial(d: usize) -> Result<FiducialCandidate> {
    let vector = match d {
        2 => {
            // Bloch vector (1,1,1)/√3: cos(θ/2)|0⟩ + e^{iπ/4} sin(θ/2)|1⟩, cos θ = 1/√3
            let theta = (1.0 / 3f64.sqrt()).acos();
            vec![
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), PI / 4.0),
            ]
        }
        3 => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            ]
        }
        _ => return Err(Error::NoKnownFiducial(d)),
    };
    let candidate = FiducialCandidate::new(vector)?;
    if !candidate.certified() {
        return Err(Error::Constraint {
            what: "built-in fiducial certification",
            deviation: candidate.certificate.max_deviation,
            tolerance: FIDUCIAL_TOL,
        });
    }
    Ok(candidate)
}
