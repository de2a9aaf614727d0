//! The complexity quantifier `C(ρ) = Σ_{k,l} I(ρ, D_{k,l}) J(ρ, D_{k,l})`.
//!
//! Two independent evaluation paths are kept side by side:
//!
//! - [`complexity_by_definition`] forms `√ρ D √ρ D†` with dense matrices for
//!   every displacement operator and multiplies the Lie and Jordan terms;
//! - [`complexity_by_moments`] uses `C = d² − Σ |c_{k,l}(√ρ)|⁴`.
//!
//! The moments path is the default; [`complexity_report`] always runs both and
//! fails if they disagree.
//!
//! The rest of the module covers the qubit closed form and the family
//! `ρ_p = p|ψ⟩⟨ψ| + (1 − p) 1/d` used to show that `C` is neither convex
//! (for `d > 2`) nor concave.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::charfun::{moment_mp, sqrt_char_table, state_char_table};
use crate::matcore::{random_mixed_with, substream_rng, ComplexMatrix, DensityState};
use crate::states::BlochVector;
use crate::weyl::{weyl_matrix, WeylIndex};
use crate::{Error, Result};

/// Purity above which a state is treated as pure.
pub const PURITY_THRESHOLD: f64 = 1.0 - 1e-8;

/// Jordan (`J`) and Lie (`I`) terms for one displacement operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JordanLie {
    pub jordan: f64,
    pub lie: f64,
    /// Largest difference between the trace formulas and the direct
    /// `½‖{D, √ρ}‖²`, `½‖[D, √ρ]‖²` evaluations.
    pub norm_gap: f64,
}

fn jordan_lie_with(sqrt_rho: &ComplexMatrix, d_op: &ComplexMatrix) -> JordanLie {
    let ds = d_op * sqrt_rho;
    let sd = sqrt_rho * d_op;
    let overlap = (&sd * &(sqrt_rho * &d_op.adjoint())).trace().re;
    let jordan = 1.0 + overlap;
    let lie = 1.0 - overlap;
    let anti = 0.5 * (&ds + &sd).hs_norm().powi(2);
    let comm = 0.5 * (&ds - &sd).hs_norm().powi(2);
    JordanLie {
        jordan,
        lie,
        norm_gap: (jordan - anti).abs().max((lie - comm).abs()),
    }
}

pub fn jordan_lie_terms(rho: &DensityState, index: WeylIndex) -> Result<JordanLie> {
    if index.dim() != rho.dim() {
        return Err(Error::DimMismatch(rho.dim(), index.dim()));
    }
    Ok(jordan_lie_with(rho.sqrt()?, &weyl_matrix(index)))
}

/// `Σ I·J` over all `d²` displacement operators.
pub fn complexity_by_definition(rho: &DensityState) -> Result<f64> {
    let s = rho.sqrt()?;
    Ok(WeylIndex::all(rho.dim())
        .map(|i| {
            let t = jordan_lie_with(s, &weyl_matrix(i));
            t.lie * t.jordan
        })
        .sum())
}

/// `d² − Σ |c_{k,l}(√ρ)|⁴`.
pub fn complexity_by_moments(rho: &DensityState) -> Result<f64> {
    let d = rho.dim() as f64;
    Ok(d * d - sqrt_char_table(rho)?.power_sum(4.0))
}

/// Default evaluation path.
pub fn complexity(rho: &DensityState) -> Result<f64> {
    complexity_by_moments(rho)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub dim: usize,
    pub c_value: f64,
    pub c_via_definition: f64,
    pub c_via_moments: f64,
    pub path_gap: f64,
    /// Row-major `I(ρ, D_{k,l})`.
    pub i_table: Vec<f64>,
    /// Row-major `J(ρ, D_{k,l})`.
    pub j_table: Vec<f64>,
    pub purity: f64,
    /// `M_4(ρ)`, from the characteristic table of `ρ`.
    pub m4: f64,
    /// `ℳ_4(ρ)`, from the characteristic table of `√ρ`.
    pub sqrt_m4: f64,
    /// `M_4⁴(ρ)`, only for pure states.
    pub m4_fourth_power: Option<f64>,
    /// `|M_4⁴ + C − d²|`, only for pure states.
    pub complementarity_gap: Option<f64>,
}

pub fn complexity_report(rho: &DensityState) -> Result<ComplexityReport> {
    let d = rho.dim();
    let df = d as f64;
    let s = rho.sqrt()?;
    let mut i_table = Vec::with_capacity(d * d);
    let mut j_table = Vec::with_capacity(d * d);
    for index in WeylIndex::all(d) {
        let t = jordan_lie_with(s, &weyl_matrix(index));
        if t.norm_gap > 1e-10 {
            return Err(Error::Constraint {
                what: "Jordan/Lie trace formula vs norm",
                deviation: t.norm_gap,
                tolerance: 1e-10,
            });
        }
        i_table.push(t.lie);
        j_table.push(t.jordan);
    }
    let c_via_definition: f64 = i_table.iter().zip(&j_table).map(|(i, j)| i * j).sum();
    let sqrt_table = sqrt_char_table(rho)?;
    let c_via_moments = df * df - sqrt_table.power_sum(4.0);
    let path_gap = (c_via_definition - c_via_moments).abs();
    if path_gap > 1e-9 * df * df {
        return Err(Error::Constraint {
            what: "definition vs moments path",
            deviation: path_gap,
            tolerance: 1e-9 * df * df,
        });
    }
    let state_table = state_char_table(rho)?;
    let m4 = moment_mp(&state_table, 4.0)?;
    let purity = rho.purity();
    let (m4_fourth_power, complementarity_gap) = if purity >= PURITY_THRESHOLD {
        let m44 = state_table.power_sum(4.0);
        let gap = (m44 + c_via_moments - df * df).abs();
        if gap > 1e-8 {
            return Err(Error::Constraint {
                what: "M4^4 + C = d^2 for pure states",
                deviation: gap,
                tolerance: 1e-8,
            });
        }
        (Some(m44), Some(gap))
    } else {
        (None, None)
    };
    Ok(ComplexityReport {
        dim: d,
        c_value: c_via_moments,
        c_via_definition,
        c_via_moments,
        path_gap,
        i_table,
        j_table,
        purity,
        m4,
        sqrt_m4: moment_mp(&sqrt_table, 4.0)?,
        m4_fourth_power,
        complementarity_gap,
    })
}

/// Qubit closed form `4 − s² − (r₁⁴ + r₂⁴ + r₃⁴)/s²` with `s = 1 + √(1 − r²)`.
///
/// Near the sphere the small eigenvalue `(1 − r)/2` is dropped under the same
/// rank cutoff used for `√ρ`, so both paths agree on which states are pure.
pub fn qubit_complexity(bloch: BlochVector) -> f64 {
    let [r1, r2, r3] = bloch.components();
    let r = bloch.norm_sqr().sqrt();
    let cutoff = crate::matcore::RANK_CUTOFF_ULPS * 2.0 * f64::EPSILON * (1.0 + r) / 2.0;
    let q = if (1.0 - r) / 2.0 <= cutoff { 0.0 } else { (1.0 - r * r).max(0.0) };
    let s = 1.0 + q.sqrt();
    4.0 - s * s - (r1.powi(4) + r2.powi(4) + r3.powi(4)) / (s * s)
}

/// Largest complexity of any state in dimension `d`, attained by SIC fiducials.
pub fn complexity_upper_bound(d: usize) -> f64 {
    let df = d as f64;
    df * df - 2.0 * df / (df + 1.0)
}

/// Complexity of every pure stabilizer state in dimension `d`.
pub fn stabilizer_complexity(d: usize) -> f64 {
    let df = d as f64;
    df * df - df
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::BadP(p))
    }
}

/// `p|ψ⟩⟨ψ| + (1 − p) 1/d`.
pub fn rho_p_state(psi: &DensityState, p: f64) -> Result<DensityState> {
    check_p(p)?;
    let d = psi.dim();
    let noise = ComplexMatrix::identity(d)?.scale(Complex64::new((1.0 - p) / d as f64, 0.0));
    DensityState::new(&psi.matrix().scale(Complex64::new(p, 0.0)) + &noise)
}

/// Closed form with the complement `q = 1 − p` passed separately so that
/// expansions near `p = 1` keep full precision.
fn rho_p_closed_form(d: usize, p: f64, q: f64, c_psi: f64) -> f64 {
    let df = d as f64;
    let a = (1.0 / df + (1.0 - 1.0 / df) * p).sqrt();
    let b = (q.max(0.0) / df).sqrt();
    df * df - (a + (df - 1.0) * b).powi(4) - (a - b).powi(4) * (df * df - 1.0 - c_psi)
}

/// Analytic `C(ρ_p)` from `C(|ψ⟩⟨ψ|)`.
///
/// `√ρ_p = (a − b)|ψ⟩⟨ψ| + b·1` with `a = √(1/d + (1 − 1/d)p)` and
/// `b = √((1 − p)/d)`, so `c_{0,0}(√ρ_p) = a + (d − 1)b` and every other
/// coefficient is `(a − b) c_{k,l}(ψ)`.
pub fn rho_p_complexity_analytic(d: usize, p: f64, c_psi: f64) -> Result<f64> {
    check_p(p)?;
    crate::matcore::check_dim(d)?;
    Ok(rho_p_closed_form(d, p, 1.0 - p, c_psi))
}

/// Constant term `h_d = 2(8 − 16d + 9d² − d³)/d` of `∂²C(ρ_p)/∂p²` as `p → 1−`
/// for stabilizer `ψ`.
pub fn second_derivative_constant(d: usize) -> f64 {
    let df = d as f64;
    2.0 * (8.0 - 16.0 * df + 9.0 * df * df - df.powi(3)) / df
}

/// The mixed-state family `ρ_p` built on a fixed pure state `ψ`.
#[derive(Debug, Clone)]
pub struct RhoPFamily {
    psi: DensityState,
    psi_complexity: f64,
}

impl RhoPFamily {
    pub fn new(psi: DensityState) -> Result<Self> {
        let purity = psi.purity();
        if purity < PURITY_THRESHOLD {
            return Err(Error::NotPure(purity));
        }
        let psi_complexity = complexity_by_moments(&psi)?;
        Ok(Self {
            psi,
            psi_complexity,
        })
    }

    /// The family on the stabilizer state `|0⟩`.
    pub fn stabilizer(d: usize) -> Result<Self> {
        Self::new(DensityState::basis(d, 0)?)
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }

    pub fn psi(&self) -> &DensityState {
        &self.psi
    }

    /// `C(|ψ⟩⟨ψ|)`.
    pub fn psi_complexity(&self) -> f64 {
        self.psi_complexity
    }

    pub fn state(&self, p: f64) -> Result<DensityState> {
        rho_p_state(&self.psi, p)
    }

    pub fn analytic(&self, p: f64) -> Result<f64> {
        rho_p_complexity_analytic(self.dim(), p, self.psi_complexity)
    }

    /// Second difference of the analytic curve: central around `p0`, or the
    /// forward stencil `f(2h) − 2f(h) + f(0)` when `p0 == 0`.
    pub fn second_difference(&self, p0: f64, step: f64) -> Result<f64> {
        let bad = Error::BadStep { p0, step };
        if step.is_nan() || step <= 0.0 {
            return Err(bad);
        }
        let f = |p: f64| self.analytic(p);
        if p0 == 0.0 {
            if 2.0 * step > 1.0 {
                return Err(bad);
            }
            return Ok((f(2.0 * step)? - 2.0 * f(step)? + f(0.0)?) / (step * step));
        }
        if !(p0 - step > 0.0 && p0 + step < 1.0) {
            return Err(bad);
        }
        Ok((f(p0 + step)? - 2.0 * f(p0)? + f(p0 - step)?) / (step * step))
    }

    /// `C(ρ_{1−ε}) − [d² − d − 4(d−1)ε − 4(d−1)(d−2)d^{−1/2} ε^{3/2}]`, which is
    /// `O(ε²)` when `ψ` is a stabilizer state.
    pub fn expansion_residual(&self, epsilon: f64) -> Result<f64> {
        let d = self.dim();
        let expected = stabilizer_complexity(d);
        if (self.psi_complexity - expected).abs() > 1e-9 {
            return Err(Error::NotStabilizer {
                found: self.psi_complexity,
                expected,
            });
        }
        if !(epsilon > 0.0 && epsilon <= 0.1) {
            return Err(Error::BadEpsilon(epsilon));
        }
        let df = d as f64;
        let exact = rho_p_closed_form(d, 1.0 - epsilon, epsilon, self.psi_complexity);
        let series = df * df - df
            - 4.0 * (df - 1.0) * epsilon
            - 4.0 * (df - 1.0) * (df - 2.0) / df.sqrt() * epsilon.powf(1.5);
        Ok(exact - series)
    }
}

/// `C(λρ₁ + (1−λ)ρ₂)` against the chord `λC(ρ₁) + (1−λ)C(ρ₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixtureCheck {
    pub lambda: f64,
    pub mixture: f64,
    pub chord: f64,
}

impl MixtureCheck {
    /// Positive when convexity is violated.
    pub fn gap(&self) -> f64 {
        self.mixture - self.chord
    }

    pub fn violates_convexity(&self, tol: f64) -> bool {
        self.gap() > tol
    }
}

pub fn check_mixture(a: &DensityState, b: &DensityState, lambda: f64) -> Result<MixtureCheck> {
    check_p(lambda)?;
    let mixed = DensityState::mixture(&[(lambda, a), (1.0 - lambda, b)])?;
    Ok(MixtureCheck {
        lambda,
        mixture: complexity(&mixed)?,
        chord: lambda * complexity(a)? + (1.0 - lambda) * complexity(b)?,
    })
}

/// Threshold above which a mixture counts as a convexity violation.
pub const CONVEXITY_TOL: f64 = 1e-9;

/// `(ρ_{0.9} + ρ_1)/2 = ρ_{0.95}` on a stabilizer `ψ`, evaluated through the
/// generic path.
pub fn rho_p_convexity_witness(d: usize) -> Result<MixtureCheck> {
    let family = RhoPFamily::stabilizer(d)?;
    check_mixture(&family.state(0.9)?, &family.state(1.0)?, 0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationOrigin {
    Sampled(usize),
    RhoPWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexityViolation {
    pub origin: ViolationOrigin,
    pub check: MixtureCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityScan {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    /// Largest `mixture − chord` seen across all checks.
    pub max_gap: f64,
    pub violations: Vec<ConvexityViolation>,
}

fn sample_mixture(d: usize, rng: &mut impl Rng) -> Result<MixtureCheck> {
    let r1 = rng.random_range(1..=d);
    let a = random_mixed_with(d, r1, rng)?;
    let r2 = rng.random_range(1..=d);
    let b = random_mixed_with(d, r2, rng)?;
    let lambda = loop {
        let x: f64 = rng.random();
        if x > 0.0 {
            break x;
        }
    };
    check_mixture(&a, &b, lambda)
}

/// Random search for convexity violations.
///
/// Sample `i` draws its two states (rank uniform in `1..=d`, Ginibre) and its
/// weight from ChaCha stream `i` of `seed`, so results do not depend on how
/// the work is split across threads. With `include_rho_p_witness` the
/// deterministic `ρ_p` mixture is checked as well.
pub fn convexity_scan(
    d: usize,
    samples: usize,
    seed: u64,
    include_rho_p_witness: bool,
) -> Result<ConvexityScan> {
    crate::matcore::check_dim(d)?;
    let checks: Vec<(ViolationOrigin, MixtureCheck)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream_rng(seed, i as u64);
            sample_mixture(d, &mut rng).map(|c| (ViolationOrigin::Sampled(i), c))
        })
        .collect::<Result<_>>()?;
    let mut all = checks;
    if include_rho_p_witness {
        all.push((ViolationOrigin::RhoPWitness, rho_p_convexity_witness(d)?));
    }
    let max_gap = all.iter().map(|(_, c)| c.gap()).fold(f64::NEG_INFINITY, f64::max);
    let violations = all
        .into_iter()
        .filter(|(_, c)| c.violates_convexity(CONVEXITY_TOL))
        .map(|(origin, check)| ConvexityViolation { origin, check })
        .collect();
    Ok(ConvexityScan {
        dim: d,
        samples,
        seed,
        max_gap,
        violations,
    })
}

/// `(C(1/d), mean_k C(|k⟩⟨k|))`; the first being smaller shows `C` is not concave.
pub fn concavity_witness(d: usize) -> Result<(f64, f64)> {
    let lhs = complexity(&DensityState::maximally_mixed(d)?)?;
    let mut rhs = 0.0;
    for k in 0..d {
        rhs += complexity(&DensityState::basis(d, k)?)?;
    }
    Ok((lhs, rhs / d as f64))
}
