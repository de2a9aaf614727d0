//! Characteristic functions `c_{k,l}(A) = tr(D_{k,l} A)` and their `L^p` moments.

use num_complex::Complex64;
use serde::Serialize;

use crate::matcore::{ComplexMatrix, DensityState};
use crate::weyl::{weyl_matrix, weyl_trace, WeylIndex};
use crate::{Error, Result};

/// What operator a [`CharTable`] was computed from. Only drives invariant checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableSource {
    State,
    SqrtState,
    Generic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharTable {
    dim: usize,
    values: Vec<Complex64>,
    source: TableSource,
}

impl CharTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    pub fn get(&self, index: WeylIndex) -> Complex64 {
        self.values[index.flat()]
    }

    /// Row-major values, entry `k·d + l` holding `c_{k,l}`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `Σ |c_{k,l}|^p`.
    pub fn power_sum(&self, p: f64) -> f64 {
        if p == 2.0 {
            self.values.iter().map(|z| z.norm_sqr()).sum()
        } else if p == 4.0 {
            self.values.iter().map(|z| z.norm_sqr().powi(2)).sum()
        } else {
            self.values.iter().map(|z| z.norm().powf(p)).sum()
        }
    }
}

/// `c_{k,l}(A)` for all `(k, l)`.
pub fn char_table(a: &ComplexMatrix) -> CharTable {
    table_with_source(a, TableSource::Generic)
}

fn table_with_source(a: &ComplexMatrix, source: TableSource) -> CharTable {
    let d = a.dim();
    let values = WeylIndex::all(d)
        .map(|i| weyl_trace(i, a).expect("same dimension"))
        .collect();
    CharTable {
        dim: d,
        values,
        source,
    }
}

/// Characteristic table of `ρ` itself; `c_{0,0} = tr ρ = 1`.
pub fn state_char_table(rho: &DensityState) -> Result<CharTable> {
    let t = table_with_source(rho.matrix(), TableSource::State);
    let deviation = (t.values[0] - Complex64::new(1.0, 0.0)).norm();
    if deviation > 1e-12 {
        return Err(Error::Constraint {
            what: "c_00(rho) = 1",
            deviation,
            tolerance: 1e-12,
        });
    }
    Ok(t)
}

/// Characteristic table of `√ρ`; always satisfies `Σ|c_{k,l}(√ρ)|² = d`.
pub fn sqrt_char_table(rho: &DensityState) -> Result<CharTable> {
    let t = table_with_source(rho.sqrt()?, TableSource::SqrtState);
    let deviation = (t.power_sum(2.0) - t.dim as f64).abs();
    if deviation > 1e-9 {
        return Err(Error::Constraint {
            what: "sum |c_kl(sqrt rho)|^2 = d",
            deviation,
            tolerance: 1e-9,
        });
    }
    Ok(t)
}

/// `A = (1/d) Σ c_{k,l} D_{k,l}†`.
///
/// For Hermitian `A` this is the same as `(1/d) Σ c*_{k,l} D_{k,l}`; the
/// adjoint form also holds for non-Hermitian operators.
pub fn reconstruct(t: &CharTable) -> ComplexMatrix {
    let d = t.dim;
    let mut acc = ComplexMatrix::zeros(d).expect("table dimension is valid");
    for i in WeylIndex::all(d) {
        let coeff = t.get(i) / d as f64;
        if coeff.norm() > 0.0 {
            acc = &acc + &weyl_matrix(i).adjoint().scale(coeff);
        }
    }
    acc
}

/// `(Σ |c_{k,l}|^p)^{1/p}`.
///
/// On a table of `ρ` this is the magic witness `M_p`; on a table of `√ρ` it is
/// the square-root variant `ℳ_p`.
pub fn moment_mp(t: &CharTable, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 2.0 {
        return Err(Error::BadExponent(p));
    }
    Ok(t.power_sum(p).powf(1.0 / p))
}
