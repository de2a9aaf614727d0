//! State complexity in the qudit stabilizer formalism.
//!
//! For a state `ρ` on `C^d` the complexity quantifier pairs the Jordan product
//! (anticommutator) and the Lie product (commutator) of `√ρ` with every
//! Heisenberg-Weyl displacement operator `D_{k,l}`:
//!
//! ```text
//! J(ρ, D) = ½‖{D, √ρ}‖²     I(ρ, D) = ½‖[D, √ρ]‖²     J + I = 2
//! C(ρ)    = Σ_{k,l} I(ρ, D_{k,l}) · J(ρ, D_{k,l})
//!         = d² − Σ_{k,l} |c_{k,l}(√ρ)|⁴
//! ```
//!
//! where `c_{k,l}(A) = tr(D_{k,l} A)` is the characteristic function of `A`.
//! Both expressions are implemented ([`complexity_by_definition`] and
//! [`complexity_by_moments`]) and cross-checked in [`complexity_report`].
//!
//! Module map:
//!
//! - [`matcore`]: dense complex matrices, Hermitian eigendecomposition, PSD square
//!   roots and seeded random states.
//! - [`weyl`]: displacement operators with exact phase bookkeeping, and Clifford
//!   conjugation tables.
//! - [`charfun`]: characteristic tables, reconstruction and the `L^p` moments.
//! - [`complexity`]: the quantifier itself, the qubit closed form, the `ρ_p`
//!   family analytics and the convexity scans.
//! - [`states`]: Bloch vectors, stabilizer-state enumeration and SIC fiducials.
//!
//! ```
//! use stabc_core::{complexity_by_moments, states};
//!
//! let fiducial = states::known_fiducial(3).unwrap();
//! let c = complexity_by_moments(&fiducial.density().unwrap()).unwrap();
//! assert!((c - 7.5).abs() < 1e-9);
//! ```

#![forbid(unsafe_code)]

pub mod charfun;
pub mod complexity;
mod error;
pub mod matcore;
pub mod states;
pub mod weyl;

pub use charfun::{char_table, moment_mp, reconstruct, sqrt_char_table, CharTable, TableSource};
pub use complexity::{
    complexity_by_definition, complexity_by_moments, complexity_report, jordan_lie_terms,
    qubit_complexity, ComplexityReport,
};
pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, DensityState, MAX_DIM};
pub use states::BlochVector;
pub use weyl::{PhaseExponent, WeylIndex, WeylOperator};

pub use num_complex::Complex64;
