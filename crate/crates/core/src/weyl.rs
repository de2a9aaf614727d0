//! Heisenberg-Weyl displacement operators `D_{k,l} = τ^{kl} X^k Z^l`.
//!
//! `X|j⟩ = |j+1⟩`, `Z|j⟩ = ω^j|j⟩` with `ω = e^{2πi/d}` and `τ = −e^{iπ/d}`,
//! so `τ² = ω` and `τ^{2d} = 1`. All phases that arise from products and
//! Clifford conjugation are powers of `τ`, tracked as integers mod `2d`.
//!
//! Indices are always reduced to `{0..d-1}`. For even `d`, `τ^d = −1`, so
//! reducing `k + s` or `l + t` mod `d` picks up a sign; the exponent returned by
//! [`weyl_product_phase`] includes that correction.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::matcore::{check_dim, ComplexMatrix};
use crate::{Error, Result};

/// The phase `τ^e`, `e ∈ Z_{2d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhaseExponent {
    exponent: usize,
    dim: usize,
}

impl PhaseExponent {
    pub fn new(dim: usize, exponent: i64) -> Self {
        let m = 2 * dim as i64;
        Self {
            exponent: exponent.rem_euclid(m) as usize,
            dim,
        }
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `τ^e` as a complex number.
    pub fn value(&self) -> Complex64 {
        tau_power(self.dim, self.exponent as i64)
    }
}

/// `τ^e` for `τ = −e^{iπ/d} = e^{iπ(d+1)/d}`, reduced exactly before the
/// trigonometric evaluation.
pub fn tau_power(dim: usize, e: i64) -> Complex64 {
    let m = 2 * dim as i64;
    let reduced = (e.rem_euclid(m) * (dim as i64 + 1)).rem_euclid(m);
    match reduced {
        0 => Complex64::new(1.0, 0.0),
        r if 2 * r == m => Complex64::new(-1.0, 0.0),
        r if 4 * r == m => Complex64::new(0.0, 1.0),
        r if 4 * r == 3 * m => Complex64::new(0.0, -1.0),
        r => Complex64::from_polar(1.0, PI * r as f64 / dim as f64),
    }
}

/// A phase-space point `(k, l) ∈ Z_d²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylIndex {
    k: usize,
    l: usize,
    dim: usize,
}

impl WeylIndex {
    pub fn new(dim: usize, k: usize, l: usize) -> Result<Self> {
        check_dim(dim)?;
        if k >= dim || l >= dim {
            return Err(Error::IndexOutOfRange { k, l, dim });
        }
        Ok(Self { k, l, dim })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.l == 0
    }

    /// Position in a row-major `d × d` table.
    pub fn flat(&self) -> usize {
        self.k * self.dim + self.l
    }

    /// All `d²` indices in row-major order.
    pub fn all(dim: usize) -> impl Iterator<Item = WeylIndex> {
        (0..dim * dim).map(move |n| WeylIndex {
            k: n / dim,
            l: n % dim,
            dim,
        })
    }

    /// Matrix element `⟨(j+k) mod d| D_{k,l} |j⟩ = τ^{kl + 2lj}`; all other
    /// elements of column `j` vanish.
    fn column_exponent(&self, j: usize) -> i64 {
        (self.k * self.l + 2 * self.l * j) as i64
    }
}

/// A displacement operator together with its dense matrix.
#[derive(Debug, Clone)]
pub struct WeylOperator {
    index: WeylIndex,
    matrix: ComplexMatrix,
}

impl WeylOperator {
    pub fn index(&self) -> WeylIndex {
        self.index
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

pub fn weyl_op(d: usize, k: usize, l: usize) -> Result<WeylOperator> {
    let index = WeylIndex::new(d, k, l)?;
    Ok(WeylOperator {
        index,
        matrix: weyl_matrix(index),
    })
}

pub fn weyl_matrix(index: WeylIndex) -> ComplexMatrix {
    let d = index.dim;
    ComplexMatrix::from_fn(d, |row, col| {
        if row == (col + index.k) % d {
            tau_power(d, index.column_exponent(col))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .expect("index dimension already validated")
}

/// `tr(D_{k,l} A)` in `O(d)` using the monomial structure of `D_{k,l}`.
pub fn weyl_trace(index: WeylIndex, a: &ComplexMatrix) -> Result<Complex64> {
    let d = index.dim;
    if a.dim() != d {
        return Err(Error::DimMismatch(d, a.dim()));
    }
    Ok((0..d)
        .map(|j| tau_power(d, index.column_exponent(j)) * a.get(j, (j + index.k) % d))
        .sum())
}

/// `D_a D_b = τ^e D_c` with `c` the reduced index sum.
pub fn weyl_product_phase(a: WeylIndex, b: WeylIndex) -> Result<(PhaseExponent, WeylIndex)> {
    if a.dim != b.dim {
        return Err(Error::DimMismatch(a.dim, b.dim));
    }
    let d = a.dim;
    let c = WeylIndex {
        k: (a.k + b.k) % d,
        l: (a.l + b.l) % d,
        dim: d,
    };
    // τ^{kl} X^k Z^l τ^{st} X^s Z^t = τ^{kl + st + 2ls} X^{k+s} Z^{l+t}
    let e = (a.k * a.l + b.k * b.l + 2 * a.l * b.k) as i64 - (c.k * c.l) as i64;
    Ok((PhaseExponent::new(d, e), c))
}

/// True iff `tr(D_{k,l} D_{s,t}†) = d δ_{ks} δ_{lt}` for all index pairs.
pub fn weyl_basis_check(d: usize) -> Result<bool> {
    check_dim(d)?;
    let ops: Vec<ComplexMatrix> = WeylIndex::all(d).map(weyl_matrix).collect();
    let tol = 1e-10 * d as f64;
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate() {
            let g = crate::matcore::hs_inner(b, a)?;
            let expect = if i == j { d as f64 } else { 0.0 };
            if (g - Complex64::new(expect, 0.0)).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The action `D_{k,l} ↦ U D_{k,l} U† = τ^e D_{σ(k,l)}` of a Clifford unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationTable {
    dim: usize,
    images: Vec<(PhaseExponent, WeylIndex)>,
}

impl ConjugationTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, index: WeylIndex) -> (PhaseExponent, WeylIndex) {
        self.images[index.flat()]
    }

    pub fn images(&self) -> &[(PhaseExponent, WeylIndex)] {
        &self.images
    }

    /// Whether the index map is a bijection of `Z_d²`.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.dim * self.dim];
        for (_, idx) in &self.images {
            if std::mem::replace(&mut seen[idx.flat()], true) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliffordCheck {
    Clifford(ConjugationTable),
    /// Some `U D_{k,l} U†` is not proportional to a single displacement operator.
    NotClifford { index: WeylIndex },
}

impl CliffordCheck {
    pub fn is_clifford(&self) -> bool {
        matches!(self, CliffordCheck::Clifford(_))
    }

    pub fn table(&self) -> Option<&ConjugationTable> {
        match self {
            CliffordCheck::Clifford(t) => Some(t),
            CliffordCheck::NotClifford { .. } => None,
        }
    }
}

/// Projects every `U D_{k,l} U†` onto the displacement basis.
pub fn clifford_conjugation_table(u: &ComplexMatrix) -> Result<CliffordCheck> {
    let d = u.dim();
    let deviation = u.unitary_deviation();
    if deviation > 1e-10 * d as f64 {
        return Err(Error::NotUnitary { deviation });
    }
    let df = d as f64;
    let mut images = Vec::with_capacity(d * d);
    for index in WeylIndex::all(d) {
        let image_adj = weyl_matrix(index).conjugate_by(u)?.adjoint();
        // tr(D_{s,t}† M) = conj(tr(D_{s,t} M†))
        let mut hit = None;
        for target in WeylIndex::all(d) {
            let overlap = weyl_trace(target, &image_adj)?.conj();
            if (overlap.norm() - df).abs() <= 1e-8 * df {
                if hit.is_some() {
                    return Ok(CliffordCheck::NotClifford { index });
                }
                hit = Some((target, overlap / df));
            }
        }
        let Some((target, phase)) = hit else {
            return Ok(CliffordCheck::NotClifford { index });
        };
        let (e, dist) = (0..2 * d as i64)
            .map(|e| (e, (tau_power(d, e) - phase).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("2d > 0");
        if dist > 1e-6 {
            return Ok(CliffordCheck::NotClifford { index });
        }
        images.push((PhaseExponent::new(d, e), target));
    }
    Ok(CliffordCheck::Clifford(ConjugationTable { dim: d, images }))
}

/// Discrete Fourier matrix `F_{jk} = ω^{jk}/√d`.
pub fn fourier_gate(d: usize) -> Result<ComplexMatrix> {
    let norm = 1.0 / (d as f64).sqrt();
    ComplexMatrix::from_fn(d, |j, k| tau_power(d, (2 * j * k) as i64) * norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::random_unitary;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn idx(d: usize, k: usize, l: usize) -> WeylIndex {
        WeylIndex::new(d, k, l).unwrap()
    }

    fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
    }

    #[test]
    fn tau_is_a_primitive_root() {
        for d in 2..=9 {
            let tau = tau_power(d, 1);
            let expect = -Complex64::from_polar(1.0, PI / d as f64);
            assert!((tau - expect).norm() < 1e-15);
            assert!((tau_power(d, 2) - Complex64::from_polar(1.0, 2.0 * PI / d as f64)).norm() < 1e-15);
            assert_eq!(tau_power(d, 2 * d as i64), c(1.0, 0.0));
        }
    }

    #[test]
    fn qubit_operators() {
        let sx = ComplexMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let sz = ComplexMatrix::diagonal(&[c(1., 0.), c(-1., 0.)]).unwrap();
        assert!(weyl_op(2, 1, 0).unwrap().matrix().max_abs_diff(&sx) < 1e-15);
        assert!(weyl_op(2, 0, 1).unwrap().matrix().max_abs_diff(&sz) < 1e-15);
        // τ X Z with τ = −i and XZ = −iσ_y gives −σ_y, which is −iσ_y up to the phase −i.
        let d11 = weyl_op(2, 1, 1).unwrap();
        assert!(d11.matrix().max_abs_diff(&sigma_y().scale(c(-1., 0.))) < 1e-15);
        let minus_i_sigma_y = sigma_y().scale(c(0., -1.));
        assert!(d11.matrix().max_abs_diff(&minus_i_sigma_y.scale(c(0., -1.))) < 1e-15);
    }

    #[test]
    fn identity_and_shift() {
        for d in 2..=6 {
            let id = weyl_op(d, 0, 0).unwrap();
            assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(d).unwrap()) == 0.0);
        }
        let x = weyl_op(3, 1, 0).unwrap();
        for j in 0..3 {
            for i in 0..3 {
                let expect = if i == (j + 1) % 3 { 1.0 } else { 0.0 };
                assert_eq!(x.matrix().get(i, j), c(expect, 0.0));
            }
        }
        assert!(matches!(weyl_op(3, 3, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn product_phase_examples() {
        let (e, c0) = weyl_product_phase(idx(4, 0, 0), idx(4, 2, 3)).unwrap();
        assert_eq!((e.exponent(), c0), (0, idx(4, 2, 3)));

        let (e, c1) = weyl_product_phase(idx(3, 1, 0), idx(3, 0, 1)).unwrap();
        assert_eq!(c1, idx(3, 1, 1));
        assert_eq!(e.exponent(), 5); // −1 mod 6
        let prod = weyl_matrix(idx(3, 1, 0)).as_nalgebra() * weyl_matrix(idx(3, 0, 1)).as_nalgebra();
        let overlap = weyl_trace(idx(3, 1, 1), &ComplexMatrix::from_fn(3, |i, j| prod[(i, j)]).unwrap().adjoint())
            .unwrap()
            .conj()
            / 3.0;
        assert!((overlap - tau_power(3, -1)).norm() < 1e-14);

        // D_{1,1}² = (−σ_y)² = 1 = τ⁰ D_{0,0}
        let (e, c2) = weyl_product_phase(idx(2, 1, 1), idx(2, 1, 1)).unwrap();
        assert_eq!((e.exponent(), c2), (0, idx(2, 0, 0)));
        assert!(matches!(
            weyl_product_phase(idx(2, 1, 1), idx(3, 1, 1)),
            Err(Error::DimMismatch(2, 3))
        ));
    }

    #[test]
    fn group_law_exhaustive() {
        for d in 2..=5 {
            for a in WeylIndex::all(d) {
                for b in WeylIndex::all(d) {
                    let (e, c) = weyl_product_phase(a, b).unwrap();
                    let lhs = &weyl_matrix(a) * &weyl_matrix(b);
                    let rhs = weyl_matrix(c).scale(e.value());
                    assert!(lhs.hs_distance(&rhs) <= 1e-12 * d as f64, "d={d} a={a:?} b={b:?}");
                }
            }
        }
    }

    #[test]
    fn odd_phase_law_without_wraparound() {
        for d in [3, 5, 7] {
            for a in WeylIndex::all(d) {
                for b in WeylIndex::all(d) {
                    if a.k + b.k < d && a.l + b.l < d {
                        let (e, _) = weyl_product_phase(a, b).unwrap();
                        let expect = PhaseExponent::new(d, (a.l * b.k) as i64 - (a.k * b.l) as i64);
                        assert_eq!(e, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn basis_orthogonality_and_unitarity() {
        for d in [2, 3, 4, 5, 7] {
            assert!(weyl_basis_check(d).unwrap());
            for i in WeylIndex::all(d) {
                assert!(weyl_matrix(i).unitary_deviation() <= 1e-12 * d as f64);
            }
        }
        let d01 = weyl_op(5, 0, 1).unwrap();
        let g = crate::matcore::hs_inner(d01.matrix(), d01.matrix()).unwrap();
        assert!((g - c(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn fast_trace_matches_dense() {
        let a = random_unitary(5, 3).unwrap();
        for i in WeylIndex::all(5) {
            let dense = (&weyl_matrix(i) * &a).trace();
            assert!((weyl_trace(i, &a).unwrap() - dense).norm() < 1e-13);
        }
    }

    #[test]
    fn identity_conjugation_table() {
        let t = clifford_conjugation_table(&ComplexMatrix::identity(4).unwrap()).unwrap();
        let table = t.table().unwrap();
        for i in WeylIndex::all(4) {
            assert_eq!(table.image(i), (PhaseExponent::new(4, 0), i));
        }
    }

    #[test]
    fn fourier_gate_is_clifford() {
        let h = fourier_gate(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let hadamard = ComplexMatrix::new(2, vec![c(s, 0.), c(s, 0.), c(s, 0.), c(-s, 0.)]).unwrap();
        assert!(h.max_abs_diff(&hadamard) < 1e-15);
        for d in [2, 3, 4, 5, 7, 11, 13] {
            let f = fourier_gate(d).unwrap();
            assert!(f.unitary_deviation() <= 1e-12 * d as f64);
            let check = clifford_conjugation_table(&f).unwrap();
            let table = check.table().unwrap_or_else(|| panic!("F not Clifford at d={d}"));
            assert!(table.is_permutation());
            // F X F† = Z
            let (e, img) = table.image(idx(d, 1, 0));
            assert_eq!(img, idx(d, 0, 1));
            assert_eq!(e.exponent(), 0);
            for (phase, img) in table.images() {
                let value = phase.value();
                assert!((value.norm() - 1.0).abs() < 1e-15);
                assert!(phase.exponent() < 2 * d);
                assert!(img.dim() == d);
            }
        }
    }

    #[test]
    fn table_entries_reproduce_conjugation() {
        for d in [2, 3, 4, 6] {
            let f = fourier_gate(d).unwrap();
            let table = clifford_conjugation_table(&f).unwrap();
            let table = table.table().unwrap();
            for i in WeylIndex::all(d) {
                let (e, img) = table.image(i);
                let lhs = weyl_matrix(i).conjugate_by(&f).unwrap();
                let rhs = weyl_matrix(img).scale(e.value());
                assert!(lhs.hs_distance(&rhs) < 1e-10, "d={d} {i:?}");
            }
        }
    }

    #[test]
    fn haar_unitary_is_not_clifford() {
        for seed in 0..5 {
            let u = random_unitary(3, seed).unwrap();
            assert!(!clifford_conjugation_table(&u).unwrap().is_clifford());
        }
    }

    #[test]
    fn non_unitary_rejected() {
        let m = ComplexMatrix::identity(3).unwrap().scale(c(2.0, 0.0));
        assert!(matches!(clifford_conjugation_table(&m), Err(Error::NotUnitary { .. })));
    }
}
