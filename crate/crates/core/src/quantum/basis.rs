use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, haar_random_unitary, haar_unitary_with, inner, ComplexMatrix, C64};
use crate::quantum::DensityOperator;

/// Tolerance on `|V^dagger V - I|` for a basis.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Shifted normalizers below this are treated as zero.
pub const DEGENERATE_NORM_TOL: f64 = 1e-14;

/// Ordered rank-one projective measurement, stored as the unitary whose columns are the kets.
#[derive(Clone, Debug, PartialEq)]
pub struct PvmBasis {
    vectors: ComplexMatrix,
}

impl PvmBasis {
    pub fn new(vectors: ComplexMatrix) -> Result<Self> {
        let d = vectors.ensure_square()?;
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let deviation = vectors.unitarity_deviation();
        if deviation > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { vectors })
    }

    pub(crate) fn from_unitary_unchecked(vectors: ComplexMatrix) -> Self {
        Self { vectors }
    }

    pub fn from_kets(kets: &[Vec<C64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_columns(kets)?)
    }

    pub fn computational(d: usize) -> Self {
        Self { vectors: ComplexMatrix::identity(d) }
    }

    /// Eigenbasis of a Hermitian matrix, ordered by ascending eigenvalue.
    pub fn eigenbasis(m: &ComplexMatrix) -> Result<Self> {
        Ok(Self { vectors: eig_hermitian(m)?.eigenvectors })
    }

    pub fn random(d: usize, seed: u64) -> Result<Self> {
        Ok(Self { vectors: haar_random_unitary(d, seed)? })
    }

    pub fn random_with<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<Self> {
        Ok(Self { vectors: haar_unitary_with(rng, d)? })
    }

    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn ket(&self, a: usize) -> Vec<C64> {
        self.vectors.column(a)
    }

    pub fn kets(&self) -> Vec<Vec<C64>> {
        (0..self.dim()).map(|a| self.ket(a)).collect()
    }

    pub fn projector(&self, a: usize) -> ComplexMatrix {
        let k = self.ket(a);
        ComplexMatrix::outer(&k, &k)
    }

    /// `V^dagger M V`: the matrix of `m` in this basis.
    pub fn represent(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &(&self.vectors.adjoint() * m) * &self.vectors
    }

    /// Largest `| |<b|a>|^2 - 1/d |`; zero for mutually unbiased bases.
    pub fn unbiasedness_defect(&self, other: &PvmBasis) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..d {
            let ka = self.ket(a);
            for b in 0..d {
                worst = worst.max((inner(&other.ket(b), &ka).norm_sqr() - 1.0 / d as f64).abs());
            }
        }
        worst
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() == d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: d, found: self.dim() })
        }
    }
}

/// Hermitian operator `A = sum_a a Pi_a` given by its eigenbasis and spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    basis: PvmBasis,
    spectrum: Vec<f64>,
}

impl Observable {
    pub fn new(basis: PvmBasis, spectrum: Vec<f64>) -> Result<Self> {
        if spectrum.len() != basis.dim() {
            return Err(Error::SpectrumLength { expected: basis.dim(), found: spectrum.len() });
        }
        if spectrum.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteSpectrum);
        }
        Ok(Self { basis, spectrum })
    }

    pub fn from_hermitian(m: &ComplexMatrix) -> Result<Self> {
        let e = eig_hermitian(m)?;
        Ok(Self { basis: PvmBasis { vectors: e.eigenvectors }, spectrum: e.eigenvalues })
    }

    pub fn basis(&self) -> &PvmBasis {
        &self.basis
    }

    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.spectrum.len()
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let v = self.basis.matrix();
        let scaled = ComplexMatrix::from_fn(v.rows(), v.cols(), |i, j| v[(i, j)] * self.spectrum[j]);
        &scaled * &v.adjoint()
    }

    pub fn operator_norm(&self) -> f64 {
        self.spectrum.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `A / ||A||`.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.operator_norm();
        if n == 0.0 {
            return Err(Error::ZeroOperator);
        }
        Ok(self.map_spectrum(|x| x / n))
    }

    /// `Tr(A rho)`.
    pub fn mean(&self, rho: &DensityOperator) -> f64 {
        (0..self.dim())
            .map(|a| {
                let k = self.basis.ket(a);
                self.spectrum[a] * rho.element(&k, &k).re
            })
            .sum()
    }

    /// `||A - Tr(A rho) I||`.
    pub fn shifted_norm(&self, rho: &DensityOperator) -> f64 {
        let m = self.mean(rho);
        self.spectrum.iter().fold(0.0, |acc, x| acc.max((x - m).abs()))
    }

    /// `A / ||A - Tr(A rho) I||` (the operator is scaled, not shifted).
    pub fn shift_normalized(&self, rho: &DensityOperator) -> Result<Self> {
        let n = self.shifted_norm(rho);
        if !(n > DEGENERATE_NORM_TOL) {
            return Err(Error::DegenerateShiftedOperator(n));
        }
        Ok(self.map_spectrum(|x| x / n))
    }

    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { basis: self.basis.clone(), spectrum: self.spectrum.iter().map(|&x| f(x)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_non_orthonormal_columns() {
        let m = ComplexMatrix::from_fn(2, 2, |_, _| C64::new(0.5f64.sqrt(), 0.0));
        assert!(matches!(PvmBasis::new(m), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn observable_round_trip() {
        let b = PvmBasis::random(3, 4).unwrap();
        let a = Observable::new(b, vec![0.5, -2.0, 1.0]).unwrap();
        let back = Observable::from_hermitian(&a.matrix()).unwrap();
        assert!((back.spectrum()[0] + 2.0).abs() < 1e-12);
        assert!(back.matrix().max_abs_diff(&a.matrix()) < 1e-12);
        assert_eq!(a.operator_norm(), 2.0);
        assert_eq!(a.normalized().unwrap().spectrum(), &[0.25, -1.0, 0.5]);
        assert_eq!(
            Observable::new(PvmBasis::computational(2), vec![1.0]),
            Err(Error::SpectrumLength { expected: 2, found: 1 })
        );
    }

    #[test]
    fn degenerate_shift_detected() {
        let rho = DensityOperator::pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        let z = Observable::new(PvmBasis::computational(2), vec![1.0, -1.0]).unwrap();
        assert_eq!(z.shifted_norm(&rho), 2.0);
        let flat = Observable::new(PvmBasis::computational(2), vec![3.0, 3.0]).unwrap();
        assert!(matches!(flat.shift_normalized(&rho), Err(Error::DegenerateShiftedOperator(_))));
        let zero = Observable::new(PvmBasis::computational(2), vec![0.0, 0.0]).unwrap();
        assert_eq!(zero.normalized(), Err(Error::ZeroOperator));
    }
}
