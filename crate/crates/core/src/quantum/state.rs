use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, random_density, random_density_with, vector_norm, ComplexMatrix, C64};

/// Tolerance for the Hermiticity, trace and positivity checks.
pub const STATE_TOL: f64 = 1e-10;

/// Validated density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.ensure_square()?;
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > STATE_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidTrace(trace));
        }
        let min = eig_hermitian(&matrix)?.eigenvalues[0];
        if min < -STATE_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { matrix })
    }

    /// Skips validation; for matrices that are states by construction.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    /// `|psi><psi|` for a nonzero ket, normalized.
    pub fn pure(ket: &[C64]) -> Result<Self> {
        let n = vector_norm(ket);
        if ket.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidTrace(n * n));
        }
        let unit: Vec<C64> = ket.iter().map(|z| z / n).collect();
        Ok(Self { matrix: ComplexMatrix::outer(&unit, &unit) })
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self { matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64) })
    }

    /// Qubit state `(I + x X + y Y + z Z) / 2`; requires `x^2 + y^2 + z^2 <= 1`.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let m = ComplexMatrix::from_row_major(
            2,
            2,
            alloc::vec![
                C64::new(0.5 * (1.0 + z), 0.0),
                C64::new(0.5 * x, -0.5 * y),
                C64::new(0.5 * x, 0.5 * y),
                C64::new(0.5 * (1.0 - z), 0.0),
            ],
        )?;
        Self::new(m)
    }

    pub fn random(d: usize, rank: usize, seed: u64) -> Result<Self> {
        Ok(Self { matrix: random_density(d, rank, seed)? })
    }

    pub fn random_with<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> Result<Self> {
        Ok(Self { matrix: random_density_with(rng, d, rank)? })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `<u| rho |v>`.
    pub fn element(&self, u: &[C64], v: &[C64]) -> C64 {
        self.matrix.sandwich(u, v)
    }

    /// `Tr(op rho)`.
    pub fn expectation(&self, op: &ComplexMatrix) -> C64 {
        (op * &self.matrix).trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validation_names_the_invariant() {
        let m = ComplexMatrix::from_real_diagonal(&[0.5, 0.4]);
        assert_eq!(DensityOperator::new(m), Err(Error::InvalidTrace(0.9)));
        let neg = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(matches!(DensityOperator::new(neg), Err(Error::NotPositive(_))));
        let skew = ComplexMatrix::from_row_major(
            2,
            2,
            vec![C64::new(0.5, 0.0), C64::new(0.1, 0.0), C64::new(0.2, 0.0), C64::new(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(DensityOperator::new(skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn constructors_agree() {
        let plus = DensityOperator::pure(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let bloch = DensityOperator::from_bloch(1.0, 0.0, 0.0).unwrap();
        assert!(plus.matrix().max_abs_diff(bloch.matrix()) < 1e-15);
        assert!((plus.purity() - 1.0).abs() < 1e-15);
        let mixed = DensityOperator::maximally_mixed(4).unwrap();
        assert!((mixed.purity() - 0.25).abs() < 1e-15);
        assert!(DensityOperator::from_bloch(1.0, 1.0, 0.0).is_err());
    }
}
