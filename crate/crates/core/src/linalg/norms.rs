use alloc::vec::Vec;

use num_traits::Float;

use super::eigen::{eig_hermitian, Rotation};
use super::matrix::{ComplexMatrix, C64};
use crate::error::Result;

const MAX_SWEEPS: usize = 60;
const ORTHOGONALITY_TOL: f64 = 1e-15;

/// Singular values in descending order (one-sided Jacobi on the columns).
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut w = m.clone();
    let n = w.cols();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, C64::new(0.0, 0.0));
                for k in 0..w.rows() {
                    let (x, y) = (w[(k, p)], w[(k, q)]);
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                if gamma.norm() <= ORTHOGONALITY_TOL * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                Rotation::annihilating(alpha, beta, gamma).apply_right(&mut w, p, q);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n).map(|j| (0..w.rows()).map(|k| w[(k, j)].norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Schatten 1-norm, the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    m.ensure_square()?;
    Ok(singular_values(m).iter().sum())
}

/// Largest eigenvalue modulus of a Hermitian matrix.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    let e = eig_hermitian(m)?;
    Ok(e.eigenvalues.iter().fold(0.0, |acc, x| acc.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use alloc::vec;

    #[test]
    fn examples() {
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
        assert!((trace_norm(&ComplexMatrix::from_real_diagonal(&[2.0, -5.0])).unwrap() - 7.0).abs() < 1e-14);
        assert_eq!(operator_norm(&ComplexMatrix::identity(4)).unwrap(), 1.0);
        assert_eq!(operator_norm(&ComplexMatrix::from_real_diagonal(&[3.0, -4.0])).unwrap(), 4.0);
    }

    #[test]
    fn commutator_with_plus_state() {
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let plus = ComplexMatrix::from_fn(2, 2, |_, _| C64::new(0.5, 0.0));
        let tn = trace_norm(&z.commutator(&plus)).unwrap();
        assert!((tn - 2.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_x_norm() {
        let x = ComplexMatrix::from_row_major(
            2,
            2,
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        )
        .unwrap();
        assert!((operator_norm(&x).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_deficient_rectangular_shape_rejected() {
        assert_eq!(trace_norm(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { rows: 2, cols: 3 }));
        let sv = singular_values(&ComplexMatrix::outer(
            &[C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
            &[C64::new(2.0, 0.0), C64::new(0.0, 0.0)],
        ));
        assert!((sv[0] - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-14);
    }
}
