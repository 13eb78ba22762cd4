use alloc::vec::Vec;

use num_traits::Float;

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Maximum entrywise deviation from Hermiticity accepted by the Hermitian routines.
pub const HERMITIAN_TOL: f64 = 1e-10;

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `M = V diag(eigenvalues) V^dagger`, eigenvalues ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let scaled = ComplexMatrix::from_fn(v.rows(), v.cols(), |i, j| v[(i, j)] * self.eigenvalues[j]);
        &scaled * &v.adjoint()
    }
}

/// Unitary 2x2 block `G` (acting on indices p, q) that diagonalizes the
/// Hermitian block `[[app, apq], [conj(apq), aqq]]` via `G^dagger A G`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Rotation {
    pp: C64,
    pq: C64,
    qp: C64,
    qq: C64,
}

impl Rotation {
    pub(crate) fn annihilating(app: f64, aqq: f64, apq: C64) -> Self {
        let r = apq.norm();
        let phase = apq.conj() / r;
        let theta = (aqq - app) / (2.0 * r);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
            sign / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        Self { pp: C64::new(c, 0.0), pq: C64::new(s, 0.0), qp: phase * (-s), qq: phase * c }
    }

    /// `M <- M G` on columns p, q.
    pub(crate) fn apply_right(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        for k in 0..m.rows() {
            let (x, y) = (m[(k, p)], m[(k, q)]);
            m[(k, p)] = x * self.pp + y * self.qp;
            m[(k, q)] = x * self.pq + y * self.qq;
        }
    }

    /// `M <- G^dagger M` on rows p, q.
    fn apply_left_adjoint(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        for k in 0..m.cols() {
            let (x, y) = (m[(p, k)], m[(q, k)]);
            m[(p, k)] = self.pp.conj() * x + self.qp.conj() * y;
            m[(q, k)] = self.pq.conj() * x + self.qq.conj() * y;
        }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<EigenSystem> {
    let n = m.ensure_square()?;
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() == 0.0 {
                    continue;
                }
                let g = Rotation::annihilating(a[(p, p)].re, a[(q, q)].re, apq);
                g.apply_right(&mut a, p, q);
                g.apply_left_adjoint(&mut a, p, q);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                g.apply_right(&mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenSystem { eigenvalues, eigenvectors })
}
