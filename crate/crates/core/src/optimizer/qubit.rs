//! Closed forms for a single qubit.

use core::f64::consts::{FRAC_PI_2, PI};

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::quantum::{DensityOperator, PvmBasis};

/// Below this `|<a0| rho |a1>|` the phase is treated as undefined.
const PHASE_TOL: f64 = 1e-15;

/// `cos(alpha/2)|0> + e^{i beta} sin(alpha/2)|1>` and its orthogonal partner.
pub fn bloch_basis(alpha: f64, beta: f64) -> PvmBasis {
    let (s, c) = (0.5 * alpha).sin_cos();
    let e = C64::from_polar(1.0, beta);
    let m = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => C64::new(c, 0.0),
        (0, 1) => C64::new(s, 0.0),
        (1, 0) => e * s,
        _ => -e * c,
    });
    PvmBasis::from_unitary_unchecked(m)
}

/// [`bloch_basis`] with coordinates taken relative to `basis_a`.
pub fn bloch_basis_in(basis_a: &PvmBasis, alpha: f64, beta: f64) -> PvmBasis {
    PvmBasis::from_unitary_unchecked(basis_a.matrix() * bloch_basis(alpha, beta).matrix())
}

#[derive(Clone, Debug, PartialEq)]
pub struct QubitSolution {
    /// `2 |<a0| rho |a1>|`.
    pub q_nre: f64,
    /// Basis mutually unbiased with `basis_a` attaining `q_nre`.
    pub optimal_b: PvmBasis,
    /// `-arg <a0| rho |a1>`, or 0 when that element vanishes.
    pub phi01: f64,
    /// False when `<a0| rho |a1>` vanishes; `optimal_b` is then the sigma_y eigenbasis.
    pub phase_defined: bool,
}

pub fn qubit_analytic(rho: &DensityOperator, basis_a: &PvmBasis) -> Result<QubitSolution> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit(rho.dim()));
    }
    basis_a.check_dim(2)?;
    let rho01 = rho.element(&basis_a.ket(0), &basis_a.ket(1));
    let phase_defined = rho01.norm() > PHASE_TOL;
    let phi01 = if phase_defined { -rho01.arg() } else { 0.0 };
    Ok(QubitSolution {
        q_nre: 2.0 * rho01.norm(),
        optimal_b: bloch_basis_in(basis_a, FRAC_PI_2, phi01 + FRAC_PI_2),
        phi01,
        phase_defined,
    })
}

/// `2 r |sin phi_z| |sin alpha| |sin(beta - phi01)|`.
pub fn additive_closed_form(r: f64, phi_z: f64, alpha: f64, beta_minus_phi01: f64) -> f64 {
    2.0 * r * phi_z.sin().abs() * alpha.sin().abs() * beta_minus_phi01.sin().abs()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridMax {
    pub value: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Maximum of `f` over the grid `alpha_i = pi i / (n_alpha - 1)`,
/// `beta_j = 2 pi j / n_beta` of bases relative to `basis_a`.
pub fn grid_max(basis_a: &PvmBasis, n_alpha: usize, n_beta: usize, mut f: impl FnMut(&PvmBasis) -> f64) -> GridMax {
    let mut best = GridMax { value: f64::NEG_INFINITY, alpha: 0.0, beta: 0.0 };
    for i in 0..n_alpha {
        let alpha = if n_alpha > 1 { PI * i as f64 / (n_alpha - 1) as f64 } else { 0.0 };
        for j in 0..n_beta {
            let beta = 2.0 * PI * j as f64 / n_beta as f64;
            let v = f(&bloch_basis_in(basis_a, alpha, beta));
            if v > best.value {
                best = GridMax { value: v, alpha, beta };
            }
        }
    }
    best
}
