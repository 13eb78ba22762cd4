use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix, C64};
use crate::quantum::kd::check_dims;
use crate::quantum::{DensityOperator, PvmBasis};

/// Dense real table indexed `(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealTable {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealTable {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for a in 0..rows {
            for b in 0..cols {
                data.push(f(a, b));
            }
        }
        Self { rows, cols, data }
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.data[a * self.cols + b]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn abs_sum(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).sum()
    }
}

/// Three-term split of a KD table into a classical joint probability and two
/// disturbance-induced corrections.
#[derive(Clone, Debug, PartialEq)]
pub struct JohansenTerms {
    /// `Tr(Pi_b Pi_a rho Pi_a)`.
    pub classical: RealTable,
    /// `Tr((rho - rho_a) Pi_b)`.
    pub real_mod: RealTable,
    /// `Tr((rho - rho_a) Pi'_b)` with `Pi'_b` the projector rotated by `exp(-i Pi_a pi/2)`.
    pub imag_mod: RealTable,
}

impl JohansenTerms {
    /// `classical + real_mod/2 - i imag_mod/2`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.classical.rows(), self.classical.cols(), |a, b| {
            C64::new(self.classical.get(a, b) + 0.5 * self.real_mod.get(a, b), -0.5 * self.imag_mod.get(a, b))
        })
    }
}

/// `|b> + (phase - 1) <a|b> |a>`, i.e. `(I + (phase - 1) Pi_a) |b>`.
fn phase_rotate(ket_b: &[C64], ket_a: &[C64], phase: C64) -> Vec<C64> {
    let c = (phase - 1.0) * inner(ket_a, ket_b);
    ket_b.iter().zip(ket_a).map(|(b, a)| b + c * a).collect()
}

fn check_pair(ket_b: &[C64], ket_a: &[C64]) -> Result<()> {
    if ket_a.len() == ket_b.len() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: ket_a.len(), found: ket_b.len() })
    }
}

/// `rho_a = Pi_a rho Pi_a + (I - Pi_a) rho (I - Pi_a)` for `Pi_a = |a><a|`.
pub fn nonselective_binary_update(rho: &DensityOperator, ket_a: &[C64]) -> Result<DensityOperator> {
    Ok(DensityOperator::from_matrix_unchecked(update_matrix(rho, ket_a)?))
}

fn update_matrix(rho: &DensityOperator, ket_a: &[C64]) -> Result<ComplexMatrix> {
    let d = rho.dim();
    if ket_a.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: ket_a.len() });
    }
    let p = ComplexMatrix::outer(ket_a, ket_a);
    let r = rho.matrix();
    let pr = &p * r;
    let rp = r * &p;
    let prp = &pr * &p;
    // rho - P rho - rho P + 2 P rho P
    Ok(&(&(r - &pr) - &rp) + &prp.scale_real(2.0))
}

/// Ket of `exp(i Pi_a pi/2) Pi_b exp(-i Pi_a pi/2)`, i.e. `(I + (i - 1) Pi_a) |b>`.
pub fn rotated_ket(ket_b: &[C64], ket_a: &[C64]) -> Result<Vec<C64>> {
    check_pair(ket_b, ket_a)?;
    Ok(phase_rotate(ket_b, ket_a, C64::new(0.0, 1.0)))
}

/// Projector `exp(i Pi_a pi/2) Pi_b exp(-i Pi_a pi/2)`.
pub fn rotated_projector(ket_b: &[C64], ket_a: &[C64]) -> Result<ComplexMatrix> {
    let k = rotated_ket(ket_b, ket_a)?;
    Ok(ComplexMatrix::outer(&k, &k))
}

/// The whole basis `{b}` rotated about `Pi_a`; again a basis since the rotation is unitary.
pub fn rotated_basis(basis_b: &PvmBasis, ket_a: &[C64]) -> Result<PvmBasis> {
    let kets = basis_b.kets().iter().map(|k| rotated_ket(k, ket_a)).collect::<Result<Vec<_>>>()?;
    Ok(PvmBasis::from_unitary_unchecked(ComplexMatrix::from_columns(&kets)?))
}

pub fn johansen_decomposition(rho: &DensityOperator, basis_a: &PvmBasis, basis_b: &PvmBasis) -> Result<JohansenTerms> {
    let d = check_dims(rho, basis_a, basis_b)?;
    let kets_a = basis_a.kets();
    let kets_b = basis_b.kets();
    let minus_i = C64::new(0.0, -1.0);
    let mut classical = Vec::with_capacity(d * d);
    let mut real_mod = Vec::with_capacity(d * d);
    let mut imag_mod = Vec::with_capacity(d * d);
    for ka in &kets_a {
        let disturbance = rho.matrix() - &update_matrix(rho, ka)?;
        let p_a = rho.element(ka, ka).re;
        for kb in &kets_b {
            classical.push(inner(kb, ka).norm_sqr() * p_a);
            real_mod.push(disturbance.sandwich(kb, kb).re);
            let turned = phase_rotate(kb, ka, minus_i);
            imag_mod.push(disturbance.sandwich(&turned, &turned).re);
        }
    }
    let table = |data| RealTable { rows: d, cols: d, data };
    Ok(JohansenTerms { classical: table(classical), real_mod: table(real_mod), imag_mod: table(imag_mod) })
}
