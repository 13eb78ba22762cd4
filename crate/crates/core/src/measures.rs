//! Scalar functionals of a state and fixed bases or observables.

use num_traits::Float;

use crate::error::Result;
use crate::linalg::{trace_norm, ComplexMatrix, C64};
use crate::quantum::{
    kd_distribution, nonselective_binary_update, rotated_projector, weak_value, DensityOperator, KdDistribution,
    Observable, PvmBasis, POSTSELECTION_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum MeasureKind {
    NRe,
    NCl,
    Cl1,
    Asymmetry,
    RobertsonBound,
    RSBound,
    MseSq,
    DisturbanceTerm,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasureValue {
    pub value: f64,
    pub kind: MeasureKind,
}

impl MeasureValue {
    fn new(kind: MeasureKind, value: f64) -> Self {
        Self { value, kind }
    }
}

/// Nonreality: `sum |Im K(a, b)|`.
pub fn nre(dist: &KdDistribution) -> MeasureValue {
    MeasureValue::new(MeasureKind::NRe, dist.table().as_slice().iter().map(|z| z.im.abs()).sum())
}

/// Nonclassicality: `sum |K(a, b)| - 1`.
pub fn ncl(dist: &KdDistribution) -> MeasureValue {
    MeasureValue::new(MeasureKind::NCl, dist.table().as_slice().iter().map(|z| z.norm()).sum::<f64>() - 1.0)
}

/// l1-norm coherence: sum of off-diagonal moduli of `rho` in `basis`.
pub fn l1_coherence(rho: &DensityOperator, basis: &PvmBasis) -> Result<MeasureValue> {
    basis.check_dim(rho.dim())?;
    let r = basis.represent(rho.matrix());
    let d = r.rows();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += r[(i, j)].norm();
            }
        }
    }
    Ok(MeasureValue::new(MeasureKind::Cl1, s))
}

/// `||[A, rho]||_1 / 2`.
pub fn trace_norm_asymmetry(a: &Observable, rho: &DensityOperator) -> Result<MeasureValue> {
    a.basis().check_dim(rho.dim())?;
    let value = 0.5 * trace_norm(&a.matrix().commutator(rho.matrix()))?;
    Ok(MeasureValue::new(MeasureKind::Asymmetry, value))
}

/// `||[A, rho]||_1 / (2 ||A||)`.
pub fn normalized_trace_norm_asymmetry(a: &Observable, rho: &DensityOperator) -> Result<MeasureValue> {
    trace_norm_asymmetry(&a.normalized()?, rho)
}

/// `|Tr(B [A, rho])| / 2` with both operators scaled to unit operator norm.
pub fn robertson_bound(a: &Observable, b: &Observable, rho: &DensityOperator) -> Result<MeasureValue> {
    a.basis().check_dim(rho.dim())?;
    b.basis().check_dim(rho.dim())?;
    let an = a.normalized()?.matrix();
    let bn = b.normalized()?.matrix();
    let value = 0.5 * (&bn * &an.commutator(rho.matrix())).trace().norm();
    Ok(MeasureValue::new(MeasureKind::RobertsonBound, value))
}

/// Robertson-Schroedinger type bound with the state-dependent normalizers
/// `X / ||X - <X> I||`; may be negative.
pub fn rs_bound(a: &Observable, b: &Observable, rho: &DensityOperator) -> Result<MeasureValue> {
    a.basis().check_dim(rho.dim())?;
    b.basis().check_dim(rho.dim())?;
    let an = a.shift_normalized(rho)?.matrix();
    let bn = b.shift_normalized(rho)?.matrix();
    let r = rho.matrix();
    let comm = (r * &an.commutator(&bn)).trace();
    let ea = (&an * r).trace();
    let eb = (&bn * r).trace();
    let anti = (r * &an.anticommutator(&bn)).trace() - ea * eb * 2.0;
    let value = 0.5 * (comm.norm_sqr() + anti.norm_sqr()).sqrt() - 1.0;
    Ok(MeasureValue::new(MeasureKind::RSBound, value))
}

/// `sum_{a,b} |Im w(a|b)|^2 Tr(Pi_b rho)` over postselections of nonzero probability.
pub fn mse_sq_term(rho: &DensityOperator, basis_a: &PvmBasis, basis_b: &PvmBasis) -> Result<MeasureValue> {
    let d = rho.dim();
    basis_a.check_dim(d)?;
    basis_b.check_dim(d)?;
    let mut s = 0.0;
    for b in 0..d {
        let kb = basis_b.ket(b);
        let p_b = rho.element(&kb, &kb).re;
        if p_b <= POSTSELECTION_TOL {
            continue;
        }
        for a in 0..d {
            let w = weak_value(a, rho, basis_a, &kb)?;
            s += w.im * w.im * p_b;
        }
    }
    Ok(MeasureValue::new(MeasureKind::MseSq, s))
}

fn disturbance_sum(
    rho: &DensityOperator,
    basis_a: &PvmBasis,
    basis_b: &PvmBasis,
    projector: impl Fn(&[C64], &[C64]) -> Result<ComplexMatrix>,
) -> Result<f64> {
    let d = rho.dim();
    basis_a.check_dim(d)?;
    basis_b.check_dim(d)?;
    let mut s = 0.0;
    for ka in basis_a.kets() {
        let diff = rho.matrix() - nonselective_binary_update(rho, &ka)?.matrix();
        for kb in basis_b.kets() {
            s += (&diff * &projector(&kb, &ka)?).trace().norm();
        }
    }
    Ok(s)
}

/// `sum_{a,b} |Tr((rho - rho_a) Pi_b)|`.
pub fn disturbance_term(rho: &DensityOperator, basis_a: &PvmBasis, basis_b: &PvmBasis) -> Result<MeasureValue> {
    let s = disturbance_sum(rho, basis_a, basis_b, |kb, _| Ok(ComplexMatrix::outer(kb, kb)))?;
    Ok(MeasureValue::new(MeasureKind::DisturbanceTerm, s))
}

/// Same as [`disturbance_term`] with each `Pi_b` rotated by `exp(i Pi_a pi/2)`.
pub fn rotated_disturbance_term(rho: &DensityOperator, basis_a: &PvmBasis, basis_b: &PvmBasis) -> Result<MeasureValue> {
    let s = disturbance_sum(rho, basis_a, basis_b, rotated_projector)?;
    Ok(MeasureValue::new(MeasureKind::DisturbanceTerm, s))
}

/// `nre` and `ncl` of the table for a pair of bases, the common case.
pub fn nre_ncl(rho: &DensityOperator, basis_a: &PvmBasis, basis_b: &PvmBasis) -> Result<(f64, f64)> {
    let kd = kd_distribution(rho, basis_a, basis_b)?;
    Ok((nre(&kd).value, ncl(&kd).value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use alloc::vec;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn z_basis() -> PvmBasis {
        PvmBasis::computational(2)
    }

    fn x_basis() -> PvmBasis {
        let h = c(FRAC_1_SQRT_2, 0.0);
        PvmBasis::from_kets(&[vec![h, h], vec![h, -h]]).unwrap()
    }

    fn y_basis() -> PvmBasis {
        let h = FRAC_1_SQRT_2;
        PvmBasis::from_kets(&[vec![c(h, 0.0), c(0.0, h)], vec![c(h, 0.0), c(0.0, -h)]]).unwrap()
    }

    fn plus() -> DensityOperator {
        DensityOperator::from_bloch(1.0, 0.0, 0.0).unwrap()
    }

    fn psi() -> DensityOperator {
        DensityOperator::pure(&[c(1.0, 0.0), C64::from_polar(1.0, FRAC_PI_4)]).unwrap()
    }

    fn pauli(spectrum: [f64; 2], basis: PvmBasis) -> Observable {
        Observable::new(basis, spectrum.to_vec()).unwrap()
    }

    #[test]
    fn commuting_case_vanishes() {
        let rho = DensityOperator::new(ComplexMatrix::from_real_diagonal(&[0.25, 0.75])).unwrap();
        let kd = kd_distribution(&rho, &z_basis(), &x_basis()).unwrap();
        assert!(nre(&kd).value < 1e-15);
        assert!(ncl(&kd).value.abs() < 1e-15);
        assert_eq!(l1_coherence(&rho, &z_basis()).unwrap().value, 0.0);
        assert!(mse_sq_term(&rho, &z_basis(), &x_basis()).unwrap().value < 1e-30);
        assert!(disturbance_term(&rho, &z_basis(), &x_basis()).unwrap().value < 1e-15);
        let z = pauli([1.0, -1.0], z_basis());
        assert!(trace_norm_asymmetry(&z, &rho).unwrap().value < 1e-15);
        assert!(robertson_bound(&z, &pauli([1.0, -1.0], y_basis()), &rho).unwrap().value < 1e-15);
    }

    #[test]
    fn psi_nonreality_and_nonclassicality() {
        let kd = kd_distribution(&psi(), &z_basis(), &x_basis()).unwrap();
        assert!((nre(&kd).value - FRAC_1_SQRT_2).abs() < 1e-14);
        let e = C64::from_polar(1.0, -FRAC_PI_4);
        let moduli = (c(1.0, 0.0) + e).norm() / 4.0 * 2.0 + (c(1.0, 0.0) - e).norm() / 4.0 * 2.0;
        assert!((ncl(&kd).value - (moduli - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn l1_examples() {
        assert!((l1_coherence(&plus(), &z_basis()).unwrap().value - 1.0).abs() < 1e-15);
        let mixed = DensityOperator::maximally_mixed(3).unwrap();
        assert_eq!(l1_coherence(&mixed, &PvmBasis::computational(3)).unwrap().value, 0.0);
        assert_eq!(l1_coherence(&mixed, &z_basis()), Err(Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn asymmetry_of_plus_under_z() {
        let z = pauli([1.0, -1.0], z_basis());
        assert!((trace_norm_asymmetry(&z, &plus()).unwrap().value - 1.0).abs() < 1e-14);
        let shifted = z.map_spectrum(|x| x + 3.5);
        assert!((trace_norm_asymmetry(&shifted, &plus()).unwrap().value - 1.0).abs() < 1e-14);
        let scaled = z.map_spectrum(|x| 4.0 * x);
        assert!((normalized_trace_norm_asymmetry(&scaled, &plus()).unwrap().value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn robertson_example() {
        let z = pauli([1.0, -1.0], z_basis());
        let y = pauli([1.0, -1.0], y_basis());
        assert!((robertson_bound(&z, &y, &plus()).unwrap().value - 1.0).abs() < 1e-14);
        let zero = pauli([0.0, 0.0], z_basis());
        assert_eq!(robertson_bound(&zero, &y, &plus()), Err(Error::ZeroOperator));
    }

    #[test]
    fn rs_bound_at_eigenstate() {
        let rho = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let z = pauli([1.0, -1.0], z_basis());
        assert!((rs_bound(&z, &z, &rho).unwrap().value + 1.0).abs() < 1e-15);
        let flat = pauli([2.0, 2.0], z_basis());
        assert!(matches!(rs_bound(&flat, &z, &rho), Err(Error::DegenerateShiftedOperator(_))));
    }

    #[test]
    fn rs_bound_saturates_at_zero_for_mubs() {
        // |+>, A = Z, B = Y: the bracket term reaches its maximum 1, so the bound is 0.
        let z = pauli([1.0, -1.0], z_basis());
        let y = pauli([1.0, -1.0], y_basis());
        let v = rs_bound(&z, &y, &plus()).unwrap().value;
        assert!(v.abs() < 1e-14, "{v}");
    }

    #[test]
    fn mse_of_plus_with_y_postselection() {
        let v = mse_sq_term(&plus(), &z_basis(), &y_basis()).unwrap().value;
        // four weak values with |Im| = 1/2, each weighted by 1/2
        assert!((v - 0.5).abs() < 1e-14);
        let kd = kd_distribution(&plus(), &z_basis(), &y_basis()).unwrap();
        let q = nre(&kd).value;
        assert!((q - 1.0).abs() < 1e-14);
        assert!(2.0 * v >= q * q - 1e-12);
    }

    #[test]
    fn mse_skips_impossible_postselection() {
        let rho = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let v = mse_sq_term(&rho, &x_basis(), &z_basis()).unwrap().value;
        assert_eq!(v, 0.0);
    }

    #[test]
    fn disturbance_of_plus() {
        let v = disturbance_term(&plus(), &z_basis(), &x_basis()).unwrap().value;
        assert!((v - 2.0).abs() < 1e-14);
        let rotated = rotated_disturbance_term(&plus(), &z_basis(), &x_basis()).unwrap().value;
        let kd = kd_distribution(&plus(), &z_basis(), &x_basis()).unwrap();
        assert!(ncl(&kd).value <= 0.5 * v + 0.5 * rotated + 1e-12);
    }
}
