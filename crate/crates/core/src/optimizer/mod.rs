//! Suprema over measurement bases and observable spectra.

mod chart;
mod nelder_mead;
mod qubit;
mod spectrum;
mod tradeoff;

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{inner, seeded_rng};
use crate::measures::{disturbance_term, mse_sq_term, ncl, nre};
use crate::quantum::{kd::check_dims, kd_distribution, DensityOperator, KdDistribution, Observable, PvmBasis};

pub use chart::{decode_pvm, encode_pvm, projector_distance, PvmParams};
pub use nelder_mead::{Minimum, NelderMead};
pub use qubit::{additive_closed_form, bloch_basis, bloch_basis_in, grid_max, qubit_analytic, GridMax, QubitSolution};
pub use spectrum::{
    commutator_sup, covariance_sup, max_trace_norm_asymmetry, outcome_probabilities, sign_operator_witness,
    SpectrumParams,
};
pub use tradeoff::{tradeoff_bound, TradeoffKind, TRADEOFF_SLACK};

const COARSE_STEP: f64 = 0.5;
const POLISH_STEP: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self { restarts: 32, max_iterations: 2000, tolerance: 1e-9, seed: 0 }
    }
}

impl OptConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptResult {
    pub value: f64,
    pub witness_basis: Option<PvmBasis>,
    /// Spectra of the witnessing `A` (on the fixed basis) and `B` (on `witness_basis`).
    pub witness_spectra: Option<(SpectrumParams, SpectrumParams)>,
    pub restarts_used: usize,
    pub converged: bool,
    pub evaluations: usize,
}

struct Search {
    value: f64,
    basis: PvmBasis,
    converged: bool,
    evaluations: usize,
}

/// Restarted Nelder-Mead over the basis chart. Restart `r` starts from
/// `warm[r]` when given, otherwise from a Haar-random basis drawn from stream
/// `r` of the seed; the best restart wins, ties going to the lower index.
fn search_bases(d: usize, cfg: &OptConfig, warm: &[PvmBasis], objective: impl Fn(&PvmBasis) -> f64) -> Result<Search> {
    cfg.validate()?;
    let f = |x: &[f64]| -> f64 {
        let b = PvmParams::new(d, x.to_vec()).map(|p| p.decode());
        b.map_or(f64::INFINITY, |b| -objective(&b))
    };
    let coarse = NelderMead {
        initial_step: COARSE_STEP,
        max_iterations: cfg.max_iterations,
        tolerance: cfg.tolerance,
        ..NelderMead::default()
    };
    let polish = NelderMead { initial_step: POLISH_STEP, ..coarse.clone() };

    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    let mut evaluations = 0;
    for r in 0..cfg.restarts {
        let start = match warm.get(r) {
            Some(b) => b.clone(),
            None => PvmBasis::random_with(&mut seeded_rng(cfg.seed, r as u64), d)?,
        };
        let first = coarse.minimize(&f, encode_pvm(&start).values());
        let second = polish.minimize(&f, &first.point);
        evaluations += first.evaluations + second.evaluations;
        let m = if second.value <= first.value { second } else { first };
        let value = -m.value;
        if best.as_ref().map_or(true, |(v, _, _)| value > *v) {
            best = Some((value, m.point, m.converged));
        }
    }
    let (_, point, converged) = best.expect("at least one restart");
    let basis = PvmParams::new(d, point)?.decode();
    Ok(Search { value: objective(&basis), basis, converged, evaluations })
}

/// Basis attaining the exact Robertson-type supremum; `q_nre` is never below
/// its value there, which makes it a useful first restart.
fn robertson_witness(rho: &DensityOperator, basis_a: &PvmBasis) -> Result<(f64, Observable, Observable)> {
    let (value, spectrum) = max_trace_norm_asymmetry(rho, basis_a)?;
    let a = Observable::new(basis_a.clone(), spectrum)?;
    let b = sign_operator_witness(&a, rho)?;
    Ok((value, a, b))
}

fn basis_result(s: Search, cfg: &OptConfig) -> OptResult {
    OptResult {
        value: s.value,
        witness_basis: Some(s.basis),
        witness_spectra: None,
        restarts_used: cfg.restarts,
        converged: s.converged,
        evaluations: s.evaluations,
    }
}

fn kd_or_nan(rho: &DensityOperator, a: &PvmBasis, b: &PvmBasis) -> Option<KdDistribution> {
    kd_distribution(rho, a, b).ok()
}

/// Best-found `sup_B NRe(K(rho; A, B))`.
pub fn q_nre(rho: &DensityOperator, basis_a: &PvmBasis, cfg: &OptConfig) -> Result<OptResult> {
    check_dims(rho, basis_a, basis_a)?;
    let (_, _, b) = robertson_witness(rho, basis_a)?;
    let s = search_bases(rho.dim(), cfg, &[b.basis().clone()], |bb| {
        kd_or_nan(rho, basis_a, bb).map_or(f64::NAN, |kd| nre(&kd).value)
    })?;
    Ok(basis_result(s, cfg))
}

/// Best-found `sup_B NCl(K(rho; A, B))`.
pub fn q_ncl(rho: &DensityOperator, basis_a: &PvmBasis, cfg: &OptConfig) -> Result<OptResult> {
    check_dims(rho, basis_a, basis_a)?;
    let (_, _, b) = robertson_witness(rho, basis_a)?;
    let s = search_bases(rho.dim(), cfg, &[b.basis().clone()], |bb| {
        kd_or_nan(rho, basis_a, bb).map_or(f64::NAN, |kd| ncl(&kd).value)
    })?;
    Ok(basis_result(s, cfg))
}

/// `sum (Im K)^2 / p_b` from a table, skipping vanishing `p_b`.
fn mse_from_table(kd: &KdDistribution) -> f64 {
    let p = kd.marginal_b();
    kd.entries()
        .filter(|(_, b, _)| p[*b].re > crate::quantum::POSTSELECTION_TOL)
        .map(|(_, b, k)| k.im * k.im / p[b].re)
        .sum()
}

/// Square root of the best-found `sup_B` of the error functional.
pub fn epsilon(rho: &DensityOperator, basis_a: &PvmBasis, cfg: &OptConfig) -> Result<OptResult> {
    check_dims(rho, basis_a, basis_a)?;
    let (_, _, b) = robertson_witness(rho, basis_a)?;
    let s = search_bases(rho.dim(), cfg, &[b.basis().clone()], |bb| {
        kd_or_nan(rho, basis_a, bb).map_or(f64::NAN, |kd| mse_from_table(&kd))
    })?;
    let mut r = basis_result(s, cfg);
    r.value = r.value.max(0.0).sqrt();
    Ok(r)
}

/// Best-found `sup_B` of the disturbance functional.
pub fn delta(rho: &DensityOperator, basis_a: &PvmBasis, cfg: &OptConfig) -> Result<OptResult> {
    check_dims(rho, basis_a, basis_a)?;
    let (_, _, b) = robertson_witness(rho, basis_a)?;
    let kets_a = basis_a.kets();
    let p_a: Vec<f64> = kets_a.iter().map(|k| rho.element(k, k).re).collect();
    // Tr((rho - rho_a) Pi_b) = 2 Re K(a, b) - 2 |<b|a>|^2 p_a
    let s = search_bases(rho.dim(), cfg, &[b.basis().clone()], |bb| {
        let Some(kd) = kd_or_nan(rho, basis_a, bb) else { return f64::NAN };
        let kets_b = bb.kets();
        kd.entries().map(|(a, b, k)| 2.0 * (k.re - inner(&kets_b[b], &kets_a[a]).norm_sqr() * p_a[a]).abs()).sum()
    })?;
    Ok(basis_result(s, cfg))
}

/// Exact `sup_A sup_B |Tr(B [A, rho])| / 2` over unit-norm `A` diagonal in
/// `basis_a` and arbitrary unit-norm `B`, i.e. the maximal normalized
/// trace-norm asymmetry. The witness `B` is the sign operator of `i [A, rho]`.
pub fn sup_robertson(rho: &DensityOperator, basis_a: &PvmBasis, cfg: &OptConfig) -> Result<OptResult> {
    check_dims(rho, basis_a, basis_a)?;
    cfg.validate()?;
    let (value, a, b) = robertson_witness(rho, basis_a)?;
    let d = rho.dim();
    Ok(OptResult {
        value,
        witness_basis: Some(b.basis().clone()),
        witness_spectra: Some((
            SpectrumParams::new(a.spectrum().to_vec())?,
            SpectrumParams::new(b.spectrum().to_vec())?,
        )),
        restarts_used: 1,
        converged: true,
        evaluations: if d == 0 { 0 } else { 1 << (d - 1) },
    })
}

/// Best-found supremum of the Robertson-Schroedinger type bound over `A`
/// diagonal in `basis_a` and arbitrary `B`. Spectra are handled exactly;
/// only the basis of `B` is searched.
pub fn sup_rs(rho: &DensityOperator, basis_a: &PvmBasis, cfg: &OptConfig) -> Result<OptResult> {
    check_dims(rho, basis_a, basis_a)?;
    let (_, _, b) = robertson_witness(rho, basis_a)?;
    let p_a = outcome_probabilities(rho, basis_a);
    let objective = |bb: &PvmBasis| -> f64 {
        let Some(kd) = kd_or_nan(rho, basis_a, bb) else { return f64::NAN };
        covariance_sup(&kd, &p_a, &outcome_probabilities(rho, bb)).0 - 1.0
    };
    let s = search_bases(rho.dim(), cfg, &[basis_a.clone(), b.basis().clone()], objective)?;
    let kd = kd_distribution(rho, basis_a, &s.basis)?;
    let (_, x, y) = covariance_sup(&kd, &p_a, &outcome_probabilities(rho, &s.basis));
    let spectra = match (SpectrumParams::new(x), SpectrumParams::new(y)) {
        (Ok(x), Ok(y)) => Some((x, y)),
        _ => None,
    };
    let mut r = basis_result(s, cfg);
    r.witness_spectra = spectra;
    Ok(r)
}

/// Objective of each basis search re-evaluated through the plain measure
/// functions, for checking an [`OptResult`] against its witness.
pub fn reevaluate(kind: SupKind, rho: &DensityOperator, basis_a: &PvmBasis, r: &OptResult) -> Result<f64> {
    let b = r.witness_basis.as_ref().ok_or(Error::InvalidConfig("result carries no witness basis"))?;
    Ok(match kind {
        SupKind::Nre => nre(&kd_distribution(rho, basis_a, b)?).value,
        SupKind::Ncl => ncl(&kd_distribution(rho, basis_a, b)?).value,
        SupKind::Epsilon => mse_sq_term(rho, basis_a, b)?.value.max(0.0).sqrt(),
        SupKind::Delta => disturbance_term(rho, basis_a, b)?.value,
        SupKind::Robertson | SupKind::Rs => {
            let (sa, sb) =
                r.witness_spectra.as_ref().ok_or(Error::InvalidConfig("result carries no witness spectra"))?;
            let a = sa.observable(basis_a)?;
            let bo = sb.observable(b)?;
            if kind == SupKind::Robertson {
                crate::measures::robertson_bound(&a, &bo, rho)?.value
            } else {
                crate::measures::rs_bound(&a, &bo, rho)?.value
            }
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupKind {
    Nre,
    Ncl,
    Epsilon,
    Delta,
    Robertson,
    Rs,
}
