//! Exact suprema over operator spectra.
//!
//! Every spectral objective here is convex in the spectrum, so its maximum
//! over a polytope of admissible spectra sits at a vertex and plain
//! enumeration is exact. For `d <= 8` the vertex sets stay small.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, trace_norm, C64};
use crate::quantum::{DensityOperator, KdDistribution, Observable, PvmBasis};

/// Spectrum normalized to unit operator norm.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumParams {
    values: Vec<f64>,
}

impl SpectrumParams {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteSpectrum);
        }
        let top = values.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
        if (top - 1.0).abs() > 1e-12 {
            return Err(Error::UnnormalizedSpectrum(top));
        }
        Ok(Self { values })
    }

    /// Entry `pin` fixed to `+1`, the others `sin(free_k)`, so every real
    /// vector of `d - 1` coordinates is admissible.
    pub fn pinned(pin: usize, free: &[f64]) -> Self {
        let mut values: Vec<f64> = free.iter().map(|x| x.sin()).collect();
        values.insert(pin.min(values.len()), 1.0);
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn observable(&self, basis: &PvmBasis) -> Result<Observable> {
        Observable::new(basis.clone(), self.values.clone())
    }
}

/// All `s` in `{-1, 1}^d` with `s_0 = 1` (a global sign never matters here).
pub(crate) fn sign_vectors(d: usize) -> impl Iterator<Item = Vec<f64>> {
    let count = if d == 0 { 0 } else { 1usize << (d - 1) };
    (0..count).map(move |mask| (0..d).map(|k| if k > 0 && (mask >> (k - 1)) & 1 == 1 { -1.0 } else { 1.0 }).collect())
}

/// Vertices of `{x in [-1, 1]^d : p . x = 0}` excluding the origin.
pub(crate) fn centered_vertices(p: &[f64]) -> Vec<Vec<f64>> {
    let d = p.len();
    let mut out = Vec::new();
    if d < 2 {
        return out;
    }
    for k in 0..d {
        if p[k] <= 1e-15 {
            continue;
        }
        for mask in 0..(1usize << (d - 1)) {
            let mut x = vec![0.0; d];
            let mut bit = 0;
            let mut acc = 0.0;
            for j in 0..d {
                if j == k {
                    continue;
                }
                x[j] = if (mask >> bit) & 1 == 1 { -1.0 } else { 1.0 };
                acc += p[j] * x[j];
                bit += 1;
            }
            let xk = -acc / p[k];
            if xk.abs() <= 1.0 + 1e-12 {
                x[k] = xk.clamp(-1.0, 1.0);
                out.push(x);
            }
        }
    }
    for mask in 0..(1usize << d) {
        let s: Vec<f64> = (0..d).map(|j| if (mask >> j) & 1 == 1 { -1.0 } else { 1.0 }).collect();
        let dot: f64 = s.iter().zip(p).map(|(a, b)| a * b).sum();
        if dot.abs() <= 1e-15 {
            out.push(s);
        }
    }
    out
}

/// `max ||[A, rho]||_1 / 2` over spectra of unit norm on `basis_a`, with the maximizing spectrum.
pub fn max_trace_norm_asymmetry(rho: &DensityOperator, basis_a: &PvmBasis) -> Result<(f64, Vec<f64>)> {
    basis_a.check_dim(rho.dim())?;
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for s in sign_vectors(rho.dim()) {
        let a = Observable::new(basis_a.clone(), s.clone())?;
        let v = 0.5 * trace_norm(&a.matrix().commutator(rho.matrix()))?;
        if v > best.0 {
            best = (v, s);
        }
    }
    Ok(best)
}

/// `sign(i [A, rho])`, with zero eigenvalues sent to `+1`: the unit-norm `B`
/// maximizing `|Tr(B [A, rho])|`.
pub fn sign_operator_witness(a: &Observable, rho: &DensityOperator) -> Result<Observable> {
    let c = a.matrix().commutator(rho.matrix()).scale(C64::new(0.0, 1.0));
    let e = eig_hermitian(&c)?;
    let spectrum = e.eigenvalues.iter().map(|&l| if l < 0.0 { -1.0 } else { 1.0 }).collect();
    Observable::new(PvmBasis::from_unitary_unchecked(e.eigenvectors), spectrum)
}

/// `sup |Tr([A, B] rho)|` over unit-norm `A`, `B` diagonal in the table's bases.
///
/// `Tr([A, B] rho) = -2i sum_{a,b} a b Im K(a, b)`, so for a fixed sign
/// vector `s` on the first factor the best second factor is a sign pattern too.
pub fn commutator_sup(kd: &KdDistribution) -> (f64, Vec<f64>, Vec<f64>) {
    let d = kd.dim();
    let mut best = (f64::NEG_INFINITY, Vec::new(), Vec::new());
    for s in sign_vectors(d) {
        let col: Vec<f64> = (0..d).map(|b| (0..d).map(|a| s[a] * kd.get(a, b).im).sum()).collect();
        let v = 2.0 * col.iter().map(|x| x.abs()).sum::<f64>();
        if v > best.0 {
            let t = col.iter().map(|&x| if x < 0.0 { -1.0 } else { 1.0 }).collect();
            best = (v, s, t);
        }
    }
    best
}

/// `sup |x^T K y|` over centered unit-norm spectra `x`, `y`: the square root of
/// the bracket in the Robertson-Schroedinger type bounds.
pub fn covariance_sup(kd: &KdDistribution, p_a: &[f64], p_b: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let d = kd.dim();
    let xs = centered_vertices(p_a);
    let ys = centered_vertices(p_b);
    let mut best = (f64::NEG_INFINITY, Vec::new(), Vec::new());
    let mut u = vec![C64::new(0.0, 0.0); d];
    for x in &xs {
        for (b, ub) in u.iter_mut().enumerate() {
            *ub = (0..d).map(|a| kd.get(a, b) * x[a]).sum();
        }
        for y in &ys {
            let v = u.iter().zip(y).map(|(z, w)| z * w).sum::<C64>().norm();
            if v > best.0 {
                best = (v, x.clone(), y.clone());
            }
        }
    }
    best
}

/// Outcome probabilities `<k| rho |k>` in a basis.
pub fn outcome_probabilities(rho: &DensityOperator, basis: &PvmBasis) -> Vec<f64> {
    basis.kets().iter().map(|k| rho.element(k, k).re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_vector_count() {
        assert_eq!(sign_vectors(1).count(), 1);
        assert_eq!(sign_vectors(4).count(), 8);
        assert!(sign_vectors(3).all(|s| s[0] == 1.0));
    }

    #[test]
    fn centered_vertices_lie_in_the_slice() {
        let p = [0.5, 0.3, 0.2];
        let vs = centered_vertices(&p);
        assert!(!vs.is_empty());
        for v in &vs {
            let dot: f64 = v.iter().zip(&p).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-15);
            assert!(v.iter().all(|x| x.abs() <= 1.0));
            assert!(v.iter().any(|x| (x.abs() - 1.0).abs() < 1e-15));
        }
        // uniform weights admit balanced sign vectors
        assert!(centered_vertices(&[0.5, 0.5]).contains(&vec![1.0, -1.0]));
    }

    #[test]
    fn pinned_spectrum_has_unit_norm() {
        let s = SpectrumParams::pinned(1, &[0.3, -7.0]);
        assert_eq!(s.values()[1], 1.0);
        assert!(SpectrumParams::new(s.values().to_vec()).is_ok());
        assert_eq!(SpectrumParams::new(vec![0.5, 0.2]), Err(Error::UnnormalizedSpectrum(0.5)));
    }
}
