use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{inner, vector_norm, ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Deterministic generator for `(seed, stream)`; streams are independent counters.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// `rows x cols` matrix of i.i.d. standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-distributed unitary drawn from `rng`.
pub fn haar_unitary_with<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    loop {
        let g = ginibre(rng, d, d);
        if let Some(q) = orthonormalize_columns(&g) {
            return Ok(q);
        }
    }
}

/// Modified Gram-Schmidt with one reorthogonalization pass. The implied R has
/// a positive real diagonal, which makes the Q factor of a Ginibre matrix Haar.
fn orthonormalize_columns(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let d = g.cols();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = g.column(j);
        let original = vector_norm(&v);
        for _ in 0..2 {
            for u in &basis {
                let proj = inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = vector_norm(&v);
        if !(norm > 1e-8 * original) {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        basis.push(v);
    }
    ComplexMatrix::from_columns(&basis).ok()
}

/// Haar-random `d x d` unitary, deterministic in `seed`.
pub fn haar_random_unitary(d: usize, seed: u64) -> Result<ComplexMatrix> {
    haar_unitary_with(&mut seeded_rng(seed, 0), d)
}

/// Random density matrix `G G^dagger / Tr` with `G` a `d x rank` Ginibre matrix.
pub fn random_density_with<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    if rank == 0 || rank > d {
        return Err(Error::InvalidRank { dim: d, rank });
    }
    let g = ginibre(rng, d, rank);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    let mut rho = w.scale_real(1.0 / tr);
    for i in 0..d {
        rho[(i, i)].im = 0.0;
    }
    Ok(rho)
}

pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<ComplexMatrix> {
    random_density_with(&mut seeded_rng(seed, 0), d, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;

    #[test]
    fn one_dimensional_is_a_phase() {
        let u = haar_random_unitary(1, 3).unwrap();
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
        assert_eq!(haar_random_unitary(0, 3), Err(Error::InvalidDimension(0)));
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(haar_random_unitary(3, 7).unwrap(), haar_random_unitary(3, 7).unwrap());
        assert_ne!(haar_random_unitary(3, 7).unwrap(), haar_random_unitary(3, 8).unwrap());
    }

    #[test]
    fn columns_have_unit_norm() {
        for seed in 0..100 {
            let u = haar_random_unitary(1 + (seed as usize % 6), seed).unwrap();
            for j in 0..u.cols() {
                assert!((vector_norm(&u.column(j)) - 1.0).abs() < 1e-12);
            }
            assert!(u.unitarity_deviation() < 1e-10);
        }
    }

    #[test]
    fn pure_and_full_rank_states() {
        let pure = random_density(2, 1, 5).unwrap();
        let e = eig_hermitian(&pure).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-12 && (e.eigenvalues[1] - 1.0).abs() < 1e-12);

        let mixed = random_density(4, 4, 5).unwrap();
        assert!((mixed.trace().re - 1.0).abs() < 1e-12);
        let e = eig_hermitian(&mixed).unwrap();
        assert!(e.eigenvalues[0] > 1e-6);
        assert_eq!(random_density(3, 4, 0), Err(Error::InvalidRank { dim: 3, rank: 4 }));
        assert_eq!(random_density(3, 0, 0), Err(Error::InvalidRank { dim: 3, rank: 0 }));
    }

    #[test]
    fn qubit_purity_matches_bloch_radius() {
        let rho = random_density(2, 2, 11).unwrap();
        let e = eig_hermitian(&rho).unwrap();
        let p = e.eigenvalues[1];
        let r = (2.0 * p - 1.0).abs();
        let purity = (&rho * &rho).trace().re;
        assert!((purity - 0.5 * (1.0 + r * r)).abs() < 1e-12);
    }
}
