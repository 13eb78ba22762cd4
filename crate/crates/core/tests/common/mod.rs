#![allow(dead_code)]

use kdq_core::linalg::{ginibre, seeded_rng, ComplexMatrix};
use kdq_core::quantum::{DensityOperator, Observable, PvmBasis};
use rand::Rng;

pub fn hermitian(d: usize, seed: u64) -> ComplexMatrix {
    let g = ginibre(&mut seeded_rng(seed, 1), d, d);
    &g + &g.adjoint()
}

pub fn state(d: usize, seed: u64) -> DensityOperator {
    let rank = 1 + (seed as usize) % d;
    DensityOperator::random(d, rank, seed).unwrap()
}

pub fn basis(d: usize, seed: u64) -> PvmBasis {
    PvmBasis::random(d, seed ^ 0x9e37_79b9_7f4a_7c15).unwrap()
}

pub fn observable(d: usize, seed: u64) -> Observable {
    let mut rng = seeded_rng(seed, 2);
    let spectrum = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
    Observable::new(PvmBasis::random_with(&mut rng, d).unwrap(), spectrum).unwrap()
}
