mod common;

use kdq_core::linalg::{haar_random_unitary, ComplexMatrix};
use kdq_core::measures::{
    disturbance_term, l1_coherence, mse_sq_term, ncl, nre, robertson_bound, rotated_disturbance_term, rs_bound,
    trace_norm_asymmetry,
};
use kdq_core::quantum::{kd_distribution, Observable, PvmBasis};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lemma1_pointwise(d in 2usize..=6, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let a = common::observable(d, seed);
        let b = common::observable(d, seed.wrapping_add(1));
        let kd = kd_distribution(&rho, a.basis(), b.basis()).unwrap();
        prop_assert!(nre(&kd).value >= robertson_bound(&a, &b, &rho).unwrap().value - 1e-10);
    }

    #[test]
    fn lemma2_pointwise(d in 2usize..=6, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let a = common::observable(d, seed);
        let b = common::observable(d, seed.wrapping_add(1));
        let kd = kd_distribution(&rho, a.basis(), b.basis()).unwrap();
        prop_assert!(ncl(&kd).value >= rs_bound(&a, &b, &rho).unwrap().value - 1e-10);
    }

    #[test]
    fn coherence_ceilings_and_nonnegativity(d in 2usize..=6, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let a = common::basis(d, seed);
        let b = common::basis(d, seed.wrapping_add(5));
        let kd = kd_distribution(&rho, &a, &b).unwrap();
        let l1 = l1_coherence(&rho, &a).unwrap().value;
        prop_assert!(ncl(&kd).value >= -1e-10);
        prop_assert!(ncl(&kd).value <= l1 + 1e-10);
        prop_assert!(nre(&kd).value <= l1 + 1e-10);
        prop_assert!(nre(&kd).value <= ncl(&kd).value + 1.0);
    }
}

proptest! {
    #[test]
    fn pointwise_johansen_inequality(d in 2usize..=5, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let a = common::basis(d, seed);
        let b = common::basis(d, seed.wrapping_add(2));
        let kd = kd_distribution(&rho, &a, &b).unwrap();
        let dist = disturbance_term(&rho, &a, &b).unwrap().value;
        let rot = rotated_disturbance_term(&rho, &a, &b).unwrap().value;
        prop_assert!(ncl(&kd).value <= 0.5 * dist + 0.5 * rot + 1e-10);
    }

    #[test]
    fn weighted_error_dominates_squared_nonreality(d in 2usize..=5, seed in any::<u64>()) {
        // Cauchy-Schwarz over the d^2 cells with weights p_b summing to d.
        let rho = common::state(d, seed);
        let a = common::basis(d, seed);
        let b = common::basis(d, seed.wrapping_add(4));
        let q = nre(&kd_distribution(&rho, &a, &b).unwrap()).value;
        let m = mse_sq_term(&rho, &a, &b).unwrap().value;
        prop_assert!(d as f64 * m >= q * q - 1e-10);
    }

    #[test]
    fn robertson_is_scale_invariant(d in 2usize..=5, seed in any::<u64>(), c in prop_oneof![-5.0..-0.1f64, 0.1..5.0f64]) {
        let rho = common::state(d, seed);
        let a = common::observable(d, seed);
        let b = common::observable(d, seed.wrapping_add(1));
        let base = robertson_bound(&a, &b, &rho).unwrap().value;
        let scaled = robertson_bound(&a.map_spectrum(|x| c * x), &b, &rho).unwrap().value;
        prop_assert!((base - scaled).abs() < 1e-10);
    }

    #[test]
    fn rs_bound_is_affine_invariant(
        d in 2usize..=5,
        seed in any::<u64>(),
        c in prop_oneof![-5.0..-0.1f64, 0.1..5.0f64],
        shift in -4.0..4.0f64,
    ) {
        let rho = common::state(d, seed);
        let a = common::observable(d, seed);
        let b = common::observable(d, seed.wrapping_add(1));
        let base = rs_bound(&a, &b, &rho).unwrap().value;
        let moved = rs_bound(&a.map_spectrum(|x| c * x + shift), &b, &rho).unwrap().value;
        prop_assert!((base - moved).abs() < 1e-9, "{} vs {}", base, moved);
    }

    #[test]
    fn observable_measures_ignore_degenerate_gauge(seed in any::<u64>()) {
        // rotate the degenerate eigenspace of A = diag(1, 1, -1) by an arbitrary unitary
        let d = 3;
        let rho = common::state(d, seed);
        let base = common::basis(d, seed);
        let w = haar_random_unitary(2, seed.wrapping_add(9)).unwrap();
        let mut mix = ComplexMatrix::identity(3);
        for i in 0..2 {
            for j in 0..2 {
                mix[(i, j)] = w[(i, j)];
            }
        }
        let other = PvmBasis::new(base.matrix() * &mix).unwrap();
        let a1 = Observable::new(base, vec![1.0, 1.0, -1.0]).unwrap();
        let a2 = Observable::new(other, vec![1.0, 1.0, -1.0]).unwrap();
        let b = common::observable(d, seed.wrapping_add(3));
        prop_assert!((robertson_bound(&a1, &b, &rho).unwrap().value - robertson_bound(&a2, &b, &rho).unwrap().value).abs() < 1e-10);
        prop_assert!((rs_bound(&a1, &b, &rho).unwrap().value - rs_bound(&a2, &b, &rho).unwrap().value).abs() < 1e-10);
        prop_assert!((trace_norm_asymmetry(&a1, &rho).unwrap().value - trace_norm_asymmetry(&a2, &rho).unwrap().value).abs() < 1e-10);
    }
}
