mod common;

use kdq_core::linalg::{vector_norm, ComplexMatrix, C64};
use kdq_core::optimizer::{projector_distance, PvmParams};
use kdq_core::quantum::{
    johansen_decomposition, kd_distribution, nonselective_binary_update, rotated_basis, rotated_projector, weak_value,
    DensityOperator, PvmBasis, POSTSELECTION_TOL,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kd_marginals_and_normalization(d in 2usize..=6, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let a = common::basis(d, seed);
        let b = common::basis(d, seed.wrapping_add(1));
        let kd = kd_distribution(&rho, &a, &b).unwrap();
        prop_assert!((kd.total() - C64::new(1.0, 0.0)).norm() < 1e-10);
        for (k, m) in kd.marginal_a().iter().enumerate() {
            let ket = a.ket(k);
            prop_assert!((m - rho.element(&ket, &ket)).norm() < 1e-10);
        }
        for (k, m) in kd.marginal_b().iter().enumerate() {
            let ket = b.ket(k);
            prop_assert!((m - rho.element(&ket, &ket)).norm() < 1e-10);
        }
    }

    #[test]
    fn johansen_reconstructs_kd(d in 2usize..=6, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let a = common::basis(d, seed);
        let b = common::basis(d, seed.wrapping_add(1));
        let terms = johansen_decomposition(&rho, &a, &b).unwrap();
        let kd = kd_distribution(&rho, &a, &b).unwrap();
        prop_assert!(terms.reconstruct().max_abs_diff(kd.table()) < 1e-10);
        prop_assert!((terms.classical.sum() - 1.0).abs() < 1e-10);
        prop_assert!(terms.classical.values().iter().all(|&x| x >= -1e-12));
    }
}

proptest! {
    #[test]
    fn commuting_triples_are_classical(d in 2usize..=6, seed in any::<u64>()) {
        // rho and both bases diagonal in a common basis, the second basis permuted
        let u = common::basis(d, seed);
        let probs: Vec<f64> = {
            let raw: Vec<f64> = (0..d).map(|k| 1.0 + ((seed >> (k % 60)) & 7) as f64).collect();
            let s: f64 = raw.iter().sum();
            raw.iter().map(|x| x / s).collect()
        };
        let diag = ComplexMatrix::from_real_diagonal(&probs);
        let rho = DensityOperator::new(&(u.matrix() * &diag) * &u.matrix().adjoint()).unwrap();
        let mut cols = u.kets();
        cols.rotate_left((seed as usize) % d);
        let b = PvmBasis::from_kets(&cols).unwrap();
        let kd = kd_distribution(&rho, &u, &b).unwrap();
        for (_, _, k) in kd.entries() {
            prop_assert!(k.im.abs() < 1e-12 && k.re > -1e-12);
        }
    }

    #[test]
    fn weak_values_reproduce_the_table(d in 2usize..=5, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let a = common::basis(d, seed);
        let b = common::basis(d, seed.wrapping_add(7));
        let kd = kd_distribution(&rho, &a, &b).unwrap();
        for bi in 0..d {
            let kb = b.ket(bi);
            let p = rho.element(&kb, &kb).re;
            if p <= POSTSELECTION_TOL {
                continue;
            }
            for ai in 0..d {
                let w = weak_value(ai, &rho, &a, &kb).unwrap();
                prop_assert!((w * p - kd.get(ai, bi)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn binary_update_is_a_state_commuting_with_the_projector(d in 2usize..=6, seed in any::<u64>()) {
        let rho = common::state(d, seed);
        let ket = common::basis(d, seed).ket(0);
        let out = nonselective_binary_update(&rho, &ket).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        let p = ComplexMatrix::outer(&ket, &ket);
        prop_assert!(out.matrix().commutator(&p).frobenius_norm() < 1e-12);
        prop_assert!(DensityOperator::new(out.matrix().clone()).is_ok());
    }

    #[test]
    fn rotated_projectors_form_a_basis(d in 2usize..=6, seed in any::<u64>()) {
        let a = common::basis(d, seed);
        let b = common::basis(d, seed.wrapping_add(3));
        let ka = a.ket((seed as usize) % d);
        let p = rotated_projector(&b.ket(0), &ka).unwrap();
        prop_assert!((&p * &p).max_abs_diff(&p) < 1e-12);
        let rb = rotated_basis(&b, &ka).unwrap();
        prop_assert!(rb.matrix().unitarity_deviation() < 1e-12);
        let sum = (0..d).fold(ComplexMatrix::zeros(d, d), |acc, k| &acc + &rb.projector(k));
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-12);
    }

    #[test]
    fn chart_decodes_complete_bases(d in 1usize..=5, seed in any::<u64>()) {
        let n = PvmParams::count(d);
        let values: Vec<f64> = (0..n).map(|k| ((seed.rotate_left(k as u32) % 10_000) as f64) * 1e-3 - 5.0).collect();
        let b = PvmParams::new(d, values).unwrap().decode();
        let sum = (0..d).fold(ComplexMatrix::zeros(d, d), |acc, k| &acc + &b.projector(k));
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-12);
        prop_assert!(b.matrix().unitarity_deviation() < 1e-10);
        for k in 0..d {
            prop_assert!((vector_norm(&b.ket(k)) - 1.0).abs() < 1e-12);
        }
        let back = kdq_core::optimizer::encode_pvm(&b).decode();
        prop_assert!(projector_distance(&b, &back) < 1e-10);
    }
}
