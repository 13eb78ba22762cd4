use kdq_harness::{run_suite, SuiteConfig, SUITE_NAMES};
use proptest::prelude::*;

fn cfg(instances: usize, seed: u64) -> SuiteConfig {
    SuiteConfig { instances, seed, ..SuiteConfig::default() }
}

#[test]
fn johansen_hundred_instances() {
    let r = run_suite("johansen", &cfg(100, 1)).unwrap();
    assert_eq!(r.failures, 0);
    assert_eq!(r.checks.len(), 300);
}

#[test]
fn qubit_exact_hundred_instances() {
    let r = run_suite("qubit-exact", &cfg(100, 1)).unwrap();
    assert_eq!(r.failures, 0);
    let worst = r.checks.iter().filter(|c| c.inequality_id == "qubit-q_nre").map(|c| c.rhs).fold(0.0, f64::max);
    assert!(worst < 1e-5, "{worst}");
}

#[test]
fn lemma1_thousand_instances_in_d5() {
    let r = run_suite("lemma1", &SuiteConfig { dims: vec![5], ..cfg(1000, 1) }).unwrap();
    assert_eq!(r.failures, 0);
    assert_eq!(r.checks.len(), 1000);
}

#[test]
fn every_registered_suite_runs() {
    for name in SUITE_NAMES {
        let r = run_suite(name, &SuiteConfig { restarts: 2, ..cfg(2, 3) }).unwrap();
        assert_eq!(r.suite_name, name);
        assert!(!r.checks.is_empty(), "{name}");
        assert_eq!(r.failures, r.checks.iter().filter(|c| !c.pass).count());
    }
}

#[test]
fn reports_are_reproducible() {
    let c = SuiteConfig { restarts: 3, dims: vec![3], ..cfg(3, 9) };
    for name in ["prop4", "cor6b", "lemma2"] {
        let a = run_suite(name, &c).unwrap().without_wall_time();
        let b = run_suite(name, &c).unwrap().without_wall_time();
        assert_eq!(kdq_harness::report::to_json(&a).unwrap(), kdq_harness::report::to_json(&b).unwrap());
    }
}

#[test]
fn instance_order_is_stable_under_truncation() {
    let long = run_suite("lemma2", &cfg(10, 4)).unwrap();
    let short = run_suite("lemma2", &cfg(4, 4)).unwrap();
    assert_eq!(&long.checks[..4], &short.checks[..]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instances_round_trip(d in 1usize..6, rank_seed in 0usize..6, seed in any::<u64>(), with_b in any::<bool>()) {
        let rank = 1 + rank_seed % d;
        let inst = kdq_harness::Instance::random(d, rank, seed, with_b).unwrap();
        let text = inst.to_json();
        let back = kdq_harness::Instance::from_json(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_json(), text);
    }
}
