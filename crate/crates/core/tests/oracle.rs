//! Collective-sector dynamics against the full 2^N simulation.

use lmg_floquet::quantum::oracle::{brute_force_fotoc, brute_force_reference};
use lmg_floquet::quantum::{fotoc_series, run_quantum_trajectory, QuantumModel};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expectations_match(n in prop::sample::select(vec![2usize, 4, 6, 8]), j in 0.0..2.0f64, h1 in 0.0..1.0f64, h2 in 0.0..1.0f64) {
        let fast = run_quantum_trajectory(&QuantumModel::new(n, j, h1, h2).unwrap(), 30).unwrap();
        let slow = brute_force_reference(n, j, h1, h2, 30).unwrap();
        for (a, b) in fast.iter().zip(&slow) {
            for (x, y) in a.to_array().iter().zip(b.to_array()) {
                prop_assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn fotoc_matches(n in prop::sample::select(vec![4usize, 6, 8]), j in 0.0..2.0f64, h in 0.0..1.0f64, eps in 0.0..0.5f64) {
        let fast = fotoc_series(&QuantumModel::new(n, j, h, 1.0 - h).unwrap(), eps, 20).unwrap();
        let slow = brute_force_fotoc(n, j, h, 1.0 - h, eps, 20).unwrap();
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn ten_spins_long_run() {
    let fast = run_quantum_trajectory(&QuantumModel::new(10, 0.5, 0.17, 0.5).unwrap(), 200).unwrap();
    let slow = brute_force_reference(10, 0.5, 0.17, 0.5, 200).unwrap();
    let worst = fast
        .iter()
        .zip(&slow)
        .flat_map(|(a, b)| a.to_array().into_iter().zip(b.to_array()).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    assert!(worst < 1e-10, "{worst}");
}
