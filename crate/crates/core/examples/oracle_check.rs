//! Compare the collective-sector propagator with a brute-force simulation of
//! all 2^N spin configurations.

use lmg_floquet::quantum::oracle::brute_force_reference;
use lmg_floquet::quantum::{run_quantum_trajectory, QuantumModel};

fn main() -> lmg_floquet::Result<()> {
    for (n, j, h1, h2) in [(4, 0.5, 0.17, 0.5), (8, 1.3, 0.21, 0.64), (12, 0.5, 0.3, 0.3)] {
        let fast = run_quantum_trajectory(&QuantumModel::new(n, j, h1, h2)?, 50)?;
        let slow = brute_force_reference(n, j, h1, h2, 50)?;
        let worst = fast
            .iter()
            .zip(&slow)
            .flat_map(|(a, b)| a.to_array().into_iter().zip(b.to_array()).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        println!("N = {n:>2}, J = {j}, h = ({h1}, {h2}): max deviation {worst:.2e}");
    }
    Ok(())
}
