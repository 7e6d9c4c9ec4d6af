//! Finite-N quantum dynamics approach the mean-field map as 1/N.

use lmg_floquet::quantum::{run_quantum_trajectory, QuantumModel};
use lmg_floquet::semiclassical::{run_trajectory, BlochPair, DriveParams};

fn main() -> lmg_floquet::Result<()> {
    let (j, h1, h2) = (0.5, 0.17, 0.5);
    let classical = run_trajectory(BlochPair::polarized(), &DriveParams::new(j, h1, h2), 10).lz();
    let mut previous = None;
    println!("{:>5} {:>12} {:>8}", "N", "max error", "ratio");
    for n in [16, 32, 64, 128, 256, 512] {
        let q = run_quantum_trajectory(&QuantumModel::new(n, j, h1, h2)?, 10)?;
        let err = q.iter().zip(&classical).map(|(e, c)| (e.lz - c).abs()).fold(0.0, f64::max);
        let ratio = previous.map_or(String::new(), |p: f64| format!("{:.3}", p / err));
        println!("{n:>5} {err:>12.4e} {ratio:>8}");
        previous = Some(err);
    }
    Ok(())
}
