//! Uniform drive h1 = h2 = h: time-averaged decorrelator and FOTOC side by
//! side. Both dip to zero around the period-doubling point h = 1/2.

use lmg_floquet::config::{SweepConfig, SweepMode};
use lmg_floquet::sweep::{output_path, read_rows, run_sweep};

fn main() -> lmg_floquet::Result<()> {
    let dir = std::env::temp_dir().join(format!("lmg-uniform-scan-{}", std::process::id()));
    let cfg = SweepConfig {
        mode: SweepMode::UniformScan,
        h1_points: Some(41),
        out: dir.clone(),
        ..SweepConfig::default()
    };
    print!("{}", run_sweep(&cfg)?);
    println!("{:>6} {:>12} {:>12}", "h", "D_avg", "F_avg");
    for r in read_rows(&output_path(&cfg))? {
        println!("{:>6} {:>12} {:>12}", r[0], r[1], r[2]);
    }
    std::fs::remove_dir_all(dir).ok();
    Ok(())
}
