//! Interrupt a sweep, resume it, and check the result matches a clean run.

use lmg_floquet::config::{SweepConfig, SweepMode};
use lmg_floquet::sweep::{output_path, resume_sweep, run_sweep};
use lmg_floquet::Error;

fn main() -> lmg_floquet::Result<()> {
    let dir = std::env::temp_dir().join(format!("lmg-sweep-resume-{}", std::process::id()));
    let cfg = SweepConfig {
        mode: SweepMode::FotocMap,
        h1_points: Some(6),
        h2_points: Some(6),
        n_spins: 40,
        cycles: 400,
        out: dir.clone(),
        ..SweepConfig::default()
    };
    let path = output_path(&cfg);
    run_sweep(&cfg)?;
    let clean = std::fs::read(&path).map_err(|e| Error::Config(e.to_string()))?;

    // simulate a crash part way through a row
    std::fs::write(&path, &clean[..clean.len() * 3 / 5]).map_err(|e| Error::Config(e.to_string()))?;
    let summary = resume_sweep(&cfg)?;
    print!("{summary}");
    let resumed = std::fs::read(&path).map_err(|e| Error::Config(e.to_string()))?;
    println!("resumed file identical to clean run: {}", resumed == clean);

    std::fs::remove_dir_all(dir).ok();
    Ok(())
}
