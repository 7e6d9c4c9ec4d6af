//! Coarse (h1, h2) map of the time-averaged decorrelator, drawn in the
//! terminal. Dark cells are stable (vanishing decorrelator), light cells
//! chaotic.

use lmg_floquet::config::{SweepConfig, SweepMode};
use lmg_floquet::sweep::{output_path, read_rows, run_sweep};

fn main() -> lmg_floquet::Result<()> {
    let dir = std::env::temp_dir().join(format!("lmg-decorrelator-map-{}", std::process::id()));
    let cfg = SweepConfig {
        mode: SweepMode::DecorrelatorMap,
        h1_points: Some(21),
        h2_points: Some(21),
        out: dir.clone(),
        ..SweepConfig::default()
    };
    let summary = run_sweep(&cfg)?;
    print!("{summary}");

    let rows = read_rows(&output_path(&cfg))?;
    let shades = [' ', '.', ':', '+', '#'];
    println!("rows: h1 from 0 (top) to 1; columns: h2 from 0 to 1");
    for line in rows.chunks(21) {
        let cells: String = line
            .iter()
            .map(|r| {
                let d: f64 = r[2].parse().unwrap_or(f64::NAN);
                shades[((d / 0.25).floor() as usize).min(shades.len() - 1)]
            })
            .collect();
        println!("|{cells}|");
    }
    std::fs::remove_dir_all(dir).ok();
    Ok(())
}
