//! DFT density along h1 = 0.17: the dominant response frequency of the
//! total magnetization as h2 varies, semiclassical and N = 100 side by side.

use lmg_floquet::diagnostics::{dft_density_line, Observable, Source};
use lmg_floquet::{CycleWindow, InitialAngles};

fn main() -> lmg_floquet::Result<()> {
    let window = CycleWindow::half_open(0, 1000)?;
    let h2: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let line = |source| dft_density_line(0.17, &h2, 0.5, source, Observable::Lz, window, InitialAngles::default());
    let sc = line(Source::Semiclassical)?;
    let q = line(Source::Quantum { n_spins: 100 })?;
    println!("{:>6} {:>10} {:>10}", "h2", "f (sc)", "f (N=100)");
    for (i, h) in h2.iter().enumerate() {
        println!(
            "{h:>6.2} {:>10.4} {:>10.4}",
            sc[i].dominant_freq().unwrap_or(0.0),
            q[i].dominant_freq().unwrap_or(0.0)
        );
    }
    Ok(())
}
