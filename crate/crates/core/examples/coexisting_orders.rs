//! Two regions driven differently lock to different subharmonics.
//!
//! At h1 = 0.17, h2 = 0.5 region 1 responds at a sixth of the drive
//! frequency while region 2 stays period doubled.

use lmg_floquet::diagnostics::{classify_dtc, dft_magnitude, magnetization_series, Observable, Source};
use lmg_floquet::{CycleWindow, InitialAngles};

fn main() -> lmg_floquet::Result<()> {
    let window = CycleWindow::half_open(0, 1000)?;
    for source in [Source::Semiclassical, Source::Quantum { n_spins: 100 }] {
        let s = magnetization_series(source, 0.5, 0.17, 0.5, InitialAngles::default(), window.end)?;
        println!("{source:?}");
        for obs in Observable::ALL {
            let spec = dft_magnitude(s.get(obs), window)?;
            let c = classify_dtc(&spec, 12, 0.5);
            println!(
                "  {obs:>3}: {:<9} peak at f = {:.4}, weight {:.2}",
                c.order.to_string(),
                c.peak_freq,
                c.peak_ratio
            );
        }
    }

    // region 1 on its own, for a ladder of h1 values with region 2 at h2 = 0.5
    println!("region 1 order across h1 (semiclassical, h2 = 0.5):");
    for h1 in [0.10, 0.17, 0.25, 0.33, 0.40, 0.50] {
        let s = magnetization_series(Source::Semiclassical, 0.5, h1, 0.5, InitialAngles::default(), window.end)?;
        let c = classify_dtc(&dft_magnitude(&s.lz1, window)?, 12, 0.5);
        println!("  h1 = {h1:.2}: {}", c.order);
    }
    Ok(())
}
