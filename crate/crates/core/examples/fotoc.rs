//! Fidelity out-of-time-order correlator at a stable and a chaotic drive.
//!
//! The series uses one forward propagation; the explicit
//! forward / perturb / backward echo is evaluated at a few cycles as a check.

use lmg_floquet::quantum::{fotoc_echo, fotoc_series, init_polarized, QuantumModel};
use lmg_floquet::CycleWindow;

fn main() -> lmg_floquet::Result<()> {
    let epsilon = 0.01;
    let window = CycleWindow::new(500, 1000)?;
    for (h1, h2) in [(0.5, 0.5), (0.17, 0.5), (0.3, 0.7)] {
        let model = QuantumModel::new(100, 0.5, h1, h2)?;
        let f = fotoc_series(&model, epsilon, window.end)?;
        println!("h1 = {h1}, h2 = {h2}: F_avg over {window} = {:.4e}", window.mean(&f)?);
        let init = init_polarized(&model);
        for n in [10, 50] {
            let echo = fotoc_echo(&model, &init, epsilon, n)?;
            println!("  n = {n:>3}: series {:.6e}, echo {:.6e}", f[n], echo);
        }
    }
    Ok(())
}
