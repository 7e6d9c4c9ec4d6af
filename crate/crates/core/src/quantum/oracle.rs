//! Full `2^N` reference simulation built from Pauli matrices.
//!
//! Used to validate the collective-sector code, so it shares nothing with
//! [`crate::spin`]: the Ising half period is a diagonal phase in the
//! computational basis, and the drive is `exp(-iπh·σˣ)` on every qubit, with
//! the 2×2 exponential evaluated by scaling and squaring of its Taylor series.
//! Qubit `q` is bit `q` of the basis index, with 0 meaning spin up.

use std::f64::consts::PI;

use ndarray::{array, Array2};
use num_complex::Complex64;

use super::Expectations;
use crate::{Error, Result};

pub const MAX_SPINS: usize = 12;

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm = a
        .rows()
        .into_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    while norm / (1u64 << squarings) as f64 > 0.5 {
        squarings += 1;
    }
    let scaled = a.mapv(|z| z / (1u64 << squarings) as f64);
    let mut term = Array2::<Complex64>::eye(n);
    let mut sum = term.clone();
    for k in 1..=30 {
        term = term.dot(&scaled).mapv(|z| z / k as f64);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = sum.dot(&sum);
    }
    sum
}

struct PauliSystem {
    n: usize,
    ising_phases: Vec<Complex64>,
    gate1: Array2<Complex64>,
    gate2: Array2<Complex64>,
}

impl PauliSystem {
    fn new(n_spins: usize, j_coupling: f64, h1: f64, h2: f64) -> Result<Self> {
        if n_spins > MAX_SPINS {
            return Err(Error::OracleTooLarge {
                got: n_spins,
                max: MAX_SPINS,
            });
        }
        if n_spins < 2 || !n_spins.is_multiple_of(2) {
            return Err(Error::InvalidSpinCount(n_spins));
        }
        let i = Complex64::new(0.0, 1.0);
        let sigma_x = array![
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        ];
        // H1 = (2J/N)(Σσᶻ)², applied for T/2
        let ising_phases = (0..1usize << n_spins)
            .map(|idx| {
                let s = n_spins as f64 - 2.0 * (idx.count_ones() as f64);
                Complex64::from_polar(1.0, -0.5 * 2.0 * j_coupling / n_spins as f64 * s * s)
            })
            .collect();
        // H2 = 2π h Σσˣ per region, applied for T/2
        let gate = |h: f64| expm(&sigma_x.mapv(|z| -i * PI * h * z));
        Ok(PauliSystem {
            n: n_spins,
            ising_phases,
            gate1: gate(h1),
            gate2: gate(h2),
        })
    }

    fn polarized(&self) -> Vec<Complex64> {
        let mut psi = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        psi[0] = Complex64::new(1.0, 0.0);
        psi
    }

    fn step(&self, psi: &mut [Complex64]) {
        for (a, p) in psi.iter_mut().zip(&self.ising_phases) {
            *a *= p;
        }
        for q in 0..self.n {
            let g = if q < self.n / 2 { &self.gate1 } else { &self.gate2 };
            let bit = 1usize << q;
            for idx in 0..psi.len() {
                if idx & bit == 0 {
                    let (up, down) = (psi[idx], psi[idx | bit]);
                    psi[idx] = g[[0, 0]] * up + g[[0, 1]] * down;
                    psi[idx | bit] = g[[1, 0]] * up + g[[1, 1]] * down;
                }
            }
        }
    }

    fn expectations(&self, psi: &[Complex64]) -> Expectations {
        let half = self.n / 2;
        let mut sums = [[0.0f64; 3]; 2];
        for q in 0..self.n {
            let region = usize::from(q >= half);
            let bit = 1usize << q;
            for idx in 0..psi.len() {
                let p = psi[idx].norm_sqr();
                if idx & bit == 0 {
                    sums[region][2] += p;
                    let z = psi[idx].conj() * psi[idx | bit];
                    sums[region][0] += 2.0 * z.re;
                    sums[region][1] += 2.0 * z.im;
                } else {
                    sums[region][2] -= p;
                }
            }
        }
        // L = (2/N) Σσ over the region
        let scale = 2.0 / self.n as f64;
        let [r1, r2] = sums.map(|s| s.map(|v| v * scale));
        Expectations {
            lz1: r1[2],
            lz2: r2[2],
            lz: 0.5 * (r1[2] + r2[2]),
            lx1: r1[0],
            lx2: r2[0],
            ly1: r1[1],
            ly2: r2[1],
        }
    }

    fn echo_amplitude(&self, psi: &[Complex64], epsilon: f64) -> Complex64 {
        // W = exp(iε(Sz1 + Sz2)) = exp(iε Σσᶻ / 2)
        psi.iter()
            .enumerate()
            .map(|(idx, a)| {
                let s = self.n as f64 - 2.0 * idx.count_ones() as f64;
                a.norm_sqr() * Complex64::from_polar(1.0, 0.5 * epsilon * s)
            })
            .sum()
    }
}

/// Expectation series at cycles `0..=n_cycles` from the all-up state.
pub fn brute_force_reference(
    n_spins: usize,
    j_coupling: f64,
    h1: f64,
    h2: f64,
    n_cycles: usize,
) -> Result<Vec<Expectations>> {
    let sys = PauliSystem::new(n_spins, j_coupling, h1, h2)?;
    let mut psi = sys.polarized();
    let mut out = Vec::with_capacity(n_cycles + 1);
    out.push(sys.expectations(&psi));
    for _ in 0..n_cycles {
        sys.step(&mut psi);
        out.push(sys.expectations(&psi));
    }
    Ok(out)
}

/// FOTOC series at cycles `0..=n_cycles` from the all-up state.
pub fn brute_force_fotoc(
    n_spins: usize,
    j_coupling: f64,
    h1: f64,
    h2: f64,
    epsilon: f64,
    n_cycles: usize,
) -> Result<Vec<f64>> {
    let sys = PauliSystem::new(n_spins, j_coupling, h1, h2)?;
    let mut psi = sys.polarized();
    let mut out = Vec::with_capacity(n_cycles + 1);
    out.push(super::fidelity_loss(sys.echo_amplitude(&psi, epsilon)));
    for _ in 0..n_cycles {
        sys.step(&mut psi);
        out.push(super::fidelity_loss(sys.echo_amplitude(&psi, epsilon)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{fotoc_series, run_quantum_trajectory, QuantumModel};

    #[test]
    fn rejects_large_and_odd() {
        assert!(matches!(
            brute_force_reference(14, 0.5, 0.1, 0.1, 1),
            Err(Error::OracleTooLarge { got: 14, .. })
        ));
        assert!(matches!(
            brute_force_reference(5, 0.5, 0.1, 0.1, 1),
            Err(Error::InvalidSpinCount(5))
        ));
    }

    #[test]
    fn expm_of_pauli_rotation() {
        let i = Complex64::new(0.0, 1.0);
        let a = array![[Complex64::new(0.0, 0.0), -i * 2.0], [-i * 2.0, Complex64::new(0.0, 0.0)]];
        let e = expm(&a);
        assert!((e[[0, 0]] - Complex64::from(2f64.cos())).norm() < 1e-14);
        assert!((e[[0, 1]] + i * 2f64.sin()).norm() < 1e-14);
    }

    #[test]
    fn static_when_undriven() {
        let s = brute_force_reference(2, 0.0, 0.0, 0.0, 5).unwrap();
        assert!(s.iter().all(|e| *e == s[0]));
        assert_eq!(s[0].lz, 1.0);
    }

    #[test]
    fn alternation_at_half_drive() {
        let s = brute_force_reference(4, 0.7, 0.5, 0.5, 20).unwrap();
        for (n, e) in s.iter().enumerate() {
            let want = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((e.lz - want).abs() < 1e-12);
        }
    }

    #[test]
    fn collective_sector_agrees_n4() {
        let m = QuantumModel::new(4, 0.5, 0.17, 0.5).unwrap();
        let fast = run_quantum_trajectory(&m, 50).unwrap();
        let slow = brute_force_reference(4, 0.5, 0.17, 0.5, 50).unwrap();
        for (a, b) in fast.iter().zip(&slow) {
            for (x, y) in a.to_array().iter().zip(b.to_array()) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn fotoc_agrees_n6() {
        let m = QuantumModel::new(6, 0.5, 0.3, 0.3).unwrap();
        let fast = fotoc_series(&m, 0.01, 10).unwrap();
        let slow = brute_force_fotoc(6, 0.5, 0.3, 0.3, 0.01, 10).unwrap();
        assert!((fast[10] - slow[10]).abs() < 1e-10);
        assert!(slow[10] > 0.0);
    }
}
