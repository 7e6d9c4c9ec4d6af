//! Exact finite-N Floquet evolution in the maximal collective sector.
//!
//! Each region of `N/2` spins is a single spin `j = N/4`, so states live in a
//! `(N/2 + 1)²`-dimensional product space. A [`StateVector`] is stored as a
//! `d × d` matrix `ψ[k1, k2]`, which lets one period act as
//! `ψ ← R1 · (Φ ∘ ψ) · R2ᵀ` at `O(d³)` cost instead of a dense `d² × d²`
//! propagator.

pub mod oracle;

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;

use crate::spin::{interaction_half_phases, region_spin, DiagonalPhases, Spin, UnitaryMatrix, XRotationGenerator};
use crate::{CycleWindow, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumModel {
    n_spins: usize,
    pub j_coupling: f64,
    pub h1: f64,
    pub h2: f64,
}

impl QuantumModel {
    pub fn new(n_spins: usize, j_coupling: f64, h1: f64, h2: f64) -> Result<Self> {
        region_spin(n_spins)?;
        Ok(QuantumModel {
            n_spins,
            j_coupling,
            h1,
            h2,
        })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn j_region(&self) -> Spin {
        region_spin(self.n_spins).expect("validated in QuantumModel::new")
    }

    /// Basis size of one region, `2j + 1`.
    pub fn region_dim(&self) -> usize {
        self.j_region().dim()
    }

    /// Product-basis size `(2j + 1)²`.
    pub fn dim(&self) -> usize {
        self.region_dim() * self.region_dim()
    }
}

/// Normalized amplitudes over the ordered product basis `|j,m1⟩ ⊗ |j,m2⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Array2<Complex64>,
}

impl StateVector {
    /// Build from flat row-major amplitudes (`m1` outer).
    pub fn from_amplitudes(region_dim: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = region_dim * region_dim;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        let amps = Array2::from_shape_vec((region_dim, region_dim), amplitudes)
            .expect("length checked above");
        Ok(StateVector { amps })
    }

    /// Product of two single-region states.
    pub fn product(a: &[Complex64], b: &[Complex64]) -> Self {
        let amps = Array2::from_shape_fn((a.len(), b.len()), |(i, k)| a[i] * b[k]);
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn region_dim(&self) -> usize {
        self.amps.nrows()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amps
            .as_slice()
            .expect("state matrix is kept in standard layout")
    }

    /// Amplitude on basis state `(k1, k2)`.
    pub fn get(&self, k1: usize, k2: usize) -> Complex64 {
        self.amps[[k1, k2]]
    }

    pub fn as_matrix(&self) -> &Array2<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// `|j,j⟩ ⊗ |j,j⟩`: both regions fully polarized along +z.
pub fn init_polarized(model: &QuantumModel) -> StateVector {
    let d = model.region_dim();
    let mut amps = Array2::zeros((d, d));
    amps[[0, 0]] = Complex64::new(1.0, 0.0);
    StateVector { amps }
}

/// Spin-coherent amplitudes `exp(-iφSz)·exp(-iθSy)|j,j⟩` for one region.
pub fn coherent_amplitudes(j: Spin, theta: f64, phi: f64) -> Vec<Complex64> {
    let n = j.twice() as usize;
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut ln_binom = 0.0;
    (0..=n)
        .map(|k| {
            if k > 0 {
                ln_binom += ((n - k + 1) as f64).ln() - (k as f64).ln();
            }
            // basis index k has j + m = n - k and j - m = k
            let mag = pow_mag(c, n - k) * pow_mag(s, k) * (0.5 * ln_binom).exp();
            let sign = sign_pow(c, n - k) * sign_pow(s, k);
            Complex64::from_polar(sign * mag, -j.m(k) * phi)
        })
        .collect()
}

fn pow_mag(x: f64, p: usize) -> f64 {
    if p == 0 {
        1.0
    } else {
        (p as f64 * x.abs().ln()).exp()
    }
}

fn sign_pow(x: f64, p: usize) -> f64 {
    if x < 0.0 && p % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Product of spin-coherent states with per-region polar/azimuthal angles.
pub fn init_coherent(model: &QuantumModel, theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> StateVector {
    let j = model.j_region();
    StateVector::product(
        &coherent_amplitudes(j, theta1, phi1),
        &coherent_amplitudes(j, theta2, phi2),
    )
}

/// One-period propagator `U_F = e^{-iH2/2} e^{-iH1/2}` in factored form.
#[derive(Debug, Clone)]
pub struct FloquetFactors {
    pub phases: DiagonalPhases,
    pub r1: UnitaryMatrix,
    pub r2: UnitaryMatrix,
}

impl FloquetFactors {
    pub fn build(model: &QuantumModel) -> Result<Self> {
        let phases = interaction_half_phases(model.n_spins, model.j_coupling)?;
        let gen = XRotationGenerator::new(model.j_region());
        Ok(FloquetFactors {
            phases,
            r1: gen.rotation(2.0 * PI * model.h1),
            r2: gen.rotation(2.0 * PI * model.h2),
        })
    }

    pub fn identity(region_dim: usize) -> Self {
        FloquetFactors {
            phases: DiagonalPhases::ones(region_dim, region_dim),
            r1: UnitaryMatrix::identity(region_dim),
            r2: UnitaryMatrix::identity(region_dim),
        }
    }

    pub fn region_dim(&self) -> usize {
        self.r1.dim()
    }

    /// Factors of `U_F†`, applied in reverse order by [`apply_inverse_floquet`].
    pub fn inverse(&self) -> InverseFloquet {
        InverseFloquet {
            phases: self.phases.conj(),
            r1: self.r1.adjoint(),
            r2: self.r2.adjoint(),
        }
    }

    fn step(&self, state: &mut StateVector) {
        let d2 = self.phases.shape().1;
        for ((k1, k2), z) in state.amps.indexed_iter_mut() {
            *z *= self.phases.values()[k1 * d2 + k2];
        }
        let rotated = self.r1.as_array().dot(&state.amps);
        state.amps = rotated.dot(&self.r2.as_array().t());
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.region_dim() != self.region_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.region_dim() * self.region_dim(),
                got: state.dim(),
            });
        }
        Ok(())
    }

    /// Dense `d² × d²` matrix of `U_F`, for small-N cross checks.
    pub fn dense(&self) -> Array2<Complex64> {
        let d = self.region_dim();
        let (r1, r2) = (self.r1.as_array(), self.r2.as_array());
        Array2::from_shape_fn((d * d, d * d), |(row, col)| {
            let (a1, a2) = (row / d, row % d);
            let (b1, b2) = (col / d, col % d);
            r1[[a1, b1]] * r2[[a2, b2]] * self.phases.get(b1, b2)
        })
    }
}

/// Factors of `U_F† = e^{+iH1/2} e^{+iH2/2}`.
#[derive(Debug, Clone)]
pub struct InverseFloquet {
    phases: DiagonalPhases,
    r1: UnitaryMatrix,
    r2: UnitaryMatrix,
}

impl InverseFloquet {
    fn step(&self, state: &mut StateVector) {
        let rotated = self.r1.as_array().dot(&state.amps);
        state.amps = rotated.dot(&self.r2.as_array().t());
        let d2 = self.phases.shape().1;
        for ((k1, k2), z) in state.amps.indexed_iter_mut() {
            *z *= self.phases.values()[k1 * d2 + k2];
        }
    }
}

/// One period of evolution.
pub fn apply_floquet(state: &StateVector, factors: &FloquetFactors) -> Result<StateVector> {
    factors.check(state)?;
    let mut out = state.clone();
    factors.step(&mut out);
    Ok(out)
}

/// One period backwards in time.
pub fn apply_inverse_floquet(state: &StateVector, inverse: &InverseFloquet) -> Result<StateVector> {
    if state.region_dim() != inverse.r1.dim() {
        return Err(Error::DimensionMismatch {
            expected: inverse.r1.dim() * inverse.r1.dim(),
            got: state.dim(),
        });
    }
    let mut out = state.clone();
    inverse.step(&mut out);
    Ok(out)
}

/// Normalized collective magnetizations, `L_α^(r) = ⟨S_α^(r)⟩ / j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectations {
    pub lz1: f64,
    pub lz2: f64,
    pub lz: f64,
    pub lx1: f64,
    pub lx2: f64,
    pub ly1: f64,
    pub ly2: f64,
}

impl Expectations {
    pub const COLUMNS: [&'static str; 7] = ["lz1", "lz2", "lz", "lx1", "lx2", "ly1", "ly2"];

    pub fn to_array(&self) -> [f64; 7] {
        [
            self.lz1, self.lz2, self.lz, self.lx1, self.lx2, self.ly1, self.ly2,
        ]
    }
}

pub fn expectations(state: &StateVector, model: &QuantumModel) -> Expectations {
    let j = model.j_region();
    let d = j.dim();
    let psi = &state.amps;
    let mut sz1 = 0.0;
    let mut sz2 = 0.0;
    let mut sp1 = Complex64::new(0.0, 0.0);
    let mut sp2 = Complex64::new(0.0, 0.0);
    for k1 in 0..d {
        for k2 in 0..d {
            let a = psi[[k1, k2]];
            let p = a.norm_sqr();
            sz1 += p * j.m(k1);
            sz2 += p * j.m(k2);
            // ⟨S+⟩ = Σ conj(ψ[m+1]) c(m) ψ[m], with m+1 one index lower
            if k1 > 0 {
                sp1 += psi[[k1 - 1, k2]].conj() * a * j.raising_element(k1);
            }
            if k2 > 0 {
                sp2 += psi[[k1, k2 - 1]].conj() * a * j.raising_element(k2);
            }
        }
    }
    let jv = j.value();
    let (lz1, lz2) = (sz1 / jv, sz2 / jv);
    Expectations {
        lz1,
        lz2,
        lz: 0.5 * (lz1 + lz2),
        lx1: sp1.re / jv,
        lx2: sp2.re / jv,
        ly1: sp1.im / jv,
        ly2: sp2.im / jv,
    }
}

/// Stroboscopic expectations at cycles `0..=n_cycles` from the polarized state.
pub fn run_quantum_trajectory(model: &QuantumModel, n_cycles: usize) -> Result<Vec<Expectations>> {
    run_quantum_trajectory_from(model, init_polarized(model), n_cycles)
}

pub fn run_quantum_trajectory_from(
    model: &QuantumModel,
    init: StateVector,
    n_cycles: usize,
) -> Result<Vec<Expectations>> {
    let factors = FloquetFactors::build(model)?;
    factors.check(&init)?;
    let mut state = init;
    let mut out = Vec::with_capacity(n_cycles + 1);
    out.push(expectations(&state, model));
    for _ in 0..n_cycles {
        factors.step(&mut state);
        out.push(expectations(&state, model));
    }
    Ok(out)
}

/// Diagonal of `W = exp(iε(Sz1 + Sz2))`.
fn echo_perturbation(j: Spin, epsilon: f64) -> Array2<Complex64> {
    let d = j.dim();
    Array2::from_shape_fn((d, d), |(k1, k2)| {
        Complex64::from_polar(1.0, epsilon * (j.m(k1) + j.m(k2)))
    })
}

/// `F(n) = 1 - |⟨Ψ0| U_F^{-n} W U_F^n |Ψ0⟩|²` for `n = 0..=n_cycles`.
///
/// Since `U_F^{-n} = (U_F^n)†`, the echo amplitude equals `⟨ψ_n|W|ψ_n⟩`
/// with `ψ_n = U_F^n Ψ0`, so the whole series costs one forward propagation.
/// [`fotoc_echo`] evaluates the literal forward/W/backward sequence.
pub fn fotoc_series(model: &QuantumModel, epsilon: f64, n_cycles: usize) -> Result<Vec<f64>> {
    fotoc_series_from(model, init_polarized(model), epsilon, n_cycles)
}

pub fn fotoc_series_from(
    model: &QuantumModel,
    init: StateVector,
    epsilon: f64,
    n_cycles: usize,
) -> Result<Vec<f64>> {
    let factors = FloquetFactors::build(model)?;
    factors.check(&init)?;
    let w = echo_perturbation(model.j_region(), epsilon);
    let fidelity = |s: &StateVector| -> f64 {
        let amp: Complex64 = s
            .amps
            .iter()
            .zip(w.iter())
            .map(|(a, wk)| wk * a.norm_sqr())
            .sum();
        fidelity_loss(amp)
    };
    let mut state = init;
    let mut out = Vec::with_capacity(n_cycles + 1);
    out.push(fidelity(&state));
    for _ in 0..n_cycles {
        factors.step(&mut state);
        out.push(fidelity(&state));
    }
    Ok(out)
}

/// FOTOC at a single cycle `n` by explicit echo: evolve forward `n` periods,
/// apply `W`, evolve back with the inverse factors, overlap with the start.
pub fn fotoc_echo(model: &QuantumModel, init: &StateVector, epsilon: f64, n: usize) -> Result<f64> {
    let factors = FloquetFactors::build(model)?;
    factors.check(init)?;
    let inverse = factors.inverse();
    let mut state = init.clone();
    for _ in 0..n {
        factors.step(&mut state);
    }
    let w = echo_perturbation(model.j_region(), epsilon);
    state.amps.zip_mut_with(&w, |a, wk| *a *= wk);
    for _ in 0..n {
        inverse.step(&mut state);
    }
    Ok(fidelity_loss(init.inner(&state)))
}

/// `1 - |a|²`, clamped to `[0, 1]`: rounding in the norm can push `|a|`
/// slightly above one.
pub(crate) fn fidelity_loss(amp: Complex64) -> f64 {
    (1.0 - amp.norm_sqr()).clamp(0.0, 1.0)
}

/// Mean of [`fotoc_series`] over an inclusive cycle window.
pub fn time_averaged_fotoc(model: &QuantumModel, epsilon: f64, window: CycleWindow) -> Result<f64> {
    let series = fotoc_series(model, epsilon, window.end)?;
    window.mean(&series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::build_spin_matrices;

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn model_validation() {
        assert!(matches!(
            QuantumModel::new(3, 0.5, 0.1, 0.2),
            Err(Error::InvalidSpinCount(3))
        ));
        let m = QuantumModel::new(100, 0.5, 0.1, 0.2).unwrap();
        assert_eq!(m.j_region().value(), 25.0);
        assert_eq!(m.dim(), 51 * 51);
    }

    #[test]
    fn polarized_state() {
        let m = QuantumModel::new(4, 0.5, 0.0, 0.0).unwrap();
        let s = init_polarized(&m);
        assert_eq!(s.dim(), 9);
        assert_eq!(s.amplitudes().iter().filter(|z| z.norm() > 0.0).count(), 1);
        assert_eq!(s.norm(), 1.0);
        let e = expectations(&s, &m);
        assert_eq!((e.lz1, e.lz2, e.lz), (1.0, 1.0, 1.0));
        assert_eq!((e.lx1, e.ly1, e.lx2, e.ly2), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn cat_state_has_zero_lz() {
        let m = QuantumModel::new(6, 0.5, 0.0, 0.0).unwrap();
        let d = m.region_dim();
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        amps[0] = Complex64::new(0.5f64.sqrt(), 0.0);
        amps[d * d - 1] = Complex64::new(0.5f64.sqrt(), 0.0);
        let s = StateVector::from_amplitudes(d, amps).unwrap();
        assert!(expectations(&s, &m).lz.abs() < 1e-15);
        assert!(StateVector::from_amplitudes(d, vec![Complex64::new(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn coherent_state_expectations() {
        let m = QuantumModel::new(20, 0.5, 0.0, 0.0).unwrap();
        let (t1, p1, t2, p2) = (0.7, 1.9, 2.5, -0.4);
        let s = init_coherent(&m, t1, p1, t2, p2);
        assert!((s.norm() - 1.0).abs() < 1e-12);
        let e = expectations(&s, &m);
        let v1 = crate::semiclassical::bloch_vector(t1, p1);
        let v2 = crate::semiclassical::bloch_vector(t2, p2);
        for (got, want) in [
            (e.lx1, v1[0]),
            (e.ly1, v1[1]),
            (e.lz1, v1[2]),
            (e.lx2, v2[0]),
            (e.ly2, v2[1]),
            (e.lz2, v2[2]),
        ] {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        let pole = init_coherent(&m, 0.0, 0.0, 0.0, 0.0);
        assert!(max_diff(pole.amplitudes(), init_polarized(&m).amplitudes()) < 1e-15);
    }

    #[test]
    fn trivial_factors() {
        let m = QuantumModel::new(8, 0.0, 0.0, 0.0).unwrap();
        let f = FloquetFactors::build(&m).unwrap();
        assert!(f.phases.values().iter().all(|&z| z == Complex64::new(1.0, 0.0)));
        let eye = Array2::<Complex64>::eye(5);
        assert!(f.r1.as_array().iter().zip(eye.iter()).all(|(a, b)| (a - b).norm() < 1e-14));
        assert!(f.r2.as_array().iter().zip(eye.iter()).all(|(a, b)| (a - b).norm() < 1e-14));

        let m = QuantumModel::new(8, 0.5, 0.3, 0.7).unwrap();
        let s = init_coherent(&m, 0.4, 0.1, 1.2, 2.0);
        let out = apply_floquet(&s, &FloquetFactors::identity(5)).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn dimension_mismatch() {
        let m = QuantumModel::new(8, 0.5, 0.3, 0.7).unwrap();
        let f = FloquetFactors::build(&m).unwrap();
        let other = init_polarized(&QuantumModel::new(4, 0.5, 0.3, 0.7).unwrap());
        assert!(matches!(apply_floquet(&other, &f), Err(Error::DimensionMismatch { .. })));
        assert!(apply_inverse_floquet(&other, &f.inverse()).is_err());
    }

    #[test]
    fn pi_pulse_maps_to_bottom() {
        for jc in [0.0, 0.5, 1.3] {
            let m = QuantumModel::new(4, jc, 0.5, 0.5).unwrap();
            let f = FloquetFactors::build(&m).unwrap();
            let out = apply_floquet(&init_polarized(&m), &f).unwrap();
            let d = m.region_dim();
            assert!((out.get(d - 1, d - 1).norm() - 1.0).abs() < 1e-13);
            assert!((expectations(&out, &m).lz + 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn factored_matches_dense() {
        for n in [2, 4, 6, 8] {
            let m = QuantumModel::new(n, 0.8, 0.23, 0.61).unwrap();
            let f = FloquetFactors::build(&m).unwrap();
            let s = init_coherent(&m, 0.9, 0.3, 2.1, -1.0);
            let fast = apply_floquet(&s, &f).unwrap();
            let dense = f.dense().dot(&ndarray::Array1::from(s.amplitudes().to_vec()));
            assert!(max_diff(fast.amplitudes(), dense.as_slice().unwrap()) < 1e-12, "N={n}");
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        let m = QuantumModel::new(10, 0.5, 0.17, 0.42).unwrap();
        let f = FloquetFactors::build(&m).unwrap();
        let inv = f.inverse();
        let s0 = init_coherent(&m, 1.0, 0.5, 0.2, 0.0);
        let mut s = s0.clone();
        for _ in 0..30 {
            s = apply_floquet(&s, &f).unwrap();
        }
        for _ in 0..30 {
            s = apply_inverse_floquet(&s, &inv).unwrap();
        }
        assert!(max_diff(s.amplitudes(), s0.amplitudes()) < 1e-12);
    }

    #[test]
    fn decoupled_quarter_turn() {
        let m = QuantumModel::new(4, 0.0, 0.25, 0.0).unwrap();
        let t = run_quantum_trajectory(&m, 8).unwrap();
        let expected = [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0];
        for (e, want) in t.iter().zip(expected) {
            assert!((e.lz1 - want).abs() < 1e-12);
            assert!((e.lz2 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_dtc_alternation_small() {
        let m = QuantumModel::new(8, 0.5, 0.5, 0.5).unwrap();
        let t = run_quantum_trajectory(&m, 40).unwrap();
        assert_eq!(t.len(), 41);
        for (n, e) in t.iter().enumerate() {
            let want = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((e.lz - want).abs() < 1e-10);
        }
    }

    #[test]
    fn sector_and_norm_conservation() {
        let m = QuantumModel::new(100, 0.5, 0.17, 0.5).unwrap();
        let f = FloquetFactors::build(&m).unwrap();
        let sm = build_spin_matrices(m.j_region());
        let jj = m.j_region().value() * (m.j_region().value() + 1.0);
        let cas = sm.casimir();
        let mut s = init_polarized(&m);
        for n in 1..=1000 {
            f.step(&mut s);
            if n % 250 == 0 {
                // ⟨S1²⟩ = Σ_{k2} ψ[:,k2]† C ψ[:,k2], and likewise for region 2
                let c1 = cas.dot(&s.amps);
                let c2 = s.amps.dot(&cas.t());
                let s1: Complex64 = s.amps.iter().zip(c1.iter()).map(|(a, b)| a.conj() * b).sum();
                let s2: Complex64 = s.amps.iter().zip(c2.iter()).map(|(a, b)| a.conj() * b).sum();
                assert!((s1.re - jj).abs() < 1e-9 && (s2.re - jj).abs() < 1e-9);
            }
        }
        assert!((s.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fotoc_trivial_cases() {
        let m = QuantumModel::new(20, 0.5, 0.3, 0.3).unwrap();
        let f = fotoc_series(&m, 0.0, 30).unwrap();
        assert!(f.iter().all(|&x| x.abs() < 1e-12));
        let f = fotoc_series(&m, 0.01, 30).unwrap();
        assert!(f[0].abs() < 1e-14);
        assert!(f.iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert!(f[30] > 0.0);
        let w = CycleWindow::new(0, 30).unwrap();
        assert!(time_averaged_fotoc(&m, 0.0, w).unwrap().abs() < 1e-12);
        assert!(time_averaged_fotoc(&m, 0.01, w).is_ok());
    }

    #[test]
    fn fotoc_expectation_form_matches_echo() {
        let m = QuantumModel::new(16, 0.7, 0.21, 0.38).unwrap();
        let init = init_coherent(&m, 0.5, 0.0, 1.0, 0.4);
        let series = fotoc_series_from(&m, init.clone(), 0.05, 25).unwrap();
        for n in [0, 1, 7, 25] {
            let echo = fotoc_echo(&m, &init, 0.05, n).unwrap();
            assert!((echo - series[n]).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn fotoc_bounded_at_exact_echo() {
        // the pi pulse returns the state exactly, where rounding alone decides the sign
        for n_spins in [8, 40, 100] {
            let m = QuantumModel::new(n_spins, 0.5, 0.5, 0.5).unwrap();
            let f = fotoc_series(&m, 0.01, 200).unwrap();
            assert!(f.iter().all(|&x| (0.0..=1.0).contains(&x)));
            assert!(f.iter().all(|&x| x < 1e-10));
        }
        let big = fotoc_series(&QuantumModel::new(40, 1.5, 0.3, 0.7).unwrap(), 3.0, 100).unwrap();
        assert!(big.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }
}
