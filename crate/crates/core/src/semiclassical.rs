//! Thermodynamic-limit stroboscopic map.
//!
//! Each region's magnetization is a unit Bloch vector. Over one period the
//! Ising half rotates both vectors about z by `2J·(l1z + l2z)`, then the
//! drive half rotates region r about x by `2π·h_r`. Rotations are
//! right-handed, matching `exp(-i·φ·n̂·S)` acting on spin expectations.

use std::f64::consts::PI;

use crate::{CycleWindow, Result};

pub type Vec3 = [f64; 3];

fn rotate_x(v: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    [v[0], c * v[1] - s * v[2], s * v[1] + c * v[2]]
}

fn rotate_z(v: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]]
}

// Rodrigues rotation about a unit axis.
fn rotate_about(v: Vec3, axis: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    let dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
    let cross = [
        axis[1] * v[2] - axis[2] * v[1],
        axis[2] * v[0] - axis[0] * v[2],
        axis[0] * v[1] - axis[1] * v[0],
    ];
    [0, 1, 2].map(|k| v[k] * c + cross[k] * s + axis[k] * dot * (1.0 - c))
}

pub fn norm(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Bloch vector at polar angle `theta` and azimuth `phi`.
pub fn bloch_vector(theta: f64, phi: f64) -> Vec3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Mean-field magnetizations of the two regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPair {
    pub l1: Vec3,
    pub l2: Vec3,
}

impl BlochPair {
    /// Both regions fully polarized along +z.
    pub fn polarized() -> Self {
        BlochPair {
            l1: [0.0, 0.0, 1.0],
            l2: [0.0, 0.0, 1.0],
        }
    }

    pub fn from_angles(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> Self {
        BlochPair {
            l1: bloch_vector(theta1, phi1),
            l2: bloch_vector(theta2, phi2),
        }
    }

    /// Total magnetization `(l1 + l2) / 2`.
    pub fn total(&self) -> Vec3 {
        [0, 1, 2].map(|k| 0.5 * (self.l1[k] + self.l2[k]))
    }
}

impl Default for BlochPair {
    fn default() -> Self {
        BlochPair::polarized()
    }
}

/// How the companion trajectory of the decorrelator is perturbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Perturbation {
    /// Companion runs with `h_r + delta` in both regions.
    #[default]
    Drive,
    /// Companion starts with both polar angles tilted by `delta`, same drive.
    InitialState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    pub j_coupling: f64,
    pub h1: f64,
    pub h2: f64,
    pub delta: f64,
    pub perturbation: Perturbation,
}

impl DriveParams {
    pub fn new(j_coupling: f64, h1: f64, h2: f64) -> Self {
        DriveParams {
            j_coupling,
            h1,
            h2,
            delta: 1e-4,
            perturbation: Perturbation::Drive,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        assert!(delta >= 0.0, "delta must be nonnegative");
        self.delta = delta;
        self
    }

    pub fn with_perturbation(mut self, perturbation: Perturbation) -> Self {
        self.perturbation = perturbation;
        self
    }
}

/// Ising half period: both vectors precess about z by `2J·(l1z + l2z)`.
pub fn interaction_kick(state: BlochPair, j_coupling: f64) -> BlochPair {
    let theta = 2.0 * j_coupling * (state.l1[2] + state.l2[2]);
    BlochPair {
        l1: rotate_z(state.l1, theta),
        l2: rotate_z(state.l2, theta),
    }
}

/// Drive half period: region r rotates about x by `2π·h_r`.
pub fn drive_kick(state: BlochPair, h1: f64, h2: f64) -> BlochPair {
    BlochPair {
        l1: rotate_x(state.l1, 2.0 * PI * h1),
        l2: rotate_x(state.l2, 2.0 * PI * h2),
    }
}

/// One drive period, Ising half first.
pub fn stroboscopic_step(state: BlochPair, params: &DriveParams) -> BlochPair {
    drive_kick(interaction_kick(state, params.j_coupling), params.h1, params.h2)
}

/// Exact inverse of [`stroboscopic_step`].
pub fn inverse_step(state: BlochPair, params: &DriveParams) -> BlochPair {
    let undriven = drive_kick(state, -params.h1, -params.h2);
    // l1z + l2z is unchanged by the z-rotation, so the angle is recoverable.
    interaction_kick(undriven, -params.j_coupling)
}

/// Stroboscopic states at cycles `0..=n_cycles`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<BlochPair>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn lz1(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.l1[2]).collect()
    }

    pub fn lz2(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.l2[2]).collect()
    }

    pub fn lz(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.total()[2]).collect()
    }

    pub fn totals(&self) -> Vec<Vec3> {
        self.states.iter().map(BlochPair::total).collect()
    }
}

pub fn run_trajectory(init: BlochPair, params: &DriveParams, n_cycles: usize) -> Trajectory {
    let mut states = Vec::with_capacity(n_cycles + 1);
    let mut s = init;
    states.push(s);
    for _ in 0..n_cycles {
        s = stroboscopic_step(s, params);
        states.push(s);
    }
    Trajectory { states }
}

/// Decorrelator on the total magnetization, plus per-region variants.
#[derive(Debug, Clone, PartialEq)]
pub struct DecorrelatorSeries {
    pub total: Vec<f64>,
    pub region1: Vec<f64>,
    pub region2: Vec<f64>,
}

fn half_distance(a: Vec3, b: Vec3) -> f64 {
    let sq: f64 = (0..3).map(|k| (a[k] - b[k]) * (a[k] - b[k])).sum();
    (0.5 * sq).sqrt()
}

/// Companion trajectory parameters and start state.
fn companion(init: BlochPair, params: &DriveParams) -> (BlochPair, DriveParams) {
    match params.perturbation {
        Perturbation::Drive => {
            let mut p = *params;
            p.h1 += params.delta;
            p.h2 += params.delta;
            (init, p)
        }
        Perturbation::InitialState => (
            BlochPair {
                l1: tilt(init.l1, params.delta),
                l2: tilt(init.l2, params.delta),
            },
            *params,
        ),
    }
}

// Increase the polar angle by `delta`; at the poles tilt towards -y, the
// direction a positive x-rotation takes +z.
fn tilt(v: Vec3, delta: f64) -> Vec3 {
    let rho = (v[0] * v[0] + v[1] * v[1]).sqrt();
    let axis = if rho < 1e-12 {
        [v[2].signum(), 0.0, 0.0]
    } else {
        // ẑ × v, normalized
        [-v[1] / rho, v[0] / rho, 0.0]
    };
    rotate_about(v, axis, delta)
}

/// `D(n) = sqrt(½·Σ_α (L_α(n) - L_α,b(n))²)` for `n = 0..=n_cycles`.
pub fn decorrelator_series(
    init: BlochPair,
    params: &DriveParams,
    n_cycles: usize,
) -> DecorrelatorSeries {
    let (init_b, params_b) = companion(init, params);
    let mut a = init;
    let mut b = init_b;
    let mut out = DecorrelatorSeries {
        total: Vec::with_capacity(n_cycles + 1),
        region1: Vec::with_capacity(n_cycles + 1),
        region2: Vec::with_capacity(n_cycles + 1),
    };
    for n in 0..=n_cycles {
        if n > 0 {
            a = stroboscopic_step(a, params);
            b = stroboscopic_step(b, &params_b);
        }
        out.total.push(half_distance(a.total(), b.total()));
        out.region1.push(half_distance(a.l1, b.l1));
        out.region2.push(half_distance(a.l2, b.l2));
    }
    out
}

/// Mean decorrelator over an inclusive cycle window; the series is computed
/// up to `window.end`.
pub fn time_averaged_decorrelator(
    init: BlochPair,
    params: &DriveParams,
    window: CycleWindow,
) -> Result<f64> {
    let series = decorrelator_series(init, params, window.end);
    window.mean(&series.total)
}

/// Averages of the total and the two regional decorrelators.
pub fn averaged_decorrelators(
    init: BlochPair,
    params: &DriveParams,
    window: CycleWindow,
) -> Result<[f64; 3]> {
    let s = decorrelator_series(init, params, window.end);
    Ok([
        window.mean(&s.total)?,
        window.mean(&s.region1)?,
        window.mean(&s.region2)?,
    ])
}
