//! Spectra of stroboscopic series and discrete time-crystal classification.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::quantum::{run_quantum_trajectory_from, QuantumModel};
use crate::semiclassical::{run_trajectory, DriveParams};
use crate::{CycleWindow, Error, InitialAngles, Result};

pub const MIN_WINDOW: usize = 8;

/// DFT magnitudes of a windowed real series, normalized by the window length.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// `k / L` in units of the drive frequency, `k = 0..L`.
    pub freqs: Vec<f64>,
    pub mags: Vec<f64>,
    pub window: CycleWindow,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.mags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mags.is_empty()
    }

    pub fn bin_width(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Index of the largest magnitude among `1..=L/2`, if any.
    pub fn dominant_bin(&self) -> Option<usize> {
        let half = self.len() / 2;
        (1..=half).reduce(|best, k| if self.mags[k] > self.mags[best] { k } else { best })
    }

    pub fn dominant_freq(&self) -> Option<f64> {
        self.dominant_bin().map(|k| self.freqs[k])
    }

    /// True if a local maximum sits within one bin of `freq` and reaches at
    /// least `min_rel` of the dominant nonzero-frequency magnitude.
    pub fn has_peak_near(&self, freq: f64, min_rel: f64) -> bool {
        let l = self.len();
        let Some(dom) = self.dominant_bin() else {
            return false;
        };
        let center = (freq * l as f64).round() as isize;
        let candidate = (center - 1..=center + 1)
            .filter(|&k| k >= 1 && (k as usize) < l)
            .map(|k| k as usize)
            .filter(|&k| (self.freqs[k] - freq).abs() <= self.bin_width() + 1e-12)
            .reduce(|best, k| if self.mags[k] > self.mags[best] { k } else { best });
        let Some(k) = candidate else {
            return false;
        };
        let left = self.mags[(k + l - 1) % l];
        let right = self.mags[(k + 1) % l];
        self.mags[k] >= left && self.mags[k] >= right && self.mags[k] >= min_rel * self.mags[dom]
    }
}

/// Rectangular-window DFT magnitudes of `series[window]`, divided by the
/// window length.
pub fn dft_magnitude(series: &[f64], window: CycleWindow) -> Result<Spectrum> {
    dft_magnitude_padded(series, window, window.len())
}

/// As [`dft_magnitude`], zero-padding the window to `padded_len` samples.
/// Magnitudes stay normalized by the unpadded window length.
pub fn dft_magnitude_padded(series: &[f64], window: CycleWindow, padded_len: usize) -> Result<Spectrum> {
    let samples = window.slice(series)?;
    let m = samples.len();
    if m < MIN_WINDOW {
        return Err(Error::WindowTooShort {
            got: m,
            min: MIN_WINDOW,
        });
    }
    let l = padded_len.max(m);
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    buf.resize(l, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(l).process(&mut buf);
    Ok(Spectrum {
        freqs: (0..l).map(|k| k as f64 / l as f64).collect(),
        mags: buf.iter().map(|z| z.norm() / m as f64).collect(),
        window,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtcOrder {
    /// Dominant response at `1/p` of the drive frequency.
    Subharmonic(u32),
    /// Locked to the drive period, negligible nonzero-frequency weight.
    PeriodT,
    /// No dominant subharmonic: chaotic, quasi-periodic or beyond `max_order`.
    Unordered,
}

impl DtcOrder {
    pub fn order(&self) -> Option<u32> {
        match self {
            DtcOrder::Subharmonic(p) => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for DtcOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DtcOrder::Subharmonic(p) => write!(f, "{p}-DTC"),
            DtcOrder::PeriodT => f.write_str("period-T"),
            DtcOrder::Unordered => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DtcClassification {
    pub order: DtcOrder,
    /// Location of the dominant nonzero-frequency bin, folded into `[0, 1/2]`.
    pub peak_freq: f64,
    /// Power in the dominant bin (and its mirror) over all nonzero-frequency power.
    pub peak_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub max_order: u32,
    pub dominance: f64,
    /// Period-T when nonzero-frequency power is below this fraction of the
    /// zero-frequency power.
    pub period_t_ratio: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_order: 12,
            dominance: 0.5,
            period_t_ratio: 1e-3,
        }
    }
}

pub fn classify_dtc(spec: &Spectrum, max_order: u32, dominance: f64) -> DtcClassification {
    classify_dtc_with(
        spec,
        &ClassifyOptions {
            max_order,
            dominance,
            ..ClassifyOptions::default()
        },
    )
}

pub fn classify_dtc_with(spec: &Spectrum, opts: &ClassifyOptions) -> DtcClassification {
    assert!(opts.max_order >= 2, "max_order must be at least 2");
    assert!(
        opts.dominance > 0.0 && opts.dominance < 1.0,
        "dominance must lie in (0, 1)"
    );
    let l = spec.len();
    let power: Vec<f64> = spec.mags.iter().map(|m| m * m).collect();
    let dc = power[0];
    let nonzero: f64 = power[1..].iter().sum();
    let unordered = DtcClassification {
        order: DtcOrder::Unordered,
        peak_freq: 0.0,
        peak_ratio: 0.0,
    };
    let Some(k) = spec.dominant_bin() else {
        return unordered;
    };
    if nonzero <= 0.0 {
        let order = if dc > 0.0 { DtcOrder::PeriodT } else { DtcOrder::Unordered };
        return DtcClassification { order, ..unordered };
    }

    let mirror = l - k;
    let peak_power = if mirror == k { power[k] } else { power[k] + power[mirror] };
    let peak_ratio = peak_power / nonzero;
    let peak_freq = spec.freqs[k];

    let order = if nonzero < opts.period_t_ratio * dc {
        DtcOrder::PeriodT
    } else if peak_ratio < opts.dominance {
        DtcOrder::Unordered
    } else {
        let tol = spec.bin_width() + 1e-12;
        (2..=opts.max_order)
            .map(|p| (p, (peak_freq - 1.0 / p as f64).abs()))
            .filter(|&(_, dist)| dist <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map_or(DtcOrder::Unordered, |(p, _)| DtcOrder::Subharmonic(p))
    };
    DtcClassification {
        order,
        peak_freq,
        peak_ratio,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Lz,
    Lz1,
    Lz2,
}

impl Observable {
    pub const ALL: [Observable; 3] = [Observable::Lz, Observable::Lz1, Observable::Lz2];

    pub fn name(&self) -> &'static str {
        match self {
            Observable::Lz => "lz",
            Observable::Lz1 => "lz1",
            Observable::Lz2 => "lz2",
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lz" => Ok(Observable::Lz),
            "lz1" => Ok(Observable::Lz1),
            "lz2" => Ok(Observable::Lz2),
            other => Err(Error::Config(format!(
                "unknown observable {other:?} (expected lz, lz1 or lz2)"
            ))),
        }
    }
}

/// Which dynamics generates a stroboscopic series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Semiclassical,
    Quantum { n_spins: usize },
}

/// The three `Lz` series of one run, cycles `0..=n_cycles`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnetizationSeries {
    pub lz: Vec<f64>,
    pub lz1: Vec<f64>,
    pub lz2: Vec<f64>,
}

impl MagnetizationSeries {
    pub fn get(&self, obs: Observable) -> &[f64] {
        match obs {
            Observable::Lz => &self.lz,
            Observable::Lz1 => &self.lz1,
            Observable::Lz2 => &self.lz2,
        }
    }
}

pub fn magnetization_series(
    source: Source,
    j_coupling: f64,
    h1: f64,
    h2: f64,
    init: InitialAngles,
    n_cycles: usize,
) -> Result<MagnetizationSeries> {
    match source {
        Source::Semiclassical => {
            let t = run_trajectory(init.bloch_pair(), &DriveParams::new(j_coupling, h1, h2), n_cycles);
            Ok(MagnetizationSeries {
                lz: t.lz(),
                lz1: t.lz1(),
                lz2: t.lz2(),
            })
        }
        Source::Quantum { n_spins } => {
            let model = QuantumModel::new(n_spins, j_coupling, h1, h2)?;
            let t = run_quantum_trajectory_from(&model, init.quantum_state(&model), n_cycles)?;
            Ok(MagnetizationSeries {
                lz: t.iter().map(|e| e.lz).collect(),
                lz1: t.iter().map(|e| e.lz1).collect(),
                lz2: t.iter().map(|e| e.lz2).collect(),
            })
        }
    }
}

/// One spectrum per `h2` value at fixed `h1`, all over the same window.
pub fn dft_density_line(
    h1: f64,
    h2_grid: &[f64],
    j_coupling: f64,
    source: Source,
    observable: Observable,
    window: CycleWindow,
    init: InitialAngles,
) -> Result<Vec<Spectrum>> {
    if h2_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("h2 grid must be strictly increasing".into()));
    }
    h2_grid
        .par_iter()
        .map(|&h2| {
            let s = magnetization_series(source, j_coupling, h1, h2, init, window.end)?;
            dft_magnitude(s.get(observable), window)
        })
        .collect()
}
