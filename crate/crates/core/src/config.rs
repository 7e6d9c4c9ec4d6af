//! Run configuration shared by the sweep harness and the command line.
//!
//! Configuration files are flat `key=value` text. Keys match the long flag
//! names one-to-one, so `--n-spins 64` and a line `n-spins=64` are the same
//! setting. Every output file starts with `# config: key=value` lines; a data
//! file can be passed back as a config file and only those lines are read.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::diagnostics::{Observable, Source};
use crate::quantum::QuantumModel;
use crate::semiclassical::{DriveParams, Perturbation};
use crate::spin::region_spin;
use crate::{CycleWindow, Error, InitialAngles, Result};

pub const CONFIG_PREFIX: &str = "# config: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    DecorrelatorMap,
    FotocMap,
    DftLine,
    UniformScan,
}

impl SweepMode {
    pub fn name(&self) -> &'static str {
        match self {
            SweepMode::DecorrelatorMap => "decorrelator-map",
            SweepMode::FotocMap => "fotoc-map",
            SweepMode::DftLine => "dft-line",
            SweepMode::UniformScan => "uniform-scan",
        }
    }

    fn default_points(&self) -> (usize, usize) {
        match self {
            SweepMode::DecorrelatorMap | SweepMode::FotocMap => (101, 101),
            SweepMode::DftLine => (1, 201),
            SweepMode::UniformScan => (201, 1),
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SweepMode::DecorrelatorMap,
            SweepMode::FotocMap,
            SweepMode::DftLine,
            SweepMode::UniformScan,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| {
            Error::Config(format!(
                "unknown mode {s:?} (expected decorrelator-map, fotoc-map, dft-line or uniform-scan)"
            ))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Semiclassical,
    Quantum,
}

/// Evenly spaced inclusive range; a single point sits at `min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridRange {
    pub fn value(&self, i: usize) -> f64 {
        if self.points <= 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// Every tunable parameter of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub j_coupling: f64,
    pub h1: f64,
    pub h2: f64,
    pub h1_min: f64,
    pub h1_max: f64,
    /// `None` picks the mode default.
    pub h1_points: Option<usize>,
    pub h2_min: f64,
    pub h2_max: f64,
    pub h2_points: Option<usize>,
    pub n_spins: usize,
    pub cycles: usize,
    /// `None` picks `[cycles/2, cycles]` for averages and `[0, cycles)` for spectra.
    pub window_start: Option<usize>,
    pub window_end: Option<usize>,
    pub delta: f64,
    pub epsilon: f64,
    pub observables: Vec<Observable>,
    pub source: SourceKind,
    pub perturbation: Perturbation,
    pub init: InitialAngles,
    pub out: PathBuf,
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            mode: SweepMode::DecorrelatorMap,
            j_coupling: 0.5,
            h1: 0.5,
            h2: 0.5,
            h1_min: 0.0,
            h1_max: 1.0,
            h1_points: None,
            h2_min: 0.0,
            h2_max: 1.0,
            h2_points: None,
            n_spins: 100,
            cycles: 1000,
            window_start: None,
            window_end: None,
            delta: 1e-4,
            epsilon: 0.01,
            observables: vec![Observable::Lz],
            source: SourceKind::Semiclassical,
            perturbation: Perturbation::Drive,
            init: InitialAngles::default(),
            out: PathBuf::from("."),
            workers: 0,
        }
    }
}

/// Keys in header order. `workers` is accepted but never written, so the
/// worker count cannot change an output file.
pub const KEYS: [&str; 25] = [
    "mode",
    "j",
    "h1",
    "h2",
    "h1-min",
    "h1-max",
    "h1-points",
    "h2-min",
    "h2-max",
    "h2-points",
    "n-spins",
    "cycles",
    "window-start",
    "window-end",
    "delta",
    "epsilon",
    "observable",
    "source",
    "perturbation",
    "init-theta1",
    "init-phi1",
    "init-theta2",
    "init-phi2",
    "out",
    "workers",
];

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_finite(key: &str, value: &str) -> Result<f64> {
    let v: f64 = parse_num(key, value)?;
    if !v.is_finite() {
        return Err(Error::Config(format!("{key}: value must be finite")));
    }
    Ok(v)
}

fn parse_opt(key: &str, value: &str) -> Result<Option<usize>> {
    if value.trim().is_empty() {
        Ok(None)
    } else {
        parse_num(key, value).map(Some)
    }
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SweepConfig {
    /// Set one key from its text value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "mode" => self.mode = value.trim().parse()?,
            "j" => self.j_coupling = parse_finite(key, value)?,
            "h1" => self.h1 = parse_finite(key, value)?,
            "h2" => self.h2 = parse_finite(key, value)?,
            "h1-min" => self.h1_min = parse_finite(key, value)?,
            "h1-max" => self.h1_max = parse_finite(key, value)?,
            "h1-points" => self.h1_points = parse_opt(key, value)?,
            "h2-min" => self.h2_min = parse_finite(key, value)?,
            "h2-max" => self.h2_max = parse_finite(key, value)?,
            "h2-points" => self.h2_points = parse_opt(key, value)?,
            "n-spins" => self.n_spins = parse_num(key, value)?,
            "cycles" => self.cycles = parse_num(key, value)?,
            "window-start" => self.window_start = parse_opt(key, value)?,
            "window-end" => self.window_end = parse_opt(key, value)?,
            "delta" => self.delta = parse_finite(key, value)?,
            "epsilon" => self.epsilon = parse_finite(key, value)?,
            "observable" => {
                self.observables = match value.trim() {
                    "all" => Observable::ALL.to_vec(),
                    list => list
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<Vec<_>>>()?,
                }
            }
            "source" => {
                self.source = match value.trim() {
                    "semiclassical" => SourceKind::Semiclassical,
                    "quantum" => SourceKind::Quantum,
                    other => {
                        return Err(Error::Config(format!(
                            "source: expected semiclassical or quantum, got {other:?}"
                        )))
                    }
                }
            }
            "perturbation" => {
                self.perturbation = match value.trim() {
                    "drive" => Perturbation::Drive,
                    "initial-state" => Perturbation::InitialState,
                    other => {
                        return Err(Error::Config(format!(
                            "perturbation: expected drive or initial-state, got {other:?}"
                        )))
                    }
                }
            }
            "init-theta1" => self.init.theta1 = parse_finite(key, value)?,
            "init-phi1" => self.init.phi1 = parse_finite(key, value)?,
            "init-theta2" => self.init.theta2 = parse_finite(key, value)?,
            "init-phi2" => self.init.phi2 = parse_finite(key, value)?,
            "out" => self.out = PathBuf::from(value.trim()),
            "workers" => self.workers = parse_num(key, value)?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let v = match key {
            "mode" => self.mode.to_string(),
            "j" => self.j_coupling.to_string(),
            "h1" => self.h1.to_string(),
            "h2" => self.h2.to_string(),
            "h1-min" => self.h1_min.to_string(),
            "h1-max" => self.h1_max.to_string(),
            "h1-points" => fmt_opt(self.h1_points),
            "h2-min" => self.h2_min.to_string(),
            "h2-max" => self.h2_max.to_string(),
            "h2-points" => fmt_opt(self.h2_points),
            "n-spins" => self.n_spins.to_string(),
            "cycles" => self.cycles.to_string(),
            "window-start" => fmt_opt(self.window_start),
            "window-end" => fmt_opt(self.window_end),
            "delta" => self.delta.to_string(),
            "epsilon" => self.epsilon.to_string(),
            "observable" => self
                .observables
                .iter()
                .map(Observable::name)
                .collect::<Vec<_>>()
                .join(","),
            "source" => match self.source {
                SourceKind::Semiclassical => "semiclassical".into(),
                SourceKind::Quantum => "quantum".into(),
            },
            "perturbation" => match self.perturbation {
                Perturbation::Drive => "drive".into(),
                Perturbation::InitialState => "initial-state".into(),
            },
            "init-theta1" => self.init.theta1.to_string(),
            "init-phi1" => self.init.phi1.to_string(),
            "init-theta2" => self.init.theta2.to_string(),
            "init-phi2" => self.init.phi2.to_string(),
            "out" => self.out.display().to_string(),
            "workers" => self.workers.to_string(),
            _ => return None,
        };
        Some(v)
    }

    pub fn apply_pairs<'a>(&mut self, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<()> {
        for (k, v) in pairs {
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Defaults overlaid with a config file's contents.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        let pairs = parse_config_text(text)?;
        cfg.apply_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }

    /// The `# config:` provenance block, one line per key, newline-terminated.
    pub fn header(&self) -> String {
        KEYS.iter()
            .filter(|&&k| k != "workers")
            .map(|&k| format!("{CONFIG_PREFIX}{k}={}\n", self.get(k).unwrap_or_default()))
            .collect()
    }

    pub fn h1_range(&self) -> GridRange {
        GridRange {
            min: self.h1_min,
            max: self.h1_max,
            points: self.h1_points.unwrap_or(self.mode.default_points().0),
        }
    }

    pub fn h2_range(&self) -> GridRange {
        GridRange {
            min: self.h2_min,
            max: self.h2_max,
            points: self.h2_points.unwrap_or(self.mode.default_points().1),
        }
    }

    /// Window for decorrelator and FOTOC averages.
    pub fn averaging_window(&self) -> Result<CycleWindow> {
        CycleWindow::new(
            self.window_start.unwrap_or(self.cycles / 2),
            self.window_end.unwrap_or(self.cycles),
        )
    }

    /// Window for spectra.
    pub fn dft_window(&self) -> Result<CycleWindow> {
        match (self.window_start, self.window_end) {
            (None, None) => CycleWindow::half_open(0, self.cycles),
            (s, e) => CycleWindow::new(s.unwrap_or(0), e.unwrap_or(self.cycles.saturating_sub(1))),
        }
    }

    pub fn drive_params(&self, h1: f64, h2: f64) -> DriveParams {
        DriveParams::new(self.j_coupling, h1, h2)
            .with_delta(self.delta)
            .with_perturbation(self.perturbation)
    }

    pub fn quantum_model(&self, h1: f64, h2: f64) -> Result<QuantumModel> {
        QuantumModel::new(self.n_spins, self.j_coupling, h1, h2)
    }

    pub fn source(&self) -> Source {
        match self.source {
            SourceKind::Semiclassical => Source::Semiclassical,
            SourceKind::Quantum => Source::Quantum {
                n_spins: self.n_spins,
            },
        }
    }

    /// Hard errors for invalid settings; returns soft warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        region_spin(self.n_spins)?;
        if self.cycles < 1 {
            return Err(Error::Config("cycles must be at least 1".into()));
        }
        if self.delta < 0.0 {
            return Err(Error::Config("delta must be nonnegative".into()));
        }
        if self.observables.is_empty() {
            return Err(Error::Config("observable list is empty".into()));
        }
        for (name, r) in [("h1", self.h1_range()), ("h2", self.h2_range())] {
            if r.points < 1 {
                return Err(Error::Config(format!("{name}-points must be at least 1")));
            }
            if r.points > 1 && r.max <= r.min {
                return Err(Error::Config(format!("{name}-max must exceed {name}-min")));
            }
        }
        for w in [self.averaging_window()?, self.dft_window()?] {
            if w.end > self.cycles {
                return Err(Error::Config(format!(
                    "window {w} exceeds the simulated range [0, {}]",
                    self.cycles
                )));
            }
        }
        let mut warnings = Vec::new();
        for (name, v) in [
            ("h1", self.h1),
            ("h2", self.h2),
            ("h1-min", self.h1_min),
            ("h1-max", self.h1_max),
            ("h2-min", self.h2_min),
            ("h2-max", self.h2_max),
        ] {
            if !(0.0..=1.0).contains(&v) {
                warnings.push(format!("{name}={v} lies outside [0, 1]"));
            }
        }
        Ok(warnings)
    }
}

/// Extract `key=value` pairs. If any `# config:` line is present only those
/// lines count; otherwise every non-blank line not starting with `#` must be
/// a `key=value` pair.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let embedded = text.lines().any(|l| l.starts_with(CONFIG_PREFIX));
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = if embedded {
            match line.strip_prefix(CONFIG_PREFIX) {
                Some(b) => b,
                None => continue,
            }
        } else {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            t
        };
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
        pairs.push((k.trim().to_string(), v.to_string()));
    }
    Ok(pairs)
}
