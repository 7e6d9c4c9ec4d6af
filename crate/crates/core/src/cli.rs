//! Command-line front end.
//!
//! Parameters come from defaults, then an optional `--config` file, then
//! flags. Each subcommand writes one CSV file into `--out` whose `# config:`
//! header records every parameter; passing that file back as `--config`
//! reproduces it.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::SweepConfig;
use crate::diagnostics::{classify_dtc_with, dft_magnitude, magnetization_series, ClassifyOptions};
use crate::format::fmt_sig;
use crate::quantum::{fotoc_series_from, run_quantum_trajectory_from, Expectations};
use crate::semiclassical::{decorrelator_series, run_trajectory};
use crate::sweep::{resume_sweep, run_sweep};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "lmg-floquet",
    version,
    about = "Stroboscopic dynamics of a two-region periodically driven collective spin model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Semiclassical trajectory: writes traj-sc.csv
    TrajSc(Params),
    /// Collective-sector quantum trajectory: writes traj-q.csv
    TrajQ(Params),
    /// Semiclassical decorrelator series: writes decorrelator.csv
    Decorrelator(Params),
    /// Quantum FOTOC series: writes fotoc.csv
    Fotoc(Params),
    /// Magnetization spectra at one (h1, h2): writes dft.csv
    Dft(Params),
    /// Parameter sweep: writes sweep-<mode>.csv
    Sweep {
        #[command(flatten)]
        params: Params,
        /// Continue an interrupted sweep file instead of refusing to overwrite it
        #[arg(long)]
        resume: bool,
    },
}

/// Overrides; every flag has a config-file key of the same name.
#[derive(Debug, Args, Default)]
pub struct Params {
    /// key=value config file; a previous output file also works [default: none]
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Sweep mode: decorrelator-map, fotoc-map, dft-line or uniform-scan [default: decorrelator-map]
    #[arg(long)]
    pub mode: Option<String>,
    /// Ising coupling J, in units of the inverse drive period [default: 0.5]
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Region-1 drive amplitude h1; pi pulse at 0.5 [default: 0.5]
    #[arg(long, allow_hyphen_values = true)]
    pub h1: Option<String>,
    /// Region-2 drive amplitude h2 [default: 0.5]
    #[arg(long, allow_hyphen_values = true)]
    pub h2: Option<String>,
    /// Lower end of the h1 grid (h grid for uniform-scan) [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub h1_min: Option<String>,
    /// Upper end of the h1 grid [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub h1_max: Option<String>,
    /// h1 grid points [default: 201 for uniform-scan, 101 for maps]
    #[arg(long)]
    pub h1_points: Option<String>,
    /// Lower end of the h2 grid [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub h2_min: Option<String>,
    /// Upper end of the h2 grid [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub h2_max: Option<String>,
    /// h2 grid points [default: 201 for dft-line, 101 for maps]
    #[arg(long)]
    pub h2_points: Option<String>,
    /// Total spins N, even; each region holds N/2 [default: 100]
    #[arg(long)]
    pub n_spins: Option<String>,
    /// Drive periods to simulate [default: 1000]
    #[arg(long)]
    pub cycles: Option<String>,
    /// First cycle of the analysis window, inclusive [default: cycles/2 for averages, 0 for spectra]
    #[arg(long)]
    pub window_start: Option<String>,
    /// Last cycle of the analysis window, inclusive [default: cycles for averages, cycles-1 for spectra]
    #[arg(long)]
    pub window_end: Option<String>,
    /// Decorrelator perturbation: drive offset, or polar tilt in radians [default: 1e-4]
    #[arg(long)]
    pub delta: Option<String>,
    /// FOTOC rotation angle about z, radians [default: 0.01]
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    /// Spectrum observables: lz, lz1, lz2, a comma list, or all [default: lz]
    #[arg(long)]
    pub observable: Option<String>,
    /// Dynamics for spectra: semiclassical or quantum [default: semiclassical]
    #[arg(long)]
    pub source: Option<String>,
    /// Decorrelator companion: drive or initial-state [default: drive]
    #[arg(long)]
    pub perturbation: Option<String>,
    /// Region-1 initial polar angle, radians [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub init_theta1: Option<String>,
    /// Region-1 initial azimuth, radians [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub init_phi1: Option<String>,
    /// Region-2 initial polar angle, radians [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub init_theta2: Option<String>,
    /// Region-2 initial azimuth, radians [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub init_phi2: Option<String>,
    /// Output directory [default: .]
    #[arg(long, value_name = "DIR")]
    pub out: Option<String>,
    /// Sweep worker threads, 0 for all cores [default: 0]
    #[arg(long)]
    pub workers: Option<String>,
}

impl Params {
    fn overrides(&self) -> Vec<(&'static str, &str)> {
        [
            ("mode", &self.mode),
            ("j", &self.j),
            ("h1", &self.h1),
            ("h2", &self.h2),
            ("h1-min", &self.h1_min),
            ("h1-max", &self.h1_max),
            ("h1-points", &self.h1_points),
            ("h2-min", &self.h2_min),
            ("h2-max", &self.h2_max),
            ("h2-points", &self.h2_points),
            ("n-spins", &self.n_spins),
            ("cycles", &self.cycles),
            ("window-start", &self.window_start),
            ("window-end", &self.window_end),
            ("delta", &self.delta),
            ("epsilon", &self.epsilon),
            ("observable", &self.observable),
            ("source", &self.source),
            ("perturbation", &self.perturbation),
            ("init-theta1", &self.init_theta1),
            ("init-phi1", &self.init_phi1),
            ("init-theta2", &self.init_theta2),
            ("init-phi2", &self.init_phi2),
            ("out", &self.out),
            ("workers", &self.workers),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }

    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::from_file(path)?,
            None => SweepConfig::default(),
        };
        cfg.apply_pairs(self.overrides())?;
        Ok(cfg)
    }
}

/// Parse `argv` (program name first), run, and return the exit status.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("lmg-floquet: {}", line.trim_start_matches("error: "));
            return 2;
        }
    };
    match run(&cli.command) {
        Ok(path) => {
            eprintln!("wrote {}", path.display());
            0
        }
        Err(e) => {
            eprintln!("lmg-floquet: {e}");
            1
        }
    }
}

/// Execute one subcommand; returns the file it wrote.
pub fn run(command: &Command) -> Result<PathBuf> {
    let (params, name) = match command {
        Command::TrajSc(p) => (p, "traj-sc"),
        Command::TrajQ(p) => (p, "traj-q"),
        Command::Decorrelator(p) => (p, "decorrelator"),
        Command::Fotoc(p) => (p, "fotoc"),
        Command::Dft(p) => (p, "dft"),
        Command::Sweep { params, .. } => (params, "sweep"),
    };
    let cfg = params.resolve()?;
    for w in cfg.validate()? {
        eprintln!("warning: {w}");
    }
    if let Command::Sweep { resume, .. } = command {
        let summary = if *resume { resume_sweep(&cfg)? } else { run_sweep(&cfg)? };
        print!("{summary}");
        return Ok(summary.path);
    }

    let mut body = String::new();
    let mut push_row = |cells: Vec<String>| {
        body.push_str(&cells.join(","));
        body.push('\n');
    };
    let numbered = |n: usize, values: &[f64]| {
        std::iter::once(n.to_string())
            .chain(values.iter().map(|&v| fmt_sig(v)))
            .collect::<Vec<_>>()
    };
    let columns: Vec<&str>;
    match name {
        "traj-sc" => {
            columns = std::iter::once("n").chain(Expectations::COLUMNS).collect();
            let t = run_trajectory(cfg.init.bloch_pair(), &cfg.drive_params(cfg.h1, cfg.h2), cfg.cycles);
            for (n, s) in t.states.iter().enumerate() {
                let e = Expectations {
                    lz1: s.l1[2],
                    lz2: s.l2[2],
                    lz: 0.5 * (s.l1[2] + s.l2[2]),
                    lx1: s.l1[0],
                    lx2: s.l2[0],
                    ly1: s.l1[1],
                    ly2: s.l2[1],
                };
                push_row(numbered(n, &e.to_array()));
            }
        }
        "traj-q" => {
            columns = std::iter::once("n").chain(Expectations::COLUMNS).collect();
            let model = cfg.quantum_model(cfg.h1, cfg.h2)?;
            let t = run_quantum_trajectory_from(&model, cfg.init.quantum_state(&model), cfg.cycles)?;
            for (n, e) in t.iter().enumerate() {
                push_row(numbered(n, &e.to_array()));
            }
        }
        "decorrelator" => {
            columns = vec!["n", "D", "D1", "D2"];
            let s = decorrelator_series(cfg.init.bloch_pair(), &cfg.drive_params(cfg.h1, cfg.h2), cfg.cycles);
            for n in 0..s.total.len() {
                push_row(numbered(n, &[s.total[n], s.region1[n], s.region2[n]]));
            }
            let w = cfg.averaging_window()?;
            println!("D_avg over {w}: {}", fmt_sig(w.mean(&s.total)?));
        }
        "fotoc" => {
            columns = vec!["n", "F"];
            let model = cfg.quantum_model(cfg.h1, cfg.h2)?;
            let f = fotoc_series_from(&model, cfg.init.quantum_state(&model), cfg.epsilon, cfg.cycles)?;
            for (n, v) in f.iter().enumerate() {
                push_row(numbered(n, &[*v]));
            }
            let w = cfg.averaging_window()?;
            println!("F_avg over {w}: {}", fmt_sig(w.mean(&f)?));
        }
        "dft" => {
            columns = vec!["h1", "h2", "observable", "freq", "magnitude"];
            let w = cfg.dft_window()?;
            let series = magnetization_series(cfg.source(), cfg.j_coupling, cfg.h1, cfg.h2, cfg.init, w.end)?;
            for &obs in &cfg.observables {
                let spec = dft_magnitude(series.get(obs), w)?;
                for k in 0..=spec.len() / 2 {
                    push_row(vec![
                        fmt_sig(cfg.h1),
                        fmt_sig(cfg.h2),
                        obs.to_string(),
                        fmt_sig(spec.freqs[k]),
                        fmt_sig(spec.mags[k]),
                    ]);
                }
                let c = classify_dtc_with(&spec, &ClassifyOptions::default());
                println!(
                    "{obs}: {} (peak at {}, ratio {})",
                    c.order,
                    fmt_sig(c.peak_freq),
                    fmt_sig(c.peak_ratio)
                );
            }
        }
        _ => unreachable!("sweep handled above"),
    }
    let path = cfg.out.join(format!("{name}.csv"));
    write_output(&path, &cfg, &columns, &body)?;
    Ok(path)
}

fn write_output(path: &Path, cfg: &SweepConfig, columns: &[&str], body: &str) -> Result<()> {
    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let text = format!("{}{}\n{body}", cfg.header(), columns.join(","));
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
