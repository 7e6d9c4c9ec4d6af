//! Parallel parameter sweeps written as comma-separated data files.
//!
//! Every file has the same layout: the `# config:` block, one row of column
//! names, the data rows in grid order (`h1` outer, `h2` inner), and a final
//! `# end` line once every grid point is present. Points are evaluated in
//! parallel chunks; each chunk is written in order and flushed before the
//! next starts, so an interrupted run leaves a valid prefix that
//! [`resume_sweep`] can extend.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::config::{SweepConfig, SweepMode};
use crate::diagnostics::{
    classify_dtc_with, dft_magnitude, magnetization_series, ClassifyOptions, DtcOrder, Observable, Spectrum,
};
use crate::format::fmt_sig;
use crate::quantum::fotoc_series_from;
use crate::semiclassical::averaged_decorrelators;
use crate::{Error, Result};

pub const END_MARKER: &str = "# end";

/// Averages below this count as stable in the summary.
pub const STABLE_THRESHOLD: f64 = 1e-2;

/// One output row.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepRecord {
    UniformScan {
        h: f64,
        d_avg: f64,
        f_avg: f64,
    },
    DecorrelatorMap {
        h1: f64,
        h2: f64,
        d_avg: f64,
        d1_avg: f64,
        d2_avg: f64,
    },
    FotocMap {
        h1: f64,
        h2: f64,
        f_avg: f64,
    },
    DftLine {
        h1: f64,
        h2: f64,
        observable: Observable,
        freq: f64,
        magnitude: f64,
    },
}

impl SweepRecord {
    pub fn columns(mode: SweepMode) -> &'static [&'static str] {
        match mode {
            SweepMode::UniformScan => &["h", "D_avg", "F_avg"],
            SweepMode::DecorrelatorMap => &["h1", "h2", "D_avg", "D1_avg", "D2_avg"],
            SweepMode::FotocMap => &["h1", "h2", "F_avg"],
            SweepMode::DftLine => &["h1", "h2", "observable", "freq", "magnitude"],
        }
    }

    pub fn to_row(&self) -> String {
        let f = fmt_sig;
        match self {
            SweepRecord::UniformScan { h, d_avg, f_avg } => format!("{},{},{}", f(*h), f(*d_avg), f(*f_avg)),
            SweepRecord::DecorrelatorMap {
                h1,
                h2,
                d_avg,
                d1_avg,
                d2_avg,
            } => format!("{},{},{},{},{}", f(*h1), f(*h2), f(*d_avg), f(*d1_avg), f(*d2_avg)),
            SweepRecord::FotocMap { h1, h2, f_avg } => format!("{},{},{}", f(*h1), f(*h2), f(*f_avg)),
            SweepRecord::DftLine {
                h1,
                h2,
                observable,
                freq,
                magnitude,
            } => format!("{},{},{},{},{}", f(*h1), f(*h2), observable, f(*freq), f(*magnitude)),
        }
    }
}

/// A grid point; `index` is its position in output order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub index: usize,
    pub h1: f64,
    pub h2: f64,
}

/// Grid points in output order. Uniform scans take `h` from the `h1` range
/// and set `h2 = h1`; DFT lines hold `h1` at the `h1` key.
pub fn grid_points(cfg: &SweepConfig) -> Vec<GridPoint> {
    let pairs: Vec<(f64, f64)> = match cfg.mode {
        SweepMode::UniformScan => cfg.h1_range().values().into_iter().map(|h| (h, h)).collect(),
        SweepMode::DftLine => cfg.h2_range().values().into_iter().map(|h2| (cfg.h1, h2)).collect(),
        SweepMode::DecorrelatorMap | SweepMode::FotocMap => {
            let h2s = cfg.h2_range().values();
            cfg.h1_range()
                .values()
                .into_iter()
                .flat_map(|h1| h2s.iter().map(move |&h2| (h1, h2)))
                .collect()
        }
    };
    pairs
        .into_iter()
        .enumerate()
        .map(|(index, (h1, h2))| GridPoint { index, h1, h2 })
        .collect()
}

/// Rows contributed by each grid point.
pub fn rows_per_point(cfg: &SweepConfig) -> Result<usize> {
    Ok(match cfg.mode {
        SweepMode::DftLine => cfg.observables.len() * (cfg.dft_window()?.len() / 2 + 1),
        _ => 1,
    })
}

fn fotoc_average(cfg: &SweepConfig, h1: f64, h2: f64) -> Result<f64> {
    let model = cfg.quantum_model(h1, h2)?;
    let window = cfg.averaging_window()?;
    let series = fotoc_series_from(&model, cfg.init.quantum_state(&model), cfg.epsilon, window.end)?;
    window.mean(&series)
}

/// Evaluate one grid point in isolation.
pub fn evaluate_point(cfg: &SweepConfig, h1: f64, h2: f64) -> Result<Vec<SweepRecord>> {
    let init = cfg.init.bloch_pair();
    Ok(match cfg.mode {
        SweepMode::UniformScan => {
            let [d_avg, ..] = averaged_decorrelators(init, &cfg.drive_params(h1, h2), cfg.averaging_window()?)?;
            vec![SweepRecord::UniformScan {
                h: h1,
                d_avg,
                f_avg: fotoc_average(cfg, h1, h2)?,
            }]
        }
        SweepMode::DecorrelatorMap => {
            let [d_avg, d1_avg, d2_avg] =
                averaged_decorrelators(init, &cfg.drive_params(h1, h2), cfg.averaging_window()?)?;
            vec![SweepRecord::DecorrelatorMap {
                h1,
                h2,
                d_avg,
                d1_avg,
                d2_avg,
            }]
        }
        SweepMode::FotocMap => vec![SweepRecord::FotocMap {
            h1,
            h2,
            f_avg: fotoc_average(cfg, h1, h2)?,
        }],
        SweepMode::DftLine => {
            let window = cfg.dft_window()?;
            let series = magnetization_series(cfg.source(), cfg.j_coupling, h1, h2, cfg.init, window.end)?;
            let mut rows = Vec::new();
            for &observable in &cfg.observables {
                let spec = dft_magnitude(series.get(observable), window)?;
                for k in 0..=spec.len() / 2 {
                    rows.push(SweepRecord::DftLine {
                        h1,
                        h2,
                        observable,
                        freq: spec.freqs[k],
                        magnitude: spec.mags[k],
                    });
                }
            }
            rows
        }
    })
}

/// Path of the data file for `cfg`.
pub fn output_path(cfg: &SweepConfig) -> PathBuf {
    cfg.out.join(format!("sweep-{}.csv", cfg.mode))
}

fn file_header(cfg: &SweepConfig) -> String {
    format!("{}{}\n", cfg.header(), SweepRecord::columns(cfg.mode).join(","))
}

/// Statistics for one value column, or for one observable of a DFT line.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSummary {
    pub name: String,
    pub min: f64,
    pub max: f64,
    /// Map columns: fraction below [`STABLE_THRESHOLD`]. DFT lines: fraction
    /// of spectra classified as ordered (period-T or subharmonic).
    pub stable_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub path: PathBuf,
    pub mode: SweepMode,
    pub grid_points: usize,
    /// Points evaluated by this call; zero when resuming a complete file.
    pub computed_points: usize,
    pub wall_time: Duration,
    pub columns: Vec<ColumnSummary>,
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "wrote {}", self.path.display())?;
        writeln!(
            f,
            "mode {}: {} grid points ({} computed) in {:.3} s",
            self.mode,
            self.grid_points,
            self.computed_points,
            self.wall_time.as_secs_f64()
        )?;
        for c in &self.columns {
            writeln!(
                f,
                "  {}: min {} max {} stable fraction {}",
                c.name,
                fmt_sig(c.min),
                fmt_sig(c.max),
                fmt_sig(c.stable_fraction)
            )?;
        }
        Ok(())
    }
}

/// Run a sweep into a new file. Fails if the output file already exists.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    cfg.validate()?;
    let path = output_path(cfg);
    if path.exists() {
        return Err(Error::OutputExists(path));
    }
    let start = Instant::now();
    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(file_header(cfg).as_bytes()).map_err(|e| Error::io(&path, e))?;
    let points = grid_points(cfg);
    write_points(cfg, &path, &mut w, &points)?;
    summarize(cfg, &path, points.len(), start.elapsed())
}

/// Continue an interrupted sweep.
///
/// The file's header must match `cfg` exactly. Complete grid points are
/// kept, a trailing partial point is discarded, and the remaining points are
/// appended. A finished file is left untouched; a missing or empty file
/// behaves like [`run_sweep`].
pub fn resume_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    cfg.validate()?;
    let path = output_path(cfg);
    let existing = match fs::read(&path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(Error::io(&path, e)),
    };
    if existing.is_empty() {
        if path.exists() {
            fs::remove_file(&path).map_err(|e| Error::io(&path, e))?;
        }
        return run_sweep(cfg);
    }
    let start = Instant::now();
    let text = String::from_utf8(existing).map_err(|_| Error::Resume {
        path: path.clone(),
        msg: "file is not valid UTF-8".into(),
    })?;
    let header = file_header(cfg);
    let points = grid_points(cfg);
    let mismatch = |msg: String| Error::Resume {
        path: path.clone(),
        msg,
    };

    let (keep_bytes, done) = if header.starts_with(&text) {
        // interrupted while writing the header
        (0, 0)
    } else if let Some(body) = text.strip_prefix(&header) {
        let (bytes, done, finished) = scan_body(cfg, &points, body).map_err(mismatch)?;
        if finished {
            return summarize(cfg, &path, points.len(), start.elapsed()).map(|mut s| {
                s.computed_points = 0;
                s
            });
        }
        (header.len() + bytes, done)
    } else {
        return Err(mismatch("header does not match the requested configuration".into()));
    };

    let file = OpenOptions::new().write(true).open(&path).map_err(|e| Error::io(&path, e))?;
    file.set_len(keep_bytes as u64).map_err(|e| Error::io(&path, e))?;
    let mut w = BufWriter::new(file);
    {
        use std::io::Seek;
        w.seek(std::io::SeekFrom::End(0)).map_err(|e| Error::io(&path, e))?;
    }
    if keep_bytes == 0 {
        w.write_all(header.as_bytes()).map_err(|e| Error::io(&path, e))?;
    }
    write_points(cfg, &path, &mut w, &points[done..])?;
    let mut summary = summarize(cfg, &path, points.len(), start.elapsed())?;
    summary.computed_points = points.len() - done;
    Ok(summary)
}

/// Validate the data rows after the header. Returns the byte length of the
/// complete points, how many there are, and whether the end marker follows.
fn scan_body(cfg: &SweepConfig, points: &[GridPoint], body: &str) -> std::result::Result<(usize, usize, bool), String> {
    let per = rows_per_point(cfg).map_err(|e| e.to_string())?;
    let n_key = if cfg.mode == SweepMode::UniformScan { 1 } else { 2 };
    let n_cols = SweepRecord::columns(cfg.mode).len();
    let mut offset = 0;
    let mut kept = 0;
    let mut rows_in_point = 0;
    let mut done = 0;
    for line in body.split_inclusive('\n') {
        if !line.ends_with('\n') {
            break;
        }
        let content = line.trim_end_matches('\n');
        if content == END_MARKER {
            if done == points.len() && rows_in_point == 0 {
                return Ok((offset, done, true));
            }
            return Err("end marker before the grid is complete".into());
        }
        if done == points.len() {
            return Err("more rows than the configured grid".into());
        }
        let fields: Vec<&str> = content.split(',').collect();
        if fields.len() != n_cols {
            break;
        }
        let p = points[done];
        let expect = [fmt_sig(p.h1), fmt_sig(p.h2)];
        if fields[..n_key] != expect[..n_key] {
            return Err(format!(
                "row {} does not belong to grid point {} (h1={}, h2={})",
                kept + rows_in_point + 1,
                done,
                expect[0],
                expect[1]
            ));
        }
        offset += line.len();
        rows_in_point += 1;
        if rows_in_point == per {
            rows_in_point = 0;
            done += 1;
            kept = offset;
        }
    }
    Ok((kept, done, false))
}

fn write_points<W: Write>(cfg: &SweepConfig, path: &Path, w: &mut W, points: &[GridPoint]) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let chunk = 4 * pool.current_num_threads().max(1);
    for block in points.chunks(chunk) {
        let results: Vec<Result<Vec<SweepRecord>>> =
            pool.install(|| block.par_iter().map(|p| evaluate_point(cfg, p.h1, p.h2)).collect());
        let mut text = String::new();
        for rows in results {
            for r in rows? {
                text.push_str(&r.to_row());
                text.push('\n');
            }
        }
        w.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    writeln!(w, "{END_MARKER}").map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Data rows of a sweep file, split into fields.
pub fn read_rows(path: &Path) -> Result<Vec<Vec<String>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    lines.next();
    Ok(lines.map(|l| l.split(',').map(str::to_string).collect()).collect())
}

fn parse_field(path: &Path, s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Resume {
        path: path.to_path_buf(),
        msg: format!("cannot parse {s:?} as a number"),
    })
}

fn column_summary(name: &str, values: &[f64]) -> ColumnSummary {
    let stable = values.iter().filter(|&&v| v < STABLE_THRESHOLD).count();
    ColumnSummary {
        name: name.to_string(),
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        stable_fraction: stable as f64 / values.len().max(1) as f64,
    }
}

fn summarize(cfg: &SweepConfig, path: &Path, grid: usize, wall_time: Duration) -> Result<SweepSummary> {
    let rows = read_rows(path)?;
    let columns = SweepRecord::columns(cfg.mode);
    let mut out = Vec::new();
    match cfg.mode {
        SweepMode::DftLine => {
            let window = cfg.dft_window()?;
            let l = window.len();
            let half = l / 2 + 1;
            let opts = ClassifyOptions::default();
            for &obs in &cfg.observables {
                let mut ordered = 0;
                let mut count = 0;
                let mut peaks = Vec::new();
                let mine: Vec<&Vec<String>> = rows.iter().filter(|r| r[2] == obs.name()).collect();
                for block in mine.chunks(half) {
                    let one_sided = block
                        .iter()
                        .map(|r| parse_field(path, &r[4]))
                        .collect::<Result<Vec<f64>>>()?;
                    let mags: Vec<f64> = (0..l).map(|k| one_sided[k.min(l - k)]).collect();
                    let spec = Spectrum {
                        freqs: (0..l).map(|k| k as f64 / l as f64).collect(),
                        mags,
                        window,
                    };
                    if classify_dtc_with(&spec, &opts).order != DtcOrder::Unordered {
                        ordered += 1;
                    }
                    if let Some(k) = spec.dominant_bin() {
                        peaks.push(spec.mags[k]);
                    }
                    count += 1;
                }
                out.push(ColumnSummary {
                    name: format!("{obs} dominant magnitude"),
                    min: peaks.iter().copied().fold(f64::INFINITY, f64::min),
                    max: peaks.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                    stable_fraction: ordered as f64 / count.max(1) as f64,
                });
            }
        }
        _ => {
            let first_value = if cfg.mode == SweepMode::UniformScan { 1 } else { 2 };
            for (c, name) in columns.iter().enumerate().skip(first_value) {
                let values = rows
                    .iter()
                    .map(|r| parse_field(path, &r[c]))
                    .collect::<Result<Vec<f64>>>()?;
                out.push(column_summary(name, &values));
            }
        }
    }
    Ok(SweepSummary {
        path: path.to_path_buf(),
        mode: cfg.mode,
        grid_points: grid,
        computed_points: grid,
        wall_time,
        columns: out,
    })
}
