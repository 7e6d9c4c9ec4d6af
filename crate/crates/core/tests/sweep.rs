use std::fs;

use lmg_floquet::config::{SweepConfig, SweepMode};
use lmg_floquet::diagnostics::Observable;
use lmg_floquet::format::fmt_sig;
use lmg_floquet::semiclassical::averaged_decorrelators;
use lmg_floquet::sweep::{evaluate_point, grid_points, output_path, read_rows, resume_sweep, run_sweep, SweepRecord};

fn config(mode: SweepMode, out: &std::path::Path, workers: usize) -> SweepConfig {
    SweepConfig {
        mode,
        h1_points: Some(5),
        h2_points: Some(4),
        cycles: 120,
        n_spins: 16,
        h1: 0.17,
        observables: vec![Observable::Lz, Observable::Lz1],
        workers,
        out: out.to_path_buf(),
        ..SweepConfig::default()
    }
}

const MODES: [SweepMode; 4] = [
    SweepMode::UniformScan,
    SweepMode::DecorrelatorMap,
    SweepMode::FotocMap,
    SweepMode::DftLine,
];

#[test]
fn worker_count_does_not_change_output() {
    for mode in MODES {
        let dir = tempfile::tempdir().unwrap();
        let mut files = Vec::new();
        for workers in [1, 3, 8] {
            let cfg = config(mode, dir.path(), workers);
            run_sweep(&cfg).unwrap();
            files.push(fs::read(output_path(&cfg)).unwrap());
            fs::remove_file(output_path(&cfg)).unwrap();
        }
        assert!(files.windows(2).all(|w| w[0] == w[1]), "{mode}");
    }
}

#[test]
fn points_recomputed_alone_match_their_rows() {
    for mode in MODES {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(mode, dir.path(), 0);
        run_sweep(&cfg).unwrap();
        let rows = read_rows(&output_path(&cfg)).unwrap();
        let mut expected = Vec::new();
        for p in grid_points(&cfg) {
            expected.extend(evaluate_point(&cfg, p.h1, p.h2).unwrap().iter().map(SweepRecord::to_row));
        }
        let got: Vec<String> = rows.iter().map(|r| r.join(",")).collect();
        assert_eq!(got, expected, "{mode}");
    }
}

#[test]
fn decorrelator_map_matches_direct_calls() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(SweepMode::DecorrelatorMap, dir.path(), 0);
    run_sweep(&cfg).unwrap();
    let rows = read_rows(&output_path(&cfg)).unwrap();
    for (p, r) in grid_points(&cfg).iter().zip(&rows) {
        let d = averaged_decorrelators(
            cfg.init.bloch_pair(),
            &cfg.drive_params(p.h1, p.h2),
            cfg.averaging_window().unwrap(),
        )
        .unwrap();
        assert_eq!(r[..2], [fmt_sig(p.h1), fmt_sig(p.h2)]);
        assert_eq!(r[2..], d.map(fmt_sig));
    }
}

#[test]
fn resume_variants_equal_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(SweepMode::DecorrelatorMap, dir.path(), 2);
    let path = output_path(&cfg);
    run_sweep(&cfg).unwrap();
    let fresh = fs::read(&path).unwrap();

    // complete file: untouched
    let s = resume_sweep(&cfg).unwrap();
    assert_eq!(s.computed_points, 0);
    assert_eq!(fs::read(&path).unwrap(), fresh);

    // empty file
    fs::write(&path, b"").unwrap();
    resume_sweep(&cfg).unwrap();
    assert_eq!(fs::read(&path).unwrap(), fresh);

    // half the rows, cut mid-line
    let text = String::from_utf8(fresh.clone()).unwrap();
    let half = text.len() / 2 + 7;
    fs::write(&path, &text[..half]).unwrap();
    let s = resume_sweep(&cfg).unwrap();
    assert!(s.computed_points > 0 && s.computed_points < s.grid_points);
    assert_eq!(fs::read(&path).unwrap(), fresh);

    // missing file
    fs::remove_file(&path).unwrap();
    resume_sweep(&cfg).unwrap();
    assert_eq!(fs::read(&path).unwrap(), fresh);
}

#[test]
fn resume_refuses_foreign_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(SweepMode::FotocMap, dir.path(), 0);
    let path = output_path(&cfg);
    run_sweep(&cfg).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("\n0,0.333333333333,", "\n0.5,0.333333333333,", 1);
    assert_ne!(tampered, text);
    fs::write(&path, &tampered).unwrap();
    assert!(resume_sweep(&cfg).is_err());
    assert_eq!(fs::read_to_string(&path).unwrap(), tampered);
}

#[test]
fn summary_reports_extremes() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(SweepMode::UniformScan, dir.path(), 0);
    cfg.h1_points = Some(3);
    let s = run_sweep(&cfg).unwrap();
    assert_eq!(s.grid_points, 3);
    let names: Vec<&str> = s.columns.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["D_avg", "F_avg"]);
    // h = 0.5 is the exact period-doubled point: both diagnostics vanish there
    assert!(s.columns.iter().all(|c| c.min < 1e-2 && c.stable_fraction > 0.0));
    assert!(s.to_string().contains("3 grid points"));
}
