use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use vlasov_sl::output::{parse_snapshot, read_diagnostics_csv, CSV_COLUMNS};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vlasov-sl"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn manifest_value(dir: &Path, key: &str) -> Option<String> {
    fs::read_to_string(dir.join("manifest.txt"))
        .unwrap()
        .lines()
        .find_map(|l| {
            let (k, v) = l.split_once('=')?;
            (k.trim() == key).then(|| v.trim().to_string())
        })
}

#[test]
fn run_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cli(&[
        "run",
        "--problem",
        "weak_landau",
        "--nx",
        "32",
        "--nv",
        "32",
        "--tfinal",
        "1",
        "--snapshots",
        "0.5,1",
        "--out",
        out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let header = fs::read_to_string(dir.path().join("diagnostics.csv")).unwrap();
    assert_eq!(header.lines().next().unwrap(), CSV_COLUMNS.join(","));
    let records = read_diagnostics_csv(&dir.path().join("diagnostics.csv")).unwrap();
    assert_eq!(records.first().unwrap().t, 0.0);
    assert_eq!(records.last().unwrap().t, 1.0);

    for (k, t) in [(0, 0.5), (1, 1.0)] {
        let text = fs::read_to_string(dir.path().join(format!("snapshot_{k:03}.txt"))).unwrap();
        let (nx, nv, _, ts, values) = parse_snapshot(&text).unwrap();
        assert_eq!((nx, nv, ts), (32, 32, t));
        assert!(values.iter().all(|v| v.is_finite()));
    }
    assert_eq!(
        manifest_value(dir.path(), "problem").as_deref(),
        Some("weak_landau")
    );
    assert_eq!(manifest_value(dir.path(), "nx").as_deref(), Some("32"));
    assert!(
        manifest_value(dir.path(), "steps")
            .unwrap()
            .parse::<usize>()
            .unwrap()
            > 0
    );
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# small run\nproblem = strong_landau\nnx = 16\nnv = 16\nt_final = 0.25\norder = 2\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = cli(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--nx",
        "24",
        "--interp",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(manifest_value(&out, "problem").as_deref(), Some("strong_landau"));
    assert_eq!(manifest_value(&out, "nx").as_deref(), Some("24"));
    assert_eq!(manifest_value(&out, "nv").as_deref(), Some("16"));
    assert_eq!(manifest_value(&out, "order").as_deref(), Some("2"));
    assert_eq!(manifest_value(&out, "interp").as_deref(), Some("4"));
    assert_eq!(
        manifest_value(&out, "t_end").unwrap().parse::<f64>().unwrap(),
        0.25
    );
}

#[test]
fn bad_input_exits_nonzero_with_message() {
    for args in [
        &["run", "--order", "4"][..],
        &["run", "--interp", "5"],
        &["run", "--problem", "plasma_wakefield"],
        &["run", "--nx", "0", "--tfinal", "0.1"],
        &["run", "--cfl", "-1", "--tfinal", "0.1"],
        &["run", "--config", "/nonexistent/run.cfg"],
        &["converge-time", "--order", "0"],
    ] {
        let o = cli(args);
        assert!(!o.status.success(), "{args:?} should fail");
        assert!(!o.stderr.is_empty(), "{args:?} printed nothing");
    }
    let o = cli(&["run", "--config", "/nonexistent/run.cfg"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/run.cfg"));
}

#[test]
fn advect1d_writes_profile() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["advect1d", "--nx", "40", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("L1 error"), "{stdout}");
    let csv = fs::read_to_string(dir.path().join("advect1d.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "x,u,exact");
    assert_eq!(rows.len(), 41);
    for row in &rows[1..] {
        let v: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() < 1e-3, "{row}");
    }
}
