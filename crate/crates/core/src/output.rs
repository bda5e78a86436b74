//! Run artifacts: diagnostics CSV, snapshot grids, and a key=value manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::diagnostics::DiagnosticsRecord;
use crate::error::{Error, Result};
use crate::grid::{DistributionField, PhaseGrid};
use crate::solver::{RunOutput, Snapshot};

pub const CSV_COLUMNS: [&str; 10] = [
    "t",
    "l1",
    "l2",
    "energy",
    "entropy",
    "e_l2",
    "rel_dev_l1",
    "rel_dev_l2",
    "rel_dev_energy",
    "rel_dev_entropy",
];

fn record_row(r: &DiagnosticsRecord) -> [f64; 10] {
    [
        r.t,
        r.l1,
        r.l2,
        r.energy,
        r.entropy,
        r.e_l2,
        r.rel_dev_l1,
        r.rel_dev_l2,
        r.rel_dev_energy,
        r.rel_dev_entropy,
    ]
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_diagnostics_csv(path: &Path, records: &[DiagnosticsRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(CSV_COLUMNS).map_err(csv_err(path))?;
    for r in records {
        // `{:e}` round-trips f64 exactly.
        w.write_record(record_row(r).iter().map(|v| format!("{v:e}")))
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let header = r.headers().map_err(csv_err(path))?;
    if header.iter().ne(CSV_COLUMNS) {
        return Err(Error::InvalidConfig(format!(
            "{}: unexpected CSV header",
            path.display()
        )));
    }
    let mut out = Vec::new();
    for row in r.records() {
        let row = row.map_err(csv_err(path))?;
        let v: Vec<f64> = row
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        out.push(DiagnosticsRecord {
            t: v[0],
            l1: v[1],
            l2: v[2],
            energy: v[3],
            entropy: v[4],
            e_l2: v[5],
            rel_dev_l1: v[6],
            rel_dev_l2: v[7],
            rel_dev_energy: v[8],
            rel_dev_entropy: v[9],
        });
    }
    Ok(out)
}

/// Header lines `key value`, then one line of `n_v` values per `x` row.
pub fn snapshot_text(grid: &PhaseGrid, t: f64, f: &DistributionField) -> String {
    let mut s = format!(
        "n_x {}\nn_v {}\nx_lo {:e}\nx_hi {:e}\nv_lo {:e}\nv_hi {:e}\nt {:e}\n",
        grid.nx, grid.nv, grid.x_lo, grid.x_hi, -grid.v_max, grid.v_max, t
    );
    for i in 0..grid.nx {
        let row: Vec<String> = f.column(grid, i).iter().map(|v| format!("{v:e}")).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parsed snapshot file: `(n_x, n_v, [x_lo, x_hi, v_lo, v_hi], t, values)`.
pub type SnapshotData = (usize, usize, [f64; 4], f64, Vec<f64>);

pub fn parse_snapshot(text: &str) -> Result<SnapshotData> {
    let bad = |m: &str| Error::InvalidConfig(format!("snapshot: {m}"));
    let mut lines = text.lines();
    let mut header = |key: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad("truncated header"))?;
        let (k, v) = line.split_once(' ').ok_or_else(|| bad(line))?;
        if k != key {
            return Err(bad(&format!("expected {key}, found {k}")));
        }
        Ok(v.to_string())
    };
    let num = |s: String| s.parse::<f64>().map_err(|e| bad(&e.to_string()));
    let nx = header("n_x")?.parse().map_err(|_| bad("n_x"))?;
    let nv = header("n_v")?.parse().map_err(|_| bad("n_v"))?;
    let bounds = [
        num(header("x_lo")?)?,
        num(header("x_hi")?)?,
        num(header("v_lo")?)?,
        num(header("v_hi")?)?,
    ];
    let t = num(header("t")?)?;
    let values: Vec<f64> = lines
        .flat_map(str::split_whitespace)
        .map(|s| s.parse::<f64>().map_err(|e| bad(&e.to_string())))
        .collect::<Result<_>>()?;
    if values.len() != nx * nv {
        return Err(bad(&format!(
            "expected {} values, found {}",
            nx * nv,
            values.len()
        )));
    }
    Ok((nx, nv, bounds, t, values))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}

pub fn write_snapshot(path: &Path, grid: &PhaseGrid, snapshot: &Snapshot) -> Result<()> {
    write_text(path, &snapshot_text(grid, snapshot.t, &snapshot.f))
}

/// Full config followed by any `extra` key=value lines.
pub fn write_manifest(path: &Path, config: &RunConfig, extra: &[(&str, String)]) -> Result<()> {
    let mut text = config.to_text();
    for (k, v) in extra {
        text.push_str(&format!("{k} = {v}\n"));
    }
    write_text(path, &text)
}

/// Files produced by [`emit_outputs`].
#[derive(Clone, Debug, Default)]
pub struct OutputPaths {
    pub diagnostics: PathBuf,
    pub snapshots: Vec<PathBuf>,
    pub manifest: PathBuf,
}

/// Writes `diagnostics.csv`, `snapshot_<k>.txt` per snapshot, and
/// `manifest.txt` into `config.out_dir`, creating it if needed.
pub fn emit_outputs(output: &RunOutput, config: &RunConfig) -> Result<OutputPaths> {
    let dir = &config.out_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let diagnostics = dir.join("diagnostics.csv");
    write_diagnostics_csv(&diagnostics, &output.records)?;
    let mut snapshots = Vec::new();
    for (k, snap) in output.snapshots.iter().enumerate() {
        let path = dir.join(format!("snapshot_{k:03}.txt"));
        write_snapshot(&path, &output.grid, snap)?;
        snapshots.push(path);
    }
    let manifest = dir.join("manifest.txt");
    write_manifest(
        &manifest,
        config,
        &[
            ("steps", output.final_state.step_count.to_string()),
            ("t_end", format!("{:e}", output.final_state.t)),
        ],
    )?;
    Ok(OutputPaths {
        diagnostics,
        snapshots,
        manifest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("vlasov-sl-output-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn empty_records_give_header_only() {
        let p = tmp("empty.csv");
        write_diagnostics_csv(&p, &[]).unwrap();
        let text = fs::read_to_string(&p).unwrap();
        assert_eq!(text.trim_end(), CSV_COLUMNS.join(","));
        assert!(read_diagnostics_csv(&p).unwrap().is_empty());
    }

    #[test]
    fn records_round_trip_exactly() {
        let r = DiagnosticsRecord {
            t: 0.5,
            l1: 1.0 / 3.0,
            l2: 0.1,
            energy: 12.5,
            entropy: -3.25e-3,
            e_l2: 1e-300,
            rel_dev_l1: 0.0,
            rel_dev_l2: -2e-15,
            rel_dev_energy: 7.0,
            rel_dev_entropy: f64::MIN_POSITIVE,
        };
        let p = tmp("one.csv");
        write_diagnostics_csv(&p, &[r, r]).unwrap();
        assert_eq!(read_diagnostics_csv(&p).unwrap(), vec![r, r]);
    }

    #[test]
    fn snapshot_round_trip() {
        let g = PhaseGrid::new(3, 4, 0.0, 2.0, 1.5).unwrap();
        let f = g.sample(0.0, |x, v| x - 0.3 * v);
        let (nx, nv, bounds, t, values) = parse_snapshot(&snapshot_text(&g, 2.5, &f)).unwrap();
        assert_eq!((nx, nv, t), (3, 4, 2.5));
        assert_eq!(bounds, [0.0, 2.0, -1.5, 1.5]);
        assert_eq!(values, f.values);
    }

    #[test]
    fn io_errors_name_the_path() {
        let p = Path::new("/nonexistent-dir/x/diag.csv");
        let msg = write_diagnostics_csv(p, &[]).unwrap_err().to_string();
        assert!(msg.contains("/nonexistent-dir/x/diag.csv"), "{msg}");
        let msg = write_text(p, "").unwrap_err().to_string();
        assert!(msg.contains("/nonexistent-dir/x/diag.csv"), "{msg}");
    }
}
