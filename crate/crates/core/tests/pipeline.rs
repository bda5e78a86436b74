//! Run, write artifacts, read them back, and analyze the files alone.

use vlasov_sl::config::{Problem, RunConfig};
use vlasov_sl::diagnostics::{e_l2_series, fit_rate, LANDAU_FIT_WINDOW};
use vlasov_sl::output::{emit_outputs, parse_snapshot, read_diagnostics_csv};
use vlasov_sl::solver::run;

#[test]
fn landau_rate_from_written_csv() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new(Problem::WeakLandau);
    cfg.nx = 64;
    cfg.nv = 64;
    cfg.t_final = 25.0;
    cfg.diag_every = 0.0;
    cfg.snapshot_times = vec![10.0];
    cfg.out_dir = dir.path().to_path_buf();
    let out = run(&cfg).unwrap();
    let paths = emit_outputs(&out, &cfg).unwrap();

    let records = read_diagnostics_csv(&paths.diagnostics).unwrap();
    assert_eq!(records, out.records);
    let rate = fit_rate(&e_l2_series(&records), (LANDAU_FIT_WINDOW.0, 25.0)).unwrap();
    assert!((rate + 0.1533).abs() < 0.05 * 0.1533, "{rate}");

    let text = std::fs::read_to_string(&paths.snapshots[0]).unwrap();
    let (nx, nv, bounds, t, values) = parse_snapshot(&text).unwrap();
    assert_eq!((nx, nv, t), (64, 64, 10.0));
    assert_eq!(bounds[3], cfg.v_max);
    let snap = &out.snapshots[0];
    assert_eq!(values, snap.f.values);
}
