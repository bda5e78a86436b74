//! Conserved-quantity tracking and field growth/damping rates.
//!
//! `Energy` here is `∫∫ f v² + ∫ E²`, both terms included.

use crate::error::{Error, Result};
use crate::field::FieldState;
use crate::grid::{DistributionField, PhaseGrid};

pub const DEFAULT_ENTROPY_FLOOR: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub l1: f64,
    pub l2: f64,
    pub energy: f64,
    pub entropy: f64,
    pub e_l2: f64,
    pub rel_dev_l1: f64,
    pub rel_dev_l2: f64,
    pub rel_dev_energy: f64,
    pub rel_dev_entropy: f64,
}

/// `(ΔxΔv Σ|f|^p)^{1/p}`.
pub fn lp_norm(grid: &PhaseGrid, f: &DistributionField, p: f64) -> f64 {
    let cell = grid.dx * grid.dv;
    if p == 1.0 {
        return cell * f.values.iter().map(|v| v.abs()).sum::<f64>();
    }
    if p == 2.0 {
        return (cell * f.values.iter().map(|v| v * v).sum::<f64>()).sqrt();
    }
    (cell * f.values.iter().map(|v| v.abs().powf(p)).sum::<f64>()).powf(1.0 / p)
}

/// `ΔxΔv Σ f v² + Δx Σ E²`.
pub fn energy(grid: &PhaseGrid, f: &DistributionField, efield: &[f64]) -> f64 {
    let kinetic: f64 = (0..grid.nx)
        .map(|i| {
            f.column(grid, i)
                .iter()
                .zip(&grid.v_centers)
                .map(|(f, v)| f * v * v)
                .sum::<f64>()
        })
        .sum();
    grid.dx * grid.dv * kinetic + grid.dx * efield.iter().map(|e| e * e).sum::<f64>()
}

/// `ΔxΔv Σ g log g` with `g = max(f, floor)`.
pub fn entropy(grid: &PhaseGrid, f: &DistributionField, floor: f64) -> f64 {
    grid.dx
        * grid.dv
        * f.values
            .iter()
            .map(|&v| {
                let g = v.max(floor);
                g * g.ln()
            })
            .sum::<f64>()
}

/// `sqrt(Δx Σ E²)`.
pub fn e_l2(dx: f64, efield: &[f64]) -> f64 {
    (dx * efield.iter().map(|e| e * e).sum::<f64>()).sqrt()
}

/// `(value − initial)/|initial|`; the plain difference when `initial = 0`.
pub fn relative_deviation(value: f64, initial: f64) -> f64 {
    if initial == 0.0 {
        value - initial
    } else {
        (value - initial) / initial.abs()
    }
}

/// Holds the `t = 0` values that deviations are measured against.
#[derive(Clone, Debug)]
pub struct DiagnosticsTracker {
    initial: DiagnosticsRecord,
    floor: f64,
}

impl DiagnosticsTracker {
    pub fn new(grid: &PhaseGrid, f: &DistributionField, fields: &FieldState, floor: f64) -> Self {
        let mut tracker = DiagnosticsTracker {
            initial: DiagnosticsRecord {
                t: f.time,
                l1: 0.0,
                l2: 0.0,
                energy: 0.0,
                entropy: 0.0,
                e_l2: 0.0,
                rel_dev_l1: 0.0,
                rel_dev_l2: 0.0,
                rel_dev_energy: 0.0,
                rel_dev_entropy: 0.0,
            },
            floor,
        };
        let raw = tracker.measure(grid, f, fields, f.time);
        tracker.initial = raw;
        tracker
    }

    fn measure(
        &self,
        grid: &PhaseGrid,
        f: &DistributionField,
        fields: &FieldState,
        t: f64,
    ) -> DiagnosticsRecord {
        DiagnosticsRecord {
            t,
            l1: lp_norm(grid, f, 1.0),
            l2: lp_norm(grid, f, 2.0),
            energy: energy(grid, f, &fields.efield),
            entropy: entropy(grid, f, self.floor),
            e_l2: e_l2(grid.dx, &fields.efield),
            rel_dev_l1: 0.0,
            rel_dev_l2: 0.0,
            rel_dev_energy: 0.0,
            rel_dev_entropy: 0.0,
        }
    }

    pub fn initial_record(&self) -> DiagnosticsRecord {
        self.initial
    }

    pub fn record(
        &self,
        grid: &PhaseGrid,
        f: &DistributionField,
        fields: &FieldState,
        t: f64,
    ) -> DiagnosticsRecord {
        let mut r = self.measure(grid, f, fields, t);
        let i = &self.initial;
        r.rel_dev_l1 = relative_deviation(r.l1, i.l1);
        r.rel_dev_l2 = relative_deviation(r.l2, i.l2);
        r.rel_dev_energy = relative_deviation(r.energy, i.energy);
        r.rel_dev_entropy = relative_deviation(r.entropy, i.entropy);
        r
    }
}

/// Least-squares slope of `y` against `t`.
pub fn ls_slope(t: &[f64], y: &[f64]) -> f64 {
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (a, b) in t.iter().zip(y) {
        num += (a - tm) * (b - ym);
        den += (a - tm) * (a - tm);
    }
    num / den
}

/// Vertex of the parabola through three points.
fn parabola_vertex(p0: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> (f64, f64) {
    let (x0, y0) = p0;
    let (x1, y1) = p1;
    let (x2, y2) = p2;
    let d1 = (y1 - y0) / (x1 - x0);
    let d2 = (y2 - y1) / (x2 - x1);
    let a = (d2 - d1) / (x2 - x0);
    if a >= 0.0 {
        return p1;
    }
    let b = d1 - a * (x0 + x1);
    let xv = -b / (2.0 * a);
    let yv = y1 + (xv - x1) * (a * (xv + x1) + b);
    (xv, yv)
}

/// Minimum samples a fit window must contain.
pub const MIN_FIT_SAMPLES: usize = 10;

/// Damping-rate fit window for the Landau problems.
pub const LANDAU_FIT_WINDOW: (f64, f64) = (0.0, 40.0);

/// Local-slope half width and stability tolerance for [`detect_growth_window`].
pub const GROWTH_HALF_SPAN: f64 = 3.0;
pub const GROWTH_SLOPE_TOL: f64 = 0.1;

/// `(t, ‖E‖₂)` pairs of a record series.
pub fn e_l2_series(records: &[DiagnosticsRecord]) -> Vec<(f64, f64)> {
    records.iter().map(|r| (r.t, r.e_l2)).collect()
}

/// Exponential rate of `series = [(t, ‖E‖₂)]` over `window`.
///
/// When the window holds at least three local maxima the fit uses those
/// peaks (each refined by a parabola through its neighbours in log space),
/// which tracks the envelope of an oscillating field; otherwise every
/// sample is used.
pub fn fit_rate(series: &[(f64, f64)], window: (f64, f64)) -> Result<f64> {
    let (ta, tb) = window;
    let pts: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|(t, _)| *t >= ta && *t <= tb)
        .collect();
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!(
            "window [{ta}, {tb}] holds {} samples, need {MIN_FIT_SAMPLES}",
            pts.len()
        )));
    }
    if let Some((t, e)) = pts.iter().find(|(_, e)| !(*e > 0.0)) {
        return Err(Error::Fit(format!("non-positive value {e} at t = {t}")));
    }
    let logs: Vec<(f64, f64)> = pts.iter().map(|(t, e)| (*t, e.ln())).collect();
    let peaks: Vec<(f64, f64)> = (1..logs.len() - 1)
        .filter(|&k| logs[k].1 > logs[k - 1].1 && logs[k].1 >= logs[k + 1].1)
        .map(|k| parabola_vertex(logs[k - 1], logs[k], logs[k + 1]))
        .collect();
    let used = if peaks.len() >= 3 { peaks } else { logs };
    let (t, y): (Vec<f64>, Vec<f64>) = used.into_iter().unzip();
    Ok(ls_slope(&t, &y))
}

/// Longest interval over which the local growth rate of `log ‖E‖₂` stays
/// positive and within `±tol` of a common value.
///
/// Local rates are least-squares slopes over `±half_span` around each
/// sample.
pub fn detect_growth_window(series: &[(f64, f64)], half_span: f64, tol: f64) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|(_, e)| *e > 0.0)
        .map(|(t, e)| (t, e.ln()))
        .collect();
    let n = pts.len();
    let mut rates = vec![f64::NAN; n];
    let mut lo = 0;
    let mut hi = 0;
    for k in 0..n {
        let tk = pts[k].0;
        // Slack so that sample times built by repeated addition still count.
        let slack = 1e-9 * (1.0 + tk.abs());
        while pts[lo].0 < tk - half_span - slack {
            lo += 1;
        }
        while hi + 1 < n && pts[hi + 1].0 <= tk + half_span + slack {
            hi += 1;
        }
        // Skip windows cut off by the ends of the series.
        let starts = lo > 0 || pts[lo].0 <= tk - half_span + slack;
        let ends = hi + 1 < n || pts[hi].0 >= tk + half_span - slack;
        if !starts || !ends || hi - lo < 4 {
            continue;
        }
        let (t, y): (Vec<f64>, Vec<f64>) = pts[lo..=hi].iter().copied().unzip();
        rates[k] = ls_slope(&t, &y);
    }
    let ratio = (1.0 + tol) / (1.0 - tol);
    let mut best: Option<(usize, usize)> = None;
    for a in 0..n {
        if !(rates[a] > 0.0) {
            continue;
        }
        let (mut mn, mut mx) = (rates[a], rates[a]);
        let mut b = a;
        while b + 1 < n && rates[b + 1] > 0.0 {
            let r = rates[b + 1];
            if r.max(mx) > ratio * r.min(mn) {
                break;
            }
            mn = mn.min(r);
            mx = mx.max(r);
            b += 1;
        }
        let span = pts[b].0 - pts[a].0;
        if best.is_none_or(|(ba, bb)| span > pts[bb].0 - pts[ba].0) {
            best = Some((a, b));
        }
    }
    best.filter(|(a, b)| b > a).map(|(a, b)| (pts[a].0, pts[b].0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn grid() -> PhaseGrid {
        PhaseGrid::new(32, 64, 0.0, 4.0 * PI, 6.0).unwrap()
    }

    #[test]
    fn norms_on_simple_data() {
        let g = grid();
        let zero = DistributionField::zeros(&g);
        assert_eq!(lp_norm(&g, &zero, 1.0), 0.0);
        assert_eq!(energy(&g, &zero, &vec![0.0; g.nx]), 0.0);
        let one = g.sample(0.0, |_, _| 1.0);
        assert!((lp_norm(&g, &one, 1.0) - 48.0 * PI).abs() < 1e-11);
        let maxwell = g.sample(0.0, |_, v| (-0.5 * v * v).exp() / (2.0 * PI).sqrt());
        assert!((lp_norm(&g, &maxwell, 1.0) - 4.0 * PI).abs() < 1e-7);
        assert!((energy(&g, &maxwell, &vec![0.0; g.nx]) - 4.0 * PI).abs() < 1e-6);
        assert!(lp_norm(&g, &maxwell, 3.0) > 0.0);
    }

    #[test]
    fn field_terms() {
        let k = 0.5;
        let g = grid();
        let e: Vec<f64> = g.x_centers.iter().map(|x| (k * x).sin()).collect();
        let zero = DistributionField::zeros(&g);
        assert!((energy(&g, &zero, &e) - PI / k).abs() < 1e-12);
        assert!((e_l2(g.dx, &e) - (PI / k).sqrt()).abs() < 1e-12);
        assert_eq!(e_l2(g.dx, &[0.0; 4]), 0.0);
    }

    #[test]
    fn entropy_cases() {
        let g = grid();
        let area = g.length() * 2.0 * g.v_max;
        assert!(entropy(&g, &g.sample(0.0, |_, _| 1.0), 1e-14).abs() < 1e-15);
        let e = std::f64::consts::E;
        let val = entropy(&g, &g.sample(0.0, |_, _| e), 1e-14);
        assert!((val - area * e).abs() < 1e-10);
        let mut f = g.sample(0.0, |_, _| 0.5);
        f.values[3] = -0.2;
        assert!(entropy(&g, &f, 1e-14).is_finite());
    }

    #[test]
    fn tracker_starts_at_zero_deviation() {
        let g = grid();
        let f = g.sample(0.0, |x, v| (1.0 + 0.1 * x.cos()) * (-v * v).exp());
        let fields = FieldState::initial(&g, &f, &crate::field::PoissonSolver::for_grid(&g));
        let tr = DiagnosticsTracker::new(&g, &f, &fields, 1e-14);
        let r = tr.record(&g, &f, &fields, 0.0);
        assert_eq!(
            [r.rel_dev_l1, r.rel_dev_l2, r.rel_dev_energy, r.rel_dev_entropy],
            [0.0; 4]
        );
    }

    #[test]
    fn exact_exponential_rate() {
        let series: Vec<(f64, f64)> = (0..100)
            .map(|k| (0.1 * k as f64, (0.03 * k as f64).exp()))
            .collect();
        assert!((fit_rate(&series, (0.0, 10.0)).unwrap() - 0.3).abs() < 1e-8);
    }

    #[test]
    fn damped_oscillation_envelope() {
        // |cos| envelope decaying at 0.15, sampled coarsely.
        let series: Vec<(f64, f64)> = (0..600)
            .map(|k| {
                let t = 0.07 * k as f64;
                (t, (-0.15 * t).exp() * (1.4 * t).cos().abs() + 1e-12)
            })
            .collect();
        let rate = fit_rate(&series, (0.0, 40.0)).unwrap();
        assert!((rate + 0.15).abs() < 0.005, "{rate}");
    }

    #[test]
    fn fit_rejects_bad_windows() {
        let series: Vec<(f64, f64)> = (0..5).map(|k| (k as f64, 1.0)).collect();
        assert!(fit_rate(&series, (0.0, 10.0)).is_err());
        let mut series: Vec<(f64, f64)> = (0..20).map(|k| (k as f64, 1.0)).collect();
        series[4].1 = 0.0;
        assert!(fit_rate(&series, (0.0, 30.0)).is_err());
    }

    #[test]
    fn growth_window_found() {
        // Transient, clean growth at 0.3 on [5, 20], then saturation.
        let series: Vec<(f64, f64)> = (0..400)
            .map(|k| {
                let t = 0.1 * k as f64;
                let y = if t < 5.0 {
                    -4.0 + 0.2 * (3.0 * t).sin()
                } else if t < 20.0 {
                    -4.0 + 0.3 * (t - 5.0)
                } else {
                    0.5
                };
                (t, y.exp())
            })
            .collect();
        let (a, b) = detect_growth_window(&series, 1.0, 0.1).unwrap();
        assert!(a > 4.0 && a < 7.0 && b > 18.0 && b < 21.0, "{a} {b}");
        let rate = fit_rate(&series, (a, b)).unwrap();
        assert!((rate - 0.3).abs() < 0.02, "{rate}");
    }

    #[test]
    fn growth_window_with_incommensurate_spacing() {
        // Spacing 0.2045 never lands on t ± half_span exactly.
        let series: Vec<(f64, f64)> = (0..200)
            .map(|k| {
                let t = 0.2045 * k as f64;
                let y = if t < 12.0 {
                    -4.0
                } else {
                    -4.0 + 0.3 * (t - 12.0).min(14.0)
                };
                (t, y.exp())
            })
            .collect();
        let (a, b) = detect_growth_window(&series, 3.0, 0.1).unwrap();
        assert!(a > 11.0 && a < 16.0 && b > 22.0 && b < 27.0, "{a} {b}");
    }

    proptest! {
        #[test]
        fn lp_norm_is_homogeneous(c in 0.0f64..10.0, p in 1.0f64..4.0) {
            let g = PhaseGrid::new(8, 8, 0.0, 1.0, 1.0).unwrap();
            let f = g.sample(0.0, |x, v| (3.0 * x).sin() + v);
            let mut cf = f.clone();
            cf.values.iter_mut().for_each(|v| *v *= c);
            let a = lp_norm(&g, &cf, p);
            let b = c * lp_norm(&g, &f, p);
            prop_assert!((a - b).abs() <= 1e-12 * b.max(1.0));
        }

        #[test]
        fn fit_rate_scale_invariant(s in 1e-6f64..1e6, r in -0.5f64..0.5) {
            let series: Vec<(f64, f64)> = (0..50).map(|k| (0.2 * k as f64, (r * 0.2 * k as f64).exp())).collect();
            let scaled: Vec<(f64, f64)> = series.iter().map(|(t, e)| (*t, s * e)).collect();
            let a = fit_rate(&series, (0.0, 10.0)).unwrap();
            let b = fit_rate(&scaled, (0.0, 10.0)).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
