//! Spatial and temporal convergence studies on the two-stream problem.
//!
//! Spatial errors compare each coarse solution with a fine reference at the
//! coinciding nodes (odd refinement ratios keep cell centers aligned).
//! Temporal errors compare runs at several CFL numbers with a small-CFL
//! third-order reference on the same grid. Errors are grid-averaged L¹:
//! the mean absolute nodal difference.

use crate::config::{Problem, RunConfig, TracerOrder};
use crate::error::{Error, Result};
use crate::grid::{DistributionField, PhaseGrid};
use crate::solver::run;

/// Mean absolute difference.
pub fn l1_error(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64
}

/// Order `p` such that `e ∝ h^p`, from two (step size, error) pairs.
pub fn observed_order(h1: f64, e1: f64, h2: f64, e2: f64) -> f64 {
    (e2 / e1).ln() / (h2 / h1).ln()
}

/// Odd integer ratio `fine/coarse`, or an error when the grids do not nest.
pub fn nesting_ratio(coarse: usize, fine: usize) -> Result<usize> {
    if coarse == 0 || !fine.is_multiple_of(coarse) || (fine / coarse).is_multiple_of(2) {
        return Err(Error::NonNesting { coarse, fine });
    }
    Ok(fine / coarse)
}

/// Fine-grid values at the coarse nodes.
pub fn restrict_to_coarse(
    fine_grid: &PhaseGrid,
    fine: &DistributionField,
    coarse_grid: &PhaseGrid,
) -> Result<Vec<f64>> {
    let rx = nesting_ratio(coarse_grid.nx, fine_grid.nx)?;
    let rv = nesting_ratio(coarse_grid.nv, fine_grid.nv)?;
    let mut out = Vec::with_capacity(coarse_grid.len());
    for i in 0..coarse_grid.nx {
        for j in 0..coarse_grid.nv {
            out.push(fine.values[fine_grid.idx(i * rx + rx / 2, j * rv + rv / 2)]);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpacePreset {
    pub grids: Vec<usize>,
    pub reference: usize,
    pub cfl: f64,
    pub t_final: f64,
}

impl SpacePreset {
    /// Meshes 70², 90², 126², 210² against 630², `CFL = 0.01`, `T = 1`.
    pub fn full() -> Self {
        SpacePreset {
            grids: vec![70, 90, 126, 210],
            reference: 630,
            cfl: 0.01,
            t_final: 1.0,
        }
    }

    /// Meshes 45², 63², 105² against 315² at `CFL = 0.5`; the third-order
    /// temporal error at this CFL stays well below the spatial error.
    pub fn fast() -> Self {
        SpacePreset {
            grids: vec![45, 63, 105],
            reference: 315,
            cfl: 0.5,
            t_final: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceRow {
    pub n: usize,
    pub error: f64,
    /// Observed order against the previous row.
    pub order: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceTable {
    pub preset: SpacePreset,
    pub rows: Vec<SpaceRow>,
}

impl SpaceTable {
    pub fn orders(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.order).collect()
    }
}

fn study_config(base: &RunConfig, n: usize, cfl: f64, t_final: f64, order: TracerOrder) -> RunConfig {
    let mut cfg = base.clone();
    cfg.nx = n;
    cfg.nv = n;
    cfg.cfl = cfl;
    cfg.t_final = t_final;
    cfg.order = order;
    cfg.diag_every = t_final.max(1.0);
    cfg.snapshot_times.clear();
    cfg
}

/// Two-stream base configuration used by both studies.
pub fn two_stream_base() -> RunConfig {
    RunConfig::new(Problem::TwoStream)
}

/// Runs every grid of `preset` plus its reference with the third-order
/// tracer and `base`'s interpolation settings.
pub fn converge_space(base: &RunConfig, preset: &SpacePreset) -> Result<SpaceTable> {
    for &n in &preset.grids {
        nesting_ratio(n, preset.reference)?;
    }
    let solve = |n: usize| {
        let cfg = study_config(base, n, preset.cfl, preset.t_final, TracerOrder::Third);
        run(&cfg)
    };
    let reference = solve(preset.reference)?;
    let mut rows: Vec<SpaceRow> = Vec::new();
    for &n in &preset.grids {
        let out = solve(n)?;
        let exact = restrict_to_coarse(&reference.grid, &reference.final_state.f, &out.grid)?;
        let error = l1_error(&out.final_state.f.values, &exact);
        let order = rows
            .last()
            .map(|prev| observed_order(1.0 / prev.n as f64, prev.error, 1.0 / n as f64, error));
        log::info!("space: n = {n}, L1 error = {error:e}, order = {order:?}");
        rows.push(SpaceRow { n, error, order });
    }
    Ok(SpaceTable {
        preset: preset.clone(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeColumn {
    pub order: TracerOrder,
    pub errors: Vec<f64>,
    /// `orders[k]` compares CFL `k-1` and `k`; `orders[0]` is `None`.
    pub orders: Vec<Option<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeTable {
    pub n: usize,
    pub t_final: f64,
    pub reference_cfl: f64,
    pub cfls: Vec<f64>,
    pub columns: Vec<TimeColumn>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimePreset {
    pub n: usize,
    pub t_final: f64,
    pub cfls: Vec<f64>,
    pub orders: Vec<TracerOrder>,
    pub reference_cfl: f64,
}

impl TimePreset {
    pub fn full() -> Self {
        TimePreset {
            n: 160,
            t_final: 5.0,
            cfls: vec![6.0, 7.0, 8.0, 9.0, 10.0],
            orders: vec![TracerOrder::First, TracerOrder::Second, TracerOrder::Third],
            reference_cfl: 0.5,
        }
    }

    pub fn fast() -> Self {
        TimePreset {
            n: 64,
            t_final: 2.0,
            cfls: vec![6.0, 8.0, 10.0],
            ..Self::full()
        }
    }
}

/// Per-CFL observed orders `log(e_k/e_{k-1}) / log(CFL_k/CFL_{k-1})`.
pub fn successive_orders(cfls: &[f64], errors: &[f64]) -> Vec<Option<f64>> {
    (0..errors.len())
        .map(|k| (k > 0).then(|| observed_order(cfls[k - 1], errors[k - 1], cfls[k], errors[k])))
        .collect()
}

pub fn converge_time(base: &RunConfig, preset: &TimePreset) -> Result<TimeTable> {
    let reference = run(&study_config(
        base,
        preset.n,
        preset.reference_cfl,
        preset.t_final,
        TracerOrder::Third,
    ))?;
    let mut columns = Vec::new();
    for &order in &preset.orders {
        let mut errors = Vec::new();
        for &cfl in &preset.cfls {
            let out = run(&study_config(base, preset.n, cfl, preset.t_final, order))?;
            let e = l1_error(&out.final_state.f.values, &reference.final_state.f.values);
            log::info!("time: order {}, CFL {cfl}, L1 error = {e:e}", order.as_u8());
            errors.push(e);
        }
        columns.push(TimeColumn {
            order,
            orders: successive_orders(&preset.cfls, &errors),
            errors,
        });
    }
    Ok(TimeTable {
        n: preset.n,
        t_final: preset.t_final,
        reference_cfl: preset.reference_cfl,
        cfls: preset.cfls.clone(),
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nesting_rules() {
        assert_eq!(nesting_ratio(70, 630).unwrap(), 9);
        assert_eq!(nesting_ratio(210, 630).unwrap(), 3);
        assert_eq!(nesting_ratio(63, 63).unwrap(), 1);
        assert!(nesting_ratio(64, 128).is_err());
        assert!(nesting_ratio(100, 630).is_err());
    }

    #[test]
    fn self_comparison_is_zero() {
        let g = PhaseGrid::new(9, 9, 0.0, 1.0, 1.0).unwrap();
        let f = g.sample(0.0, |x, v| x * v + 1.0);
        let r = restrict_to_coarse(&g, &f, &g).unwrap();
        assert_eq!(l1_error(&r, &f.values), 0.0);
    }

    #[test]
    fn restriction_picks_coincident_nodes() {
        let fine = PhaseGrid::new(15, 9, 0.0, 3.0, 1.5).unwrap();
        let coarse = PhaseGrid::new(5, 3, 0.0, 3.0, 1.5).unwrap();
        let g = |x: f64, v: f64| 3.0 * x - v * v;
        let r = restrict_to_coarse(&fine, &fine.sample(0.0, g), &coarse).unwrap();
        let direct = coarse.sample(0.0, g);
        for (a, b) in r.iter().zip(&direct.values) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn synthetic_power_laws() {
        let cfls = [2.0, 4.0, 8.0];
        let errors: Vec<f64> = cfls.iter().map(|c| 3e-5 * c * c).collect();
        for o in successive_orders(&cfls, &errors).into_iter().flatten() {
            assert!((o - 2.0).abs() < 1e-12);
        }
        let cfls = [6.0, 7.0, 8.0, 9.0, 10.0];
        let errors: Vec<f64> = cfls.iter().map(|c: &f64| 1e-9 * c.powf(2.7)).collect();
        let orders = successive_orders(&cfls, &errors);
        assert!(orders[0].is_none());
        for o in orders.into_iter().flatten() {
            assert!((o - 2.7).abs() < 1e-12);
        }
    }

    #[test]
    fn space_study_rejects_non_nesting() {
        let preset = SpacePreset {
            grids: vec![40],
            reference: 90,
            cfl: 1.0,
            t_final: 0.1,
        };
        let err = converge_space(&two_stream_base(), &preset).unwrap_err();
        assert!(matches!(err, Error::NonNesting { coarse: 40, fine: 90 }));
    }
}
