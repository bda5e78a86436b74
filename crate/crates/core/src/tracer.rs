//! Backward location of characteristic feet.
//!
//! Each node `(x_i, v_j)` at `t^{n+1}` is traced back to `t^n` along
//! `dx/dt = v`, `dv/dt = E(x, t)`. Order `l` builds on the order-`(l-1)`
//! prediction of the field at `t^{n+1}`:
//!
//! * order 1: `x* = x_i − v_jΔt`, `v* = v_j − E^n_iΔt`
//! * order 2: trapezoidal corrections using `E^n` at the order-1 foot and
//!   the order-1 predicted `E^{n+1}`
//! * order 3: a two-stage multi-derivative update weighting the `t^{n+1}`
//!   and `t^n` second-derivative terms ⅔ and ⅓, with `dE/dt` taken from the
//!   moment identity `dE/dt = J̄⁰ − J + v(ρ − ρ̄)`
//!
//! Off-grid values of `E`, `J` and `ρ` at `t^n` come from periodic 1D WENO
//! interpolation of the nodal arrays.

use crate::config::TracerOrder;
use crate::error::{Error, Result};
use crate::field::{de_dt_point, mean, FieldState, PoissonSolver};
use crate::grid::{DistributionField, PhaseGrid};
use crate::par::{fill_rows, fill_rows2};
use crate::weno::{Boundary, Interpolator};

/// Feet of the characteristics through every node, `x*` wrapped into the
/// periodic domain.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceResult {
    pub x_star: Vec<f64>,
    pub v_star: Vec<f64>,
    pub order: TracerOrder,
}

impl TraceResult {
    /// Feet equal to the nodes themselves (`Δt = 0`).
    pub fn identity(grid: &PhaseGrid) -> Self {
        let mut x_star = vec![0.0; grid.len()];
        let mut v_star = vec![0.0; grid.len()];
        fill_rows2(&mut x_star, &mut v_star, grid.nv, |i, xr, vr| {
            xr.fill(grid.x_centers[i]);
            vr.copy_from_slice(&grid.v_centers);
        });
        TraceResult {
            x_star,
            v_star,
            order: TracerOrder::First,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x_star.iter().chain(&self.v_star).all(|v| v.is_finite())
    }
}

/// A distribution at `t^{n+1}` obtained from `f^n` at one set of feet, with
/// its moments and field.
#[derive(Clone, Debug)]
pub struct PredictedLevel {
    pub f: DistributionField,
    pub fields: FieldState,
    pub order: TracerOrder,
}

fn expect_order(trace: &TraceResult, expected: TracerOrder) -> Result<()> {
    if trace.order != expected {
        return Err(Error::CascadeOrder {
            expected: expected.as_u8(),
            got: trace.order.as_u8(),
        });
    }
    Ok(())
}

pub fn trace_order1(grid: &PhaseGrid, e_n: &[f64], dt: f64) -> TraceResult {
    let mut x_star = vec![0.0; grid.len()];
    let mut v_star = vec![0.0; grid.len()];
    fill_rows2(&mut x_star, &mut v_star, grid.nv, |i, xr, vr| {
        let x = grid.x_centers[i];
        for (j, &v) in grid.v_centers.iter().enumerate() {
            xr[j] = grid.wrap_x(x - v * dt);
            vr[j] = v - e_n[i] * dt;
        }
    });
    TraceResult {
        x_star,
        v_star,
        order: TracerOrder::First,
    }
}

/// `interp` evaluates `E^n` at the order-1 feet.
pub fn trace_order2(
    grid: &PhaseGrid,
    e_n: &[f64],
    e_np1_1: &[f64],
    trace1: &TraceResult,
    dt: f64,
    interp: &Interpolator,
) -> Result<TraceResult> {
    expect_order(trace1, TracerOrder::First)?;
    let x_axis = grid.x_axis();
    let mut x_star = vec![0.0; grid.len()];
    let mut v_star = vec![0.0; grid.len()];
    fill_rows2(&mut x_star, &mut v_star, grid.nv, |i, xr, vr| {
        let x = grid.x_centers[i];
        for (j, &v) in grid.v_centers.iter().enumerate() {
            let k = grid.idx(i, j);
            let e_foot = interp.interp1d(e_n, &x_axis, Boundary::Periodic, trace1.x_star[k]);
            xr[j] = grid.wrap_x(x - 0.5 * (v + trace1.v_star[k]) * dt);
            vr[j] = v - 0.5 * (e_foot + e_np1_1[i]) * dt;
        }
    });
    Ok(TraceResult {
        x_star,
        v_star,
        order: TracerOrder::Second,
    })
}

/// `fields_np1_2` is the order-2 prediction at `t^{n+1}`; `interp`
/// evaluates `E^n`, `J^n`, `ρ^n` at the order-2 feet.
pub fn trace_order3(
    grid: &PhaseGrid,
    fields_n: &FieldState,
    fields_np1_2: &FieldState,
    trace2: &TraceResult,
    dt: f64,
    interp: &Interpolator,
) -> Result<TraceResult> {
    expect_order(trace2, TracerOrder::Second)?;
    let x_axis = grid.x_axis();
    let j0 = fields_n.j0_bar;
    let half_dt2 = 0.5 * dt * dt;
    let rho_bar_n = mean(&fields_n.rho);
    let rho_bar_new = mean(&fields_np1_2.rho);
    let mut x_star = vec![0.0; grid.len()];
    let mut v_star = vec![0.0; grid.len()];
    fill_rows2(&mut x_star, &mut v_star, grid.nv, |i, xr, vr| {
        let x = grid.x_centers[i];
        let e_new = fields_np1_2.efield[i];
        let rho_new = fields_np1_2.rho[i] - rho_bar_new;
        let j_new = fields_np1_2.current[i];
        for (j, &v) in grid.v_centers.iter().enumerate() {
            let k = grid.idx(i, j);
            let foot = trace2.x_star[k];
            let v_foot = trace2.v_star[k];
            let at_foot = |a: &[f64]| interp.interp1d(a, &x_axis, Boundary::Periodic, foot);
            let e_foot = at_foot(&fields_n.efield);
            let dedt_new = de_dt_point(rho_new, j_new, j0, v);
            let dedt_foot = de_dt_point(
                at_foot(&fields_n.rho) - rho_bar_n,
                at_foot(&fields_n.current),
                j0,
                v_foot,
            );
            xr[j] = grid.wrap_x(x - v * dt + half_dt2 * (2.0 / 3.0 * e_new + e_foot / 3.0));
            vr[j] = v - e_new * dt + half_dt2 * (2.0 / 3.0 * dedt_new + dedt_foot / 3.0);
        }
    });
    Ok(TraceResult {
        x_star,
        v_star,
        order: TracerOrder::Third,
    })
}

/// Interpolates `f^n` at the feet of `trace`.
pub fn interpolate_at_feet(
    grid: &PhaseGrid,
    f_n: &DistributionField,
    trace: &TraceResult,
    interp: &Interpolator,
    time: f64,
) -> DistributionField {
    let mut values = vec![0.0; grid.len()];
    fill_rows(&mut values, grid.nv, |i, row| {
        let base = i * grid.nv;
        for (j, out) in row.iter_mut().enumerate() {
            *out = interp.interp2d(grid, f_n, trace.x_star[base + j], trace.v_star[base + j]);
        }
    });
    DistributionField { values, time }
}

/// Predicted distribution and fields at `time = t^{n+1}`.
pub fn predict_level(
    grid: &PhaseGrid,
    f_n: &DistributionField,
    trace: &TraceResult,
    interp: &Interpolator,
    poisson: &PoissonSolver,
    j0_bar: f64,
    time: f64,
) -> PredictedLevel {
    let f = interpolate_at_feet(grid, f_n, trace, interp, time);
    let fields = FieldState::compute(grid, &f, poisson, j0_bar);
    PredictedLevel {
        f,
        fields,
        order: trace.order,
    }
}
