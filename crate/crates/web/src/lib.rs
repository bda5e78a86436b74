//! Browser bindings: a stepping phase-space simulation, a WENO6 stencil
//! explorer, and conservative 1D advection of a chosen profile.

use std::f64::consts::PI;
use std::fmt::Display;

use vlasov_sl::config::{InterpOrder, Problem, RunConfig, TracerOrder};
use vlasov_sl::diagnostics::e_l2;
use vlasov_sl::solver::{advect_to, AdvectState1D, Quadrature, Simulation};
use vlasov_sl::weno::{candidate_polys, lagrange6, weno6, weno6_weights, Stencil6};
use wasm_bindgen::prelude::*;

fn js(e: impl Display) -> JsError {
    JsError::new(&e.to_string())
}

// Open-ended runs; the page decides when to stop.
const DEMO_T_FINAL: f64 = 1e6;

fn demo_config(problem: &str, n: usize, cfl: f64, order: u8, interp: u8) -> vlasov_sl::Result<RunConfig> {
    let mut cfg = RunConfig::new(problem.parse::<Problem>()?);
    cfg.nx = n;
    cfg.nv = n;
    cfg.cfl = cfl;
    cfg.order = TracerOrder::from_u8(order)?;
    cfg.interp = InterpOrder::from_u8(interp)?;
    cfg.t_final = DEMO_T_FINAL;
    cfg.diag_every = 0.0;
    cfg.snapshot_times.clear();
    Ok(cfg)
}

#[wasm_bindgen]
pub struct PhaseSpaceDemo {
    sim: Simulation,
}

#[wasm_bindgen]
impl PhaseSpaceDemo {
    /// `problem` is one of `two_stream`, `weak_landau`, `strong_landau`,
    /// `symmetric_two_stream`; the grid is `n × n`.
    #[wasm_bindgen(constructor)]
    pub fn new(problem: &str, n: usize, cfl: f64, order: u8, interp: u8) -> Result<PhaseSpaceDemo, JsError> {
        let cfg = demo_config(problem, n, cfl, order, interp).map_err(js)?;
        Ok(PhaseSpaceDemo {
            sim: Simulation::new(cfg).map_err(js)?,
        })
    }

    /// Takes up to `steps` steps and returns the new time.
    pub fn advance(&mut self, steps: u32) -> Result<f64, JsError> {
        for _ in 0..steps {
            self.sim.step().map_err(js)?;
        }
        Ok(self.sim.state.t)
    }

    pub fn time(&self) -> f64 {
        self.sim.state.t
    }

    pub fn steps(&self) -> usize {
        self.sim.state.step_count
    }

    pub fn nx(&self) -> usize {
        self.sim.grid().nx
    }

    pub fn nv(&self) -> usize {
        self.sim.grid().nv
    }

    pub fn length(&self) -> f64 {
        self.sim.grid().length()
    }

    pub fn v_max(&self) -> f64 {
        self.sim.grid().v_max
    }

    /// `f` with `v` fastest: index `i * nv + j`.
    pub fn distribution(&self) -> Vec<f64> {
        self.sim.state.f.values.clone()
    }

    pub fn efield(&self) -> Vec<f64> {
        self.sim.state.fields.efield.clone()
    }

    /// Interleaved `(t, ‖E‖₂)` pairs, one per step.
    pub fn field_history(&self) -> Vec<f64> {
        self.sim.records.iter().flat_map(|r| [r.t, r.e_l2]).collect()
    }

    /// Current `‖E‖₂`.
    pub fn field_norm(&self) -> f64 {
        e_l2(self.sim.grid().dx, &self.sim.state.fields.efield)
    }

    /// Relative deviations of L¹, L², energy and entropy.
    pub fn deviations(&self) -> Vec<f64> {
        let r = self.sim.records.last().expect("initial record");
        vec![r.rel_dev_l1, r.rel_dev_l2, r.rel_dev_energy, r.rel_dev_entropy]
    }
}

fn stencil(values: &[f64]) -> vlasov_sl::Result<Stencil6> {
    values
        .try_into()
        .map_err(|_| vlasov_sl::Error::InvalidConfig(format!("need 6 stencil values, got {}", values.len())))
}

fn probe(s: &Stencil6, xi: f64, eps: f64) -> Vec<f64> {
    let w = weno6_weights(s, xi, eps);
    let mut out = candidate_polys(s, xi).to_vec();
    out.extend(w.gamma);
    out.extend(w.beta);
    out.extend(w.omega);
    out.push(weno6(s, xi, eps));
    out.push(lagrange6(s, xi));
    out
}

/// WENO6 internals at `ξ ∈ [-1, 0]` for nodes `f_{i-3} … f_{i+2}`:
/// candidates `p₀..p₂`, `γ`, `β`, `ω` (three each), then the WENO value and
/// the degree-5 Lagrange value; 14 numbers.
#[wasm_bindgen]
pub fn weno_probe(values: &[f64], xi: f64, eps: f64) -> Result<Vec<f64>, JsError> {
    let s = stencil(values).map_err(js)?;
    if !(-1.0..=0.0).contains(&xi) {
        return Err(js(format!("xi = {xi} is outside [-1, 0]")));
    }
    Ok(probe(&s, xi, eps))
}

/// WENO6 and Lagrange values at `samples` evenly spaced `ξ` in `[-1, 0]`,
/// interleaved as `(ξ, weno, lagrange)`.
#[wasm_bindgen]
pub fn weno_curve(values: &[f64], eps: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    let s = stencil(values).map_err(js)?;
    Ok(curve(&s, eps, samples.max(2)))
}

fn curve(s: &Stencil6, eps: f64, samples: usize) -> Vec<f64> {
    (0..samples)
        .flat_map(|k| {
            let xi = -1.0 + k as f64 / (samples - 1) as f64;
            [xi, weno6(s, xi, eps), lagrange6(s, xi)]
        })
        .collect()
}

fn profile(shape: &str) -> vlasov_sl::Result<fn(f64) -> f64> {
    Ok(match shape {
        "sine" => |x: f64| x.sin(),
        "gauss" => |x: f64| (-4.0 * (x - PI).powi(2)).exp(),
        "square" => |x: f64| if (2.0..=4.0).contains(&x) { 1.0 } else { 0.0 },
        _ => {
            return Err(vlasov_sl::Error::InvalidConfig(format!(
                "unknown profile '{shape}'"
            )))
        }
    })
}

fn advect(shape: &str, n: usize, cfl: f64, periods: f64) -> vlasov_sl::Result<Vec<f64>> {
    let g = profile(shape)?;
    let length = 2.0 * PI;
    let s0 = AdvectState1D::sample(n, length, 1.0, g);
    let (end, masses) = advect_to(&s0, periods * length, cfl, &Quadrature::gauss_legendre2())?;
    let dx = end.dx();
    let exact: Vec<f64> = (0..n)
        .map(|i| g(((i as f64 + 0.5) * dx - end.t).rem_euclid(length)))
        .collect();
    let l1 = end.u.iter().zip(&exact).map(|(u, e)| (u - e).abs()).sum::<f64>() / n as f64;
    let drift = masses.iter().map(|m| (m - masses[0]).abs()).fold(0.0, f64::max);
    let mut out = end.u;
    out.extend(exact);
    out.extend([l1, drift]);
    Ok(out)
}

/// Advects `shape` (`sine`, `gauss`, `square`) at unit speed on `[0, 2π)`
/// for `periods` periods. Returns `n` computed values, `n` exact values,
/// then the mean absolute error and the largest mass drift.
#[wasm_bindgen]
pub fn advect_demo(shape: &str, n: usize, cfl: f64, periods: f64) -> Result<Vec<f64>, JsError> {
    advect(shape, n, cfl, periods).map_err(js)
}
