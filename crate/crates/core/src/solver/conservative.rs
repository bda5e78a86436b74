//! Flux-form correction of the semi-Lagrangian update for `u_t + a u_x = 0`
//! on a periodic line.
//!
//! The time-integrated flux `F(x_i) = a ∫ u(x_i, τ) dτ` over one step is
//! approximated by quadrature in time, with `u` at the quadrature times
//! obtained by tracing back and interpolating `u^n`. The nodal `F` values are
//! then treated as cell averages and reconstructed at cell edges with
//! fifth-order WENO, so the update telescopes and the discrete mass
//! `Σ u_i Δx` is conserved to round-off.

use crate::config::InterpOrder;
use crate::error::{Error, Result};
use crate::grid::Axis;
use crate::weno::{Boundary, Interpolator, DEFAULT_EPS};

#[derive(Clone, Debug, PartialEq)]
pub struct AdvectState1D {
    pub u: Vec<f64>,
    pub t: f64,
    pub speed: f64,
    pub length: f64,
}

impl AdvectState1D {
    pub fn new(u: Vec<f64>, speed: f64, length: f64) -> Self {
        AdvectState1D {
            u,
            t: 0.0,
            speed,
            length,
        }
    }

    /// Samples `g` at the cell centers of an `n`-cell grid on `[0, length)`.
    pub fn sample(n: usize, length: f64, speed: f64, g: impl Fn(f64) -> f64) -> Self {
        let dx = length / n as f64;
        let u = (0..n).map(|i| g((i as f64 + 0.5) * dx)).collect();
        Self::new(u, speed, length)
    }

    pub fn dx(&self) -> f64 {
        self.length / self.u.len() as f64
    }

    pub fn axis(&self) -> Axis {
        Axis {
            lo: 0.0,
            spacing: self.dx(),
            n: self.u.len(),
        }
    }

    pub fn mass(&self) -> f64 {
        self.u.iter().sum::<f64>() * self.dx()
    }
}

/// Quadrature nodes and weights on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Quadrature {
    /// Two-point Gauss–Legendre rule, weights ½ so they sum to one.
    pub fn gauss_legendre2() -> Self {
        let h = 0.5 / 3f64.sqrt();
        Quadrature {
            nodes: vec![0.5 - h, 0.5 + h],
            weights: vec![0.5, 0.5],
        }
    }
}

/// Jiang–Shu fifth-order WENO value at the right edge of the middle cell of
/// `[v_{i-2}, …, v_{i+2}]`, treating the entries as cell averages.
pub fn weno5_edge(v: [f64; 5], eps: f64) -> f64 {
    let [a, b, c, d, e] = v;
    let q = [
        (2.0 * a - 7.0 * b + 11.0 * c) / 6.0,
        (-b + 5.0 * c + 2.0 * d) / 6.0,
        (2.0 * c + 5.0 * d - e) / 6.0,
    ];
    let sq = |x: f64| x * x;
    let beta = [
        13.0 / 12.0 * sq(a - 2.0 * b + c) + 0.25 * sq(a - 4.0 * b + 3.0 * c),
        13.0 / 12.0 * sq(b - 2.0 * c + d) + 0.25 * sq(b - d),
        13.0 / 12.0 * sq(c - 2.0 * d + e) + 0.25 * sq(3.0 * c - 4.0 * d + e),
    ];
    let w = crate::weno::nonlinear_weights([0.1, 0.6, 0.3], beta, eps);
    w[0] * q[0] + w[1] * q[1] + w[2] * q[2]
}

/// One conservative step of size `dt`. Requires `dt ≤ Δx/|a|`.
pub fn conservative_step_1d(state: &AdvectState1D, dt: f64, quad: &Quadrature) -> Result<AdvectState1D> {
    let n = state.u.len();
    let dx = state.dx();
    let a = state.speed;
    if a != 0.0 {
        let limit = dx / a.abs();
        if dt > limit * (1.0 + 1e-12) {
            return Err(Error::CflViolation { dt, limit });
        }
    }
    if !(dt >= 0.0) {
        return Err(Error::InvalidConfig(format!("time step {dt} must be >= 0")));
    }
    let axis = state.axis();
    let interp = Interpolator::weno(InterpOrder::Six, DEFAULT_EPS);

    let mut flux = vec![0.0; n];
    for (c, b) in quad.nodes.iter().zip(&quad.weights) {
        for (i, fl) in flux.iter_mut().enumerate() {
            let foot = axis.center(i) - a * c * dt;
            *fl += b * interp.interp1d(&state.u, &axis, Boundary::Periodic, foot);
        }
    }
    for fl in flux.iter_mut() {
        *fl *= a * dt;
    }

    let at = |k: isize| flux[k.rem_euclid(n as isize) as usize];
    // edge[i] is the flux through x_{i+1/2}, upwinded on the sign of a.
    let edge: Vec<f64> = (0..n as isize)
        .map(|i| {
            if a >= 0.0 {
                weno5_edge([at(i - 2), at(i - 1), at(i), at(i + 1), at(i + 2)], DEFAULT_EPS)
            } else {
                weno5_edge([at(i + 3), at(i + 2), at(i + 1), at(i), at(i - 1)], DEFAULT_EPS)
            }
        })
        .collect();

    let u = (0..n)
        .map(|i| state.u[i] - (edge[i] - edge[(i + n - 1) % n]) / dx)
        .collect();
    Ok(AdvectState1D {
        u,
        t: state.t + dt,
        speed: a,
        length: state.length,
    })
}

/// Steps `state` to `t_final` with `Δt = cfl·Δx/|a|`, shortening the last
/// step to land exactly. Returns the final state and the mass after every step.
pub fn advect_to(
    state: &AdvectState1D,
    t_final: f64,
    cfl: f64,
    quad: &Quadrature,
) -> Result<(AdvectState1D, Vec<f64>)> {
    if !(cfl > 0.0) || !(t_final >= state.t) {
        return Err(Error::InvalidConfig(format!(
            "advect1d needs cfl > 0 and t_final >= t (cfl = {cfl}, t_final = {t_final})"
        )));
    }
    let dt_full = if state.speed == 0.0 {
        t_final - state.t
    } else {
        cfl * state.dx() / state.speed.abs()
    };
    let mut s = state.clone();
    let mut masses = vec![s.mass()];
    while s.t < t_final * (1.0 - 1e-14) {
        let dt = dt_full.min(t_final - s.t);
        s = conservative_step_1d(&s, dt, quad)?;
        masses.push(s.mass());
    }
    s.t = t_final;
    Ok((s, masses))
}
