//! Phase-space mesh and nodal distribution storage.
//!
//! Nodes sit at cell centers: `x_i = x_lo + (i + ½)Δx` and
//! `v_j = -v_max + (j + ½)Δv` with 0-based `i`, `j`. Odd refinement ratios
//! therefore nest exactly, which the convergence studies rely on.

use crate::config::RunConfig;
use crate::error::{Error, Result};

/// Minimum cells per direction accepted by [`build_grid`]: the widest WENO
/// stencil spans six nodes.
pub const MIN_CELLS: usize = 8;

/// Uniform cell-centered 1D axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    /// Left edge of the first cell.
    pub lo: f64,
    pub spacing: f64,
    pub n: usize,
}

impl Axis {
    pub fn center(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.spacing
    }

    pub fn length(&self) -> f64 {
        self.spacing * self.n as f64
    }

    /// Splits a coordinate into the index `i` of the node at or right of it
    /// and the local offset `ξ = (x - x_i)/Δ ∈ (-1, 0]`. The index is not
    /// wrapped. Coordinates within a few ulps of a node snap onto it.
    pub fn locate(&self, coord: f64) -> (isize, f64) {
        let s = (coord - self.lo) / self.spacing - 0.5;
        let nearest = s.round();
        if (s - nearest).abs() <= 8.0 * f64::EPSILON * nearest.abs().max(1.0) {
            return (nearest as isize, 0.0);
        }
        let i = s.ceil();
        (i as isize, s - i)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseGrid {
    pub nx: usize,
    pub nv: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub v_max: f64,
    pub dx: f64,
    pub dv: f64,
    pub x_centers: Vec<f64>,
    pub v_centers: Vec<f64>,
}

impl PhaseGrid {
    /// Grid over `[x_lo, x_lo + length) × [-v_max, v_max]`.
    pub fn new(nx: usize, nv: usize, x_lo: f64, length: f64, v_max: f64) -> Result<Self> {
        if nx == 0 || nv == 0 {
            return Err(Error::InvalidGrid(format!(
                "cell counts must be positive (nx = {nx}, nv = {nv})"
            )));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "domain length {length} must be positive"
            )));
        }
        if !(v_max > 0.0 && v_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("v_max {v_max} must be positive")));
        }
        let dx = length / nx as f64;
        let dv = 2.0 * v_max / nv as f64;
        let x_centers = (0..nx).map(|i| x_lo + (i as f64 + 0.5) * dx).collect();
        let v_centers = (0..nv).map(|j| -v_max + (j as f64 + 0.5) * dv).collect();
        Ok(PhaseGrid {
            nx,
            nv,
            x_lo,
            x_hi: x_lo + length,
            v_max,
            dx,
            dv,
            x_centers,
            v_centers,
        })
    }

    pub fn length(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn len(&self) -> usize {
        self.nx * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of node `(i, j)`; `v` runs fastest.
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.nv + j
    }

    pub fn x_axis(&self) -> Axis {
        Axis {
            lo: self.x_lo,
            spacing: self.dx,
            n: self.nx,
        }
    }

    pub fn v_axis(&self) -> Axis {
        Axis {
            lo: -self.v_max,
            spacing: self.dv,
            n: self.nv,
        }
    }

    /// Maps `x` into `[x_lo, x_hi)`.
    pub fn wrap_x(&self, x: f64) -> f64 {
        let l = self.length();
        let w = self.x_lo + (x - self.x_lo).rem_euclid(l);
        if w >= self.x_hi {
            self.x_lo
        } else {
            w
        }
    }

    /// Signed periodic distance `a - b`, reduced to `[-L/2, L/2]`.
    pub fn periodic_delta(&self, a: f64, b: f64) -> f64 {
        let l = self.length();
        let d = (a - b).rem_euclid(l);
        if d > 0.5 * l {
            d - l
        } else {
            d
        }
    }

    /// Samples `g(x, v)` at every node.
    pub fn sample(&self, time: f64, g: impl Fn(f64, f64) -> f64) -> DistributionField {
        let mut values = Vec::with_capacity(self.len());
        for &x in &self.x_centers {
            for &v in &self.v_centers {
                values.push(g(x, v));
            }
        }
        DistributionField { values, time }
    }
}

/// Builds the phase grid for a run: `L = 2π/k` of the configured problem,
/// starting at `x = 0`.
pub fn build_grid(config: &RunConfig) -> Result<PhaseGrid> {
    if config.nx < MIN_CELLS || config.nv < MIN_CELLS {
        return Err(Error::InvalidGrid(format!(
            "need at least {MIN_CELLS} cells per direction (nx = {}, nv = {})",
            config.nx, config.nv
        )));
    }
    PhaseGrid::new(config.nx, config.nv, 0.0, config.problem.length(), config.v_max)
}

/// Nodal values `f(x_i, v_j)` at one time level, row-major with `v` fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionField {
    pub values: Vec<f64>,
    pub time: f64,
}

impl DistributionField {
    pub fn zeros(grid: &PhaseGrid) -> Self {
        DistributionField {
            values: vec![0.0; grid.len()],
            time: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// The `v`-column at `x_i`.
    pub fn column<'a>(&'a self, grid: &PhaseGrid, i: usize) -> &'a [f64] {
        &self.values[i * grid.nv..(i + 1) * grid.nv]
    }
}
