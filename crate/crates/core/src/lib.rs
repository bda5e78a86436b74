//! Non-split semi-Lagrangian finite-difference solver for the 1D-x × 1D-v
//! Vlasov–Poisson system.
//!
//! Characteristic feet are located with a two-stage multi-derivative
//! predictor–corrector cascade (temporal orders 1–3), the distribution is
//! recovered off-grid with tensor-product WENO interpolation, and the
//! electric field comes from a spectral Poisson solve.
//!
//! Module map:
//!
//! * [`grid`]: phase-space mesh and distribution storage
//! * [`config`]: run configuration and the flat key–value config format
//! * [`weno`]: 1D/2D WENO interpolation kernels (orders 2, 4, 6)
//! * [`field`]: moments, Poisson solve, Lagrangian derivative of `E`
//! * [`tracer`]: characteristic feet at orders 1, 2, 3
//! * [`solver`]: time stepping, run loop, conservative 1D advection
//! * [`diagnostics`]: norms, energy, entropy, growth/damping-rate fits
//! * [`problems`]: benchmark initial conditions
//! * [`convergence`]: spatial and temporal convergence studies
//! * [`output`]: CSV, snapshot and manifest writers

// `!(x > 0.0)` style checks are used so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod convergence;
pub mod diagnostics;
pub mod error;
pub mod field;
pub mod grid;
pub mod output;
mod par;
pub mod problems;
pub mod solver;
pub mod tracer;
pub mod weno;

pub use config::{InterpOrder, Problem, ProblemSpec, RunConfig, TracerOrder};
pub use error::{Error, Result};
pub use grid::{build_grid, DistributionField, PhaseGrid};
