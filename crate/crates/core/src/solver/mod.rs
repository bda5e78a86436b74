//! Time stepping for the Vlasov–Poisson system.
//!
//! One step of order `l` runs `l` 2D interpolations of `f^n`: the order-1
//! and (for `l = 3`) order-2 predictions of `f^{n+1}` feed the next tracer
//! stage, and the last set of feet produces the accepted solution.

mod conservative;

pub use conservative::{advect_to, conservative_step_1d, weno5_edge, AdvectState1D, Quadrature};

use crate::config::{InterpOrder, RunConfig, TracerOrder};
use crate::diagnostics::{DiagnosticsRecord, DiagnosticsTracker};
use crate::error::{Error, Result};
use crate::field::{FieldState, PoissonSolver};
use crate::grid::{build_grid, DistributionField, PhaseGrid};
use crate::problems::initial_condition;
use crate::tracer::{interpolate_at_feet, predict_level, trace_order1, trace_order2, trace_order3};
use crate::weno::Interpolator;

/// Below this `max|E|` the field-based time step bound is ignored.
pub const E_FLOOR: f64 = 1e-12;

/// `Δt = CFL · min(Δx/v_max, Δv/max|E|)`.
pub fn compute_dt(grid: &PhaseGrid, efield: &[f64], cfl: f64) -> f64 {
    let max_e = efield.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let streaming = grid.dx / grid.v_max;
    if max_e < E_FLOOR {
        cfl * streaming
    } else {
        cfl * streaming.min(grid.dv / max_e)
    }
}

/// Tracer order and interpolation choices for one step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scheme {
    pub order: TracerOrder,
    pub interp: InterpOrder,
    /// Use order-2 interpolation in the order-1 prediction and order-4 in
    /// the order-2 prediction.
    pub reduced_prediction: bool,
    pub eps: f64,
}

impl Scheme {
    pub fn from_config(config: &RunConfig) -> Self {
        Scheme {
            order: config.order,
            interp: config.interp,
            reduced_prediction: config.reduced_prediction,
            eps: config.weno_eps,
        }
    }

    /// Interpolator used for the 2D interpolation (and the matching 1D field
    /// lookups) of prediction `stage`; the final update uses `self.interp`.
    pub fn prediction_interp(&self, stage: TracerOrder) -> Interpolator {
        let order = match (self.reduced_prediction, stage) {
            (true, TracerOrder::First) => InterpOrder::Two,
            (true, TracerOrder::Second) => InterpOrder::Four,
            _ => self.interp,
        };
        Interpolator::weno(order.min(self.interp), self.eps)
    }

    pub fn final_interp(&self) -> Interpolator {
        Interpolator::weno(self.interp, self.eps)
    }
}

#[derive(Clone, Debug)]
pub struct SimState {
    pub f: DistributionField,
    pub fields: FieldState,
    pub step_count: usize,
    pub t: f64,
}

impl SimState {
    pub fn initial(grid: &PhaseGrid, f: DistributionField, poisson: &PoissonSolver) -> Self {
        let fields = FieldState::initial(grid, &f, poisson);
        SimState {
            t: f.time,
            f,
            fields,
            step_count: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Stepper {
    pub grid: PhaseGrid,
    pub poisson: PoissonSolver,
    pub scheme: Scheme,
}

impl Stepper {
    pub fn new(grid: PhaseGrid, scheme: Scheme) -> Self {
        let poisson = PoissonSolver::for_grid(&grid);
        Stepper {
            grid,
            poisson,
            scheme,
        }
    }

    /// Advances `state` by `dt`; `J̄⁰` is carried over unchanged.
    pub fn step(&self, state: &SimState, dt: f64) -> Result<SimState> {
        let grid = &self.grid;
        let scheme = &self.scheme;
        let fields_n = &state.fields;
        let j0 = fields_n.j0_bar;
        let t_new = state.t + dt;

        let trace1 = trace_order1(grid, &fields_n.efield, dt);
        let trace = match scheme.order {
            TracerOrder::First => trace1,
            TracerOrder::Second => {
                let p1_interp = scheme.prediction_interp(TracerOrder::First);
                let p1 = predict_level(grid, &state.f, &trace1, &p1_interp, &self.poisson, j0, t_new);
                trace_order2(
                    grid,
                    &fields_n.efield,
                    &p1.fields.efield,
                    &trace1,
                    dt,
                    &scheme.final_interp(),
                )?
            }
            TracerOrder::Third => {
                let p1_interp = scheme.prediction_interp(TracerOrder::First);
                let p2_interp = scheme.prediction_interp(TracerOrder::Second);
                let p1 = predict_level(grid, &state.f, &trace1, &p1_interp, &self.poisson, j0, t_new);
                let trace2 =
                    trace_order2(grid, &fields_n.efield, &p1.fields.efield, &trace1, dt, &p2_interp)?;
                let p2 = predict_level(grid, &state.f, &trace2, &p2_interp, &self.poisson, j0, t_new);
                trace_order3(grid, fields_n, &p2.fields, &trace2, dt, &scheme.final_interp())?
            }
        };

        let f = interpolate_at_feet(grid, &state.f, &trace, &scheme.final_interp(), t_new);
        let step_count = state.step_count + 1;
        if !f.is_finite() {
            return Err(Error::NonFinite {
                step: step_count,
                time: t_new,
            });
        }
        let fields = FieldState::compute(grid, &f, &self.poisson, j0);
        Ok(SimState {
            f,
            fields,
            step_count,
            t: t_new,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub f: DistributionField,
}

/// Incremental driver: initial condition, adaptive time steps, diagnostics
/// cadence and snapshots.
#[derive(Clone, Debug)]
pub struct Simulation {
    pub config: RunConfig,
    pub stepper: Stepper,
    pub state: SimState,
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<Snapshot>,
    tracker: DiagnosticsTracker,
    next_diag: f64,
    pending_snapshots: Vec<f64>,
}

// Relative slack when comparing a time against a target.
const TIME_TOL: f64 = 1e-12;

impl Simulation {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let grid = build_grid(&config)?;
        let f0 = initial_condition(&config.problem, &grid)?;
        let stepper = Stepper::new(grid, Scheme::from_config(&config));
        let state = SimState::initial(&stepper.grid, f0, &stepper.poisson);
        let tracker = DiagnosticsTracker::new(&stepper.grid, &state.f, &state.fields, config.entropy_floor);
        let mut pending: Vec<f64> = config.snapshot_times.clone();
        pending.sort_by(f64::total_cmp);
        pending.dedup();
        let mut sim = Simulation {
            records: vec![tracker.initial_record()],
            snapshots: Vec::new(),
            next_diag: config.diag_every,
            pending_snapshots: pending,
            config,
            stepper,
            state,
            tracker,
        };
        sim.take_due_snapshots();
        Ok(sim)
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.stepper.grid
    }

    pub fn is_finished(&self) -> bool {
        self.state.t >= self.config.t_final * (1.0 - TIME_TOL)
    }

    fn take_due_snapshots(&mut self) {
        let t = self.state.t;
        while let Some(&ts) = self.pending_snapshots.first() {
            if ts > t + TIME_TOL * t.max(1.0) {
                break;
            }
            self.snapshots.push(Snapshot {
                t,
                f: self.state.f.clone(),
            });
            self.pending_snapshots.remove(0);
        }
    }

    /// One adaptive step, clipped to land on `t_final` and on requested
    /// snapshot times. Returns the step size taken.
    pub fn step(&mut self) -> Result<f64> {
        let t = self.state.t;
        let mut target = self.config.t_final;
        if let Some(&ts) = self.pending_snapshots.first() {
            target = target.min(ts);
        }
        let mut dt = compute_dt(self.grid(), &self.state.fields.efield, self.config.cfl);
        let landing = t + dt >= target - TIME_TOL * target.max(1.0);
        if landing {
            dt = target - t;
        }
        let mut next = self
            .stepper
            .step(&self.state, dt)
            .map_err(|e| Error::StepFailed {
                step: self.state.step_count + 1,
                time: t,
                source: Box::new(e),
            })?;
        if landing {
            next.t = target;
            next.f.time = target;
            next.fields.time = target;
        }
        self.state = next;
        self.take_due_snapshots();

        let t = self.state.t;
        let every = self.config.diag_every;
        let final_step = self.is_finished();
        if every == 0.0 || t >= self.next_diag - TIME_TOL * t.max(1.0) || final_step {
            let rec = self
                .tracker
                .record(self.grid(), &self.state.f, &self.state.fields, t);
            self.records.push(rec);
            if every > 0.0 {
                while self.next_diag <= t + TIME_TOL * t.max(1.0) {
                    self.next_diag += every;
                }
            }
        }
        Ok(dt)
    }

    /// Steps until `t_final`.
    pub fn run_to_end(&mut self) -> Result<()> {
        while !self.is_finished() {
            self.step()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub grid: PhaseGrid,
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<Snapshot>,
    pub final_state: SimState,
}

/// Runs `config` from its initial condition to `t_final`.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let mut sim = Simulation::new(config.clone())?;
    sim.run_to_end()?;
    Ok(RunOutput {
        grid: sim.stepper.grid,
        records: sim.records,
        snapshots: sim.snapshots,
        final_state: sim.state,
    })
}
