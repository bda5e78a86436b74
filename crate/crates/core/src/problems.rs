//! Benchmark initial conditions.

use std::f64::consts::PI;

use crate::config::{Problem, ProblemSpec};
use crate::error::{Error, Result};
use crate::grid::{DistributionField, PhaseGrid};

/// `c (1 + 5v²) (1 + α((cos 2kx + cos 3kx)/1.2 + cos kx)) e^{−v²/2}` with
/// `c = 1/(6√(2π))`, the prefactor that gives unit mean density.
pub fn init_two_stream(grid: &PhaseGrid, alpha: f64, k: f64) -> DistributionField {
    let norm = 1.0 / (6.0 * (2.0 * PI).sqrt());
    grid.sample(0.0, |x, v| {
        let perturb = ((2.0 * k * x).cos() + (3.0 * k * x).cos()) / 1.2 + (k * x).cos();
        norm * (1.0 + 5.0 * v * v) * (1.0 + alpha * perturb) * (-0.5 * v * v).exp()
    })
}

/// `(1/√(2π)) (1 + α cos kx) e^{−v²/2}`
pub fn init_landau(grid: &PhaseGrid, alpha: f64, k: f64) -> DistributionField {
    let norm = 1.0 / (2.0 * PI).sqrt();
    grid.sample(0.0, |x, v| {
        norm * (1.0 + alpha * (k * x).cos()) * (-0.5 * v * v).exp()
    })
}

/// Two counter-streaming Maxwellian beams at `±u` with thermal speed `v_th`.
pub fn init_symmetric_two_stream(
    grid: &PhaseGrid,
    alpha: f64,
    k: f64,
    drift: f64,
    v_th: f64,
) -> DistributionField {
    let norm = 1.0 / ((8.0 * PI).sqrt() * v_th);
    let two_var = 2.0 * v_th * v_th;
    grid.sample(0.0, |x, v| {
        let beams = (-(v - drift).powi(2) / two_var).exp() + (-(v + drift).powi(2) / two_var).exp();
        norm * beams * (1.0 + alpha * (k * x).cos())
    })
}

/// Initial distribution of a phase-space problem.
pub fn initial_condition(spec: &ProblemSpec, grid: &PhaseGrid) -> Result<DistributionField> {
    let ProblemSpec {
        alpha,
        k,
        drift,
        v_th,
        ..
    } = *spec;
    match spec.problem {
        Problem::TwoStream => Ok(init_two_stream(grid, alpha, k)),
        Problem::WeakLandau | Problem::StrongLandau => Ok(init_landau(grid, alpha, k)),
        Problem::SymmetricTwoStream => Ok(init_symmetric_two_stream(grid, alpha, k, drift, v_th)),
        Problem::Advect1d => Err(Error::InvalidConfig(
            "advect1d is a 1D problem; use the advect1d driver".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use crate::field::{charge_density, current_density, mean_current, PoissonSolver};
    use crate::grid::build_grid;

    // (1/6)∫(1 + 5v²)φ(v)dv over |v| ≤ 6 is (1 − 2Q) − 10φ(6), with φ the
    // standard normal density and Q = P(Z > 6).
    fn truncated_two_stream_mean() -> f64 {
        let q = 9.865876450376946e-10;
        let phi6 = (-18.0f64).exp() / (2.0 * PI).sqrt();
        (1.0 - 2.0 * q) - 10.0 * phi6
    }

    fn grid_for(problem: Problem, n: usize) -> (PhaseGrid, ProblemSpec) {
        let mut cfg = RunConfig::new(problem);
        cfg.nx = n;
        cfg.nv = n;
        (build_grid(&cfg).unwrap(), cfg.problem)
    }

    #[test]
    fn two_stream_point_value_and_mass() {
        let (g, spec) = grid_for(Problem::TwoStream, 64);
        let f = init_two_stream(&g, spec.alpha, spec.k);
        // Direct evaluation at the origin via a shifted one-node grid.
        let g0 = PhaseGrid::new(1, 1, -0.5, 1.0, 0.5).unwrap();
        assert_eq!(g0.x_centers[0], 0.0);
        assert_eq!(g0.v_centers[0], 0.0);
        let at0 = init_two_stream(&g0, 0.01, 0.5).values[0];
        let expect = 1.0 / (6.0 * (2.0 * PI).sqrt()) * (1.0 + 0.01 * (2.0 / 1.2 + 1.0));
        assert!((at0 - expect).abs() < 1e-15);
        let rho = charge_density(&g, &f);
        let mass: f64 = rho.iter().sum::<f64>() * g.dx;
        let expect = truncated_two_stream_mean() * g.length();
        assert!((mass - expect).abs() < 1e-8 * expect, "{mass}");
        assert!(mean_current(&current_density(&g, &f)).abs() < 1e-12);
    }

    #[test]
    fn unperturbed_two_stream_is_uniform() {
        let (g, _) = grid_for(Problem::TwoStream, 128);
        let f = init_two_stream(&g, 0.0, 0.5);
        let p = PoissonSolver::for_grid(&g);
        let rho = charge_density(&g, &f);
        assert!(rho.iter().all(|r| (r - rho[0]).abs() < 1e-14));
        assert!((rho[0] - truncated_two_stream_mean()).abs() < 1e-8);
        // The v² weight makes the tail beyond |v| = 6 about 6e-8.
        assert!((rho[0] - 1.0).abs() < 1e-7);
        assert!(p.solve(&rho).iter().all(|e| e.abs() < 1e-12));
    }

    #[test]
    fn landau_moments_and_field() {
        let (g, spec) = grid_for(Problem::WeakLandau, 128);
        let f = init_landau(&g, spec.alpha, spec.k);
        let rho = charge_density(&g, &f);
        // Mass lost to truncation at |v| = 6 is ~2e-9 of ρ.
        for (r, x) in rho.iter().zip(&g.x_centers) {
            assert!((r - (1.0 + 0.01 * (0.5 * x).cos())).abs() < 1e-8);
        }
        let e = PoissonSolver::for_grid(&g).solve(&rho);
        for (e, x) in e.iter().zip(&g.x_centers) {
            assert!((e - 0.02 * (0.5 * x).sin()).abs() < 1e-10);
        }
        let flat = init_landau(&g, 0.0, 0.5);
        assert!(flat.column(&g, 0) == flat.column(&g, 77));
    }

    #[test]
    fn symmetric_two_stream_moments() {
        let (g, spec) = grid_for(Problem::SymmetricTwoStream, 128);
        let f = initial_condition(&spec, &g).unwrap();
        assert!(current_density(&g, &f).iter().all(|j| j.abs() < 1e-13));
        for (r, x) in charge_density(&g, &f).iter().zip(&g.x_centers) {
            assert!((r - (1.0 + 0.0005 * (0.2 * x).cos())).abs() < 1e-8);
        }
        let u = spec.drift;
        let g0 = PhaseGrid::new(1, 1, -0.5, 1.0, 0.5).unwrap();
        let g0 = PhaseGrid {
            v_centers: vec![u],
            ..g0
        };
        let val = init_symmetric_two_stream(&g0, 0.0005, 0.2, u, 0.5).values[0];
        let expect = 1.0 / ((8.0 * PI).sqrt() * 0.5) * (1.0 + (-2.0 * u * u / 0.25f64).exp()) * 1.0005;
        assert!((val - expect).abs() < 1e-15);
    }

    #[test]
    fn advect1d_has_no_phase_space_state() {
        let (g, _) = grid_for(Problem::TwoStream, 16);
        assert!(initial_condition(&ProblemSpec::new(Problem::Advect1d), &g).is_err());
    }
}
