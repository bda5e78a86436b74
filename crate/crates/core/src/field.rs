//! Velocity moments, the periodic Poisson solve, and the Lagrangian time
//! derivative of `E` along characteristics.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::grid::{DistributionField, PhaseGrid};

/// Mean-density defect above which the Poisson solve logs a warning. Velocity
/// truncation at |v| = 6 alone leaves defects up to about 1e-7.
pub const NEUTRALITY_WARN: f64 = 1e-6;

/// `ρ_i = Δv Σ_j f_ij` (midpoint rule in `v`).
pub fn charge_density(grid: &PhaseGrid, f: &DistributionField) -> Vec<f64> {
    (0..grid.nx)
        .map(|i| grid.dv * f.column(grid, i).iter().sum::<f64>())
        .collect()
}

/// `J_i = Δv Σ_j v_j f_ij`.
pub fn current_density(grid: &PhaseGrid, f: &DistributionField) -> Vec<f64> {
    (0..grid.nx)
        .map(|i| {
            grid.dv
                * f.column(grid, i)
                    .iter()
                    .zip(&grid.v_centers)
                    .map(|(f, v)| f * v)
                    .sum::<f64>()
        })
        .collect()
}

/// Nodal spatial average of `J`.
pub fn mean_current(current: &[f64]) -> f64 {
    mean(current)
}

/// `dE/dt = J̄⁰ − J + v(ρ − ρ̄)` at every `x` node for one characteristic
/// velocity `v`. The background `ρ̄` is the spatial mean of `ρ`, which is 1
/// for neutral data and matches the zero mode dropped by the Poisson solve.
pub fn de_dt(rho: &[f64], current: &[f64], j0_bar: f64, v: f64) -> Vec<f64> {
    let rho_bar = mean(rho);
    rho.iter()
        .zip(current)
        .map(|(r, j)| de_dt_point(*r - rho_bar, *j, j0_bar, v))
        .collect()
}

/// Pointwise form taking the density fluctuation `ρ − ρ̄`.
#[inline]
pub fn de_dt_point(rho_fluct: f64, current: f64, j0_bar: f64, v: f64) -> f64 {
    j0_bar - current + v * rho_fluct
}

pub(crate) fn mean(u: &[f64]) -> f64 {
    u.iter().sum::<f64>() / u.len() as f64
}

/// Spectral solver for `E = -φ_x`, `-φ_xx = ρ - 1` on a periodic grid.
///
/// The zero mode of `ρ - 1` is dropped (neutrality projection) and the zero
/// mode of `E` is zero. For even `n` the Nyquist mode of `E` is also zeroed.
#[derive(Clone)]
pub struct PoissonSolver {
    n: usize,
    length: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    warned: Arc<AtomicBool>,
}

impl std::fmt::Debug for PoissonSolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PoissonSolver")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

impl PoissonSolver {
    pub fn new(n: usize, length: f64) -> Self {
        let mut planner = FftPlanner::new();
        PoissonSolver {
            n,
            length,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            warned: Arc::new(AtomicBool::new(false)),
        }
    }

    pub fn for_grid(grid: &PhaseGrid) -> Self {
        Self::new(grid.nx, grid.length())
    }

    /// Wavenumber of DFT bin `m`.
    fn wavenumber(&self, m: usize) -> f64 {
        let signed = if m <= self.n / 2 {
            m as f64
        } else {
            m as f64 - self.n as f64
        };
        2.0 * PI * signed / self.length
    }

    fn is_nyquist(&self, m: usize) -> bool {
        self.n.is_multiple_of(2) && m == self.n / 2
    }

    pub fn solve(&self, rho: &[f64]) -> Vec<f64> {
        assert_eq!(rho.len(), self.n, "density length must match the grid");
        let defect = neutrality_defect(rho);
        if defect.abs() > NEUTRALITY_WARN && !self.warned.swap(true, Ordering::Relaxed) {
            log::warn!("mean(rho) - 1 = {defect:e}; dropping the zero mode");
        }
        let mut buf: Vec<Complex<f64>> = rho.iter().map(|r| Complex::new(r - 1.0, 0.0)).collect();
        self.forward.process(&mut buf);
        for (m, c) in buf.iter_mut().enumerate() {
            if m == 0 || self.is_nyquist(m) {
                *c = Complex::new(0.0, 0.0);
            } else {
                // Ê = -iκ φ̂ with φ̂ = ρ̂/κ², i.e. Ê = -i ρ̂/κ.
                let kappa = self.wavenumber(m);
                *c = Complex::new(c.im, -c.re) / kappa;
            }
        }
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }

    /// Spectral derivative of a periodic array (Nyquist mode dropped).
    pub fn derivative(&self, u: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.n);
        let mut buf: Vec<Complex<f64>> = u.iter().map(|&r| Complex::new(r, 0.0)).collect();
        self.forward.process(&mut buf);
        for (m, c) in buf.iter_mut().enumerate() {
            if self.is_nyquist(m) {
                *c = Complex::new(0.0, 0.0);
            } else {
                *c *= Complex::new(0.0, self.wavenumber(m));
            }
        }
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }
}

/// `mean(ρ) − 1`.
pub fn neutrality_defect(rho: &[f64]) -> f64 {
    mean(rho) - 1.0
}

/// Moments and field of one distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    pub rho: Vec<f64>,
    pub current: Vec<f64>,
    pub efield: Vec<f64>,
    /// Spatial mean of `J` at `t = 0`, carried unchanged through the run.
    pub j0_bar: f64,
    pub time: f64,
}

impl FieldState {
    pub fn compute(grid: &PhaseGrid, f: &DistributionField, poisson: &PoissonSolver, j0_bar: f64) -> Self {
        let rho = charge_density(grid, f);
        let current = current_density(grid, f);
        let efield = poisson.solve(&rho);
        FieldState {
            rho,
            current,
            efield,
            j0_bar,
            time: f.time,
        }
    }

    /// Fields of an initial condition; `J̄⁰` is measured here.
    pub fn initial(grid: &PhaseGrid, f: &DistributionField, poisson: &PoissonSolver) -> Self {
        let mut state = Self::compute(grid, f, poisson, 0.0);
        state.j0_bar = mean_current(&state.current);
        state
    }

    pub fn max_abs_e(&self) -> f64 {
        self.efield.iter().fold(0.0, |m, e| m.max(e.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TAU: f64 = 2.0 * PI;

    fn maxwellian(v: f64) -> f64 {
        (-0.5 * v * v).exp() / TAU.sqrt()
    }

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn zero_distribution_has_zero_moments() {
        let g = PhaseGrid::new(16, 16, 0.0, 4.0 * PI, 6.0).unwrap();
        let f = DistributionField::zeros(&g);
        assert!(charge_density(&g, &f).iter().all(|r| *r == 0.0));
        assert!(current_density(&g, &f).iter().all(|r| *r == 0.0));
    }

    #[test]
    fn maxwellian_density_is_one() {
        let g = PhaseGrid::new(8, 128, 0.0, 4.0 * PI, 6.0).unwrap();
        let f = g.sample(0.0, |_, v| maxwellian(v));
        for r in charge_density(&g, &f) {
            // Truncation of the tail beyond |v| = 6 is erfc(6/√2) ≈ 2e-9.
            let truncated = 1.0 - libm_erfc(6.0 / 2f64.sqrt());
            assert!((r - truncated).abs() < 1e-10, "{r}");
        }
        for j in current_density(&g, &f) {
            assert!(j.abs() < 1e-14);
        }
    }

    // erfc via its continued-fraction tail, sufficient for large arguments.
    fn libm_erfc(x: f64) -> f64 {
        let mut frac = 0.0;
        for k in (1..60).rev() {
            frac = (k as f64 / 2.0) / (x + frac);
        }
        (-x * x).exp() / PI.sqrt() / (x + frac)
    }

    #[test]
    fn drifting_maxwellian_current() {
        let g = PhaseGrid::new(8, 128, 0.0, 4.0 * PI, 6.0).unwrap();
        let f = g.sample(0.0, |_, v| maxwellian(v - 1.0));
        let rho = charge_density(&g, &f);
        let j = current_density(&g, &f);
        // J − ρu = ∫(v − u) f dv over the truncated range = φ(7) − φ(5).
        let tail = maxwellian(7.0) - maxwellian(5.0);
        for (r, j) in rho.iter().zip(&j) {
            assert!((j - r - tail).abs() < 5e-8, "{j} vs {r}");
        }
    }

    #[test]
    fn single_and_double_mode_poisson() {
        let n = 64;
        let k = 0.5;
        let p = PoissonSolver::new(n, TAU / k);
        let x: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * TAU / k / n as f64).collect();
        assert!(p.solve(&vec![1.0; n]).iter().all(|e| e.abs() < 1e-15));

        let (a, b) = (0.3, 0.05);
        let rho: Vec<f64> = x.iter().map(|x| 1.0 + a * (k * x).cos()).collect();
        let exact: Vec<f64> = x.iter().map(|x| a / k * (k * x).sin()).collect();
        assert!(max_err(&p.solve(&rho), &exact) < 1e-14);

        let rho: Vec<f64> = x
            .iter()
            .map(|x| 1.0 + a * (k * x).cos() + b * (3.0 * k * x).cos())
            .collect();
        let exact: Vec<f64> = x
            .iter()
            .map(|x| a / k * (k * x).sin() + b / (3.0 * k) * (3.0 * k * x).sin())
            .collect();
        assert!(max_err(&p.solve(&rho), &exact) < 1e-14);
    }

    #[test]
    fn non_neutral_input_is_projected() {
        let p = PoissonSolver::new(32, TAU);
        let e = p.solve(&vec![1.5; 32]);
        assert!(e.iter().all(|e| e.abs() < 1e-15));
    }

    #[test]
    fn de_dt_cases() {
        let rho = vec![1.0; 4];
        let j = vec![0.2; 4];
        assert!(de_dt(&rho, &j, 0.2, 1.3).iter().all(|d| d.abs() < 1e-16));
        let rho = vec![1.1, 0.9, 1.05, 0.95];
        let zero = vec![0.0; 4];
        assert_eq!(de_dt(&rho, &zero, 0.7, 0.0), vec![0.7; 4]);
        let d = de_dt(&rho, &zero, 0.0, 2.0);
        for (d, r) in d.iter().zip(&rho) {
            assert!((d - 2.0 * (r - 1.0)).abs() < 1e-15);
        }
        // Non-unit background: only the fluctuation enters.
        let shifted: Vec<f64> = rho.iter().map(|r| r + 5.0 / 7.0).collect();
        for (a, b) in de_dt(&shifted, &zero, 0.0, 2.0).iter().zip(&d) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn mean_current_cases() {
        assert!((mean_current(&[0.4; 10]) - 0.4).abs() < 1e-16);
        let n = 32;
        let j: Vec<f64> = (0..n)
            .map(|i| (TAU * (i as f64 + 0.5) / n as f64).sin())
            .collect();
        assert!(mean_current(&j).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn poisson_inverts_derivative(coef in prop::collection::vec(-1.0f64..1.0, 10)) {
            let n = 48;
            let l = 4.0 * PI;
            let p = PoissonSolver::new(n, l);
            let rho: Vec<f64> = (0..n)
                .map(|i| {
                    let x = (i as f64 + 0.5) * l / n as f64;
                    1.2 + coef
                        .chunks(2)
                        .enumerate()
                        .map(|(m, c)| {
                            let kx = TAU * (m + 1) as f64 * x / l;
                            0.1 * (c[0] * kx.cos() + c[1] * kx.sin())
                        })
                        .sum::<f64>()
                })
                .collect();
            let e = p.solve(&rho);
            prop_assert!(e.iter().sum::<f64>().abs() < 1e-12);
            let de = p.derivative(&e);
            let mean = rho.iter().sum::<f64>() / n as f64;
            for (d, r) in de.iter().zip(&rho) {
                prop_assert!((d - (r - mean)).abs() < 1e-12);
            }
        }
    }
}
