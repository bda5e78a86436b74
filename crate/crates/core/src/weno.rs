//! WENO interpolation kernels.
//!
//! The sixth-order kernel evaluates at `x ∈ [x_{i-1}, x_i]`, with local
//! coordinate `ξ = (x - x_i)/Δx ∈ [-1, 0]`, from the six nodes
//! `f_{i-3} … f_{i+2}`. Three cubic candidates on four-point substencils are
//! blended with nonlinear weights `ω_m ∝ γ_m(ξ)/(ε + β_m)²`; with `ω = γ`
//! the blend is the degree-5 Lagrange interpolant.
//!
//! The fourth-order kernel blends two quadratics on `f_{i-2} … f_i` and
//! `f_{i-1} … f_{i+1}`; the second-order kernel is linear interpolation
//! between `f_{i-1}` and `f_i`.

use crate::config::InterpOrder;
use crate::grid::{Axis, DistributionField, PhaseGrid};

pub const DEFAULT_EPS: f64 = 1e-6;

// Rows of the candidate coefficient matrices: node value × (1, ξ, ξ², ξ³).
const P1: [[f64; 4]; 4] = [
    [0.0, -1.0 / 3.0, -1.0 / 2.0, -1.0 / 6.0],
    [0.0, 3.0 / 2.0, 2.0, 1.0 / 2.0],
    [0.0, -3.0, -5.0 / 2.0, -1.0 / 2.0],
    [1.0, 11.0 / 6.0, 1.0, 1.0 / 6.0],
];
const P2: [[f64; 4]; 4] = [
    [0.0, 1.0 / 6.0, 0.0, -1.0 / 6.0],
    [0.0, -1.0, 1.0 / 2.0, 1.0 / 2.0],
    [1.0, 1.0 / 2.0, -1.0, -1.0 / 2.0],
    [0.0, 1.0 / 3.0, 1.0 / 2.0, 1.0 / 6.0],
];
const P3: [[f64; 4]; 4] = [
    [0.0, -1.0 / 3.0, 1.0 / 2.0, -1.0 / 6.0],
    [1.0, -1.0 / 2.0, -1.0, 1.0 / 2.0],
    [0.0, 1.0, 1.0 / 2.0, -1.0 / 2.0],
    [0.0, -1.0 / 6.0, 0.0, 1.0 / 6.0],
];

/// Six consecutive node values `f_{i-3} … f_{i+2}`.
pub type Stencil6 = [f64; 6];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WenoWeights {
    pub gamma: [f64; 3],
    pub beta: [f64; 3],
    pub omega: [f64; 3],
}

fn basis(matrix: &[[f64; 4]; 4], xi: f64) -> [f64; 4] {
    let powers = [1.0, xi, xi * xi, xi * xi * xi];
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(matrix) {
        *o = row.iter().zip(&powers).map(|(c, p)| c * p).sum();
    }
    out
}

#[inline]
fn dot4(a: &[f64; 4], b: &[f64]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Values of the three cubic candidates at `ξ`.
pub fn candidate_polys(s: &Stencil6, xi: f64) -> [f64; 3] {
    [
        dot4(&basis(&P1, xi), &s[0..4]),
        dot4(&basis(&P2, xi), &s[1..5]),
        dot4(&basis(&P3, xi), &s[2..6]),
    ]
}

/// `γ(ξ)`; each component is nonnegative on `[-1, 0]` and they sum to one.
pub fn linear_weights(xi: f64) -> [f64; 3] {
    [
        (xi - 1.0) * (xi - 2.0) / 20.0,
        -(xi + 3.0) * (xi - 2.0) / 10.0,
        (xi + 3.0) * (xi + 2.0) / 20.0,
    ]
}

/// Smoothness indicators of the three substencils.
///
/// Each indicator is a positive-definite quadratic form in the two second
/// differences of its substencil, so it vanishes on constant and linear data.
pub fn smoothness_indicators(s: &Stencil6) -> [f64; 3] {
    let d = [
        s[0] - 2.0 * s[1] + s[2],
        s[1] - 2.0 * s[2] + s[3],
        s[2] - 2.0 * s[3] + s[4],
        s[3] - 2.0 * s[4] + s[5],
    ];
    let form = |a: f64, b: f64, c: f64, p: f64, q: f64| a * p * p + b * p * q + c * q * q;
    [
        form(4.0 / 3.0, -11.0 / 3.0, 10.0 / 3.0, d[0], d[1]),
        form(4.0 / 3.0, -5.0 / 3.0, 4.0 / 3.0, d[1], d[2]),
        form(10.0 / 3.0, -11.0 / 3.0, 4.0 / 3.0, d[2], d[3]),
    ]
}

/// `ω_m = ω̃_m / Σω̃` with `ω̃_m = γ_m/(ε + β_m)²`.
pub fn nonlinear_weights<const N: usize>(gamma: [f64; N], beta: [f64; N], eps: f64) -> [f64; N] {
    let mut w = [0.0; N];
    let mut sum = 0.0;
    for m in 0..N {
        let d = eps + beta[m];
        w[m] = gamma[m] / (d * d);
        sum += w[m];
    }
    for x in w.iter_mut() {
        *x /= sum;
    }
    w
}

/// All intermediate weights of the sixth-order kernel, for inspection.
pub fn weno6_weights(s: &Stencil6, xi: f64, eps: f64) -> WenoWeights {
    let gamma = linear_weights(xi);
    let beta = smoothness_indicators(s);
    WenoWeights {
        gamma,
        beta,
        omega: nonlinear_weights(gamma, beta, eps),
    }
}

/// Sixth-order WENO value `Q(ξ)`.
pub fn weno6(s: &Stencil6, xi: f64, eps: f64) -> f64 {
    let p = candidate_polys(s, xi);
    let w = weno6_weights(s, xi, eps).omega;
    w[0] * p[0] + w[1] * p[1] + w[2] * p[2]
}

/// Degree-5 Lagrange interpolant, i.e. the candidates blended with `γ`.
pub fn lagrange6(s: &Stencil6, xi: f64) -> f64 {
    let p = candidate_polys(s, xi);
    let g = linear_weights(xi);
    g[0] * p[0] + g[1] * p[1] + g[2] * p[2]
}

/// Weight treatment for the interpolation kernels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weights {
    /// Fixed linear weights: plain Lagrange interpolation.
    Linear,
    Nonlinear {
        eps: f64,
    },
}

/// Boundary rule for nodes outside `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    /// Ghost values are zero and targets outside the axis evaluate to zero.
    Zero,
}

/// Kernel coefficients prepared for one `ξ`, reusable across stencils.
#[derive(Clone, Copy, Debug)]
enum Prepared {
    /// `ξ = 0`: the value is node `i`, stored at `at` within the stencil.
    Node {
        at: usize,
    },
    Two {
        xi: f64,
    },
    Four {
        p: [[f64; 3]; 2],
        gamma: [f64; 2],
        weights: Weights,
    },
    Six {
        p: [[f64; 4]; 3],
        gamma: [f64; 3],
        weights: Weights,
    },
}

impl Prepared {
    fn new(order: InterpOrder, weights: Weights, xi: f64) -> Self {
        if xi == 0.0 {
            return Prepared::Node {
                at: (-stencil_start(order)) as usize,
            };
        }
        match order {
            InterpOrder::Two => Prepared::Two { xi },
            InterpOrder::Four => Prepared::Four {
                p: [
                    [
                        0.5 * xi * (xi + 1.0),
                        -xi * (xi + 2.0),
                        0.5 * (xi + 1.0) * (xi + 2.0),
                    ],
                    [0.5 * xi * (xi - 1.0), 1.0 - xi * xi, 0.5 * xi * (xi + 1.0)],
                ],
                gamma: [(1.0 - xi) / 3.0, (xi + 2.0) / 3.0],
                weights,
            },
            InterpOrder::Six => Prepared::Six {
                p: [basis(&P1, xi), basis(&P2, xi), basis(&P3, xi)],
                gamma: linear_weights(xi),
                weights,
            },
        }
    }

    /// `s` holds the order's stencil starting at offset `-order/2`.
    #[inline]
    fn apply(&self, s: &[f64]) -> f64 {
        match *self {
            Prepared::Node { at } => s[at],
            Prepared::Two { xi } => s[1] + xi * (s[1] - s[0]),
            Prepared::Four { p, gamma, weights } => {
                let q = [
                    p[0][0] * s[0] + p[0][1] * s[1] + p[0][2] * s[2],
                    p[1][0] * s[1] + p[1][1] * s[2] + p[1][2] * s[3],
                ];
                let w = match weights {
                    Weights::Linear => gamma,
                    Weights::Nonlinear { eps } => {
                        let d1 = s[0] - 2.0 * s[1] + s[2];
                        let d2 = s[1] - 2.0 * s[2] + s[3];
                        nonlinear_weights(gamma, [d1 * d1, d2 * d2], eps)
                    }
                };
                w[0] * q[0] + w[1] * q[1]
            }
            Prepared::Six { p, gamma, weights } => {
                let q = [
                    dot4(&p[0], &s[0..4]),
                    dot4(&p[1], &s[1..5]),
                    dot4(&p[2], &s[2..6]),
                ];
                let w = match weights {
                    Weights::Linear => gamma,
                    Weights::Nonlinear { eps } => {
                        let st: &Stencil6 = s.try_into().expect("six-point stencil");
                        nonlinear_weights(gamma, smoothness_indicators(st), eps)
                    }
                };
                w[0] * q[0] + w[1] * q[1] + w[2] * q[2]
            }
        }
    }
}

/// Offset of the first stencil node relative to `i`.
fn stencil_start(order: InterpOrder) -> isize {
    match order {
        InterpOrder::Two => -1,
        InterpOrder::Four => -2,
        InterpOrder::Six => -3,
    }
}

fn stencil_width(order: InterpOrder) -> usize {
    match order {
        InterpOrder::Two => 2,
        InterpOrder::Four => 4,
        InterpOrder::Six => 6,
    }
}

/// Interpolation order plus weight treatment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interpolator {
    pub order: InterpOrder,
    pub weights: Weights,
}

impl Interpolator {
    pub fn weno(order: InterpOrder, eps: f64) -> Self {
        Interpolator {
            order,
            weights: Weights::Nonlinear { eps },
        }
    }

    pub fn linear(order: InterpOrder) -> Self {
        Interpolator {
            order,
            weights: Weights::Linear,
        }
    }

    /// Interpolates nodal `values` on `axis` at `target`.
    pub fn interp1d(&self, values: &[f64], axis: &Axis, boundary: Boundary, target: f64) -> f64 {
        debug_assert_eq!(values.len(), axis.n);
        let target = match boundary {
            Boundary::Periodic => {
                let l = axis.length();
                axis.lo + (target - axis.lo).rem_euclid(l)
            }
            Boundary::Zero => {
                if target < axis.lo || target > axis.lo + axis.length() {
                    return 0.0;
                }
                target
            }
        };
        let (i, xi) = axis.locate(target);
        let kernel = Prepared::new(self.order, self.weights, xi);
        let n = axis.n as isize;
        let fetch = |k: isize| -> f64 {
            match boundary {
                Boundary::Periodic => values[k.rem_euclid(n) as usize],
                Boundary::Zero => {
                    if (0..n).contains(&k) {
                        values[k as usize]
                    } else {
                        0.0
                    }
                }
            }
        };
        if let Prepared::Node { .. } = kernel {
            return fetch(i);
        }
        let start = stencil_start(self.order);
        let mut s = [0.0; 6];
        let width = stencil_width(self.order);
        for (m, slot) in s[..width].iter_mut().enumerate() {
            *slot = fetch(i + start + m as isize);
        }
        kernel.apply(&s[..width])
    }

    /// Tensor-product interpolation of `field` at `(x, v)`: each needed
    /// `v`-column is interpolated to `v` first, then the resulting row is
    /// interpolated in `x`. `x` wraps periodically; `v` outside
    /// `[-v_max, v_max]` yields zero.
    pub fn interp2d(&self, grid: &PhaseGrid, field: &DistributionField, x: f64, v: f64) -> f64 {
        if !(v >= -grid.v_max && v <= grid.v_max) {
            return 0.0;
        }
        let (jv, xi_v) = grid.v_axis().locate(v);
        let (ix, xi_x) = grid.x_axis().locate(grid.wrap_x(x));
        let kv = Prepared::new(self.order, self.weights, xi_v);
        let kx = Prepared::new(self.order, self.weights, xi_x);
        let start = stencil_start(self.order);
        let width = stencil_width(self.order);
        let nx = grid.nx as isize;
        let nv = grid.nv as isize;

        let column_value = |c: usize| -> f64 {
            let col = field.column(grid, c);
            if let Prepared::Node { .. } = kv {
                return if (0..nv).contains(&jv) {
                    col[jv as usize]
                } else {
                    0.0
                };
            }
            let lo = jv + start;
            let mut s = [0.0; 6];
            if lo >= 0 && lo + width as isize <= nv {
                s[..width].copy_from_slice(&col[lo as usize..lo as usize + width]);
            } else {
                for (m, slot) in s[..width].iter_mut().enumerate() {
                    let k = lo + m as isize;
                    if (0..nv).contains(&k) {
                        *slot = col[k as usize];
                    }
                }
            }
            kv.apply(&s[..width])
        };

        if let Prepared::Node { .. } = kx {
            return column_value(ix.rem_euclid(nx) as usize);
        }
        let mut row = [0.0; 6];
        for (m, slot) in row[..width].iter_mut().enumerate() {
            *slot = column_value((ix + start + m as isize).rem_euclid(nx) as usize);
        }
        kx.apply(&row[..width])
    }
}
