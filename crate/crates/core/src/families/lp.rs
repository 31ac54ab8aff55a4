//! Truncated moment feasibility for the dual product measures of `Γ(a, b)`:
//! find `w ≥ 0` on nodes `z` in `[−s_1, s_1]` with
//! `Σ_z w_z P_n(z) = P_n(x) P_n(y)` for `n = 0..=N`.
//!
//! Solved by a dense phase-1 simplex with Bland's rule. When the grid alone
//! is infeasible, the Farkas vector of the grid problem is used to add the
//! nodes of `[−s_1, s_1]` that violate it most (column generation); the
//! problem is declared infeasible only once no such node exists.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::GabFamily;
use crate::error::{Error, Result};
use crate::tolerance;

const PIVOT_EPS: f64 = 1e-12;
const MAX_ROUNDS: usize = 200;
const SAMPLE: usize = 4000;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LpOutcome {
    /// A measure with support `nodes`; `slack` is the largest constraint residual.
    Feasible {
        nodes: Vec<f64>,
        weights: Vec<f64>,
        slack: f64,
    },
    /// `y` with `yᵀ P(z) ≤ 0` on `[−s_1, s_1]` but `yᵀ m > 0`; `margin = yᵀ m`.
    Infeasible {
        certificate: Vec<f64>,
        margin: f64,
        max_violation: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualMeasureLp {
    pub x: f64,
    pub y: f64,
    pub order: usize,
    pub grid_size: usize,
    pub added_nodes: usize,
    pub outcome: LpOutcome,
}

impl DualMeasureLp {
    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, LpOutcome::Feasible { .. })
    }
}

/// `n` Chebyshev–Lobatto nodes `lo + (hi − lo)(1 − cos(kπ/(n−1)))/2`.
pub fn chebyshev_lobatto(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n)
            .map(|k| {
                let c = (std::f64::consts::PI * k as f64 / (n - 1) as f64).cos();
                0.5 * (lo + hi) - 0.5 * (hi - lo) * c
            })
            .collect(),
    }
}

/// Default grid: `n` Chebyshev–Lobatto nodes on `[−s_1, s_1]`.
pub fn default_grid(family: &GabFamily, n: usize) -> Vec<f64> {
    let s1 = family.s1();
    chebyshev_lobatto(-s1, s1, n)
}

pub fn gab_dual_measure(family: &GabFamily, x: f64, y: f64, order: usize, grid: &[f64]) -> Result<DualMeasureLp> {
    if order == 0 {
        return Err(Error::ParameterOutOfRange("moment order must be at least 1".into()));
    }
    if grid.is_empty() {
        return Err(Error::ParameterOutOfRange("grid is empty".into()));
    }
    let s1 = family.s1();
    if let Some(z) = grid.iter().find(|z| z.is_nan() || z.abs() > s1 * (1.0 + 1e-12)) {
        return Err(Error::ParameterOutOfRange(format!(
            "grid node {z} lies outside [−s1, s1]"
        )));
    }
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::ParameterOutOfRange("x and y must be finite".into()));
    }
    let px = family.eval_all(order, x);
    let py = family.eval_all(order, y);
    let moments: Vec<f64> = px.iter().zip(&py).map(|(a, b)| a * b).collect();

    let mut nodes = grid.to_vec();
    for _ in 0..MAX_ROUNDS {
        let columns: Vec<Vec<f64>> = nodes.iter().map(|&z| family.eval_all(order, z)).collect();
        match phase_one(&columns, &moments) {
            Phase::Feasible {
                support,
                weights,
                slack,
            } => {
                let (nodes_out, weights_out) = support.iter().map(|&j| nodes[j]).zip(weights).unzip();
                return Ok(DualMeasureLp {
                    x,
                    y,
                    order,
                    grid_size: grid.len(),
                    added_nodes: nodes.len() - grid.len(),
                    outcome: LpOutcome::Feasible {
                        nodes: nodes_out,
                        weights: weights_out,
                        slack,
                    },
                });
            }
            Phase::Infeasible { farkas, margin } => {
                let violators = most_violating(family, order, &farkas, s1);
                let max_violation = violators.first().map_or(f64::NEG_INFINITY, |v| v.1);
                let fresh: Vec<f64> = violators
                    .into_iter()
                    .filter(|&(z, v)| v > PIVOT_EPS && !nodes.iter().any(|&w| (w - z).abs() < 1e-15))
                    .map(|(z, _)| z)
                    .collect();
                if fresh.is_empty() {
                    return Ok(DualMeasureLp {
                        x,
                        y,
                        order,
                        grid_size: grid.len(),
                        added_nodes: nodes.len() - grid.len(),
                        outcome: LpOutcome::Infeasible {
                            certificate: farkas,
                            margin,
                            max_violation,
                        },
                    });
                }
                nodes.extend(fresh);
            }
        }
    }
    let columns: Vec<Vec<f64>> = nodes.iter().map(|&z| family.eval_all(order, z)).collect();
    let Phase::Infeasible { farkas, margin } = phase_one(&columns, &moments) else {
        unreachable!("the last round was infeasible with fewer columns");
    };
    let max_violation = most_violating(family, order, &farkas, s1)
        .first()
        .map_or(f64::NEG_INFINITY, |v| v.1);
    Ok(DualMeasureLp {
        x,
        y,
        order,
        grid_size: grid.len(),
        added_nodes: nodes.len() - grid.len(),
        outcome: LpOutcome::Infeasible {
            certificate: farkas,
            margin,
            max_violation,
        },
    })
}

/// Local maxima of `z ↦ yᵀ P(z)` on `[−s_1, s_1]`, refined by golden
/// section, largest first.
fn most_violating(family: &GabFamily, order: usize, y: &[f64], s1: f64) -> Vec<(f64, f64)> {
    let phi = |z: f64| family.eval_all(order, z).iter().zip(y).map(|(p, c)| p * c).sum::<f64>();
    let h = 2.0 * s1 / SAMPLE as f64;
    let zs: Vec<f64> = (0..=SAMPLE).map(|k| (-s1 + h * k as f64).clamp(-s1, s1)).collect();
    let vals: Vec<f64> = zs.iter().map(|&z| phi(z)).collect();
    let mut found = Vec::new();
    for k in 0..=SAMPLE {
        let left = if k == 0 { f64::NEG_INFINITY } else { vals[k - 1] };
        let right = if k == SAMPLE { f64::NEG_INFINITY } else { vals[k + 1] };
        if vals[k] >= left && vals[k] >= right {
            let lo = zs[k.saturating_sub(1)];
            let hi = zs[(k + 1).min(SAMPLE)];
            let z = polish(family, order, y, golden_max(&phi, lo, hi), lo, hi);
            let (z, v) = [(z, phi(z)), (zs[k], vals[k])]
                .into_iter()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("two candidates");
            found.push((z, v));
        }
    }
    found.sort_by(|a, b| b.1.total_cmp(&a.1));
    found.truncate(5);
    found
}

/// Secant iteration on `φ'` to sharpen an interior maximum of `φ = yᵀP`.
fn polish(family: &GabFamily, order: usize, y: &[f64], z: f64, lo: f64, hi: f64) -> f64 {
    let dphi = |z: f64| {
        family
            .eval_all_with_derivative(order, z)
            .iter()
            .zip(y)
            .map(|((_, d), c)| d * c)
            .sum::<f64>()
    };
    let (mut z0, mut z1) = (z, (z + 1e-7).min(hi));
    let (mut d0, mut d1) = (dphi(z0), dphi(z1));
    for _ in 0..40 {
        if d1 == d0 {
            break;
        }
        let z2 = z1 - d1 * (z1 - z0) / (d1 - d0);
        if !(lo..=hi).contains(&z2) {
            return z;
        }
        if (z2 - z1).abs() <= 4.0 * f64::EPSILON * z2.abs().max(1.0) {
            return z2;
        }
        (z0, d0) = (z1, d1);
        z1 = z2;
        d1 = dphi(z1);
    }
    z1
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if hi - lo < 1e-15 {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

enum Phase {
    Feasible {
        support: Vec<usize>,
        weights: Vec<f64>,
        slack: f64,
    },
    Infeasible {
        farkas: Vec<f64>,
        margin: f64,
    },
}

/// Minimizes the sum of artificial variables for `A w = m`, `w ≥ 0`, where
/// `columns[j]` is column `j` of `A`.
fn phase_one(columns: &[Vec<f64>], moments: &[f64]) -> Phase {
    let rows = moments.len();
    let cols = columns.len();
    let sign: Vec<f64> = moments.iter().map(|&m| if m < 0.0 { -1.0 } else { 1.0 }).collect();
    let width = cols + rows + 1;
    // tableau rows 0..rows are constraints, row `rows` is the reduced cost
    let mut t = DMatrix::<f64>::zeros(rows + 1, width);
    for r in 0..rows {
        for (j, col) in columns.iter().enumerate() {
            t[(r, j)] = sign[r] * col[r];
        }
        t[(r, cols + r)] = 1.0;
        t[(r, width - 1)] = sign[r] * moments[r];
    }
    for j in 0..width {
        if j < cols || j == width - 1 {
            t[(rows, j)] = -(0..rows).map(|r| t[(r, j)]).sum::<f64>();
        }
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    while let Some(enter) = (0..cols + rows).find(|&j| t[(rows, j)] < -PIVOT_EPS) {
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for r in 0..rows {
            let a = t[(r, enter)];
            if a > PIVOT_EPS {
                let ratio = t[(r, width - 1)] / a;
                let better =
                    ratio < best - 1e-14 || (ratio <= best + 1e-14 && leave.is_some_and(|l| basis[r] < basis[l]));
                if leave.is_none() || better {
                    best = ratio.min(best);
                    leave = Some(r);
                }
            }
        }
        let Some(p) = leave else { break };
        let pivot = t[(p, enter)];
        for j in 0..width {
            t[(p, j)] /= pivot;
        }
        for r in 0..=rows {
            if r != p {
                let factor = t[(r, enter)];
                if factor != 0.0 {
                    for j in 0..width {
                        t[(r, j)] -= factor * t[(p, j)];
                    }
                }
            }
        }
        basis[p] = enter;
    }

    // re-solve the final basis directly for accuracy
    let b_mat = DMatrix::from_fn(rows, rows, |r, c| {
        let j = basis[c];
        if j < cols {
            sign[r] * columns[j][r]
        } else if j - cols == r {
            1.0
        } else {
            0.0
        }
    });
    let rhs = DVector::from_fn(rows, |r, _| sign[r] * moments[r]);
    let lu = b_mat.clone().lu();
    let solved = lu.solve(&rhs);

    if let Some(values) = &solved {
        let mut support = Vec::new();
        let mut weights = Vec::new();
        for (c, &j) in basis.iter().enumerate() {
            if j < cols && values[c] > 0.0 {
                support.push(j);
                weights.push(values[c]);
            }
        }
        let slack = (0..rows)
            .map(|r| {
                let lhs: f64 = support.iter().zip(&weights).map(|(&j, w)| w * columns[j][r]).sum();
                (lhs - moments[r]).abs()
            })
            .fold(0.0, f64::max);
        if slack <= tolerance::MOMENT_SLACK {
            let mut order: Vec<usize> = (0..support.len()).collect();
            order.sort_by_key(|&i| support[i]);
            return Phase::Feasible {
                support: order.iter().map(|&i| support[i]).collect(),
                weights: order.iter().map(|&i| weights[i]).collect(),
                slack,
            };
        }
    }

    // y = c_Bᵀ B⁻¹ with unit cost on artificials, mapped back to unflipped rows
    let cost = DVector::from_fn(rows, |c, _| if basis[c] >= cols { 1.0 } else { 0.0 });
    let y = b_mat
        .transpose()
        .lu()
        .solve(&cost)
        .unwrap_or_else(|| DVector::from_fn(rows, |r, _| -t[(rows, cols + r)] + 1.0));
    let farkas: Vec<f64> = (0..rows).map(|r| y[r] * sign[r]).collect();
    let margin = farkas.iter().zip(moments).map(|(a, b)| a * b).sum();
    Phase::Infeasible { farkas, margin }
}
