//! Numerical experiments: the critical-parameter sweep and the grid
//! convergence-order study.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{AnalyticSolution, MuBranch};
use crate::discretize1d::Bratu1d;
use crate::error::{domain, Error, Result};
use crate::model::{make_grid_1d, Grid1D};
use crate::newton::{newton_solve, NewtonConfig, NewtonReport};

/// Outcome of [`threshold_sweep`], in ascending `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub q_values: Vec<f64>,
    pub converged: Vec<bool>,
    pub reports: Vec<NewtonReport>,
    /// Last converged `q` before the first failure.
    pub q_star: Option<f64>,
    /// Smallest `q` whose solve failed.
    pub first_failure: Option<f64>,
    /// Set when some `q` above the first failure converged again.
    pub non_monotone: bool,
}

fn solve_at(q: f64, grid: &Grid1D, cfg: &NewtonConfig) -> Result<NewtonReport> {
    let problem = Bratu1d::new(*grid, q)?;
    let (_, report) = newton_solve(&problem, problem.initial_guess(), cfg);
    Ok(report)
}

fn converges(q: f64, grid: &Grid1D, cfg: &NewtonConfig) -> Result<bool> {
    Ok(solve_at(q, grid, cfg)?.converged)
}

/// `q_lo, q_lo + dq, …` up to `q_hi`, with round-off trimmed at 12 decimals.
fn arithmetic_sequence(q_lo: f64, q_hi: f64, dq: f64) -> Vec<f64> {
    let count = ((q_hi - q_lo) / dq + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| ((q_lo + i as f64 * dq) * 1e12).round() / 1e12)
        .collect()
}

/// Solves the 1D problem from its own initial guess at every `q` of the
/// sequence and locates the last converged value.
pub fn threshold_sweep(
    q_lo: f64,
    q_hi: f64,
    dq: f64,
    grid: &Grid1D,
    cfg: &NewtonConfig,
) -> Result<SweepResult> {
    if !(q_lo.is_finite() && q_hi.is_finite() && q_lo > 0.0) {
        return Err(domain(format!(
            "q range must be finite and positive, got [{q_lo}, {q_hi}]"
        )));
    }
    if !(dq.is_finite() && dq > 0.0) {
        return Err(domain(format!("q step must be positive, got {dq}")));
    }
    if q_hi < q_lo {
        return Err(domain(format!("empty q sequence: {q_lo} > {q_hi}")));
    }
    let q_values = arithmetic_sequence(q_lo, q_hi, dq);
    let reports = q_values
        .par_iter()
        .map(|&q| solve_at(q, grid, cfg))
        .collect::<Result<Vec<_>>>()?;
    let converged: Vec<bool> = reports.iter().map(|r| r.converged).collect();

    let first_fail = converged.iter().position(|c| !c);
    let (q_star, non_monotone) = match first_fail {
        Some(i) => (
            i.checked_sub(1).map(|p| q_values[p]),
            converged[i..].iter().any(|&c| c),
        ),
        None => (q_values.last().copied(), false),
    };
    Ok(SweepResult {
        first_failure: first_fail.map(|i| q_values[i]),
        q_values,
        converged,
        reports,
        q_star,
        non_monotone,
    })
}

/// Bisects on the convergence predicate between a converged and a failed `q`
/// until the bracket is narrower than `tol_q`; returns the bracket midpoint.
pub fn refine_threshold(
    q_converged: f64,
    q_failed: f64,
    grid: &Grid1D,
    cfg: &NewtonConfig,
    tol_q: f64,
) -> Result<f64> {
    if !(tol_q.is_finite() && tol_q > 0.0) {
        return Err(domain(format!("tol_q must be positive, got {tol_q}")));
    }
    if !(q_converged > 0.0 && q_converged < q_failed && q_failed.is_finite()) {
        return Err(domain(format!(
            "bracket must satisfy 0 < q_lo < q_hi, got ({q_converged}, {q_failed})"
        )));
    }
    if !converges(q_converged, grid, cfg)? {
        return Err(domain(format!(
            "Newton does not converge at the lower end q = {q_converged}"
        )));
    }
    if converges(q_failed, grid, cfg)? {
        return Err(domain(format!(
            "Newton converges at the upper end q = {q_failed}"
        )));
    }
    let (mut lo, mut hi) = (q_converged, q_failed);
    while hi - lo >= tol_q {
        let mid = 0.5 * (lo + hi);
        if converges(mid, grid, cfg)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Errors against the analytic lower-branch solution on successively halved
/// grids, with pairwise observed orders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub q: f64,
    pub grid_sizes: Vec<usize>,
    pub spacings: Vec<f64>,
    /// `‖u_h − u_exact‖∞` over each grid's own nodes.
    pub errors: Vec<f64>,
    /// `ln(E(h) / E(h/2)) / ln 2`.
    pub orders: Vec<f64>,
}

impl ConvergenceReport {
    /// Least-squares slope of `ln E` against `ln h`.
    pub fn fitted_order(&self) -> f64 {
        let xs: Vec<f64> = self.spacings.iter().map(|h| h.ln()).collect();
        let ys: Vec<f64> = self.errors.iter().map(|e| e.ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        sxy / sxx
    }
}

/// Maximum nodal error of the converged 1D solution on an `M`-node grid.
pub fn nodal_error(q: f64, nodes: usize, cfg: &NewtonConfig) -> Result<(f64, NewtonReport)> {
    let exact = AnalyticSolution::new(q, MuBranch::Lower)?;
    let grid = make_grid_1d(nodes)?;
    let problem = Bratu1d::new(grid, q)?;
    let (u, report) = newton_solve(&problem, problem.initial_guess(), cfg);
    let err = u
        .iter()
        .enumerate()
        .map(|(j, v)| (v - exact.eval(grid.node(j))).abs())
        .fold(0.0, f64::max);
    Ok((err, report))
}

pub fn convergence_order(
    q: f64,
    base_nodes: usize,
    levels: usize,
    cfg: &NewtonConfig,
) -> Result<ConvergenceReport> {
    AnalyticSolution::new(q, MuBranch::Lower)?;
    if base_nodes < 5 {
        return Err(domain(format!(
            "base grid needs at least 5 nodes, got {base_nodes}"
        )));
    }
    if levels < 2 {
        return Err(domain(format!("need at least 2 levels, got {levels}")));
    }
    let grid_sizes: Vec<usize> = (0..levels)
        .map(|i| (base_nodes - 1) * (1 << i) + 1)
        .collect();
    let errors = grid_sizes
        .par_iter()
        .enumerate()
        .map(|(level, &m)| {
            let (err, report) = nodal_error(q, m, cfg)?;
            if report.converged {
                Ok(err)
            } else {
                Err(Error::Study {
                    level,
                    nodes: m,
                    reason: format!("Newton did not converge ({})", report.failure_kind),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let orders = errors
        .windows(2)
        .map(|w| (w[0] / w[1]).ln() / std::f64::consts::LN_2)
        .collect();
    Ok(ConvergenceReport {
        q,
        spacings: grid_sizes.iter().map(|&m| 1.0 / (m - 1) as f64).collect(),
        grid_sizes,
        errors,
        orders,
    })
}
