//! Plain (undamped) Newton iteration shared by the 1D and 2D problems.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linear::DirectSolve;

/// A square nonlinear system `N(u) = 0` with an assembled Jacobian.
pub trait NonlinearSystem {
    type Jacobian: DirectSolve;

    fn dim(&self) -> usize;
    fn residual(&self, u: &[f64]) -> Result<Vec<f64>>;
    fn jacobian(&self, u: &[f64]) -> Result<Self::Jacobian>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NewtonConfig {
    /// Stop once `‖N(u)‖₂ < tol`.
    pub tol: f64,
    pub maxit: usize,
    /// Abort when the residual grows by more than this factor in one step.
    pub divergence_guard: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            maxit: 50,
            divergence_guard: 1e4,
        }
    }
}

impl NewtonConfig {
    pub fn new(tol: f64, maxit: usize, divergence_guard: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(domain(format!("tolerance must be positive, got {tol}")));
        }
        if maxit == 0 {
            return Err(domain("maxit must be at least 1"));
        }
        if divergence_guard.is_nan() || divergence_guard <= 1.0 {
            return Err(domain(format!(
                "divergence guard must exceed 1, got {divergence_guard}"
            )));
        }
        Ok(Self {
            tol,
            maxit,
            divergence_guard,
        })
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        Self::new(tol, self.maxit, self.divergence_guard)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    None,
    MaxIterations,
    NonFinite,
    SingularLinearSolve,
    ResidualGrowth,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureKind::None => "none",
            FailureKind::MaxIterations => "maximum iterations reached",
            FailureKind::NonFinite => "non-finite residual",
            FailureKind::SingularLinearSolve => "singular Jacobian",
            FailureKind::ResidualGrowth => "residual growth",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonReport {
    pub converged: bool,
    pub iterations: usize,
    /// `‖N(u)‖₂` at `u⁰` followed by one entry per step, each taken at the
    /// updated iterate. A non-finite evaluation is recorded as `+∞`.
    pub residual_history: Vec<f64>,
    pub failure_kind: FailureKind,
}

impl NewtonReport {
    pub fn final_residual(&self) -> f64 {
        *self
            .residual_history
            .last()
            .expect("history holds at least the initial residual")
    }

    fn finish(history: Vec<f64>, failure_kind: FailureKind) -> Self {
        Self {
            converged: failure_kind == FailureKind::None,
            iterations: history.len() - 1,
            residual_history: history,
            failure_kind,
        }
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn classify(err: &Error) -> FailureKind {
    match err {
        Error::Singular { .. } => FailureKind::SingularLinearSolve,
        _ => FailureKind::NonFinite,
    }
}

/// Runs `J(uˡ)·sˡ = −N(uˡ)`, `uˡ⁺¹ = uˡ + sˡ` from `u0`.
///
/// At least one step is always taken; convergence is tested on the updated
/// iterate. The last iterate is returned whatever the outcome.
pub fn newton_solve<P: NonlinearSystem>(
    problem: &P,
    u0: Vec<f64>,
    cfg: &NewtonConfig,
) -> (Vec<f64>, NewtonReport) {
    assert_eq!(
        u0.len(),
        problem.dim(),
        "initial state has the wrong length"
    );
    let mut u = u0;
    let mut history = Vec::with_capacity(cfg.maxit + 1);

    let mut r = match problem.residual(&u) {
        Ok(r) if u.iter().all(|v| v.is_finite()) => r,
        _ => {
            history.push(f64::INFINITY);
            return (u, NewtonReport::finish(history, FailureKind::NonFinite));
        }
    };
    history.push(norm2(&r));

    for _ in 0..cfg.maxit {
        let step = problem.jacobian(&u).and_then(|jac| {
            let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
            jac.solve(&rhs)
        });
        let step = match step {
            Ok(s) => s,
            Err(e) => return (u, NewtonReport::finish(history, classify(&e))),
        };
        for (ui, si) in u.iter_mut().zip(&step) {
            *ui += si;
        }

        let norm = match problem.residual(&u) {
            Ok(next) => {
                r = next;
                norm2(&r)
            }
            Err(_) => f64::INFINITY,
        };
        let prev = *history.last().unwrap();
        history.push(if norm.is_finite() {
            norm
        } else {
            f64::INFINITY
        });
        if !norm.is_finite() || u.iter().any(|v| !v.is_finite()) {
            return (u, NewtonReport::finish(history, FailureKind::NonFinite));
        }
        if norm < cfg.tol {
            return (u, NewtonReport::finish(history, FailureKind::None));
        }
        if norm > cfg.divergence_guard * prev {
            return (
                u,
                NewtonReport::finish(history, FailureKind::ResidualGrowth),
            );
        }
    }
    (u, NewtonReport::finish(history, FailureKind::MaxIterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize1d::TriDiagSystem;

    /// Scalar `x² − a = 0` wrapped as a 1×1 tridiagonal system.
    struct Sqrt(f64);

    impl NonlinearSystem for Sqrt {
        type Jacobian = TriDiagSystem;
        fn dim(&self) -> usize {
            1
        }
        fn residual(&self, u: &[f64]) -> Result<Vec<f64>> {
            Ok(vec![u[0] * u[0] - self.0])
        }
        fn jacobian(&self, u: &[f64]) -> Result<TriDiagSystem> {
            TriDiagSystem::new(vec![], vec![2.0 * u[0]], vec![])
        }
    }

    #[test]
    fn config_validation() {
        assert!(NewtonConfig::new(0.0, 10, 10.0).is_err());
        assert!(NewtonConfig::new(1e-8, 0, 10.0).is_err());
        assert!(NewtonConfig::new(1e-8, 10, 1.0).is_err());
        assert_eq!(
            NewtonConfig::new(1e-10, 50, 1e4).unwrap(),
            NewtonConfig::default()
        );
    }

    #[test]
    fn scalar_square_root_converges_quadratically() {
        let (u, report) = newton_solve(&Sqrt(2.0), vec![1.0], &NewtonConfig::default());
        assert!(report.converged);
        assert_eq!(report.failure_kind, FailureKind::None);
        assert!((u[0] - 2.0f64.sqrt()).abs() < 1e-10);
        assert_eq!(report.iterations, report.residual_history.len() - 1);
        assert!(report.final_residual() < 1e-10);
    }

    #[test]
    fn zero_derivative_is_singular() {
        let (_, report) = newton_solve(&Sqrt(2.0), vec![0.0], &NewtonConfig::default());
        assert!(!report.converged);
        assert_eq!(report.failure_kind, FailureKind::SingularLinearSolve);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn no_real_root_hits_iteration_cap() {
        let cfg = NewtonConfig::new(1e-10, 20, 1e12).unwrap();
        let (_, report) = newton_solve(&Sqrt(-1.0), vec![0.3], &cfg);
        assert!(!report.converged);
        assert!(matches!(
            report.failure_kind,
            FailureKind::MaxIterations
                | FailureKind::ResidualGrowth
                | FailureKind::SingularLinearSolve
        ));
    }

    #[test]
    fn residual_growth_guard() {
        let cfg = NewtonConfig::new(1e-10, 50, 1.5).unwrap();
        // from a tiny start the first step overshoots by orders of magnitude
        let (_, report) = newton_solve(&Sqrt(1.0), vec![1e-3], &cfg);
        assert_eq!(report.failure_kind, FailureKind::ResidualGrowth);
        assert_eq!(report.iterations, 1);
    }

    #[test]
    fn failure_display() {
        assert_eq!(
            FailureKind::MaxIterations.to_string(),
            "maximum iterations reached"
        );
    }
}
