//! Closed-form solution of the 1D problem `u'' + q·eᵘ = 0`, `u'(0) = 0`,
//! `u(1) = 0`:
//!
//! ```text
//! u(x) = ln(2μ²/q) − 2·ln(cosh(μx)),   cosh μ = √(2/q)·μ
//! ```
//!
//! The μ-relation has two positive roots for `0 < q < q_crit` which merge at
//! the fold, where the line `√(2/q)·μ` is tangent to `cosh μ`. Tangency gives
//! `sinh μ* = √(2/q)`, hence `μ*·tanh μ* = 1` and `q_crit = 2 / sinh²μ*`.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Upper end of the bracket for the upper root; `cosh` is far from overflow here.
const MU_MAX: f64 = 50.0;
const BISECTION_STEPS: usize = 200;

/// Which root of the μ-relation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum MuBranch {
    /// Root in `(0, μ*)`: the stable, low-temperature steady state.
    #[default]
    Lower,
    /// Root in `(μ*, ∞)`.
    Upper,
}

/// The fold of the μ-relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fold {
    pub q_crit: f64,
    pub mu_star: f64,
}

/// Computes the fold point from `μ·tanh μ = 1`.
pub fn critical_q() -> Fold {
    let f = |mu: f64| mu * mu.tanh() - 1.0;
    let mut mu = bisect(f, 1.0, 2.0);
    // f' = tanh μ + μ·sech²μ > 0 on [1, 2]
    for _ in 0..2 {
        let c = mu.cosh();
        let step = f(mu) / (mu.tanh() + mu / (c * c));
        let candidate = mu - step;
        if (1.0..=2.0).contains(&candidate) && f(candidate).abs() <= f(mu).abs() {
            mu = candidate;
        }
    }
    let s = mu.sinh();
    Fold {
        q_crit: 2.0 / (s * s),
        mu_star: mu,
    }
}

/// Root of `cosh μ − √(2/q)·μ` on the requested branch.
pub fn solve_mu(q: f64, branch: MuBranch) -> Result<f64> {
    if !(q.is_finite() && q > 0.0) {
        return Err(domain(format!("q must be finite and positive, got {q}")));
    }
    let fold = critical_q();
    let slope = (2.0 / q).sqrt();
    let phi = |mu: f64| mu.cosh() - slope * mu;
    if q >= fold.q_crit || phi(fold.mu_star) >= 0.0 {
        return Err(Error::NoRoot {
            q,
            q_crit: fold.q_crit,
        });
    }
    let (lo, hi) = match branch {
        MuBranch::Lower => (0.0, fold.mu_star),
        MuBranch::Upper => {
            if phi(MU_MAX) <= 0.0 {
                return Err(domain(format!(
                    "upper root for q = {q} lies beyond mu = {MU_MAX}"
                )));
            }
            (fold.mu_star, MU_MAX)
        }
    };
    let mut mu = bisect(phi, lo, hi);
    for _ in 0..3 {
        let d = mu.sinh() - slope;
        if d == 0.0 {
            break;
        }
        let candidate = mu - phi(mu) / d;
        if candidate > lo && candidate < hi && phi(candidate).abs() < phi(mu).abs() {
            mu = candidate;
        } else {
            break;
        }
    }
    Ok(mu)
}

/// Sign-change bisection; `f(lo)` and `f(hi)` must have opposite signs.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_positive = f(lo) > 0.0;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The analytic solution for a given `q` and branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticSolution {
    pub q: f64,
    pub mu: f64,
    pub branch: MuBranch,
}

impl AnalyticSolution {
    pub fn new(q: f64, branch: MuBranch) -> Result<Self> {
        let mu = solve_mu(q, branch)?;
        Ok(Self { q, mu, branch })
    }

    /// `u(x)`. Accepts any real `x`; the formula is even in `x`.
    pub fn eval(&self, x: f64) -> f64 {
        (2.0 * self.mu * self.mu / self.q).ln() - 2.0 * (self.mu * x).cosh().ln()
    }

    /// `u'(x) = −2μ·tanh(μx)`.
    pub fn derivative(&self, x: f64) -> f64 {
        -2.0 * self.mu * (self.mu * x).tanh()
    }
}

/// Evaluates the analytic solution at each coordinate in `[0, 1]`.
pub fn analytic_solution(q: f64, branch: MuBranch, xs: &[f64]) -> Result<Vec<f64>> {
    if let Some(x) = xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(domain(format!(
            "analytic solution is defined on [0, 1], got x = {x}"
        )));
    }
    let sol = AnalyticSolution::new(q, branch)?;
    Ok(xs.iter().map(|&x| sol.eval(x)).collect())
}
