//! Central-difference discretization of `u'' + q·eᵘ = 0` on `[0, 1]`.
//!
//! Unknowns are `u_1 … u_{M−1}` at `x = 0, dx, …, 1 − dx`; the Dirichlet value
//! `u_M = 0` is eliminated. The Neumann condition at `x = 0` uses the ghost
//! identity `u_0 = u_2`, which turns the first row into `(−2, 2)/dx²`.

use crate::error::{domain, Error, Result};
use crate::linear::{solve_tridiag, DirectSolve};
use crate::model::Grid1D;
use crate::newton::NonlinearSystem;

/// Exponents above this are treated as a diverged iterate.
pub(crate) const EXP_LIMIT: f64 = 700.0;

/// Tridiagonal operator stored by diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct TriDiagSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl TriDiagSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(domain("tridiagonal system must be non-empty"));
        }
        for len in [sub.len(), sup.len()] {
            if len != n - 1 {
                return Err(Error::Dimension {
                    expected: n - 1,
                    got: len,
                });
            }
        }
        Ok(Self { sub, diag, sup })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            sub: vec![0.0; n.saturating_sub(1)],
            diag: vec![1.0; n],
            sup: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `T·x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n, "operand length must match the system");
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.sub[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.sup[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = self.diag[i];
            if i > 0 {
                a[i][i - 1] = self.sub[i - 1];
            }
            if i + 1 < n {
                a[i][i + 1] = self.sup[i];
            }
        }
        a
    }
}

impl DirectSolve for TriDiagSystem {
    fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        solve_tridiag(self, rhs)
    }
}

/// Condition imposed at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeftBoundary {
    /// `u'(0) = 0` through the ghost node; `M − 1` unknowns.
    #[default]
    Neumann,
    /// `u(0) = 0`; only the `M − 2` interior nodes are unknown. Used to compare
    /// against the 2D problem with zero boundary data.
    Dirichlet,
}

impl LeftBoundary {
    fn first_unknown(self) -> usize {
        match self {
            LeftBoundary::Neumann => 0,
            LeftBoundary::Dirichlet => 1,
        }
    }
}

/// Discrete 1D state: the unknowns `u_1 … u_{M−1}` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct State1D {
    pub grid: Grid1D,
    pub u: Vec<f64>,
}

impl State1D {
    pub fn new(grid: Grid1D, u: Vec<f64>) -> Result<Self> {
        if u.len() != grid.len() - 1 {
            return Err(Error::Dimension {
                expected: grid.len() - 1,
                got: u.len(),
            });
        }
        if let Some(i) = u.iter().position(|v| !v.is_finite()) {
            return Err(domain(format!("state entry {i} is not finite")));
        }
        Ok(Self { grid, u })
    }

    /// Values on all `M` nodes, with the eliminated `u_M = 0` restored.
    pub fn node_values(&self) -> Vec<f64> {
        let mut full = self.u.clone();
        full.push(0.0);
        full
    }
}

/// Assembles the operator `A` with the ghost-node mirror row.
pub fn assemble_matrix_1d(grid: &Grid1D) -> TriDiagSystem {
    assemble_matrix_1d_with(grid, LeftBoundary::Neumann)
}

pub fn assemble_matrix_1d_with(grid: &Grid1D, left: LeftBoundary) -> TriDiagSystem {
    let n = grid.len() - 1 - left.first_unknown();
    let inv = 1.0 / (grid.dx() * grid.dx());
    let mut sup = vec![inv; n - 1];
    if left == LeftBoundary::Neumann {
        sup[0] = 2.0 * inv;
    }
    TriDiagSystem {
        sub: vec![inv; n - 1],
        diag: vec![-2.0 * inv; n],
        sup,
    }
}

pub(crate) fn checked_exp(u: &[f64]) -> Result<Vec<f64>> {
    u.iter()
        .enumerate()
        .map(|(index, &value)| {
            if value > EXP_LIMIT || value.is_nan() {
                Err(Error::Diverged { index, value })
            } else {
                Ok(value.exp())
            }
        })
        .collect()
}

/// The nonlinear system `N(u) = A·u + q·eᵘ` on a 1D grid.
#[derive(Debug, Clone)]
pub struct Bratu1d {
    grid: Grid1D,
    left: LeftBoundary,
    q: f64,
    matrix: TriDiagSystem,
}

impl Bratu1d {
    pub fn new(grid: Grid1D, q: f64) -> Result<Self> {
        Self::with_left_boundary(grid, q, LeftBoundary::Neumann)
    }

    pub fn with_left_boundary(grid: Grid1D, q: f64, left: LeftBoundary) -> Result<Self> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(domain(format!(
                "q must be finite and non-negative, got {q}"
            )));
        }
        let matrix = assemble_matrix_1d_with(&grid, left);
        Ok(Self {
            grid,
            left,
            q,
            matrix,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn matrix(&self) -> &TriDiagSystem {
        &self.matrix
    }

    /// Coordinates of the unknowns.
    pub fn unknown_nodes(&self) -> Vec<f64> {
        (self.left.first_unknown()..self.grid.len() - 1)
            .map(|j| self.grid.node(j))
            .collect()
    }

    /// `u⁰ = (q/2)(1 − x²)` on the unknown nodes.
    pub fn initial_guess(&self) -> Vec<f64> {
        self.unknown_nodes()
            .into_iter()
            .map(|x| 0.5 * self.q * (1.0 - x * x))
            .collect()
    }
}

impl NonlinearSystem for Bratu1d {
    type Jacobian = TriDiagSystem;

    fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn residual(&self, u: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim(), u)?;
        let e = checked_exp(u)?;
        let mut r = self.matrix.apply(u);
        for (ri, ei) in r.iter_mut().zip(e) {
            *ri += self.q * ei;
        }
        Ok(r)
    }

    fn jacobian(&self, u: &[f64]) -> Result<TriDiagSystem> {
        check_len(self.dim(), u)?;
        let e = checked_exp(u)?;
        let mut j = self.matrix.clone();
        for (d, ei) in j.diag.iter_mut().zip(e) {
            *d += self.q * ei;
        }
        Ok(j)
    }
}

pub(crate) fn check_len(expected: usize, u: &[f64]) -> Result<()> {
    if u.len() != expected {
        return Err(Error::Dimension {
            expected,
            got: u.len(),
        });
    }
    Ok(())
}

/// `A·u + q·eᵘ` for a state on the Neumann–Dirichlet problem.
pub fn residual_1d(s: &State1D, q: f64) -> Result<Vec<f64>> {
    Bratu1d::new(s.grid, q)?.residual(&s.u)
}

/// `A + q·diag(eᵘ)`.
pub fn jacobian_1d(s: &State1D, q: f64) -> Result<TriDiagSystem> {
    Bratu1d::new(s.grid, q)?.jacobian(&s.u)
}

/// `u⁰ = (q/2)(1 − x²)`, the solution of `u'' + q = 0` with the same boundary
/// conditions.
pub fn initial_guess_1d(q: f64, grid: &Grid1D) -> Result<State1D> {
    let problem = Bratu1d::new(*grid, q)?;
    State1D::new(*grid, problem.initial_guess())
}
