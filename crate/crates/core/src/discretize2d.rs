//! Central-difference discretization of `u_xx + u_yy + q·eᵘ = 0` on
//! `(0, ℓ) × (0, 1)` with `u(0, y) = 0`, `u(ℓ, y) = g(y)` and insulated
//! horizontal walls.
//!
//! Unknowns are the interior x-nodes of every y-row, ordered y-major:
//! `U = (u_1; …; u_N)` with `u_k = (u_{2,k}, …, u_{M−1,k})`. Ghost rows at
//! `y = 0` and `y = 1` double the coupling to the single y-neighbour.

use crate::discretize1d::{check_len, checked_exp};
use crate::error::{domain, Error, Result};
use crate::linear::{solve_banded, DirectSolve};
use crate::model::{step_boundary, Grid2D};
use crate::newton::NonlinearSystem;

/// Square banded matrix stored row by row over the band
/// `i − lower ..= i + upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSystem {
    n: usize,
    lower: usize,
    upper: usize,
    block_size: usize,
    band: Vec<f64>,
}

impl BandedSystem {
    pub fn zeros(n: usize, lower: usize, upper: usize, block_size: usize) -> Self {
        Self {
            n,
            lower,
            upper,
            block_size,
            band: vec![0.0; n * (lower + upper + 1)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, 0, 0, 1);
        a.band.fill(1.0);
        a
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    /// Number of unknowns per y-row, `M − 2`.
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        (i < self.n && j < self.n && j + self.lower >= i && j <= i + self.upper)
            .then(|| i * (self.lower + self.upper + 1) + j + self.lower - i)
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.band[s])
    }

    /// Panics if `(i, j)` lies outside the band.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let s = self
            .slot(i, j)
            .unwrap_or_else(|| panic!("entry ({i}, {j}) is outside the band"));
        self.band[s] = value;
    }

    fn columns(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        i.saturating_sub(self.lower)..=(i + self.upper).min(self.n - 1)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "operand length must match the system");
        (0..self.n)
            .map(|i| self.columns(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.columns(i).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    fn add_to_diagonal(&mut self, values: &[f64]) {
        for (i, v) in values.iter().enumerate() {
            let s = i * (self.lower + self.upper + 1) + self.lower;
            self.band[s] += v;
        }
    }
}

impl DirectSolve for BandedSystem {
    fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        solve_banded(self, rhs)
    }
}

/// 5-point Laplacian on the `(M − 2)·N` unknowns.
pub fn assemble_matrix_2d(grid: &Grid2D) -> BandedSystem {
    let bs = grid.block_size();
    let ny = grid.ny();
    let ix = 1.0 / (grid.dx() * grid.dx());
    let iy = 1.0 / (grid.dy() * grid.dy());
    let mut a = BandedSystem::zeros(grid.unknowns(), bs, bs, bs);
    for k in 0..ny {
        for j in 0..bs {
            let r = k * bs + j;
            a.set(r, r, -2.0 * (ix + iy));
            if j > 0 {
                a.set(r, r - 1, ix);
            }
            if j + 1 < bs {
                a.set(r, r + 1, ix);
            }
            if k == 0 {
                a.set(r, r + bs, 2.0 * iy);
            } else if k == ny - 1 {
                a.set(r, r - bs, 2.0 * iy);
            } else {
                a.set(r, r - bs, iy);
                a.set(r, r + bs, iy);
            }
        }
    }
    a
}

/// Coefficient multiplying `g(y_k)` in the boundary vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryScaling {
    /// `1/dx²`: the value enters through the x-stencil at the eliminated
    /// column `x = ℓ`.
    #[default]
    InverseDxSquared,
    /// `1/dy²` as printed in the original block display. Coincides with the
    /// default only when `dx = dy`.
    PaperLiteral,
}

/// The boundary contribution `bb`, nonzero only in the last slot of each block.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryVector {
    /// `g(y_k)` for each y-row.
    pub wall: Vec<f64>,
    pub bb: Vec<f64>,
}

impl BoundaryVector {
    pub fn from_wall(grid: &Grid2D, wall: Vec<f64>, scaling: BoundaryScaling) -> Result<Self> {
        if wall.len() != grid.ny() {
            return Err(Error::Dimension {
                expected: grid.ny(),
                got: wall.len(),
            });
        }
        let coefficient = match scaling {
            BoundaryScaling::InverseDxSquared => 1.0 / (grid.dx() * grid.dx()),
            BoundaryScaling::PaperLiteral => 1.0 / (grid.dy() * grid.dy()),
        };
        let bs = grid.block_size();
        let mut bb = vec![0.0; grid.unknowns()];
        for (k, g) in wall.iter().enumerate() {
            bb[k * bs + bs - 1] = coefficient * g;
        }
        Ok(Self { wall, bb })
    }

    pub fn zero(grid: &Grid2D) -> Self {
        Self {
            wall: vec![0.0; grid.ny()],
            bb: vec![0.0; grid.unknowns()],
        }
    }
}

/// Boundary vector for the step data `g`.
pub fn assemble_rhs_2d(grid: &Grid2D) -> BoundaryVector {
    assemble_rhs_2d_with(grid, step_boundary, BoundaryScaling::default())
}

pub fn assemble_rhs_2d_with(
    grid: &Grid2D,
    g: impl Fn(f64) -> f64,
    scaling: BoundaryScaling,
) -> BoundaryVector {
    let wall = (0..grid.ny()).map(|k| g(grid.y_node(k))).collect();
    BoundaryVector::from_wall(grid, wall, scaling).expect("wall has one value per y-row")
}

/// Discrete 2D state in y-major unknown order.
#[derive(Debug, Clone, PartialEq)]
pub struct State2D {
    pub grid: Grid2D,
    pub u: Vec<f64>,
}

impl State2D {
    pub fn new(grid: Grid2D, u: Vec<f64>) -> Result<Self> {
        check_len(grid.unknowns(), &u)?;
        if let Some(i) = u.iter().position(|v| !v.is_finite()) {
            return Err(domain(format!("state entry {i} is not finite")));
        }
        Ok(Self { grid, u })
    }

    /// Unknown `(j, k)` with `j` the 0-based interior x-index.
    pub fn at(&self, j: usize, k: usize) -> f64 {
        self.u[k * self.grid.block_size() + j]
    }
}

/// `N(U) = A·U + bb + q·e^U`.
#[derive(Debug, Clone)]
pub struct Bratu2d {
    grid: Grid2D,
    q: f64,
    matrix: BandedSystem,
    boundary: BoundaryVector,
}

impl Bratu2d {
    /// Step boundary data with the `1/dx²` coefficient.
    pub fn new(grid: Grid2D, q: f64) -> Result<Self> {
        Self::with_boundary(grid, q, assemble_rhs_2d(&grid))
    }

    pub fn with_boundary(grid: Grid2D, q: f64, boundary: BoundaryVector) -> Result<Self> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(domain(format!(
                "q must be finite and non-negative, got {q}"
            )));
        }
        check_len(grid.unknowns(), &boundary.bb)?;
        Ok(Self {
            grid,
            q,
            matrix: assemble_matrix_2d(&grid),
            boundary,
        })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn matrix(&self) -> &BandedSystem {
        &self.matrix
    }

    pub fn boundary(&self) -> &BoundaryVector {
        &self.boundary
    }

    /// `U⁰ = −A⁻¹(bb + q·𝟙)`.
    pub fn initial_guess(&self) -> Result<Vec<f64>> {
        let rhs: Vec<f64> = self.boundary.bb.iter().map(|b| -(b + self.q)).collect();
        solve_banded(&self.matrix, &rhs)
    }

    /// Values on the full `M × N` lattice in y-major order, Dirichlet
    /// columns included.
    pub fn node_values(&self, u: &[f64]) -> Vec<f64> {
        let bs = self.grid.block_size();
        let mut full = Vec::with_capacity(self.grid.nx() * self.grid.ny());
        for k in 0..self.grid.ny() {
            full.push(0.0);
            full.extend_from_slice(&u[k * bs..(k + 1) * bs]);
            full.push(self.boundary.wall[k]);
        }
        full
    }
}

impl NonlinearSystem for Bratu2d {
    type Jacobian = BandedSystem;

    fn dim(&self) -> usize {
        self.grid.unknowns()
    }

    fn residual(&self, u: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim(), u)?;
        let e = checked_exp(u)?;
        let mut r = self.matrix.apply(u);
        for ((ri, bi), ei) in r.iter_mut().zip(&self.boundary.bb).zip(e) {
            *ri += bi + self.q * ei;
        }
        Ok(r)
    }

    fn jacobian(&self, u: &[f64]) -> Result<BandedSystem> {
        check_len(self.dim(), u)?;
        let e: Vec<f64> = checked_exp(u)?.into_iter().map(|v| self.q * v).collect();
        let mut j = self.matrix.clone();
        j.add_to_diagonal(&e);
        Ok(j)
    }
}

pub fn residual_2d(s: &State2D, q: f64) -> Result<Vec<f64>> {
    Bratu2d::new(s.grid, q)?.residual(&s.u)
}

pub fn jacobian_2d(s: &State2D, q: f64) -> Result<BandedSystem> {
    Bratu2d::new(s.grid, q)?.jacobian(&s.u)
}

/// Solution of the problem linearized with `e^U ≈ 1`.
pub fn initial_guess_2d(q: f64, grid: &Grid2D) -> Result<State2D> {
    let problem = Bratu2d::new(*grid, q)?;
    State2D::new(*grid, problem.initial_guess()?)
}
