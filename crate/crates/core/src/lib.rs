//! Steady thermal-explosion (Frank-Kamenetskii / Bratu) solvers.
//!
//! The problem `∇²u + q·eᵘ = 0` is discretized with central differences in
//! one dimension (Neumann at `x = 0` via a ghost node, Dirichlet at `x = 1`)
//! and in two dimensions (Dirichlet in `x`, Neumann in `y`), and solved with
//! plain Newton iteration. The closed-form 1D solution serves as an oracle
//! for the convergence-order study, and the fold of the μ-relation gives the
//! critical parameter that the threshold sweep reproduces numerically.

pub mod analytic;
pub mod discretize1d;
pub mod discretize2d;
pub mod error;
pub mod linear;
pub mod model;
pub mod newton;
pub mod studies;

pub use analytic::{analytic_solution, critical_q, solve_mu, AnalyticSolution, Fold, MuBranch};
pub use discretize1d::{
    assemble_matrix_1d, initial_guess_1d, jacobian_1d, residual_1d, Bratu1d, LeftBoundary, State1D,
    TriDiagSystem,
};
pub use discretize2d::{
    assemble_matrix_2d, assemble_rhs_2d, initial_guess_2d, jacobian_2d, residual_2d, BandedSystem,
    BoundaryScaling, BoundaryVector, Bratu2d, State2D,
};
pub use error::{Error, Result};
pub use linear::{solve_banded, solve_tridiag};
pub use model::{
    boundary_g, dimensionless_q, make_grid_1d, make_grid_2d, step_boundary, Grid1D, Grid2D,
    PhysicalParams, ReactionParam,
};
pub use newton::{newton_solve, FailureKind, NewtonConfig, NewtonReport, NonlinearSystem};
pub use studies::{
    convergence_order, refine_threshold, threshold_sweep, ConvergenceReport, SweepResult,
};
