use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bratu",
    version,
    about = "Finite-difference Newton solver for the steady thermal-explosion problem ∇²u + q·eᵘ = 0"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve u'' + q e^u = 0 on (0, 1) with u'(0) = 0, u(1) = 0.
    Solve1d(Solve1dArgs),
    /// Solve the 2D problem on (0, ell) x (0, 1) with step data on x = ell.
    Solve2d(Solve2dArgs),
    /// Scan q and report the last value for which Newton converges.
    Sweep(SweepArgs),
    /// Measure the grid convergence order against the analytic 1D solution.
    Order(OrderArgs),
    /// Print the analytic fold point (mu*, q_crit).
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct NewtonArgs {
    /// Residual 2-norm stopping tolerance.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Maximum Newton iterations.
    #[arg(long, default_value_t = 50)]
    pub maxit: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the solution to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write a gnuplot script plotting the CSV written with --out.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Solve1dArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    /// Node count M (grid spacing 1/(M-1)).
    #[arg(long)]
    pub nodes: usize,
    /// Compare against the analytic lower-branch solution.
    #[arg(long)]
    pub analytic: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub newton: NewtonArgs,
}

#[derive(Debug, Args)]
pub struct Solve2dArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    /// Aspect ratio of the vessel.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub ell: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dx: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dy: f64,
    /// Use g(y) = 0 on x = ell instead of the step.
    #[arg(long)]
    pub g_zero: bool,
    /// Scale the boundary vector by 1/dy^2 as printed, instead of 1/dx^2.
    #[arg(long)]
    pub paper_literal_bb: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub newton: NewtonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub q_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub q_max: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dq: f64,
    #[arg(long, default_value_t = 101)]
    pub nodes: usize,
    /// Bisect between q* and the first failure down to this bracket width.
    #[arg(long, allow_negative_numbers = true, value_name = "TOL_Q")]
    pub refine: Option<f64>,
    #[command(flatten)]
    pub newton: NewtonArgs,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long)]
    pub base_nodes: usize,
    #[arg(long)]
    pub levels: usize,
    #[command(flatten)]
    pub newton: NewtonArgs,
}
