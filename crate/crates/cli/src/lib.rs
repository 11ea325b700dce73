//! Command-line driver: parses arguments, validates them against the solver
//! preconditions, runs the requested solve or study and writes results.
//!
//! Exit codes: 0 on success, 1 when a solve does not converge (or output
//! cannot be written), 2 on usage or validation errors.

pub mod args;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use bratu_core::discretize2d::assemble_rhs_2d_with;
use bratu_core::{
    analytic, critical_q, make_grid_1d, make_grid_2d, newton_solve, step_boundary, studies,
    BoundaryScaling, BoundaryVector, Bratu1d, Bratu2d, Grid2D, MuBranch, NewtonConfig,
    NewtonReport,
};
use clap::Parser;
use serde::Serialize;

use args::{
    Cli, Command, Format, NewtonArgs, OrderArgs, OutputArgs, Solve1dArgs, Solve2dArgs, SweepArgs,
};

/// Largest refinement depth accepted by `order`.
const MAX_LEVELS: usize = 16;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Solver(_) => 1,
        }
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("invalid {flag}: {msg}"))
}

type Outcome = Result<(), Failure>;

/// Parses `argv` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let rendered = e.to_string();
                let first = rendered
                    .lines()
                    .next()
                    .unwrap_or("error: invalid arguments");
                let _ = writeln!(err, "{first}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve1d(a) => solve1d(&a, out, err),
        Command::Solve2d(a) => solve2d(&a, out, err),
        Command::Sweep(a) => sweep(&a, out, err),
        Command::Order(a) => order(&a, out),
        Command::Critical => critical(out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Solver(m) => m,
            };
            let _ = writeln!(err, "error: {msg}");
            f.exit_code()
        }
    }
}

fn newton_config(a: &NewtonArgs) -> Result<NewtonConfig, Failure> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(usage("--tol", format!("must be positive, got {}", a.tol)));
    }
    if a.maxit == 0 {
        return Err(usage("--maxit", "must be at least 1"));
    }
    Ok(NewtonConfig {
        tol: a.tol,
        maxit: a.maxit,
        ..NewtonConfig::default()
    })
}

fn check_q(flag: &str, q: f64) -> Result<(), Failure> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(usage(
            flag,
            format!("must be finite and non-negative, got {q}"),
        ));
    }
    Ok(())
}

fn check_output(o: &OutputArgs) -> Result<(), Failure> {
    if o.plot.is_some() {
        if o.out.is_none() {
            return Err(usage("--plot", "requires --out for the data file"));
        }
        if o.format != Format::Csv {
            return Err(usage("--plot", "requires --format csv"));
        }
    }
    Ok(())
}

/// Node count for `extent / h` intervals; `h` must divide `extent`.
fn nodes_for_spacing(flag: &str, extent: f64, h: f64) -> Result<usize, Failure> {
    if !(h.is_finite() && h > 0.0) {
        return Err(usage(flag, format!("must be positive, got {h}")));
    }
    let intervals = extent / h;
    let rounded = intervals.round();
    if (intervals - rounded).abs() > 1e-9 * intervals.max(1.0) || rounded < 2.0 {
        return Err(usage(
            flag,
            format!("spacing {h} must divide {extent} into at least 2 equal intervals"),
        ));
    }
    if rounded > 1e6 {
        return Err(usage(flag, format!("spacing {h} gives too many nodes")));
    }
    Ok(rounded as usize + 1)
}

fn not_converged(report: &NewtonReport) -> Failure {
    Failure::Solver(format!(
        "Newton did not converge (failure: {}) after {} iterations, final residual {:.3e}",
        report.failure_kind,
        report.iterations,
        report.final_residual()
    ))
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Solver(format!("cannot write {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, doc: &T) -> Outcome {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| Failure::Solver(format!("cannot serialize results: {e}")))?;
    write_file(path, &(text + "\n"))
}

fn write_plot(o: &OutputArgs, script: impl Fn(&str) -> String) -> Outcome {
    if let (Some(plot), Some(data)) = (&o.plot, &o.out) {
        let rel = output::relative_to_script(plot, data);
        write_file(plot, &script(&rel.to_string_lossy()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Solve1dConfig {
    q: f64,
    nodes: usize,
    newton: NewtonConfig,
}

fn solve1d(a: &Solve1dArgs, out: &mut dyn Write, _err: &mut dyn Write) -> Outcome {
    check_q("--q", a.q)?;
    let grid = make_grid_1d(a.nodes).map_err(|e| usage("--nodes", e))?;
    let cfg = newton_config(&a.newton)?;
    check_output(&a.output)?;
    let exact = if a.analytic {
        let fold = critical_q();
        let sol = analytic::AnalyticSolution::new(a.q, MuBranch::Lower).map_err(|_| {
            usage(
                "--analytic",
                format!(
                    "requires 0 < q < q_crit = {:.6}, got q = {}",
                    fold.q_crit, a.q
                ),
            )
        })?;
        Some(
            grid.nodes()
                .iter()
                .map(|&x| sol.eval(x))
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };

    let problem = Bratu1d::new(grid, a.q).map_err(|e| usage("--q", e))?;
    let (u, report) = newton_solve(&problem, problem.initial_guess(), &cfg);
    if !report.converged {
        return Err(not_converged(&report));
    }
    let mut values = u;
    values.push(0.0);

    let _ = writeln!(
        out,
        "solve1d: q = {}, M = {}, dx = {:.6e}: converged in {} iterations, residual {:.6e}",
        a.q,
        grid.len(),
        grid.dx(),
        report.iterations,
        report.final_residual()
    );
    let _ = writeln!(out, "u(0) = {:.12}", values[0]);
    if let Some(e) = &exact {
        let max_err = values
            .iter()
            .zip(e)
            .map(|(v, w)| (v - w).abs())
            .fold(0.0, f64::max);
        let _ = writeln!(out, "max |u - u_exact| = {max_err:.6e}");
    }

    if let Some(path) = &a.output.out {
        match a.output.format {
            Format::Csv => write_file(path, &output::csv_1d(&grid, &values, exact.as_deref()))?,
            Format::Json => write_json(
                path,
                &output::Document {
                    config: Solve1dConfig {
                        q: a.q,
                        nodes: a.nodes,
                        newton: cfg,
                    },
                    report,
                    solution: output::Solution {
                        grid: output::Grid1dDescriptor::from(&grid),
                        values,
                        exact: exact.clone(),
                    },
                },
            )?,
        }
    }
    write_plot(&a.output, |csv| output::plot_1d(csv, a.q, exact.is_some()))
}

#[derive(Serialize)]
struct Solve2dConfig {
    q: f64,
    ell: f64,
    dx: f64,
    dy: f64,
    g_zero: bool,
    paper_literal_bb: bool,
    newton: NewtonConfig,
}

fn solve2d(a: &Solve2dArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_q("--q", a.q)?;
    if !(a.ell.is_finite() && a.ell > 0.0) {
        return Err(usage("--ell", format!("must be positive, got {}", a.ell)));
    }
    let nx = nodes_for_spacing("--dx", a.ell, a.dx)?;
    let ny = nodes_for_spacing("--dy", 1.0, a.dy)?;
    if nx.saturating_mul(ny) > 4_000_000 {
        return Err(usage("--dx", "grid is too large"));
    }
    let grid: Grid2D = make_grid_2d(nx, ny, a.ell).map_err(|e| usage("--dx", e))?;
    let cfg = newton_config(&a.newton)?;
    check_output(&a.output)?;

    let scaling = if a.paper_literal_bb {
        let same = (grid.dx() - grid.dy()).abs() <= 1e-12 * grid.dx();
        let _ = writeln!(
            err,
            "note: --paper-literal-bb scales g(y) by 1/dy^2 as printed; the 5-point stencil uses 1/dx^2 ({})",
            if same { "identical here since dx = dy" } else { "the results differ since dx != dy" }
        );
        BoundaryScaling::PaperLiteral
    } else {
        BoundaryScaling::InverseDxSquared
    };
    let boundary = if a.g_zero {
        BoundaryVector::zero(&grid)
    } else {
        assemble_rhs_2d_with(&grid, step_boundary, scaling)
    };
    let problem = Bratu2d::with_boundary(grid, a.q, boundary).map_err(|e| usage("--q", e))?;
    let u0 = problem
        .initial_guess()
        .map_err(|e| Failure::Solver(format!("initial guess: {e}")))?;
    let (u, report) = newton_solve(&problem, u0, &cfg);
    if !report.converged {
        return Err(not_converged(&report));
    }
    let values = problem.node_values(&u);
    let u_max = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let _ = writeln!(
        out,
        "solve2d: q = {}, ell = {}, dx = {}, dy = {} ({} x {} nodes, {} unknowns): converged in {} iterations, residual {:.6e}",
        a.q,
        a.ell,
        grid.dx(),
        grid.dy(),
        nx,
        ny,
        grid.unknowns(),
        report.iterations,
        report.final_residual()
    );
    let _ = writeln!(out, "max interior u = {u_max:.12}");

    if let Some(path) = &a.output.out {
        match a.output.format {
            Format::Csv => write_file(path, &output::csv_2d(&grid, &values))?,
            Format::Json => write_json(
                path,
                &output::Document {
                    config: Solve2dConfig {
                        q: a.q,
                        ell: a.ell,
                        dx: grid.dx(),
                        dy: grid.dy(),
                        g_zero: a.g_zero,
                        paper_literal_bb: a.paper_literal_bb,
                        newton: cfg,
                    },
                    report,
                    solution: output::Solution {
                        grid: output::Grid2dDescriptor::from(&grid),
                        values,
                        exact: None,
                    },
                },
            )?,
        }
    }
    write_plot(&a.output, |csv| output::plot_2d(csv, &grid, a.q))
}

fn sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if !(a.q_min.is_finite() && a.q_min > 0.0) {
        return Err(usage(
            "--q-min",
            format!("must be positive, got {}", a.q_min),
        ));
    }
    if !(a.q_max.is_finite() && a.q_max >= a.q_min) {
        return Err(usage(
            "--q-max",
            format!("must be at least --q-min, got {}", a.q_max),
        ));
    }
    if !(a.dq.is_finite() && a.dq > 0.0) {
        return Err(usage("--dq", format!("must be positive, got {}", a.dq)));
    }
    if (a.q_max - a.q_min) / a.dq > 1e6 {
        return Err(usage("--dq", "too many sweep points"));
    }
    if let Some(t) = a.refine {
        if !(t.is_finite() && t > 0.0) {
            return Err(usage("--refine", format!("must be positive, got {t}")));
        }
    }
    let grid = make_grid_1d(a.nodes).map_err(|e| usage("--nodes", e))?;
    let cfg = newton_config(&a.newton)?;

    let result = studies::threshold_sweep(a.q_min, a.q_max, a.dq, &grid, &cfg)
        .map_err(|e| usage("--q-min", e))?;
    let _ = writeln!(
        out,
        "{:>12}  {:>9}  {:>10}  {:>12}",
        "q", "converged", "iterations", "residual"
    );
    for ((q, c), r) in result
        .q_values
        .iter()
        .zip(&result.converged)
        .zip(&result.reports)
    {
        let _ = writeln!(
            out,
            "{q:>12.6}  {:>9}  {:>10}  {:>12.4e}",
            if *c { "yes" } else { "no" },
            r.iterations,
            r.final_residual()
        );
    }
    if result.non_monotone {
        let _ = writeln!(
            err,
            "warning: convergence is not monotone in q; q* is taken before the first failure"
        );
    }
    let Some(q_star) = result.q_star else {
        return Err(Failure::Solver(format!(
            "Newton did not converge for any q from {} (M = {})",
            a.q_min, a.nodes
        )));
    };
    let _ = writeln!(out, "q* = {q_star:.6}");
    match result.first_failure {
        Some(f) => {
            let _ = writeln!(out, "first failure = {f:.6}");
            if let Some(tol_q) = a.refine {
                let refined = studies::refine_threshold(q_star, f, &grid, &cfg, tol_q)
                    .map_err(|e| Failure::Solver(format!("refinement: {e}")))?;
                let _ = writeln!(out, "refined q* = {refined:.6} (bracket width < {tol_q:e})");
            }
        }
        None => {
            let _ = writeln!(out, "first failure = none");
            if a.refine.is_some() {
                let _ = writeln!(
                    err,
                    "warning: --refine skipped, no failing q in the sweep range"
                );
            }
        }
    }
    Ok(())
}

fn order(a: &OrderArgs, out: &mut dyn Write) -> Outcome {
    let fold = critical_q();
    if !(a.q.is_finite() && a.q > 0.0 && a.q < fold.q_crit) {
        return Err(usage(
            "--q",
            format!(
                "must satisfy 0 < q < q_crit = {:.6}, got {}",
                fold.q_crit, a.q
            ),
        ));
    }
    if a.base_nodes < 5 {
        return Err(usage(
            "--base-nodes",
            format!("must be at least 5, got {}", a.base_nodes),
        ));
    }
    if !(2..=MAX_LEVELS).contains(&a.levels) {
        return Err(usage(
            "--levels",
            format!("must be between 2 and {MAX_LEVELS}, got {}", a.levels),
        ));
    }
    if (a.base_nodes - 1)
        .checked_shl(a.levels as u32 - 1)
        .is_none_or(|m| m > 10_000_000)
    {
        return Err(usage("--levels", "finest grid is too large"));
    }
    let cfg = newton_config(&a.newton)?;
    let report = studies::convergence_order(a.q, a.base_nodes, a.levels, &cfg)
        .map_err(|e| Failure::Solver(e.to_string()))?;
    let _ = writeln!(
        out,
        "{:>8}  {:>12}  {:>14}  {:>8}",
        "M", "dx", "max error", "order"
    );
    for (i, (m, e)) in report.grid_sizes.iter().zip(&report.errors).enumerate() {
        let p = if i == 0 {
            String::from("-")
        } else {
            format!("{:.4}", report.orders[i - 1])
        };
        let _ = writeln!(
            out,
            "{m:>8}  {:>12.6e}  {e:>14.6e}  {p:>8}",
            report.spacings[i]
        );
    }
    let _ = writeln!(out, "fitted order = {:.4}", report.fitted_order());
    Ok(())
}

fn critical(out: &mut dyn Write) -> Outcome {
    let fold = critical_q();
    let _ = writeln!(out, "mu* = {:.12}", fold.mu_star);
    let _ = writeln!(out, "q_crit = {:.12}", fold.q_crit);
    Ok(())
}
