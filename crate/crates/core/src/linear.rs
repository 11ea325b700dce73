//! Direct linear solvers for the Newton correction equation.

use crate::discretize1d::TriDiagSystem;
use crate::discretize2d::BandedSystem;
use crate::error::{Error, Result};

/// Pivots smaller than this in magnitude are reported as singular.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// An operator that can solve `A·x = b` exactly (up to rounding).
pub trait DirectSolve {
    fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>>;
}

fn check_rhs(n: usize, rhs: &[f64]) -> Result<()> {
    if rhs.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: rhs.len(),
        });
    }
    Ok(())
}

fn check_pivot(row: usize, pivot: f64) -> Result<()> {
    if pivot.abs() < PIVOT_FLOOR || !pivot.is_finite() {
        return Err(Error::Singular { row, pivot });
    }
    Ok(())
}

/// Thomas elimination (no pivoting).
pub fn solve_tridiag(sys: &TriDiagSystem, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = sys.dim();
    check_rhs(n, rhs)?;
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];

    let mut pivot = sys.diag[0];
    check_pivot(0, pivot)?;
    if n > 1 {
        c[0] = sys.sup[0] / pivot;
    }
    x[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = sys.diag[i] - sys.sub[i - 1] * c[i - 1];
        check_pivot(i, pivot)?;
        if i + 1 < n {
            c[i] = sys.sup[i] / pivot;
        }
        x[i] = (rhs[i] - sys.sub[i - 1] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Banded LU with partial pivoting confined to the band; the upper bandwidth
/// of the factor grows to `lower + upper`.
pub fn solve_banded(sys: &BandedSystem, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = sys.dim();
    check_rhs(n, rhs)?;
    let kl = sys.lower();
    let ku = sys.upper() + kl;
    let width = kl + ku + 1;
    // row i holds columns i-kl ..= i+ku at offset (j + kl - i)
    let mut lu = vec![0.0; n * width];
    let at = |i: usize, j: usize| i * width + j + kl - i;
    for i in 0..n {
        for j in i.saturating_sub(kl)..=(i + sys.upper()).min(n - 1) {
            lu[at(i, j)] = sys.get(i, j);
        }
    }
    let mut perm = vec![0usize; n];
    for k in 0..n {
        let last_row = (k + kl).min(n - 1);
        let last_col = (k + ku).min(n - 1);
        let mut p = k;
        let mut best = lu[at(k, k)].abs();
        for i in k + 1..=last_row {
            let v = lu[at(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        perm[k] = p;
        if p != k {
            for j in k..=last_col {
                lu.swap(at(k, j), at(p, j));
            }
        }
        let pivot = lu[at(k, k)];
        check_pivot(k, pivot)?;
        for i in k + 1..=last_row {
            let l = lu[at(i, k)] / pivot;
            lu[at(i, k)] = l;
            if l != 0.0 {
                for j in k + 1..=last_col {
                    lu[at(i, j)] -= l * lu[at(k, j)];
                }
            }
        }
    }

    let mut x = rhs.to_vec();
    for k in 0..n {
        x.swap(k, perm[k]);
        let xk = x[k];
        for i in k + 1..=(k + kl).min(n - 1) {
            x[i] -= lu[at(i, k)] * xk;
        }
    }
    for k in (0..n).rev() {
        let mut acc = x[k];
        for j in k + 1..=(k + ku).min(n - 1) {
            acc -= lu[at(k, j)] * x[j];
        }
        x[k] = acc / lu[at(k, k)];
    }
    Ok(x)
}
