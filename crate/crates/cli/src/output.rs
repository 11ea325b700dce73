//! Solution file formats and gnuplot scripts.

use std::fmt::Write as _;
use std::path::{Component, Path, PathBuf};

use bratu_core::{Grid1D, Grid2D, NewtonReport};
use serde::Serialize;

/// 17 significant digits: enough to round-trip any `f64`.
pub fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// `x,u[,u_exact,error]`, one row per node including `x = 1`.
pub fn csv_1d(grid: &Grid1D, u: &[f64], exact: Option<&[f64]>) -> String {
    let mut s = String::from(if exact.is_some() {
        "x,u,u_exact,error\n"
    } else {
        "x,u\n"
    });
    for (j, v) in u.iter().enumerate() {
        let x = fmt_value(grid.node(j));
        match exact {
            Some(e) => writeln!(
                s,
                "{x},{},{},{}",
                fmt_value(*v),
                fmt_value(e[j]),
                fmt_value(v - e[j])
            ),
            None => writeln!(s, "{x},{}", fmt_value(*v)),
        }
        .expect("writing to a String cannot fail");
    }
    s
}

/// `x,y,u` in y-major order over the full lattice.
pub fn csv_2d(grid: &Grid2D, values: &[f64]) -> String {
    let mut s = String::from("x,y,u\n");
    for k in 0..grid.ny() {
        for j in 0..grid.nx() {
            let v = values[k * grid.nx() + j];
            writeln!(
                s,
                "{},{},{}",
                fmt_value(grid.x_node(j)),
                fmt_value(grid.y_node(k)),
                fmt_value(v)
            )
            .expect("writing to a String cannot fail");
        }
    }
    s
}

/// Parses a numeric CSV with a header row; returns the header and the columns.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or("empty file")?
        .split(',')
        .map(str::to_owned)
        .collect();
    let mut columns = vec![Vec::new(); header.len()];
    for (n, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(format!("row {} has {} fields", n + 1, fields.len()));
        }
        for (col, f) in columns.iter_mut().zip(fields) {
            col.push(f.parse().map_err(|e| format!("row {}: {e}", n + 1))?);
        }
    }
    Ok((header, columns))
}

#[derive(Debug, Serialize)]
pub struct Document<C: Serialize, G: Serialize> {
    pub config: C,
    pub report: NewtonReport,
    pub solution: Solution<G>,
}

#[derive(Debug, Serialize)]
pub struct Solution<G: Serialize> {
    pub grid: G,
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct Grid1dDescriptor {
    pub nodes: usize,
    pub dx: f64,
}

impl From<&Grid1D> for Grid1dDescriptor {
    fn from(g: &Grid1D) -> Self {
        Self {
            nodes: g.len(),
            dx: g.dx(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Grid2dDescriptor {
    pub nx: usize,
    pub ny: usize,
    pub ell: f64,
    pub dx: f64,
    pub dy: f64,
    pub ordering: &'static str,
}

impl From<&Grid2D> for Grid2dDescriptor {
    fn from(g: &Grid2D) -> Self {
        Self {
            nx: g.nx(),
            ny: g.ny(),
            ell: g.ell(),
            dx: g.dx(),
            dy: g.dy(),
            ordering: "y-major",
        }
    }
}

pub fn plot_1d(csv: &str, q: f64, analytic: bool) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set xlabel 'x'\nset ylabel 'u'\nset grid\n");
    let _ = writeln!(s, "set title 'u'''' + q e^u = 0, q = {q}'");
    let _ = write!(
        s,
        "plot '{csv}' using 1:2 skip 1 with linespoints title 'numerical'"
    );
    if analytic {
        s.push_str(", \\\n     '' using 1:3 skip 1 with lines title 'analytic'");
    }
    s.push('\n');
    s
}

pub fn plot_2d(csv: &str, grid: &Grid2D, q: f64) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set xlabel 'x'\nset ylabel 'y'\nset zlabel 'u'\n");
    let _ = writeln!(s, "set title 'q = {q}, ell = {}'", grid.ell());
    let _ = writeln!(s, "set dgrid3d {},{} splines", grid.ny(), grid.nx());
    s.push_str("set hidden3d\nset ticslevel 0\n");
    let _ = writeln!(s, "splot '{csv}' using 1:2:3 skip 1 with lines notitle");
    s
}

/// Path of `target` as seen from the directory containing `script`.
pub fn relative_to_script(script: &Path, target: &Path) -> PathBuf {
    let base = std::path::absolute(script.parent().unwrap_or(Path::new(".")))
        .unwrap_or_else(|_| PathBuf::from("."));
    let target_abs = std::path::absolute(target).unwrap_or_else(|_| target.to_path_buf());
    let base: Vec<Component> = base.components().collect();
    let tgt: Vec<Component> = target_abs.components().collect();
    let common = base.iter().zip(&tgt).take_while(|(a, b)| a == b).count();
    if common == 0 {
        return target_abs;
    }
    let mut rel = PathBuf::new();
    for _ in common..base.len() {
        rel.push("..");
    }
    for c in &tgt[common..] {
        rel.push(c.as_os_str());
    }
    rel
}
