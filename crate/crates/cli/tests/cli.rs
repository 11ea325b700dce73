use std::path::Path;
use std::process::{Command, Output};

use bratu_cli::output::parse_csv;
use bratu_core::{make_grid_1d, make_grid_2d, newton_solve, Bratu1d, Bratu2d, NewtonConfig};

fn bratu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bratu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

#[test]
fn solve1d_csv_round_trips_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sol.csv");
    let plot = dir.path().join("sol.gp");
    let o = bratu(&[
        "solve1d",
        "--q",
        "0.5",
        "--nodes",
        "41",
        "--analytic",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("converged in"));

    let (header, cols) = parse_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(header, ["x", "u", "u_exact", "error"]);
    assert_eq!(cols[0].len(), 41);
    assert_eq!(*cols[1].last().unwrap(), 0.0);

    let grid = make_grid_1d(41).unwrap();
    let problem = Bratu1d::new(grid, 0.5).unwrap();
    let (mut u, _) = newton_solve(&problem, problem.initial_guess(), &NewtonConfig::default());
    u.push(0.0);
    assert_eq!(bits(&cols[1]), bits(&u));
    assert_eq!(bits(&cols[0]), bits(&grid.nodes()));

    let script = std::fs::read_to_string(&plot).unwrap();
    assert!(script.contains("'sol.csv'"));
    assert!(script.contains("analytic"));
}

#[test]
fn solve2d_csv_includes_dirichlet_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s2.csv");
    let plots = dir.path().join("plots");
    std::fs::create_dir(&plots).unwrap();
    let plot = plots.join("s2.gp");
    let o = bratu(&[
        "solve2d",
        "--q",
        "0.8",
        "--ell",
        "1",
        "--dx",
        "0.1",
        "--dy",
        "0.1",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, cols) = parse_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(header, ["x", "y", "u"]);
    assert_eq!(cols[2].len(), 121);

    let grid = make_grid_2d(11, 11, 1.0).unwrap();
    let problem = Bratu2d::new(grid, 0.8).unwrap();
    let (u, _) = newton_solve(
        &problem,
        problem.initial_guess().unwrap(),
        &NewtonConfig::default(),
    );
    assert_eq!(bits(&cols[2]), bits(&problem.node_values(&u)));
    for k in 0..11 {
        assert_eq!(cols[2][k * 11], 0.0);
        let g = if k >= 5 { 1.0 } else { 0.0 };
        assert_eq!(cols[2][k * 11 + 10], g);
        assert_eq!(cols[1][k * 11], grid.y_node(k));
    }
    let script = std::fs::read_to_string(&plot).unwrap();
    assert!(script.contains("splot '../s2.csv'"));
}

#[test]
fn json_document_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.json");
    let o = bratu(&[
        "solve2d",
        "--q",
        "0.3",
        "--dx",
        "0.25",
        "--dy",
        "0.125",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["config"]["q"], 0.3);
    assert_eq!(doc["report"]["converged"], true);
    assert_eq!(doc["report"]["failure_kind"], "None");
    let iterations = doc["report"]["iterations"].as_u64().unwrap() as usize;
    assert_eq!(
        doc["report"]["residual_history"].as_array().unwrap().len(),
        iterations + 1
    );
    assert_eq!(doc["solution"]["grid"]["nx"], 5);
    assert_eq!(doc["solution"]["grid"]["ny"], 9);
    assert_eq!(doc["solution"]["grid"]["ordering"], "y-major");
    assert_eq!(doc["solution"]["values"].as_array().unwrap().len(), 45);

    let path = dir.path().join("one.json");
    let o = bratu(&[
        "solve1d",
        "--q",
        "0.5",
        "--nodes",
        "11",
        "--analytic",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["solution"]["grid"]["nodes"], 11);
    assert_eq!(doc["solution"]["exact"].as_array().unwrap().len(), 11);
}

#[test]
fn non_convergence_exits_one() {
    let o = bratu(&["solve1d", "--q", "1.0", "--nodes", "101"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Newton did not converge (failure:"));

    let o = bratu(&["sweep", "--q-min", "0.9", "--q-max", "0.95", "--dq", "0.05"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let cases: &[(&[&str], &str)] = &[
        (&["solve1d", "--q", "x", "--nodes", "11"], "--q"),
        (&["solve1d", "--q", "0.5", "--nodes", "2"], "--nodes"),
        (&["solve1d", "--q=-0.5", "--nodes", "11"], "--q"),
        (
            &["solve1d", "--q", "0.9", "--nodes", "11", "--analytic"],
            "--analytic",
        ),
        (
            &["solve1d", "--q", "0.5", "--nodes", "11", "--plot", "p.gp"],
            "--plot",
        ),
        (
            &["solve1d", "--q", "0.5", "--nodes", "11", "--tol", "0"],
            "--tol",
        ),
        (
            &["solve2d", "--q", "0.5", "--dx", "0.3", "--dy", "0.1"],
            "--dx",
        ),
        (
            &["solve2d", "--q", "0.5", "--dx", "0.1", "--dy", "0"],
            "--dy",
        ),
        (
            &[
                "solve2d", "--q", "0.5", "--ell", "0", "--dx", "0.1", "--dy", "0.1",
            ],
            "--ell",
        ),
        (
            &["sweep", "--q-min", "0.5", "--q-max", "0.4", "--dq", "0.1"],
            "--q-max",
        ),
        (
            &["sweep", "--q-min", "0.1", "--q-max", "0.4", "--dq", "0"],
            "--dq",
        ),
        (
            &[
                "sweep", "--q-min", "0.1", "--q-max", "0.4", "--dq", "0.1", "--refine", "-1",
            ],
            "--refine",
        ),
        (
            &[
                "order",
                "--q",
                "0.95",
                "--base-nodes",
                "11",
                "--levels",
                "3",
            ],
            "--q",
        ),
        (
            &["order", "--q", "0.5", "--base-nodes", "3", "--levels", "3"],
            "--base-nodes",
        ),
        (
            &["order", "--q", "0.5", "--base-nodes", "11", "--levels", "1"],
            "--levels",
        ),
        (
            &["solve1d", "--q", "0.5", "--nodes", "11", "--bogus"],
            "--bogus",
        ),
        (&["critical", "--extra"], "--extra"),
    ];
    for (args, flag) in cases {
        let o = bratu(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn paper_literal_flag_prints_a_note() {
    let o = bratu(&[
        "solve2d",
        "--q",
        "0.5",
        "--dx",
        "0.1",
        "--dy",
        "0.1",
        "--paper-literal-bb",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("note: --paper-literal-bb"));
    let o = bratu(&[
        "solve2d", "--q", "0.5", "--dx", "0.1", "--dy", "0.1", "--g-zero",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).is_empty());
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = bratu_cli::run(["bratu", "critical"], &mut out, &mut err);
    assert_eq!(code, 0);
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text, stdout(&bratu(&["critical"])));
    assert!(Path::new(env!("CARGO_BIN_EXE_bratu")).exists());
}
