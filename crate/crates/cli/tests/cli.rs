use areal_mahler::specfun::l_chi3_2;
use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_areal-mahler")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Rows of a CSV document as maps from header to cell.
fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().expect("header").split(',').map(String::from).collect();
    lines
        .map(|line| {
            // quoted cells in these tests never contain quotes themselves
            let mut cells = Vec::new();
            let mut cur = String::new();
            let mut quoted = false;
            for ch in line.chars() {
                match ch {
                    '"' => quoted = !quoted,
                    ',' if !quoted => cells.push(std::mem::take(&mut cur)),
                    _ => cur.push(ch),
                }
            }
            cells.push(cur);
            header.iter().cloned().zip(cells).collect()
        })
        .collect()
}

fn field(row: &std::collections::HashMap<String, String>, name: &str) -> f64 {
    row[name].parse().unwrap()
}

#[test]
fn measure_values() {
    let out = run(&["mahler", "--family", "qk", "--k", "1", "--areal"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert!((field(&rows[0], "value_re") - 0.181_650_509_823_419_975_804).abs() < 1e-12);

    let out = run(&["mahler", "--family", "xyk", "--k", "5"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(field(&rows[0], "value_re"), 5f64.ln());
    assert_eq!(rows[0]["method"], "shortcut");

    let s3 = 3f64.sqrt();
    let at_one = 3.0 * s3 / (4.0 * PI) * l_chi3_2() + 1.0 / 6.0 - 11.0 * s3 / (16.0 * PI);
    let out = run(&["mahler", "--k", "1", "--areal", "--all-routes", "--tol", "1e-9", "--samples", "2e5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let tol = if row["method"] == "monte-carlo" { 4.0 * field(row, "err") } else { 1e-9 };
        assert!((field(row, "value_re") - at_one).abs() <= tol, "{row:?}");
    }
}

#[test]
fn json_lines_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.jsonl");
    let out = run(&["mahler", "--k", "0.5,1,3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 3);
    assert_eq!(records[2]["value_re"].as_f64().unwrap(), 3f64.ln());
    assert!(records.iter().all(|r| r.get("wall_time_ms").is_none()));
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn identical_flags_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let args = ["mahler", "--family", "qk", "--k", "1,2", "--areal", "--route", "montecarlo", "--samples", "1e5"];
        let mut args: Vec<&str> = args.to_vec();
        args.extend(["--seed", "7", "--out", path.to_str().unwrap()]);
        assert!(run(&args).status.success());
    }
    assert_eq!(read(&a), read(&b));
}

#[test]
fn zeros_in_boxes() {
    let out = run(&["zeros", "--k", "1", "--im", "5:8", "--check-winding"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 2);
    assert!((field(&rows[0], "value_re") + 3.4729).abs() < 1e-4);
    assert!((field(&rows[0], "value_im") - 6.767).abs() < 1e-3);
    assert_eq!(rows[1]["quantity"], "winding number");
    assert_eq!(field(&rows[1], "value_re"), 1.0);

    let out = run(&["zeros", "--k", "1", "--im", "8:11"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "linear-difference", "--grid", "50"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert!(rows.iter().all(|r| r["status"] == "pass" && field(r, "residual") < 1e-10));

    let out = run(&["verify", "--suite", "moment-identities", "--k", "0.5,1,2,3"]);
    assert!(out.status.success());
    assert_eq!(csv_rows(&stdout(&out)).len(), 12);

    let out = run(&["verify", "--suite", "montecarlo", "--samples", "1e6", "--seed", "42"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn plot_grids() {
    let out = run(&["plotdata", "--k", "1", "--re", "-1:1", "--im", "-1:1", "--n-re", "3", "--n-im", "3"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 9);
    let center = &rows[4];
    assert_eq!((field(center, "s_re"), field(center, "s_im")), (0.0, 0.0));
    assert!((field(center, "z_re") - 1.0).abs() < 1e-12);
    for row in rows.iter().filter(|r| field(r, "s_im") == 0.0) {
        assert!(field(row, "z_im").abs() <= 1e-12);
    }

    // |Z| has its minimum over this patch at the grid node nearest the first zero
    let out = run(&["plotdata", "--k", "1", "--re", "-3.6:-3.35", "--im", "6.65:6.9", "--n-re", "11", "--n-im", "11"]);
    let rows = csv_rows(&stdout(&out));
    let smallest = rows
        .iter()
        .min_by(|a, b| {
            let m = |r: &std::collections::HashMap<String, String>| field(r, "z_re").hypot(field(r, "z_im"));
            m(a).total_cmp(&m(b))
        })
        .unwrap();
    assert!((field(smallest, "s_re") + 3.4729).abs() <= 0.0125 + 1e-9);
    assert!((field(smallest, "s_im") - 6.767).abs() <= 0.0125 + 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["mahler", "--k", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["mahler", "--k", "1", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["mahler", "--family", "qk", "--route", "cm", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["zeros", "--im", "5:3"]).status.code(), Some(2));
    // the product-family measure requires k > 0
    let out = run(&["mahler", "--family", "qk", "--k", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
