use std::process::Command;

use astar_dehn::cli::{run, CSV_HEADER};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("astar-dehn").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not JSON ({e}): {s}"))
}

#[test]
fn solve_beta_lands_on_circle() {
    let (code, out, _) = call(&["solve", "--side", "beta", "--p", "0", "--q", "2", "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let b = &v["beta"];
    let (re, im) = (
        b["param"]["re"].as_f64().unwrap(),
        b["param"]["im"].as_f64().unwrap(),
    );
    assert!(((re - 0.5).hypot(im - 0.5) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    assert!(b["residual"].as_f64().unwrap() < 1e-12);
    assert!(v["alpha"].is_null());
    assert_eq!(v["orientation_flags"].as_str().unwrap().len(), 8);
}

#[test]
fn solve_both_is_decoupled() {
    let (code, out, _) = call(&[
        "solve", "--side", "both", "--p", "3", "--q", "1", "--p2", "3", "--q2", "1", "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["coupled"]["discrepancy"].as_f64().unwrap() < 1e-10);
    // primitive integer coefficients carry a core geodesic
    let g = &v["alpha"]["core_geodesic"];
    let (p, q) = (3, 1);
    let (r, s) = (g["r"].as_i64().unwrap(), g["s"].as_i64().unwrap());
    assert_eq!(p * s - q * r, 1);
}

#[test]
fn zero_filling_exits_3_with_error_object() {
    let (code, out, _) = call(&["solve", "--side", "beta", "--p", "0", "--q", "0", "--json"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["error"]["kind"], "invalid_input");
}

#[test]
fn corner_filling_is_degenerate() {
    let (code, out, _) = call(&["solve", "--side", "beta", "--p", "2", "--q", "2", "--json"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["error"]["kind"], "degenerate_shape");
}

#[test]
fn inside_unit_square_does_not_converge() {
    let (code, out, _) = call(&[
        "solve", "--side", "alpha", "--p", "0.5", "--q", "0.2", "--json",
    ]);
    assert_eq!(code, 2);
    assert!(json(&out)["error"]["kind"].is_string());
}

#[test]
fn negative_coefficients_parse() {
    let (code, out, _) = call(&["solve", "--side", "alpha", "--p", "-5", "--q", "-2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("core geodesic"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(
        call(&["solve", "--side", "sideways", "--p", "1", "--q", "2"]).0,
        3
    );
    assert_eq!(call(&["frobnicate"]).0, 3);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn scan_grid_rows_and_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let (code, _, err) = call(&[
        "scan",
        "--side",
        "beta",
        "--p-range",
        "-6:6:3",
        "--q-range",
        "-6:6:3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 26);
    for row in &lines[1..] {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 14);
        let (p, q): (f64, f64) = (cells[2].parse().unwrap(), cells[3].parse().unwrap());
        let status = cells[13];
        if p == 0.0 && q == 0.0 {
            assert_eq!(status, "degenerate");
        } else {
            assert_eq!(status, "ok", "{row}");
            assert!(cells[11].parse::<f64>().unwrap() < 1e-10);
            // alpha side stays complete
            assert_eq!(cells[0], "");
            assert_eq!(cells[4].parse::<f64>().unwrap(), 0.5);
        }
    }
    // row-major: p outer, q inner
    assert!(lines[1].starts_with(",,-6.0000000000000000e0,-6.0000000000000000e0,"));
    assert!(lines[2].starts_with(",,-6.0000000000000000e0,-3.0000000000000000e0,"));
}

#[test]
fn scan_is_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "3", "8"] {
        let path = dir.path().join(format!("t{threads}.csv"));
        let (code, _, _) = call(&[
            "scan",
            "--side",
            "both",
            "--p-range",
            "-8:8:1.6",
            "--q-range",
            "-8:8:2",
            "--out",
            path.to_str().unwrap(),
            "--threads",
            threads,
        ]);
        assert_eq!(code, 0);
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
}

#[test]
fn bad_range_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let (code, _, err) = call(&[
        "scan",
        "--side",
        "beta",
        "--p-range",
        "1:0:1",
        "--q-range",
        "0:1:1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("range"));
}

#[test]
fn verify_json_and_exit_code() {
    let (code, out, _) = call(&["verify", "thm2", "--samples", "64", "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    let (code, text, _) = call(&["verify", "consistency", "--samples", "500", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(text.contains("PASS"));
}

#[test]
fn octagon_svg_symmetric_and_skewed() {
    let dir = tempfile::tempdir().unwrap();
    let sym = dir.path().join("sym.svg");
    assert_eq!(
        call(&[
            "octagon",
            "--omega",
            "0.5,0.5",
            "--tiles",
            "2",
            "--out",
            sym.to_str().unwrap()
        ])
        .0,
        0
    );
    let svg = std::fs::read_to_string(&sym).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="tile""#).count(), 4);
    assert_eq!(svg.matches(r#"class="tri""#).count(), 4);
    // R = i/2, S = 1/2, T = 1 + i/2, U = 1/2 + i
    for (x, y, label) in [
        ("0.000", "-500.000", "R"),
        ("500.000", "0.000", "S"),
        ("1000.000", "-500.000", "T"),
        ("500.000", "-1000.000", "U"),
    ] {
        assert!(svg.contains(&format!(r#"cx="{x}" cy="{y}""#)), "{label}");
    }
    let again = dir.path().join("again.svg");
    call(&[
        "octagon",
        "--omega",
        "0.5,0.5",
        "--tiles",
        "2",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(svg, std::fs::read_to_string(&again).unwrap());

    let skew = dir.path().join("skew.svg");
    assert_eq!(
        call(&[
            "octagon",
            "--omega",
            "0.9,0.1",
            "--out",
            skew.to_str().unwrap()
        ])
        .0,
        0
    );
    let outside = dir.path().join("out.svg");
    assert_eq!(
        call(&[
            "octagon",
            "--omega",
            "1.5,0.5",
            "--out",
            outside.to_str().unwrap()
        ])
        .0,
        3
    );
    assert!(!outside.exists());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_astar-dehn");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(
        status(&["solve", "--side", "beta", "--p", "0", "--q", "2"]),
        Some(0)
    );
    assert_eq!(
        status(&["solve", "--side", "beta", "--p", "0", "--q", "0"]),
        Some(3)
    );
    assert_eq!(
        status(&["solve", "--side", "beta", "--p", "0.3", "--q", "0.1"]),
        Some(2)
    );
}
