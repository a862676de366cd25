use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn lgi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgi"))
        .args(args)
        .env_remove("LGI_THREADS")
        .output()
        .expect("spawn lgi")
}

fn lgi_in(dir: &Path, args: &[&str]) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", dir.to_str().unwrap()]);
    lgi(&all)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Rows of grid.csv as `[x, beta, q_pp, q_pm, q_mp, q_mm]`.
fn grid(dir: &Path) -> (String, Vec<[f64; 6]>) {
    let text = std::fs::read_to_string(dir.join("grid.csv")).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4], v[5]]
        })
        .collect();
    (header, rows)
}

fn min_col(rows: &[[f64; 6]], col: usize) -> f64 {
    rows.iter().map(|r| r[col]).fold(f64::INFINITY, f64::min)
}

#[test]
fn vacuum_scan_finds_analytic_minimum_and_contour() {
    let tmp = TempDir::new().unwrap();
    let o = lgi_in(
        tmp.path(),
        &["osc-scan", "--nu", "0.5", "--r", "0", "--beta-range", "0:3:200", "--theta-range", "0:6.2832:200"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = grid(tmp.path());
    assert_eq!(header, "theta,beta,q_pp,q_pm,q_mp,q_mm");
    assert_eq!(rows.len(), 200 * 200);
    assert!((min_col(&rows, 5) + 0.0887).abs() < 5e-4);
    // beta = 0 row: q-- = 0, q++ = 1
    for r in rows.iter().take(200) {
        assert_eq!(r[1], 0.0);
        assert!(r[5].abs() < 1e-15 && (r[2] - 1.0).abs() < 1e-15);
    }

    let m = json(&tmp.path().join("manifest.json"));
    let contours = m["extra"]["contours"].as_array().unwrap();
    let hit = contours.iter().any(|c| {
        let at = c["min_at"].as_array().unwrap();
        c["outcome"] == "--"
            && c["closed"] == true
            && (at[0].as_f64().unwrap() - std::f64::consts::PI).abs() < 0.05
            && (at[1].as_f64().unwrap() - 0.45).abs() < 0.02
    });
    assert!(hit, "no closed -- region around (pi, 0.45)");
    let text = std::fs::read_to_string(tmp.path().join("contours.csv")).unwrap();
    assert!(text.starts_with("region_id,vertex_index,x,y\n"));
    let ids: std::collections::BTreeSet<usize> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ids.len(), contours.len());
}

#[test]
fn warm_state_has_no_negative_q_mm() {
    let tmp = TempDir::new().unwrap();
    let o = lgi_in(tmp.path(), &["osc-scan", "--nu", "0.75", "--r", "0", "--beta", "0.5", "--theta-range", "0:6.2832:400"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (_, rows) = grid(tmp.path());
    assert_eq!(rows.len(), 400);
    assert!(min_col(&rows, 5) >= 0.0);
}

#[test]
fn usage_errors_exit_2_with_reason() {
    let o = lgi(&["osc-scan", "--r", "0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--nu"));

    let o = lgi(&["field-scan", "--omega-ell", "0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("omega_ell"), "{}", stderr(&o));

    for bad in [
        vec!["osc-scan", "--nu", "0.4"],
        vec!["osc-scan", "--nu", "0.5", "--beta-range", "3:0:10"],
        vec!["osc-scan", "--nu", "0.5", "--outcomes", "+0"],
        vec!["optimize", "--restarts", "0"],
        vec!["optimize", "--bounds", "1:0,0:2,0:3"],
        vec!["oracle-check", "--samples", "0"],
        vec!["oracle-check", "--tol", "-1"],
    ] {
        let o = lgi(&bad);
        assert_eq!(code(&o), 2, "{bad:?}: {}", stderr(&o));
        assert_eq!(stderr(&o).trim().lines().filter(|l| l.starts_with("error")).count(), 1, "{bad:?}");
    }
}

#[test]
fn numerical_failure_exits_3_with_grid_index() {
    let tmp = TempDir::new().unwrap();
    let o = lgi_in(
        tmp.path(),
        &["osc-scan", "--nu", "0.6", "--alpha", "1,0", "--r", "8", "--beta", "1", "--theta-range", "0:1:2"],
    );
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("ix = 0, iy = 0"), "{}", stderr(&o));
}

#[test]
fn field_scans() {
    let tmp = TempDir::new().unwrap();
    let o = lgi_in(tmp.path(), &["field-scan", "--omega-ell", "2", "--beta-range", "0:3:60", "--tau-range", "0:8:80"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = grid(tmp.path());
    assert!(header.starts_with("tau,beta,"));
    assert!(min_col(&rows, 5) < 0.0);

    // At beta = 0 the field q-- still dips below zero near tau ~ 2.8; the
    // closed form agrees with brute-force quadrature there.
    let o = lgi_in(tmp.path(), &["field-scan", "--omega-ell", "1", "--beta", "0", "--tau-range", "0:8:400"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (_, rows) = grid(tmp.path());
    let (tau, q) = rows
        .iter()
        .map(|r| (r[0], r[5]))
        .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    assert!(q < -0.018 && (tau - 2.78).abs() < 0.05, "{tau} {q}");
    let s = lgi_core::field::FieldScenario::new(1.0, lgi_core::Complex::new(0.0, 0.0), tau).unwrap();
    let quad = lgi_core::field::oracle::field_table_by_quadrature(&s, 48, lgi_core::Execution::Parallel).unwrap();
    assert!((quad.q_mm - q).abs() < 1e-9);
}

fn optimum(dir: &Path, extra: &[&str]) -> Value {
    let mut args = vec!["optimize", "--system", "osc"];
    args.extend(extra);
    let o = lgi_in(dir, &args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 1);
    json(&dir.join("optimum.json"))
}

#[test]
fn optimize_oscillator() {
    let tmp = TempDir::new().unwrap();
    let v = optimum(tmp.path(), &["--outcome", "--"]);
    let q = v["q"].as_f64().unwrap();
    assert!((-0.1250..=-0.1225).contains(&q), "{q}");
    assert_eq!(v["restarts"].as_array().unwrap().len(), 16);
    assert_eq!(v["seed"], 0);
    assert!((v["params"]["r"].as_f64().unwrap() - 0.31).abs() < 0.02);

    let pinned = optimum(tmp.path(), &["--outcome=--", "--bounds", "0:0,0:2,0:6.283185307179586"]);
    assert!((pinned["q"].as_f64().unwrap() + 0.0887).abs() < 5e-4);
    assert_eq!(pinned["params"]["r"], 0.0);

    let reseeded = optimum(tmp.path(), &["--outcome", "--", "--seed", "42"]);
    assert!((reseeded["q"].as_f64().unwrap() - q).abs() < 1e-4);

    let aliased = optimum(tmp.path(), &["--outcome", "mm"]);
    assert_eq!(aliased["q"], v["q"]);
}

#[test]
fn oracle_check_default_passes() {
    let tmp = TempDir::new().unwrap();
    let o = lgi_in(tmp.path(), &["oracle-check"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&tmp.path().join("oracle_report.json"));
    assert_eq!(r["records"].as_array().unwrap().len(), 100);
    assert!(r["max_delta"].as_f64().unwrap() < 1e-6);
    for rec in r["records"].as_array().unwrap() {
        assert_eq!(rec["displacement"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn tampered_closed_form_exits_4() {
    let tmp = TempDir::new().unwrap();
    let o = lgi_in(tmp.path(), &["oracle-check", "--samples", "4", "--seed", "9", "--inject-error", "1e-5"]);
    assert_eq!(code(&o), 4);
    let e = stderr(&o);
    assert!(e.contains("alpha") && e.contains("beta") && e.contains("nu"), "{e}");
    let r = json(&tmp.path().join("oracle_report.json"));
    assert_eq!(r["passed"], false);
}

#[test]
fn reruns_are_byte_identical_and_manifest_digests_match() {
    let tmp = TempDir::new().unwrap();
    let args = ["osc-scan", "--nu", "0.6", "--alpha", "0.3,-0.2", "--r", "0.4", "--beta-range", "0:2.5:30", "--theta-range", "0:6.3:40"];
    let read = |name: &str| std::fs::read(tmp.path().join(name)).unwrap();
    assert_eq!(code(&lgi_in(tmp.path(), &args)), 0);
    let first = (read("grid.csv"), read("contours.csv"), json(&tmp.path().join("manifest.json")));
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(code(&lgi_in(tmp.path(), &seq)), 0);
    assert_eq!(first.0, read("grid.csv"));
    assert_eq!(first.1, read("contours.csv"));

    let m = json(&tmp.path().join("manifest.json"));
    for key in ["command", "version", "parameters", "files", "extra"] {
        assert_eq!(first.2[key], m[key], "{key}");
    }
    for f in m["files"].as_array().unwrap() {
        let bytes = read(f["name"].as_str().unwrap());
        assert_eq!(f["sha256"].as_str().unwrap(), hex::encode(Sha256::digest(&bytes)));
    }
    assert!(!String::from_utf8(read("grid.csv")).unwrap().contains('\r'));
}

#[test]
fn thread_cap_from_environment() {
    let tmp = TempDir::new().unwrap();
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_lgi"))
            .args(["osc-scan", "--nu", "0.5", "--beta-range", "0:1:5", "--theta-range", "0:1:5", "--out"])
            .arg(tmp.path())
            .env("LGI_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2")), 0);
    assert_eq!(code(&run("0")), 2);
    assert_eq!(code(&run("many")), 2);
}
