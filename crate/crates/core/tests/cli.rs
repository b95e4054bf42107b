//! End-to-end runs of the `radialprop` binary: exit codes, file layout,
//! determinism and the verify report.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_radialprop");

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("RADIALPROP_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.toml");
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

/// Small radial grid so evolve runs stay quick.
const SMALL: &str = r#"
times = [0.5]
[grid]
kind = "radial"
r_min = 0.0
r_max = 20.0
points = 512
"#;

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = rdr.records().map(|r| r.unwrap().iter().map(str::to_owned).collect()).collect();
    (header, rows)
}

fn p_inner(dir: &Path, dim: u8) -> f64 {
    let (header, rows) = read_csv(&dir.join(format!("diagnostics_{dim}d.csv")));
    assert_eq!(header, ["t", "p_inner", "p_outer", "mean_r", "rms_width", "norm"]);
    rows[0][1].parse().unwrap()
}

#[test]
fn evolve_writes_states_and_diagnostics() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let out = tmp.path().join("o");
    let o = run(&["evolve", "--config", &cfg, "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out.join("evolve_2d_t000.csv"));
    assert_eq!(header, ["r", "re_u", "im_u", "abs2_u"]);
    assert_eq!(rows.len(), 512);
    assert!(p_inner(&out, 2) > 0.5);
}

#[test]
fn dimensions_differ_and_3d_stays_balanced() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let (a, b) = (tmp.path().join("two"), tmp.path().join("three"));
    for (dir, dim) in [(&a, "2"), (&b, "3")] {
        let o = run(&["evolve", "--config", &cfg, "--t", "0.25", "--dim", dim, "--out", dir.to_str().unwrap()], &[]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (two, three) = (p_inner(&a, 2), p_inner(&b, 3));
    assert_ne!(two, three);
    assert!((three - 0.5).abs() < (two - 0.5) / 10.0, "{two} {three}");
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let dirs = [tmp.path().join("a"), tmp.path().join("b"), tmp.path().join("c")];
    let envs: [&[(&str, &str)]; 3] = [&[], &[("RADIALPROP_THREADS", "4")], &[("RADIALPROP_THREADS", "1")]];
    for (dir, env) in dirs.iter().zip(envs) {
        let o = run(&["evolve", "--config", &cfg, "--out", dir.to_str().unwrap()], env);
        assert_eq!(code(&o), 0);
    }
    for name in ["evolve_2d_t000.csv", "diagnostics_2d.csv"] {
        let first = std::fs::read(dirs[0].join(name)).unwrap();
        for d in &dirs[1..] {
            assert_eq!(first, std::fs::read(d.join(name)).unwrap(), "{name}");
        }
    }
}

#[test]
fn config_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let out = out.to_str().unwrap();
    let cases = [
        "times = []",
        "times = [0.5, 0.25]",
        "dimension = 5",
        "no_such_key = 1",
        "command = \"green\"",
        "[packet]\nr0 = 2.0\nsigma = 1.0",
        "[grid]\nkind = \"radial\"\nr_min = 0.0\nr_max = 12.0\npoints = 100",
    ];
    for body in cases {
        let cfg = write_config(tmp.path(), body);
        let o = run(&["evolve", "--config", &cfg, "--out", out], &[]);
        assert_eq!(code(&o), 2, "{body}: {}", String::from_utf8_lossy(&o.stderr));
        let stderr = String::from_utf8_lossy(&o.stderr);
        assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
    }
    assert_eq!(code(&run(&["evolve", "--config", "/no/such/file.toml"], &[])), 2);
    assert_eq!(code(&run(&["evolve", "--dim", "4"], &[])), 2);
    assert_eq!(code(&run(&["frobnicate"], &[])), 2);
    assert_eq!(code(&run(&["verify", "--only", "no_such_check", "--out", out], &[])), 2);
    assert_eq!(code(&run(&["evolve", "--only", "unitarity", "--out", out], &[])), 2);
    assert_eq!(code(&run(&["verify", "--only", "zero_bunching", "--out", out], &[("RADIALPROP_THREADS", "zero")])), 2);
}

#[test]
fn numerical_failure_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let out = tmp.path().join("o");
    // α·(√2σ)² = 1000 exceeds the oscillation budget
    let o = run(&["evolve", "--config", &cfg, "--t", "0.001", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_single_check_and_report() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let o = run(&["verify", "--only", "hankel_recombination", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out.join("verify_report.json")).unwrap()).unwrap();
    let entries = report.as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["check_name"], "hankel_recombination");
    assert_eq!(entries[0]["status"], "pass");
    assert!(entries[0]["max_error"].as_f64().unwrap() <= entries[0]["tolerance"].as_f64().unwrap());
}

#[test]
fn tampered_tolerance_fails_in_a_controlled_way() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[verify]\ntolerance = 1e-20");
    let out = tmp.path().join("o");
    let o = run(
        &["verify", "--config", &cfg, "--only", "hankel_recombination,bessel_j0_zeros,huygens_wake", "--out", out.to_str().unwrap()],
        &[],
    );
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out.join("verify_report.json")).unwrap()).unwrap();
    for e in report.as_array().unwrap() {
        assert_eq!(e["status"], "fail");
        assert_eq!(e["tolerance"], 1e-20);
        assert!(e["max_error"].as_f64().unwrap().is_finite());
    }
}

#[test]
fn dalembert_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let o = run(&["dalembert", "--t", "-1,2", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out.join("dalembert_2d.csv"));
    assert_eq!(header, ["t", "r", "g2_closed", "g2_spectral", "region"]);
    for row in &rows {
        let (t, r): (f64, f64) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        if t < 0.0 {
            assert_eq!((row[2].as_str(), row[3].as_str()), ("0.0", "0.0"));
            continue;
        }
        if r > 2.0 + 1e-9 {
            assert_eq!(row[4], "before_front");
            assert_eq!(row[2], "0.0");
        }
        if (r - 2.0).abs() > 0.1 + 1e-9 {
            let closed: f64 = row[2].parse().unwrap();
            let spectral: f64 = row[3].parse().unwrap();
            let err = if closed > 0.0 { (spectral - closed).abs() / closed } else { spectral.abs() };
            assert!(err < 1e-4, "r = {r}: {closed} vs {spectral}");
        }
    }
    let front = rows.iter().find(|r| r[0] == "2.0" && r[1] == "2.0").unwrap();
    assert_eq!((front[2].as_str(), front[3].as_str(), front[4].as_str()), ("", "", "on_front"));

    let (header, rows) = read_csv(&out.join("dalembert_3d_smeared.csv"));
    assert_eq!(header, ["t", "f_name", "value"]);
    assert!(rows.iter().any(|r| r[0] == "2.0" && r[1] == "one" && r[2] == "2.0"));
    assert!(rows.iter().filter(|r| r[0] == "-1.0").all(|r| r[2] == "0.0"));
}

#[test]
fn json_format_and_green() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let o = run(&["green", "--dim", "3", "--t", "0.5", "--format", "json", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(out.join("green_3d.json")).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2048);
    for row in rows {
        let d = (row["re_g3"].as_f64().unwrap() - row["re_g3_spherical"].as_f64().unwrap()).abs();
        assert!(d < 1e-9, "{row}");
    }
    let o = run(&["green", "--t", "0.5", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0);
    let (header, rows) = read_csv(&out.join("green_2d.csv"));
    assert_eq!(header[4..8], ["re_g2_bessel", "im_g2_bessel", "re_g2_hankel", "im_g2_hankel"]);
    assert_eq!(rows[0][6], "");
}

#[test]
fn cartesian_evolve_with_oracle_check() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "times = [0.5]\n[grid]\nkind = \"cartesian\"\nextent = 20.0\npoints = 24\n");
    let out = tmp.path().join("o");
    let o = run(&["evolve", "--config", &cfg, "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (_, field) = read_csv(&out.join("evolve_cartesian_t000.csv"));
    assert_eq!(field.len(), 24 * 24);
    let (header, rows) = read_csv(&out.join("cartesian_check.csv"));
    assert_eq!(header, ["t", "l2_discrepancy", "equal_radius_mismatch"]);
    // coarse 24×24 sampling still gives pointwise agreement; the L2 value
    // is a trapezoid sum over the coarse grid
    assert!(rows[0][1].parse::<f64>().unwrap() < 1e-6, "{rows:?}");
    assert_eq!(code(&run(&["evolve", "--config", &cfg, "--dim", "3", "--out", out.to_str().unwrap()], &[])), 2);
}
