use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use wirtinger::config::{parse_str, ConfigError};

const FIXTURE: &str = r#"{"exponents": [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18], "z": [0.2, 0.45, 0.7]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(config: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wirtinger")).arg("--config").arg(config).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn fixture_config_round_trips() {
    let v = parse_str(FIXTURE, false).unwrap();
    assert_eq!(v.exponents.real_parts(), [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18]);
    let echoed = serde_json::to_string(&v.config).unwrap();
    let again = parse_str(&echoed, false).unwrap();
    assert_eq!(again.config, v.config);
}

#[test]
fn toml_and_lauricella_block_accepted() {
    let text = "z = [0.2, 0.45, 0.7]\n[lauricella]\na = 0.36\nb1 = 0.3\nb2 = 0.2\nb3 = -0.1\nc = 0.8\n";
    let v = parse_str(text, true).unwrap();
    let want = [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18];
    for (got, want) in v.exponents.real_parts().iter().zip(want) {
        assert!((got - want).abs() < 1e-15);
    }
}

#[test]
fn both_parameter_blocks_rejected() {
    let text = r#"{"exponents": [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18], "z": [0.2, 0.45, 0.7],
        "lauricella": {"a": 0.36, "b1": 0.3, "b2": 0.2, "b3": -0.1, "c": 0.8}}"#;
    assert!(matches!(parse_str(text, false), Err(ConfigError::Field { field: "lauricella/exponents", .. })));
}

#[test]
fn missing_z_rejected_with_field() {
    let err = parse_str(r#"{"exponents": [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18]}"#, false).unwrap_err();
    assert!(matches!(err, ConfigError::Parse { .. }));
    assert!(err.to_string().contains("`z`"), "{err}");
}

#[test]
fn inadmissible_exponents_rejected() {
    let text = r#"{"exponents": [-0.25, -0.15, -0.10, 0.05, 0.22, 0.23], "z": [0.2, 0.45, 0.7]}"#;
    assert!(matches!(parse_str(text, false), Err(ConfigError::Admissibility(_))));
    let text = r#"{"exponents": [-0.20, -0.15, -0.10, 0.05, 0.22, 0.19], "z": [0.2, 0.45, 0.7]}"#;
    assert!(matches!(parse_str(text, false), Err(ConfigError::Admissibility(_))));
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"exponents": [0.1], "z": [0.2, 0.45, 0.7]}"#);
    assert_eq!(run(&bad, &["verify", "--suite", "dets"]).status.code(), Some(2));
    let garbled = write(&dir, "garbled.json", "{ not json");
    assert_eq!(run(&garbled, &["periods"]).status.code(), Some(2));
    let fixture = write(&dir, "fx.json", FIXTURE);
    assert_eq!(run(&fixture, &["intersect", "--space", "X", "--twist", "f"]).status.code(), Some(2));
}

#[test]
fn intersect_x_cohomology_shows_block_zero_pattern() {
    let dir = TempDir::new().unwrap();
    let out = run(&write(&dir, "fx.json", FIXTURE), &["intersect", "--space", "X", "--pairing", "cohomology"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "wirtinger-report/1");
    let m = r["matrices"]["cohomology_x"]["entries"].as_array().unwrap();
    assert_eq!(m.len(), 8);
    for (i, row) in m.iter().enumerate() {
        for (j, z) in row.as_array().unwrap().iter().enumerate() {
            if (i < 4) != (j < 4) {
                assert_eq!(z[0].as_f64().unwrap(), 0.0);
                assert_eq!(z[1].as_f64().unwrap(), 0.0);
            }
        }
    }
}

#[test]
fn f_twisted_line_homology_equals_h_minus() {
    let dir = TempDir::new().unwrap();
    let out = run(&write(&dir, "fx.json", FIXTURE), &["intersect", "--space", "Y", "--pairing", "homology", "--twist", "f"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let check = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "equals_h_minus").unwrap();
    assert!(check["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn periods_have_zero_cross_blocks() {
    let dir = TempDir::new().unwrap();
    let out = run(&write(&dir, "fx.json", FIXTURE), &["periods"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let p = &r["matrices"]["periods"];
    assert_eq!(p["rows"].as_array().unwrap().len(), 8);
    assert_eq!(p["cols"][0], "phi1");
    for (i, row) in p["entries"].as_array().unwrap().iter().enumerate() {
        for (j, z) in row.as_array().unwrap().iter().enumerate() {
            let n = z[0].as_f64().unwrap().hypot(z[1].as_f64().unwrap());
            if (i < 4) != (j < 4) {
                assert!(n < 1e-9);
            } else if i == j {
                assert!(n > 1e-6);
            }
        }
    }
}

#[test]
fn fd_at_origin_and_outside_disc() {
    let dir = TempDir::new().unwrap();
    let origin = write(&dir, "o.json", r#"{"exponents": [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18], "z": [0, 0, 0]}"#);
    let out = run(&origin, &["fd"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["values"]["series"], serde_json::json!([1.0, 0.0]));

    let outside = write(&dir, "x.json", r#"{"exponents": [-0.20, -0.15, -0.10, 0.05, 0.22, 0.18], "z": [0.2, 0.45, 1.5]}"#);
    assert_eq!(run(&outside, &["fd"]).status.code(), Some(3));
}

#[test]
fn fd_routes_agree_at_fixture() {
    let dir = TempDir::new().unwrap();
    let out = run(&write(&dir, "fx.json", FIXTURE), &["fd"]);
    assert_eq!(out.status.code(), Some(0));
    let series = json(&out)["values"]["series"][0].as_f64().unwrap();
    assert!((series - 1.0337051373306480043).abs() < 1e-13);
}

#[test]
fn verify_exit_codes_follow_checks() {
    let dir = TempDir::new().unwrap();
    let fx = write(&dir, "fx.json", FIXTURE);
    let dets = run(&fx, &["verify", "--suite", "dets"]);
    assert_eq!(dets.status.code(), Some(0));
    assert_eq!(json(&dets)["checks"].as_array().unwrap().len(), 1);

    // The displayed corollary relation does not hold at the fixture.
    let cor = run(&fx, &["verify", "--suite", "corollary"]);
    assert_eq!(cor.status.code(), Some(1));
    let checks = json(&cor)["checks"].as_array().unwrap().clone();
    let get = |n: &str| checks.iter().find(|c| c["name"] == n).unwrap().clone();
    assert_eq!(get("corollary_relation")["pass"], false);
    assert_eq!(get("contour_relation")["pass"], true);
}

#[test]
fn same_seed_same_report() {
    let dir = TempDir::new().unwrap();
    let fx = write(&dir, "fx.json", FIXTURE);
    let a = run(&fx, &["--seed", "11", "verify", "--suite", "dets"]);
    let b = run(&fx, &["--seed", "11", "verify", "--suite", "dets"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 11);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let fx = write(&dir, "fx.json", FIXTURE);
    let target = dir.path().join("report.json");
    let out = run(&fx, &["--out", target.to_str().unwrap(), "intersect", "--space", "Y", "--pairing", "cohomology"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(r["config_echo"]["z"], serde_json::json!([0.2, 0.45, 0.7]));
}
