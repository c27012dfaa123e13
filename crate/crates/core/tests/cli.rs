//! End-to-end tests of the `subtense` binary.

use std::process::{Command, Output};

use apparent_size::optimize::{disk_xmax, DEFAULT_TOL};

const BIN: &str = env!("CARGO_BIN_EXE_subtense");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("SUBTENSE_SEED")
        .output()
        .expect("spawn subtense")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// One small invocation of every subcommand.
const EVERY: &[&[&str]] = &[
    &["disk-omega", "--r", "2", "--x", "1"],
    &["disk-curve", "--r", "0.8,0.9,1,1.1", "--x-points", "7"],
    &["disk-xmax", "--r", "2,10"],
    &["rect-omega", "--x", "1", "--r", "1.25", "--l", "1.5"],
    &["rect-lmax", "--x", "1", "--r", "1,1.125,1.25"],
    &["spill"],
    &["wall", "--r", "1.1,2,10"],
    &["keyhole-moments"],
    &["keyhole-pdf", "--case", "sphere", "--points", "5"],
    &["dihedral", "--a", "1.5707963267948966"],
    &["perspective", "--strip", "two-point", "--k", "1..5"],
    &["mc", "--case", "disk", "--seed", "9", "--samples", "20000", "--substreams", "2"],
];

fn cell(csv: &str, row: usize, col: usize) -> f64 {
    csv.lines().nth(row + 1).unwrap().split(',').nth(col).unwrap().parse().unwrap()
}

#[test]
fn every_subcommand_is_byte_deterministic() {
    for args in EVERY {
        for format in ["csv", "json"] {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            assert_eq!(run(&a).stdout, run(&a).stdout, "{a:?}");
        }
    }
}

#[test]
fn csv_headers_carry_units() {
    let units = ["_rad", "_deg", "_rad2", "_per_rad", "_sr", "_sr2", "_radii", "_units", "_units2", "_flag", "_count", "_index"];
    for args in EVERY {
        let out = stdout(args);
        let header = out.lines().next().unwrap();
        for name in header.split(',') {
            assert!(units.iter().any(|u| name.ends_with(u)), "{args:?}: column {name}");
        }
        let width = header.split(',').count();
        assert!(out.lines().skip(1).all(|l| l.split(',').count() == width));
        assert!(!out.contains('\r'));
    }
}

#[test]
fn json_document_shape() {
    let out = stdout(&["rect-lmax", "--r", "1.25", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["params"].is_object());
    assert_eq!(v["columns"][2], "lmax_units");
    let l = v["rows"][0][2].as_f64().unwrap();
    assert!((l - 1.669_774_599_367_937_8).abs() < 1e-9);
}

#[test]
fn billboard_example() {
    let out = stdout(&["rect-lmax", "--x", "1", "--r", "1.25"]);
    assert!((cell(&out, 0, 2) - 1.669_774_599_367_937).abs() < 1e-9);
}

#[test]
fn perspective_example() {
    let out = stdout(&["perspective", "--strip", "one-point", "--k", "1..5"]);
    assert!((cell(&out, 0, 1) - 5.0 / 36.0).abs() < 1e-14);
    assert!((cell(&out, 0, 2) - 5.0 / 36.0).abs() < 1e-14);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn disk_xmax_row_matches_library() {
    let out = stdout(&["disk-xmax", "--r", "100", "--precision", "17"]);
    let lib = disk_xmax(100.0, DEFAULT_TOL).unwrap().argmax;
    assert_eq!(cell(&out, 0, 1), lib);
}

#[test]
fn figure_family() {
    let out = stdout(&["disk-curve", "--r", "0.8,0.9,1,1.1", "--x-min", "0.1", "--x-max", "3", "--x-points", "30"]);
    assert_eq!(out.lines().count(), 1 + 4 * 30);
    // Near the disk plane the view from inside the rim exceeds a hemisphere;
    // from outside it does not.
    assert!(cell(&out, 0, 2) > std::f64::consts::PI);
    assert!(cell(&out, 90, 2) < std::f64::consts::PI);
}

#[test]
fn degrees_only_change_presentation() {
    let rad = stdout(&["wall", "--r", "2"]);
    let deg = stdout(&["wall", "--r", "2", "--degrees"]);
    assert!(deg.starts_with("r_units,x_units,angle_deg\n"));
    assert!((cell(&deg, 0, 2) - cell(&rad, 0, 2).to_degrees()).abs() < 1e-9);
}

#[test]
fn seed_from_environment() {
    let base = ["mc", "--case", "circle", "--samples", "10000"];
    let with_flag = stdout(&[&base[..], &["--seed", "42"]].concat());
    let from_env = Command::new(BIN).args(base).env("SUBTENSE_SEED", "42").output().unwrap();
    assert_eq!(String::from_utf8(from_env.stdout).unwrap(), with_flag);
    let other = stdout(&[&base[..], &["--seed", "43"]].concat());
    assert_ne!(other, with_flag);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("subtense-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spill.csv");
    let out = run(&["spill", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("r_threshold_units\n1.3099877920"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["spill", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["--precision", "18", "spill"]).status.code(), Some(2));
    let domain = run(&["disk-xmax", "--r", "0.5"]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("domain error"));
    assert_eq!(run(&["disk-omega", "--r", "1", "--x", "0"]).status.code(), Some(2));
    assert_eq!(run(&["spill"]).status.code(), Some(0));
}
