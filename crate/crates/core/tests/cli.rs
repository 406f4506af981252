//! End-to-end runs of the `parkstat` binary.

use std::process::{Command, Output};

fn parkstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parkstat"))
        .args(args)
        .env_remove("PARKSTAT_MAX_ENUM")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn probability_of_one_vector() {
    let out = parkstat(&["prob", "--prefs", "2,2,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2p - p^2");
    let out = parkstat(&["prob", "--prefs", "2,2,2", "--p", "1/2"]);
    assert!(stdout(&out).contains("at p = 1/2: 1/2"));
}

#[test]
fn verify_passes_and_reports() {
    let out = parkstat(&["verify", "--theorem", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS") && text.contains("16 = 16"), "{text}");
    let out = parkstat(&["--format", "csv", "verify", "--theorem", "2", "--n", "4", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("theorem,n,check,"));
}

#[test]
fn exit_codes() {
    assert_eq!(parkstat(&["dist", "--n", "3", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(parkstat(&["prob", "--prefs", "0,1"]).status.code(), Some(2));
    assert_eq!(parkstat(&["no-such-command"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_parkstat"))
        .args(["verify", "--theorem", "1", "--n", "3"])
        .env("PARKSTAT_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
}

#[test]
fn triangle_csv_verbatim() {
    let out = parkstat(&["triangle", "--kind", "a220884", "--rows", "4"]);
    assert_eq!(
        stdout(&out),
        "row,k0,k1,k2,k3,k4\n0,1,,,,\n1,1,0,,,\n2,2,1,0,,\n3,6,8,2,0,\n4,24,58,37,6,0\n"
    );
    let out = parkstat(&["--format", "json", "triangle", "--kind", "weighted-pascal", "--n", "4"]);
    let rows: Vec<Vec<u64>> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows, vec![vec![0], vec![1, 0], vec![4, 1, 0], vec![12, 11, 2, 0], vec![24, 58, 37, 6, 0]]);
}

#[test]
fn distribution_formats_reparse() {
    let csv = stdout(&parkstat(&["dist", "--n", "3", "--p", "1/2"]));
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!((&rows[1][1], &rows[1][2]), ("5", "16"));

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&parkstat(&["--format", "json", "tv", "--n", "3", "--p", "1/2"]))).unwrap();
    assert_eq!(json["tv"], "1/48");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("parkstat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lucky.csv");
    let out = parkstat(&["--out", path.to_str().unwrap(), "lucky", "--n", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "row,k0,k1,k2\n1,1,,\n2,2,1,\n3,6,8,2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn simulation_is_reproducible_across_threads() {
    let base = ["simulate", "--n", "7", "--p", "0.3", "--samples", "20000", "--seed", "11", "--summary"];
    let one = parkstat(&[&["--threads", "1"][..], &base[..]].concat());
    let four = parkstat(&[&["--threads", "4"][..], &base[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let json: serde_json::Value = serde_json::from_str(&stdout(&parkstat(&[
        "--format", "json", "simulate", "--n", "7", "--p", "0.3", "--samples", "20000", "--seed", "11",
    ])))
    .unwrap();
    assert_eq!(json["trials"], 20000);
}
