use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn occsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_occsim"))
        .args(args)
        .output()
        .expect("run occsim")
}

fn ok(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn simulate_then_decode() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("capture.pgm");
    let trace = dir.path().join("trace.csv");
    ok(&occsim(&[
        "simulate",
        "--frequency-khz",
        "6",
        "--distance-cm",
        "80",
        "--exposure-us",
        "68",
        "--phase-us",
        "100",
        "--out",
        p(&img),
        "--trace-csv",
        p(&trace),
    ]));
    let csv = fs::read_to_string(&trace).unwrap();
    assert!(csv.starts_with("column_index,value\n0,"));
    assert_eq!(csv.lines().count(), 1921);

    let stdout = ok(&occsim(&["decode", "--code", "1011010010", p(&img)]));
    let line: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(line["received_code"], "1011010010");
    assert_eq!(line["correct_bits"], 10);
    assert!(line["headers_found"].as_u64().unwrap() >= 2);
}

#[test]
fn sweep_writes_csv_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("phone.cfg");
    fs::write(
        &cfg,
        "device = phone\ncamera.rows = 96\ncamera.principal_point_px = 960, 48\n",
    )
    .unwrap();
    let stdout = ok(&occsim(&[
        "sweep",
        "--config",
        p(&cfg),
        "--frequency-khz",
        "4,12",
        "--distance-cm",
        "100",
        "--exposure-us",
        "68",
        "--trials",
        "2",
        "--svg",
        "--out-dir",
        p(dir.path()),
    ]));
    assert_eq!(stdout.lines().count(), 2);
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "frequency_hz,distance_m,exposure_s,success_rate_pct,trials,images_decoded"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("4000,1,0.000068,"));
    assert!(fs::read_to_string(dir.path().join("success_rate_68us.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn export_and_compare_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let caps = dir.path().join("caps");
    let cfg = dir.path().join("small.cfg");
    fs::write(
        &cfg,
        "camera.rows=96\ncamera.principal_point_px=960,48\nsweep.frequencies_khz=8\nsweep.distances_cm=100\n\
         sweep.exposures_us=68\nsweep.trials=2\n",
    )
    .unwrap();
    ok(&occsim(&["simulate", "--config", p(&cfg), "--grid-out", p(&caps)]));
    let out = dir.path().join("cmp.csv");
    ok(&occsim(&[
        "compare",
        "--config",
        p(&cfg),
        "--experimental",
        p(&caps),
        "--out",
        p(&out),
    ]));
    let csv = fs::read_to_string(out).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[5], "0");
    assert_eq!(row[6], "2");
}

#[test]
fn fatal_errors_exit_nonzero() {
    assert!(!occsim(&["decode", "--code", "1011010010", "/nonexistent/image.pgm"])
        .status
        .success());
    assert!(!occsim(&["decode", "--code", "10x1", "x.pgm"]).status.success());
    assert!(!occsim(&["sweep", "--set", "camera.bogus=1"]).status.success());
    assert!(!occsim(&["simulate", "--device", "tablet", "--out", "x.pgm"])
        .status
        .success());
    let out = occsim(&["sweep", "--set", "sweep.trials=0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("trials"));
}
