use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use adqc_fidelity::verify::CampaignReport;

fn adqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eq.json");
    let run = adqc(&[
        "verify",
        "equality_oracle",
        "--samples",
        "200",
        "--seed",
        "7",
        "--output",
        path_str(&out),
    ]);
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.starts_with("PASS equality_oracle"));

    let text = fs::read_to_string(&out).unwrap();
    let report: CampaignReport = serde_json::from_str(&text).unwrap();
    assert!(report.passed && report.max_violation <= 1e-10);
    assert_eq!((report.seed, report.samples), (7, 200));
    // round trip through the typed report reproduces the file byte for byte
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn verify_main2_reports_filtered_entropy_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m2.json");
    let run = adqc(&[
        "verify",
        "bound_main2",
        "--samples",
        "500",
        "--seed",
        "11",
        "--output",
        path_str(&out),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let report: CampaignReport = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report.metrics["min_sv2"] >= 1.0);
}

#[test]
fn failing_campaign_exits_one() {
    // an impossible tolerance turns rounding noise into a failure
    let run = adqc(&[
        "verify",
        "equality_oracle",
        "--samples",
        "20",
        "--tolerance",
        "1e-300",
    ]);
    assert_eq!(run.status.code(), Some(1));
    let report: CampaignReport = serde_json::from_slice(&run.stdout).unwrap();
    assert!(!report.passed);
    let worst = report.worst_case.unwrap();
    assert!(worst.state.unwrap().starts_with("qubits: "));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(adqc(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(adqc(&["curves", "--figure", "fig9"]).status.code(), Some(2));
    assert_eq!(
        adqc(&["curves", "--figure", "fig6", "--grid", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        adqc(&[
            "curves",
            "--figure",
            "fig6",
            "--output",
            "/nonexistent/dir/x.csv"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        adqc(&[
            "demo",
            "ADQC_CZ_GATE",
            "--preset",
            "bell",
            "--targets",
            "0,5"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(adqc(&["demo", "ONEWAY_ROTATION"]).status.code(), Some(2));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let one = adqc(&[
        "verify",
        "bound_sv",
        "--samples",
        "60",
        "--seed",
        "3",
        "--threads",
        "1",
    ]);
    let four = adqc(&[
        "verify",
        "bound_sv",
        "--samples",
        "60",
        "--seed",
        "3",
        "--threads",
        "4",
    ]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn curves_are_reproducible_and_exact_at_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        assert_eq!(
            adqc(&["curves", "--figure", "fig5", "--output", path_str(p)])
                .status
                .code(),
            Some(0)
        );
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("epsilon,S=0.2,S=0.4,S=0.6,S=0.8,S=1"));
    let last: Vec<f64> = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(last[0], std::f64::consts::PI);
    assert_eq!(last[5], 0.0);
    assert_eq!(text.lines().count(), 202);
}

#[test]
fn fig7_to_stdout() {
    let run = adqc(&["curves", "--figure", "fig7", "--grid", "11"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 11);
    assert_eq!(values[0], 0.0);
    assert_eq!(values[10], 1.0);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn demo_bell_saturates_purity_bound() {
    let run = adqc(&[
        "demo",
        "ADQC_ROTATION_CZ",
        "--preset",
        "bell",
        "--epsilon",
        "1.5707963267948966",
        "--format",
        "json",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert!((v["simulated_f"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["bounds"]["purity_bound"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(v["saturated"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s == "purity_bound"));
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn demo_counterexample_is_below_bound_domain() {
    let run = adqc(&[
        "demo",
        "ADQC_CZSWAP_GATE",
        "--preset",
        "rho_lambda:0.3",
        "--epsilon",
        "0.8",
        "--format",
        "json",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v["correlator_used"].as_f64(), Some(1.0));
    assert!((v["simulated_f"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["entanglement"]["von_neumann"].as_f64().unwrap() - 0.8813).abs() < 1e-3);
    assert!(v["unavailable_bounds"]["sv2_bound"]
        .as_str()
        .unwrap()
        .contains("below bound domain"));
}

#[test]
fn demo_reads_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ghz.txt");
    fs::write(
        &path,
        "# GHZ\nqubits: 3\n0 0.7071067811865476 0\n7 0.7071067811865476 0\n",
    )
    .unwrap();
    let run = adqc(&[
        "demo",
        "ONEWAY_ROTATION",
        "--state",
        path_str(&path),
        "--targets",
        "2",
        "--u",
        "0.4",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let table = String::from_utf8(run.stdout).unwrap();
    assert!(table.contains("simulated F           1.000000000000"));
    assert!(table.contains("violations            none"));

    fs::write(&path, "qubits: 1\n0 0.5 0\n").unwrap();
    let run = adqc(&["demo", "ONEWAY_ROTATION", "--state", path_str(&path)]);
    assert_eq!(run.status.code(), Some(2));
}
