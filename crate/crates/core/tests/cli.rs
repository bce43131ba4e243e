use proptest::prelude::*;
use ramellin::cli::{exit_code, run, EXIT_CONFIG, EXIT_FAIL, EXIT_OK};
use ramellin::identities::{IdentityId, IdentityReport, Status};
use std::process::Command;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ramellin").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn verify_basic_passes_with_twelve_reports() {
    let (code, out, _) = call(&["verify", "--suite", "basic", "--no-timestamp"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["suite"], "basic");
    assert_eq!(v["cases"].as_array().unwrap().len(), 12);
    assert_eq!(v["summary"]["pass"], 12);
    assert!(v.get("generated_at").is_none());
    // field order in the emitted text
    let first = &out[out.find("\"cases\"").unwrap()..];
    let pos: Vec<usize> = ["id", "params", "lhs", "rhs", "abs_err", "rel_err", "status", "notes"]
        .iter()
        .map(|k| first.find(&format!("\"{k}\":")).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
}

#[test]
fn eval_single_report() {
    let (code, out, _) = call(&["eval", "--identity", "ZETA_SINE_2_5", "--s", "0.25", "--no-timestamp"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["id"], "ZETA_SINE_2_5");
    assert_eq!(v["params"]["s"], 0.25);
    assert_eq!(v["status"], "PASS");
    assert!(v["rel_err"].as_f64().unwrap() < 1e-5);
    assert!(v["lhs"].is_number() && v["rhs"].is_number());
}

#[test]
fn excluded_zeta_point_is_a_configuration_error() {
    let (code, out, err) = call(&["verify", "--suite", "zeta", "--s", "0.5"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(out.is_empty());
    assert!(err.contains("ZETA_SINE_2_5"));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["verify", "--suite", "nope"],
        vec!["eval", "--identity", "NOT_AN_ID"],
        vec!["eval", "--identity", "RMT_1_2", "--s", "0,5"],
        vec!["eval", "--identity", "RMT_1_2", "--s", "inf"],
        vec!["eval", "--identity", "SIN_2_3", "--t", "1"],
        vec!["verify", "--tol", "-1"],
        vec!["frobnicate"],
        vec!["kernel", "--start", "3", "--stop", "0", "--step", "0.1"],
        vec!["kernel", "--start", "0", "--stop", "1"],
        vec!["primes", "--s", "1"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, EXIT_CONFIG, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn tolerance_override_can_force_failure() {
    let (code, out, _) = call(&["eval", "--identity", "BINOMIAL_1_7", "--tol", "1e-30", "--no-timestamp"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(json(&out)["status"], "FAIL");
}

#[test]
fn report_only_never_gates() {
    let (code, out, err) = call(&["verify", "--suite", "hurwitz", "--strict-report", "--no-timestamp"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["summary"]["report_only"], 1);
    assert!(err.contains("REPORT_ONLY HURWITZ_2_10"));
    let (code, out, _) = call(&["eval", "--identity", "COR22_II_2_9", "--no-timestamp"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!(v["lhs"].is_null());
    assert_eq!(v["status"], "REPORT_ONLY");
}

#[test]
fn deterministic_reports() {
    for format in ["json", "csv"] {
        let args = ["verify", "--suite", "all", "--no-timestamp", "--format", format];
        let (c1, a, _) = call(&args);
        let (c2, b, _) = call(&args);
        assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
        assert_eq!(a, b);
    }
    let (_, with_ts, _) = call(&["verify", "--suite", "basic"]);
    assert!(json(&with_ts)["generated_at"].is_u64());
}

#[test]
fn csv_report_layout() {
    let (code, out, _) = call(&["verify", "--suite", "hurwitz", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        ["id", "params", "lhs", "rhs", "abs_err", "rel_err", "status", "notes"]
    );
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][1], "c=2;a=2;t=0.5");
    assert_eq!(&rows[3][2], ""); // NaN lhs
}

fn kernel_rows(args: &[&str]) -> Vec<(f64, f64)> {
    let (code, out, _) = call(args);
    assert_eq!(code, EXIT_OK);
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), ["x", "value", "abs_err", "flags"]);
    rd.records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect()
}

#[test]
fn kernel_csv_examples() {
    let rows = kernel_rows(&["kernel", "--phi", "zeta", "--parity", "even", "--start", "0", "--stop", "50", "--step", "0.5"]);
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0], (0.0, 1.644_934_066_848_226_4));

    let rows = kernel_rows(&["kernel", "--parity", "odd", "--start", "0", "--stop", "6.283185307179586", "--points", "9"]);
    assert!(rows[0].1.abs() <= 1e-12 && rows[8].1.abs() <= 1e-12);

    let rows = kernel_rows(&["kernel", "--phi", "binomial", "--a", "1", "--v", "2", "--start", "0", "--stop", "3", "--step", "0.1"]);
    assert_eq!(rows.len(), 31);
    assert!(rows.windows(2).all(|w| w[1].1 < w[0].1));
}

#[test]
fn primes_and_table_commands() {
    let (code, out, _) = call(&["primes", "--s", "3", "--n", "30", "--formal-n", "1", "--no-timestamp"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!(v["abs_diff"].as_f64().unwrap() <= 1e-9);
    assert!(v["formal"]["a_n"][0]["formal"].as_bool().unwrap());

    let (code, out, _) = call(&["table", "--identity", "SIN_2_3", "--start", "0.1", "--stop", "0.9", "--points", "5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn out_file_and_binary() {
    let dir = std::env::temp_dir().join(format!("ramellin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("basic.json");
    let status = Command::new(env!("CARGO_BIN_EXE_ramellin"))
        .args(["verify", "--suite", "basic", "--no-timestamp", "--out"])
        .arg(&path)
        .env("RAMELLIN_MAX_THREADS", "2")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_OK));
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["summary"]["pass"], 12);

    let status = Command::new(env!("CARGO_BIN_EXE_ramellin"))
        .args(["verify", "--suite", "basic"])
        .env("RAMELLIN_MAX_THREADS", "zero")
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_CONFIG));
    std::fs::remove_dir_all(&dir).ok();
}

fn synthetic(status: Status) -> IdentityReport {
    IdentityReport {
        id: IdentityId::RMT_1_2,
        params: Default::default(),
        lhs: 1.0,
        rhs: 1.0,
        abs_err: 0.0,
        rel_err: 0.0,
        status,
        notes: String::new(),
    }
}

proptest! {
    #[test]
    fn exit_code_contract(statuses in prop::collection::vec(0u8..4, 0..40)) {
        let reports: Vec<IdentityReport> = statuses
            .iter()
            .map(|s| synthetic([Status::Pass, Status::Fail, Status::ReportOnly, Status::Divergent][*s as usize]))
            .collect();
        let any_fail = statuses.contains(&1);
        prop_assert_eq!(exit_code(&reports), if any_fail { EXIT_FAIL } else { EXIT_OK });
    }
}
