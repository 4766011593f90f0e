use std::process::{Command, Output};

use serde_json::Value;

fn xxtele(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xxtele"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = xxtele(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("single JSON document")
}

#[test]
fn concurrence_command() {
    let v = json(&["concurrence", "--j", "1", "--bm", "0", "--t", "1", "--verify"]);
    let c = v["result"]["concurrence"].as_f64().unwrap();
    assert!((c - 0.068893).abs() < 1e-6);
    assert!(v["result"]["abs_difference"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["metadata"]["parameters"]["t"], 1.0);

    let v = json(&["concurrence", "--j", "1", "--bm", "0", "--t", "2"]);
    assert_eq!(v["result"]["concurrence"].as_f64().unwrap(), 0.0);
}

#[test]
fn invalid_temperature_exits_2() {
    let o = xxtele(&["concurrence", "--j", "1", "--bm", "0", "--t", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("temperature must be positive"));
    assert!(o.stdout.is_empty());
}

#[test]
fn fidelity_command() {
    let v = json(&["fidelity", "--j", "1", "--bm", "0.5", "--t", "1"]);
    let f = v["result"]["avg_fidelity"].as_f64().unwrap();
    assert!((f - 0.67261).abs() < 1e-5);
    assert_eq!(v["result"]["beats_classical"], true);

    let v = json(&["fidelity", "--j", "1", "--bm", "1", "--t", "0.5"]);
    assert_eq!(v["result"]["beats_classical"], false);

    let v = json(&["fidelity", "--j", "1", "--bm", "0", "--t", "1e9"]);
    assert!((v["result"]["avg_fidelity"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn fidelity_extras_and_reduced_units() {
    let v = json(&[
        "fidelity", "--eta", "0.5", "--t-over-j", "1", "--theta", "1.2", "--mc-samples", "20000",
        "--verify", "--seed", "5",
    ]);
    let r = &v["result"];
    let avg = r["avg_fidelity"].as_f64().unwrap();
    assert!((r["protocol_fidelity"].as_f64().unwrap() - avg).abs() < 1e-10);
    let pointwise = r["pointwise_fidelity"].as_f64().unwrap();
    assert!((r["protocol_pointwise_fidelity"].as_f64().unwrap() - pointwise).abs() < 1e-10);
    let se = r["mc_stderr"].as_f64().unwrap();
    assert!((r["mc_fidelity"].as_f64().unwrap() - avg).abs() < 4.0 * se);
    assert_eq!(v["metadata"]["seed"], 5);
}

#[test]
fn negative_parameters_parse() {
    let v = json(&["fidelity", "--j", "-1", "--bm", "-0.5", "--t", "1"]);
    assert!(v["result"]["avg_fidelity"].as_f64().unwrap() < 0.5);
}

#[test]
fn critical_command() {
    let v = json(&["critical", "--eta", "0.3"]);
    let t = v["result"]["t_critical_over_j"].as_f64().unwrap();
    let c = v["result"]["residual_concurrence"].as_f64().unwrap();
    assert!((t - 1.10193).abs() / 1.10193 < 1e-5);
    assert!((c - 0.0150472).abs() < 1e-5);

    let o = xxtele(&["critical", "--eta", "1.0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no classical-beating temperature exists"));

    assert_eq!(xxtele(&["critical", "--eta", "0"]).status.code(), Some(2));
}

#[test]
fn table1_csv() {
    let o = xxtele(&["table1", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines[0].starts_with("eta,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

fn parse_sweep(text: &str) -> Vec<(f64, f64, f64, f64, f64, bool)> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("j,b_m,t,concurrence,avg_fidelity,beats_classical")
    );
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 6);
            let num = |k: usize| f[k].parse::<f64>().unwrap();
            (num(0), num(1), num(2), num(3), num(4), f[5].parse::<bool>().unwrap())
        })
        .collect()
}

#[test]
fn sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = xxtele(&[
        "sweep", "--eta-min", "0.1", "--eta-max", "0.9", "--eta-steps", "10", "--t-min", "0.1",
        "--t-max", "1.2", "--t-steps", "12", "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let rows = parse_sweep(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 120);

    let tc = 1.0 / 1.0f64.asinh();
    for &(j, b_m, t, c, f, beats) in &rows {
        if t > tc * j {
            assert_eq!(c, 0.0);
        }
        // printed values reproduce the derived columns
        assert_eq!(beats, (j / t).sinh() > (b_m / t).cosh());
        assert_eq!(beats, f > 2.0 / 3.0);
    }

    // the beats_classical frontier sits within one T cell of the critical temperature
    let dt = 1.1 / 11.0;
    let etas: Vec<f64> = (0..10).map(|k| 0.1 + 0.8 * k as f64 / 9.0).collect();
    for (k, eta) in etas.iter().enumerate() {
        let slice = &rows[k * 12..(k + 1) * 12];
        let last_beating = slice.iter().filter(|r| r.5).map(|r| r.2).fold(0.0, f64::max);
        let eta_arg = format!("{eta}");
        let v = json(&["critical", "--eta", &eta_arg]);
        let tc_eta = v["result"]["t_critical_over_j"].as_f64().unwrap();
        assert!(last_beating <= tc_eta && tc_eta - last_beating <= dt + 1e-9, "eta {eta}");
    }
}

#[test]
fn sweep_errors() {
    assert_eq!(xxtele(&["sweep", "--out", "/nonexistent-dir/x.csv"]).status.code(), Some(4));
    assert_eq!(xxtele(&["sweep", "--t-steps", "0"]).status.code(), Some(2));
    assert_eq!(xxtele(&["sweep", "--t-min", "0"]).status.code(), Some(2));
}

#[test]
fn verify_command() {
    let args = ["verify", "--grid-size", "5", "--mc-samples", "20000", "--seed", "3"];
    let a = xxtele(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = xxtele(&args);
    assert_eq!(a.stdout, b.stdout);

    let text = stdout(&a);
    assert!(text.contains("check: gibbs-analytic-vs-expm"));
    assert!(!text.contains("pass: false"));

    let bad = xxtele(&["verify", "--grid-size", "3", "--mc-samples", "1000", "--tolerance-scale", "0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("pass: false"));
}

#[test]
fn verify_json_is_one_document() {
    let v = json(&["verify", "--grid-size", "3", "--mc-samples", "5000"]);
    assert_eq!(v["metadata"]["command"], "verify");
    assert!(v["result"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}
