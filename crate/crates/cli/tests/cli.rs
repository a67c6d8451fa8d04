use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polysmooth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polysmooth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn success_exits_zero_with_versioned_json() {
    let out = run(&["--json", "theta", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["schema"], 1);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("{\"schema\":1,"));
    assert!(doc["decimal"].as_str().unwrap().starts_with("0.27950849"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["construct", "--method", "nonsense", "-f", "t^2+1"]).status.code(), Some(2));
    assert_eq!(run(&["factor-poly", "t^2+"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--method", "decomposition", "-f", "t^2+1"]).status.code(), Some(2));
}

#[test]
fn mathematical_failures_exit_one_with_error_json() {
    let out = run(&["construct", "--method", "quadratic", "-f", "t^2-1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["schema"], 1);
    assert_eq!(err["error"]["kind"], "NotIrreducible");
}

#[test]
fn tampered_certificate_yields_a_witness() {
    let path = scratch("tampered.json");
    let out = run(&["--json", "construct", "--method", "quadratic", "-f", "t^2+1", "-x", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let mut cert = stdout_json(&out);
    cert["scalar"] = Value::from("2");
    std::fs::write(&path, cert.to_string()).unwrap();

    let out = run(&["--json", "verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "VerificationFailed");
    let report = stdout_json(&out);
    assert_eq!(report["report"]["passed"], false);
    let text = err.to_string();
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn constructed_certificates_reverify() {
    let cases: &[&[&str]] = &[
        &["--method", "schinzel", "-f", "t^3-t-1", "--steps", "2"],
        &["--method", "binomial", "--binomial", "1,2,1", "-y", "3"],
        &["--method", "trinomial", "--variant", "i", "-a", "1", "-b", "1", "-k", "5"],
        &["--method", "decomposition", "-f", "t^4+4*t^2-t+1", "-g", "t^2+2*t-2", "-h", "t^2+1"],
        &["--method", "trivial", "-f", "t^2+t+1"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let path = scratch(&format!("cert{i}.json"));
        let mut args = vec!["construct"];
        args.extend_from_slice(case);
        args.extend_from_slice(&["-o", path.to_str().unwrap()]);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{case:?}: {}", String::from_utf8_lossy(&out.stderr));
        for mode in ["symbolic", "probabilistic"] {
            let out = run(&["verify", "--mode", mode, path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{case:?} under {mode}");
        }
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let commands: &[&[&str]] = &[
        &["scan", "quadratic-subst", "-f", "t^3-2", "--height", "4"],
        &["scan", "rational-points", "-f", "t^3-2", "--height", "12"],
        &["construct", "--method", "binomial", "--binomial", "1,2,1", "--binomial", "1,3,1", "-y", "7"],
        &["factor-poly", "x^12-1"],
    ];
    for cmd in commands {
        let outputs: Vec<Vec<u8>> = ["1", "2"]
            .iter()
            .map(|n| {
                let mut args = vec!["--json", "--threads", n];
                args.extend_from_slice(cmd);
                let out = run(&args);
                assert_eq!(out.status.code(), Some(0), "{cmd:?}");
                out.stdout
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{cmd:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = stdout_json(&run(&["--json", "factor-int", "280901"]));
    assert!(plain.get("elapsed_ms").is_none());
    let timed = stdout_json(&run(&["--json", "--timing", "factor-int", "280901"]));
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn factor_commands() {
    let out = run(&["factor-int", "280901"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "280901 = 257 * 1093");
    let out = run(&["factor-poly", "x^4+4"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(x^2-2*x+2) * (x^2+2*x+2)");
}

#[test]
fn smooth_finds_witnesses_below_the_exponent() {
    let out = run(&["--json", "smooth", "-f", "t^2+1", "--eps", "0.8", "--count", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    let ws = doc["report"]["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 2);
    for w in ws {
        assert!(w["exponent"].as_f64().unwrap() <= 0.8);
    }
}
