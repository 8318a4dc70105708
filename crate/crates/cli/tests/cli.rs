use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betamoments"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn moment_all_backends_agree() {
    let v = json(&[
        "moment",
        "--kind",
        "jacobi",
        "--alpha",
        "1",
        "--gamma",
        "1",
        "--beta",
        "2",
        "--N",
        "100",
        "--n",
        "2",
        "--backend",
        "all",
    ]);
    assert_eq!(v["command"], "moment");
    assert_eq!(v["spec_echo"]["kind"], "jacobi_general");
    assert_eq!(v["results"]["equal"], true);
    let moments = v["results"]["moments"].as_array().unwrap();
    assert_eq!(moments.len(), 4);
    assert!(moments
        .iter()
        .all(|m| m["value"] == "151/404" && m["n"] == 2));
    assert_eq!(moments[0]["value_float"], "0.373762376237624");
    assert!(v["version"].is_string());
}

#[test]
fn moment_examples() {
    let v = json(&["moment", "--kind", "delay", "--tauD", "1", "--n", "5"]);
    assert_eq!(v["results"]["moments"][0]["value"], "90/1");
    let v = json(&[
        "moment",
        "--kind",
        "laguerre",
        "--alpha",
        "0",
        "--epsilon",
        "1",
        "--beta",
        "2",
        "--N",
        "10",
        "--n",
        "3",
        "--backend",
        "recurrence",
    ]);
    assert_eq!(v["results"]["moments"][0]["value"], "5000/1");
    assert!(v["results"].get("equal").is_none());
}

#[test]
fn gamma_zero_matches_gamma_one() {
    let values = |v: &Value| -> Vec<Value> {
        v["results"]["moments"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| m["value"].clone())
            .collect()
    };
    let general = json(&[
        "moment", "--kind", "jacobi", "--gamma", "0", "--alpha", "3/2", "--beta", "1", "--N", "9",
        "--n-max", "8",
    ]);
    let g1 = json(&[
        "moment",
        "--kind",
        "jacobi-g1",
        "--alpha",
        "3/2",
        "--beta",
        "1",
        "--N",
        "9",
        "--n-max",
        "8",
    ]);
    assert_eq!(values(&general), values(&g1));
}

#[test]
fn transport_flag() {
    let v = json(&["moment", "--transport", "3", "5", "--beta", "1", "--n", "1"]);
    assert_eq!(v["spec_echo"]["kind"], "jacobi_gamma1");
    assert_eq!(v["spec_echo"]["alpha"], "3/2");
    assert_eq!(v["spec_echo"]["N"], 3);
}

#[test]
fn csv_has_fixed_header() {
    let out = run(&[
        "moment", "--kind", "delay", "--tauD", "1/2", "--n-max", "3", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kind,n,backend,value,value_float");
    assert_eq!(lines.len(), 1 + 3 * 4);
    assert_eq!(lines[1], "delay_times,1,recurrence,1/2,0.5");
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("betamoments-cli-{}.json", std::process::id()));
    let out = run(&[
        "series",
        "--kind",
        "jacobi-g1",
        "--alpha",
        "1",
        "--N",
        "3",
        "--order",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["results"]["coefficients"].as_array().unwrap().len(), 3);
}

#[test]
fn paths_examples() {
    assert_eq!(
        json(&["paths", "--model", "dyck", "--pairs", "3"])["results"]["count"],
        "5"
    );
    assert_eq!(
        json(&["paths", "--model", "schroder", "--n", "3"])["results"]["count"],
        "22"
    );
    let v = json(&[
        "paths",
        "--model",
        "motzkin",
        "--length",
        "4",
        "--rises",
        "1",
        "--enumerate",
    ]);
    assert_eq!(v["results"]["count"], "6");
    assert_eq!(v["results"]["paths"].as_array().unwrap().len(), 6);
    let v = json(&["paths", "--model", "schroder", "--n", "2", "--enumerate"]);
    let images: Vec<&str> = v["results"]["schroder_paths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(images.len(), 6);
    assert!(images.contains(&"UUDD") && images.contains(&"HH"));
    let v = json(&[
        "paths",
        "--model",
        "jacobi4",
        "--length",
        "2",
        "--weights",
        "-1/2,1,1,3",
    ]);
    assert!(v["results"]["count"].as_str().unwrap().contains('/'));
}

#[test]
fn paths_enumeration_guard() {
    let out = run(&["paths", "--model", "dyck", "--pairs", "11", "--enumerate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("enumeration bound"));
    let out = run(&["paths", "--model", "dyck", "--pairs", "11"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn series_examples() {
    let v = json(&[
        "series",
        "--kind",
        "laguerre",
        "--alpha",
        "0",
        "--epsilon",
        "1",
        "--beta",
        "2",
        "--N",
        "2",
        "--order",
        "5",
    ]);
    let expected = ["1/1", "2/1", "8/1", "40/1", "224/1", "1344/1"];
    assert_eq!(v["results"]["coefficients"], serde_json::json!(expected));
    let v = json(&[
        "series",
        "--kind",
        "jacobi-g1",
        "--alpha",
        "1",
        "--beta",
        "2",
        "--N",
        "1000000",
        "--order",
        "3",
    ]);
    let floats: Vec<f64> = v["results"]["coefficients_float"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().parse().unwrap())
        .collect();
    for (got, want) in floats.iter().zip([1.0, 0.5, 0.375, 0.3125]) {
        assert!((got - want).abs() < 1e-6);
    }
    let v = json(&["series", "--kind", "delay", "--tauD", "1", "--order", "0"]);
    assert_eq!(v["results"]["coefficients"], serde_json::json!(["1/1"]));
}

#[test]
fn verify_suites_pass() {
    for suite in ["cross-backend", "identities", "paths-oracle"] {
        let v = json(&["verify", "--suite", suite, "--max-n", "12"]);
        assert_eq!(v["results"]["passed"], true, "{suite}");
    }
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[(&[&str], &str)] = &[
        (
            &[
                "moment", "--kind", "jacobi", "--alpha", "1/0", "--gamma", "1", "--N", "3", "--n",
                "2",
            ],
            "--alpha",
        ),
        (
            &[
                "moment", "--kind", "jacobi", "--alpha", "x", "--gamma", "1", "--N", "3", "--n",
                "2",
            ],
            "--alpha",
        ),
        (
            &[
                "moment", "--kind", "jacobi", "--alpha", "1", "--N", "3", "--n", "2",
            ],
            "--gamma",
        ),
        (
            &[
                "moment",
                "--kind",
                "laguerre",
                "--alpha",
                "1",
                "--epsilon",
                "-1",
                "--N",
                "3",
                "--n",
                "2",
            ],
            "--epsilon",
        ),
        (
            &["moment", "--kind", "delay", "--tauD", "0", "--n", "2"],
            "--tauD",
        ),
        (
            &[
                "moment",
                "--kind",
                "jacobi-g1",
                "--alpha",
                "1",
                "--beta",
                "0",
                "--N",
                "3",
                "--n",
                "2",
            ],
            "--beta",
        ),
        (
            &[
                "moment",
                "--kind",
                "jacobi-g1",
                "--alpha",
                "1",
                "--N",
                "0",
                "--n",
                "2",
            ],
            "--N",
        ),
        (
            &["moment", "--kind", "delay", "--tauD", "1", "--n", "0"],
            "--n",
        ),
        (
            &[
                "moment",
                "--kind",
                "delay",
                "--tauD",
                "1",
                "--n",
                "2",
                "--backend",
                "magic",
            ],
            "--backend",
        ),
        (&["verify", "--suite", "everything"], "--suite"),
        (&["paths", "--model", "dyck", "--length", "3"], "--pairs"),
        (
            &["paths", "--model", "dyck", "--pairs", "2", "--weights", "1"],
            "--weights",
        ),
        (
            &[
                "sample",
                "--kind",
                "jacobi",
                "--alpha",
                "1",
                "--gamma",
                "1",
                "--N",
                "4",
                "--sweeps",
                "10",
                "--burn-in",
                "10",
            ],
            "burn_in",
        ),
        (
            &[
                "sample",
                "--kind",
                "jacobi",
                "--alpha",
                "1",
                "--gamma",
                "1",
                "--N",
                "1",
                "--factorization",
            ],
            "need N≥2",
        ),
        (&["frobnicate"], "frobnicate"),
    ];
    for (args, needle) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"], &["sample", "--help"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0));
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn failed_factorization_exits_two() {
    // at N = 2 the two-point function is far from factorized
    let out = run(&[
        "sample",
        "--kind",
        "jacobi",
        "--alpha",
        "5",
        "--gamma",
        "1/2",
        "--beta",
        "1/2",
        "--N",
        "2",
        "--sweeps",
        "20000",
        "--burn-in",
        "2000",
        "--factorization",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["consistent"], false);
    assert!(stderr(&out).contains("outside [1.4, 2.8]"));
}

#[test]
fn sample_reports_chain_stats() {
    let v = json(&[
        "sample",
        "--kind",
        "laguerre",
        "--alpha",
        "0",
        "--epsilon",
        "1",
        "--N",
        "1",
        "--sweeps",
        "5000",
        "--burn-in",
        "500",
        "--chains",
        "2",
        "--seed",
        "3",
        "--n-max",
        "3",
    ]);
    let r = &v["results"];
    assert_eq!(r["estimates"].as_array().unwrap().len(), 3);
    assert_eq!(r["seed"], 3);
    assert!(r["generator"].as_str().unwrap().contains("ChaCha8"));
    assert!(r["pair_cov"].is_null());
    assert_eq!(r["diagnostics"]["chain_means"].as_array().unwrap().len(), 2);
}

#[test]
fn badly_tuned_step_warns_on_stderr() {
    let out = run(&[
        "sample",
        "--kind",
        "jacobi",
        "--alpha",
        "1",
        "--gamma",
        "1",
        "--N",
        "6",
        "--sweeps",
        "500",
        "--burn-in",
        "100",
        "--step-scale",
        "0.000001",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("badly tuned"));
    serde_json::from_slice::<Value>(&out.stdout).unwrap();
}
