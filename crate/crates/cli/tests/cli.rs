use std::io::Write;
use std::process::{Command, Output, Stdio};

use heisenberg_core::json::{rep_from_json, rep_to_json};
use serde_json::Value;

fn hrep(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hrep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hrep");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn build(args: &[&str]) -> String {
    let out = hrep(&[&["build"], args].concat(), None);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const V_ARGS: &[&str] = &[
    "V", "--p", "3", "--n", "1", "--alpha", "1", "--betas", "0", "--gammas", "0",
];

#[test]
fn every_build_validates() {
    let builds: &[&[&str]] = &[
        V_ARGS,
        &[
            "V", "--p", "2", "--n", "2", "--alpha", "1", "--betas", "1,0", "--gammas", "0,1",
        ],
        &[
            "V",
            "--p",
            "2",
            "--modulus",
            "1,1,1",
            "--alpha",
            "[0,1]",
            "--betas",
            "[1,1]",
            "--gammas",
            "1",
        ],
        &["standard", "--p", "3", "--n", "2"],
        &["companion", "--p", "2", "--alpha", "1", "--beta", "1", "--f", "1,1,1"],
        &["restriction", "--p", "3", "--q", "1,0,1", "--f", "0,1", "--g", "1"],
    ];
    for args in builds {
        let rep = build(args);
        let out = hrep(&["analyze", "validate"], Some(&rep));
        assert_eq!(code(&out), 0, "{args:?}");
        let report = json(&out);
        assert_eq!(report["valid"], true, "{args:?}");
        assert_eq!(report["faithful"], true, "{args:?}");
    }
}

#[test]
fn build_outputs_round_trip() {
    for args in [
        V_ARGS,
        &["companion", "--p", "3", "--alpha", "2", "--beta", "1", "--f", "2,0,1"],
    ] {
        let text = build(args);
        let value: Value = serde_json::from_str(&text).unwrap();
        let rep = rep_from_json(&value).unwrap();
        assert_eq!(rep_to_json(&rep), value);
    }
}

#[test]
fn example_d_matrix() {
    let m: Value = serde_json::from_str(&build(&["D", "--p", "3", "--alpha", "1", "--deltas", "1,0"])).unwrap();
    assert_eq!(m["entries"], serde_json::json!([[0, 1, 0], [1, 0, 2], [0, 1, 0]]));
}

#[test]
fn classify_recovers_parameters() {
    let out = hrep(&["analyze", "classify"], Some(&build(V_ARGS)));
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["alpha"], 1);
    assert_eq!(v["betas"], serde_json::json!([0]));
    assert_eq!(v["gammas"], serde_json::json!([0]));
    assert!(v.get("transform").is_some());
}

#[test]
fn standard_module_is_reducible() {
    let rep = build(&["standard", "--p", "2", "--n", "1"]);
    let out = hrep(&["analyze", "irreducible"], Some(&rep));
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["submodule"], serde_json::json!([[1, 0, 0]]));
}

#[test]
fn uniserial_series() {
    let rep = build(&["companion", "--p", "2", "--alpha", "1", "--beta", "1", "--f", "1,0,1"]);
    let out = hrep(&["analyze", "series"], Some(&rep));
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["chain_dims"], serde_json::json!([0, 2, 4]));
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    assert_eq!(code(&hrep(&["analyze", "uniserial"], Some(&rep))), 0);
}

#[test]
fn input_from_file_and_output_to_file() {
    let dir = std::env::temp_dir().join(format!("hrep-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let rep_path = dir.join("v.json");
    let out_path = dir.join("report.json");
    let mut args = vec!["build"];
    args.extend_from_slice(V_ARGS);
    args.extend_from_slice(&["--out", rep_path.to_str().unwrap()]);
    assert_eq!(code(&hrep(&args, None)), 0);
    let out = hrep(
        &[
            "analyze",
            "invariants",
            "--in",
            rep_path.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["deltas"], serde_json::json!([0]));
    std::fs::remove_dir_all(&dir).unwrap();
}

/// The exit-code contract: 0 holds, 1 checked and false, 2 usage or input
/// error.
#[test]
fn exit_code_matrix() {
    let v = build(V_ARGS);
    let standard = build(&["standard", "--p", "3", "--n", "1"]);
    let reducible = build(&["companion", "--p", "2", "--alpha", "1", "--beta", "1", "--f", "1,0,1"]);
    let mut broken: Value = serde_json::from_str(&v).unwrap();
    broken["z"]["entries"][0][0] = serde_json::json!(2);
    let broken = broken.to_string();
    let cases: &[(&[&str], Option<&str>, i32)] = &[
        (&["analyze", "validate"], Some(&v), 0),
        (&["analyze", "irreducible"], Some(&v), 0),
        (&["analyze", "classify"], Some(&v), 0),
        (&["analyze", "irreducible"], Some(&standard), 1),
        (&["analyze", "irreducible"], Some(&reducible), 1),
        (&["analyze", "validate"], Some(&broken), 1),
        (&["analyze", "classify"], Some(&standard), 1),
        (&["analyze", "validate"], Some("not json"), 2),
        (&["analyze", "validate"], Some("{\"n\": 1}"), 2),
        (&["analyze", "frobnicate"], Some(&v), 2),
        (&["analyze", "validate", "--in", "/nonexistent/rep.json"], None, 2),
        (
            &[
                "build", "V", "--p", "4", "--alpha", "1", "--betas", "0", "--gammas", "0",
            ],
            None,
            2,
        ),
        (
            &[
                "build", "V", "--p", "3", "--alpha", "0", "--betas", "0", "--gammas", "0",
            ],
            None,
            2,
        ),
        (
            &[
                "build", "V", "--p", "3", "--alpha", "1", "--betas", "0,0", "--gammas", "0",
            ],
            None,
            2,
        ),
        (&["build", "D", "--p", "3", "--alpha", "1", "--deltas", "1"], None, 2),
        (
            &[
                "build",
                "companion",
                "--p",
                "3",
                "--alpha",
                "1",
                "--beta",
                "1",
                "--f",
                "1,1,2",
            ],
            None,
            2,
        ),
        (&["suite", "nonsense"], None, 2),
        (&["suite", "thm22", "--p", "97"], None, 2),
        (&["suite", "ex27", "--p", "2,3"], None, 0),
        (&[], None, 2),
    ];
    for (args, stdin, expected) in cases {
        let out = hrep(args, *stdin);
        assert_eq!(
            code(&out),
            *expected,
            "{args:?}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn schema_errors_carry_paths() {
    let mut v: Value = serde_json::from_str(&build(V_ARGS)).unwrap();
    v["x"][0]["entries"][1][2] = serde_json::json!("seven");
    let out = hrep(&["analyze", "validate"], Some(&v.to_string()));
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("$.x[0].entries[1][2]"), "{err}");
}

#[test]
fn suite_reports() {
    let out = hrep(
        &["suite", "thm22", "--p", "2,3", "--n", "1,2", "--seed", "7", "--json"],
        None,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_eq!(report["suite"], "thm22");
    assert_eq!(report["cases_run"], report["cases_passed"]);
    assert!(report["failures"].as_array().unwrap().is_empty());

    let out = hrep(&["suite", "sec3-min-dim", "--p", "3", "--n", "1"], None);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("d=2: none found over 6561 pairs"), "{text}");
    assert!(text.contains("d=3: witness found"), "{text}");
}
