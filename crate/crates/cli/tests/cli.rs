use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_modinv"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn modinv");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    run_with(args, None, &[])
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn check_status<'a>(r: &'a Value, name: &str) -> &'a str {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {r}"))["status"]
        .as_str()
        .unwrap()
}

fn without_timing(mut r: Value) -> Value {
    r.as_object_mut().unwrap().remove("timing");
    r
}

#[test]
fn dickson_check_passes_for_gl2_over_gf2() {
    let out = run(&["dickson", "--p", "2", "--d", "2", "--check"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["schema_version"], "1");
    assert_eq!(r["status"], "pass");
    for name in [
        "roots-equal-determinants",
        "degrees-are-q^d-minus-q^i",
        "gl-invariant",
    ] {
        assert_eq!(check_status(&r, name), "pass");
    }
}

#[test]
fn localcoh_of_the_plane_counts_laurent_monomials() {
    let out = run(&[
        "localcoh", "--p", "2", "--d", "2", "--i", "2", "--window", "-5..-2",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let degrees = r["result"]["degrees"].as_object().unwrap();
    let dims: Vec<u64> = (-5..=-2)
        .map(|k: i64| degrees[&k.to_string()]["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [4, 3, 2, 1]);
    assert!(degrees.values().all(|v| v["stabilized"] == true));
}

#[test]
fn trivial_annihilator_is_closed_under_powers() {
    let out = run(&[
        "probe",
        "annp",
        "--p",
        "2",
        "--d",
        "1",
        "--i",
        "1",
        "--window=-4..-1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(check_status(&report(&out), "pstar-closure"), "pass");
}

#[test]
fn probe_main_without_the_hypothesis_is_not_applicable() {
    let out = run(&[
        "probe",
        "main",
        "--p",
        "2",
        "--d",
        "1",
        "--i",
        "1",
        "--window=-6..0",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["status"], "not-applicable");
}

#[test]
fn steenrod_apply_on_a_linear_form_gives_its_cube() {
    let out = run(&[
        "steenrod",
        "apply",
        "--i",
        "1",
        "--input",
        &data("gf3_linear.json"),
    ]);
    assert_eq!(code(&out), 0);
    let poly = &report(&out)["result"]["result"];
    let terms = poly["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms
        .iter()
        .all(|t| t["exp"].as_array().unwrap().iter().any(|e| e == 3)));
}

#[test]
fn emitted_polynomials_parse_back_unchanged() {
    let out = run(&[
        "steenrod",
        "apply",
        "--i",
        "1",
        "--input",
        &data("gf3_linear.json"),
    ]);
    let first = report(&out)["result"]["result"].clone();
    let text = serde_json::to_string(&first).unwrap();
    let again = run_with(&["steenrod", "apply", "--i", "0"], Some(&text), &[]);
    assert_eq!(code(&again), 0);
    assert_eq!(report(&again)["result"]["result"], first);
}

#[test]
fn cartan_qr_runs_on_a_fraction_file() {
    let out = run(&[
        "cartan",
        "qr",
        "--r",
        "1",
        "--tower",
        "--preset",
        "trivial",
        "--input",
        &data("line_fraction.json"),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    assert!(r["result"]["result"].is_object());
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = [
        "steenrod",
        "check",
        "--p",
        "3",
        "--d",
        "2",
        "--samples",
        "30",
        "--seed",
        "11",
    ];
    let a = without_timing(report(&run(&args)));
    let b = without_timing(report(&run_with(&args, None, &[("MODINV_THREADS", "1")])));
    assert_eq!(a, b);
    assert_eq!(a["status"], "pass");
    assert_eq!(a["command"]["seed"], 11);
}

#[test]
fn group_and_ideal_files_feed_local_cohomology() {
    let out = run(&[
        "localcoh",
        "--group",
        &data("transvection_gf2.json"),
        "--ideal",
        &data("dickson_gf2_rank2.json"),
        "--i",
        "2",
        "--window=-8..-2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let degrees = &report(&out)["result"]["degrees"];
    assert_eq!(degrees["-2"]["dim"], 0);
    assert_eq!(degrees["-8"]["dim"], 3);
}

#[test]
fn presets_and_depth_probes() {
    let out = run(&[
        "invariants",
        "--p",
        "2",
        "--d",
        "2",
        "--preset",
        "cyclic-transvection",
        "--degrees",
        "0..4",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["group_order"], 2);
    let dims: Vec<u64> = r["result"]["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 1, 2, 2, 3]);

    let out = run(&[
        "probe",
        "ls",
        "--p",
        "2",
        "--d",
        "3",
        "--preset",
        "full-gl",
        "--expect-depth",
        "3",
    ]);
    assert_eq!(code(&out), 0);

    let out = run(&[
        "depth",
        "--p",
        "3",
        "--d",
        "2",
        "--preset",
        "full-gl",
        "--dickson",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["status"], "pass");
}

#[test]
fn malformed_input_exits_3_with_a_path() {
    let bad = r#"{"ring":{"field":{"p":2,"s":1,"modulus":[1,1]},"nvars":1},"terms":[{"exp":"x","coeff":[1]}]}"#;
    let out = run_with(&["steenrod", "apply", "--i", "1"], Some(bad), &[]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("terms[0].exp"));

    let wrong_len = r#"{"ring":{"field":{"p":2,"s":1,"modulus":[1,1]},"nvars":1},"terms":[{"exp":[1,2],"coeff":[1]}]}"#;
    let out = run_with(&["steenrod", "apply", "--i", "1"], Some(wrong_len), &[]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("terms[0]"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_3_and_help_exits_0() {
    assert_eq!(code(&run(&["dickson", "--p", "2"])), 3);
    assert_eq!(
        code(&run(&[
            "localcoh", "--p", "2", "--d", "1", "--i", "1", "--window", "3..1"
        ])),
        3
    );
    assert_eq!(code(&run(&["no-such-command"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(
        code(&run_with(
            &["dickson", "--p", "2", "--d", "2"],
            None,
            &[("MODINV_THREADS", "x")]
        )),
        3
    );
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("modinv-report-{}.json", std::process::id()));
    let out = run(&[
        "dickson",
        "--p",
        "3",
        "--d",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(r["command"]["subcommand"], "dickson");
}

#[test]
fn schema_files_are_valid_json_and_match_the_status_set() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", "v1"]
        .iter()
        .collect();
    let report_schema: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report.schema.json")).unwrap())
            .unwrap();
    let inputs: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("inputs.schema.json")).unwrap())
            .unwrap();
    let statuses = &report_schema["$defs"]["status"]["enum"];
    assert_eq!(
        statuses,
        &serde_json::json!(["pass", "not-applicable", "inconclusive", "fail"])
    );
    for def in ["field", "ring", "polynomial", "group", "fraction", "ideal"] {
        assert!(inputs["$defs"][def].is_object(), "{def}");
    }
    let r = report(&run(&["dickson", "--p", "2", "--d", "2"]));
    let required: Vec<&str> = report_schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, required);
}
