use std::path::PathBuf;
use std::process::Command as Process;

use leibrack_cli::{run, CliError, Command, RunConfig};
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_leibrack"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 report"),
    )
}

#[test]
fn rack_check_sq2_counts_every_basis_triple() {
    let out = run(&RunConfig::new(Command::RackCheck).with_input("catalog:sq2")).unwrap();
    assert_eq!(out.exit_code, 0);
    assert_eq!(out.report["status"], "pass");
    let sd = check(&out.report, "self_distributivity");
    assert_eq!(sd["status"], "pass");
    // S(sq2)_(2) has basis 1, α₁, α₂, α₁², α₁α₂, α₂².
    assert_eq!(sd["instances"], 6 * 6 * 6);
}

#[test]
fn validate_invalid_algebra_names_failing_triple() {
    let out = run(&RunConfig::new(Command::Validate).with_input(data("invalid.json"))).unwrap();
    assert_eq!(out.exit_code, 1);
    assert_eq!(out.report["status"], "fail");
    let c = check(&out.report, "leibniz_identity");
    assert_eq!(c["status"], "fail");
    assert_eq!(
        c["counterexample"]["tuple"],
        serde_json::json!(["1", "2", "2"])
    );
}

#[test]
fn star_of_alpha1_with_itself_on_sq2() {
    let out = run(&RunConfig::new(Command::Star).with_input(data("star_sq2.json"))).unwrap();
    assert_eq!(out.exit_code, 0);
    let result = &out.report["data"]["star_sq2"]["result"];
    assert_eq!(result, &serde_json::json!([["0/1 + 1/1·ħ", [0, 1]]]));
    assert_eq!(
        check(&out.report, "hbar1_is_minus_poisson")["status"],
        "pass"
    );
}

#[test]
fn star_without_pair_samples_with_seed() {
    let out = run(&RunConfig::new(Command::Star).with_input("catalog:heisenberg")).unwrap();
    assert_eq!(out.exit_code, 0);
    assert!(
        check(&out.report, "hbar1_is_minus_poisson")["instances"]
            .as_u64()
            .unwrap()
            >= 100
    );
}

#[test]
fn ideal_list_outside_range_fails() {
    let out = run(&RunConfig::new(Command::Ideals).with_input(data("ideal_list.json"))).unwrap();
    assert_eq!(out.exit_code, 1);
    assert_eq!(
        check(&out.report, "squares_in_left_center")["status"],
        "pass"
    );
    assert_eq!(
        check(&out.report, "ideal_between_squares_and_left_center")["status"],
        "fail"
    );
}

#[test]
fn finite_rack_battery_passes() {
    let cfg = RunConfig::new(Command::RackCheck).with_input("dihedral:3");
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code, 0, "{}", out.render());
}

#[test]
fn lp_check_passes_on_heisenberg() {
    let out = run(&RunConfig::new(Command::LpCheck).with_input("catalog:heisenberg")).unwrap();
    assert_eq!(out.exit_code, 0, "{}", out.render());
}

#[test]
fn cohomology_reports_dimensions() {
    let mut cfg = RunConfig::new(Command::Cohomology).with_input("catalog:sq2");
    cfg.degree_cap = 1;
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code, 0, "{}", out.render());
    let dims = out.report["data"]["sq2/uar1"]["dims"].as_array().unwrap();
    assert_eq!(dims.len(), 2);
    for d in dims {
        let (z, b, h) = (
            d["cocycles"].as_u64().unwrap(),
            d["coboundaries"].as_u64().unwrap(),
            d["cohomology"].as_u64().unwrap(),
        );
        assert_eq!(z, b + h);
    }
    assert_eq!(dims[0]["coboundaries"], 0);
    assert_eq!(check(&out.report, "d_squared")["status"], "pass");
}

#[test]
fn malformed_scalar_is_a_parse_error_with_pointer() {
    let err =
        run(&RunConfig::new(Command::Validate).with_input(data("bad_scalar.json"))).unwrap_err();
    assert!(matches!(err, CliError::Parse { .. }));
    let doc = err.to_json();
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["pointer"], "/c/0/3");
}

#[test]
fn truncated_json_reports_location() {
    let err =
        run(&RunConfig::new(Command::Validate).with_input(data("truncated.json"))).unwrap_err();
    let doc = err.to_json();
    assert_eq!(doc["error"]["kind"], "parse");
    assert_eq!(doc["error"]["location"]["line"], 2);
}

#[test]
fn non_bijective_rack_is_rejected() {
    let err =
        run(&RunConfig::new(Command::RackCheck).with_input(data("bad_rack.json"))).unwrap_err();
    assert!(err.to_string().contains("bijection"));
}

#[test]
fn zero_caps_are_config_errors() {
    let mut cfg = RunConfig::new(Command::Star).with_input("catalog:sq2");
    cfg.hbar_order = 0;
    assert!(matches!(run(&cfg), Err(CliError::Config(_))));
}

#[test]
fn missing_algebra_is_a_config_error() {
    let cfg = RunConfig::new(Command::Star).with_input("dihedral:3");
    assert!(matches!(run(&cfg), Err(CliError::Config(_))));
}

#[test]
fn missing_file_is_an_io_error() {
    let cfg = RunConfig::new(Command::Validate).with_input(data("absent.json"));
    let err = run(&cfg).unwrap_err();
    assert!(matches!(err, CliError::Io { .. }));
    assert_eq!(err.to_json()["error"]["kind"], "io");
}

#[test]
fn empty_validate_battery_warns() {
    let out = run(&RunConfig::new(Command::Validate)).unwrap();
    assert_eq!(out.exit_code, 0);
    assert_eq!(out.report["summary"]["checks"], 0);
    assert!(out.report["warning"].is_string());
}

#[test]
fn binary_exit_codes() {
    assert_eq!(
        binary(&["--input", "catalog:sq2", "--command", "validate"]).0,
        0
    );
    assert_eq!(
        binary(&["--input", &data("invalid.json"), "--command", "validate"]).0,
        1
    );
    assert_eq!(
        binary(&["--input", &data("truncated.json"), "--command", "validate"]).0,
        2
    );
    assert_eq!(
        binary(&["--input", "catalog:nope", "--command", "validate"]).0,
        2
    );
}

#[test]
fn binary_writes_error_document_to_output() {
    let dir = std::env::temp_dir().join(format!("leibrack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("err.json");
    let p = path.to_string_lossy().into_owned();
    let (code, stdout) = binary(&[
        "--input",
        &data("bad_scalar.json"),
        "--command",
        "validate",
        "--output",
        &p,
    ]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["error"]["pointer"], "/c/0/3");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "--input",
        "catalog:sq2",
        "--command",
        "report",
        "--degree-cap",
        "1",
        "--seed",
        "7",
    ];
    let (a, first) = binary(&args);
    let (b, second) = binary(&args);
    assert_eq!((a, b), (0, 0));
    assert_eq!(first, second);
    let doc: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["config"]["seed"], 7);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["wall_time_ms"].is_null()));
}

#[test]
fn timings_are_recorded_on_request() {
    let (code, out) = binary(&[
        "--input",
        "catalog:sq2",
        "--command",
        "validate",
        "--timings",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert!(doc["checks"][0]["wall_time_ms"].is_number());
}

#[test]
fn later_inputs_override_earlier_ones() {
    let cfg = RunConfig::new(Command::Validate)
        .with_input(data("invalid.json"))
        .with_input("catalog:sq2");
    assert_eq!(run(&cfg).unwrap().exit_code, 0);
}
