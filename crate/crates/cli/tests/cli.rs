use std::process::Command;

use flatsolv_cli::{run, Status};
use flatsolv_core::holonomy::FiniteAbelianGroup;
use flatsolv_core::spectrum::RotationSpectrum;
use serde_json::Value;

fn flatsolv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_flatsolv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, _) = flatsolv(&full);
    (code, serde_json::from_str(&stdout).expect("valid JSON"))
}

#[test]
fn quarter_turn_has_holonomy_z4() {
    let (code, v) = json(&["holonomy", "s=0;f=1/4"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["group"]["display"], "Z4");
    assert_eq!(v["payload"]["group"]["invariant_factors"], serde_json::json!([4]));
    let (code, text, _) = flatsolv(&["holonomy", "s=0;f=1/4"]);
    assert_eq!(code, 0);
    assert!(text.contains("holonomy Z4"), "{text}");
}

#[test]
fn fifth_turn_is_obstructed() {
    let (code, v) = json(&["check", "s=0;f=1/5"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "obstruction");
    let ob = &v["payload"]["obstruction"];
    assert_eq!(ob["kind"], "IncompleteOrbit");
    assert_eq!(ob["q"], 5);
    assert_eq!(ob["missing"], serde_json::json!([2, 3]));
    let (_, _, stderr) = flatsolv(&["check", "s=0;f=1/5"]);
    assert!(stderr.contains("missing residues {2,3} mod 5"), "{stderr}");
}

#[test]
fn minimal_dimension_for_z2_is_three() {
    let (code, v) = json(&["min-dim", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["min_dim"], 3);
    let (_, text, _) = flatsolv(&["min-dim", "2"]);
    assert!(text.contains(": 3"), "{text}");
}

#[test]
fn arithmetic_commands() {
    assert_eq!(json(&["phi", "12"]).1["payload"]["phi"], 4);
    assert_eq!(json(&["hiller-phi", "10"]).1["payload"]["hiller_phi"], 4);
    let (_, v) = json(&["cyclotomic", "12"]);
    assert_eq!(v["payload"]["coefficients"], serde_json::json!([1, 0, -1, 0, 1]));
    assert_eq!(v["payload"]["text"], "x^4 - x^2 + 1");
}

#[test]
fn exit_codes_follow_status() {
    assert_eq!(flatsolv(&["check", "s=1;f=1/4"]).0, 0);
    assert_eq!(flatsolv(&["lattice", "s=0;f=2/7"]).0, 2);
    assert_eq!(flatsolv(&["check", "s=0;f=0"]).0, 1);
    assert_eq!(flatsolv(&["check", "s=0;f=5/4"]).0, 1);
    assert_eq!(flatsolv(&["check", "f=1/4"]).0, 1);
    assert_eq!(flatsolv(&["enumerate", "--dim", "7"]).0, 1);
    assert_eq!(flatsolv(&["min-dim", "1"]).0, 1);
    assert_eq!(flatsolv(&["no-such-command"]).0, 1);
    assert_eq!(flatsolv(&["construct", "--kahler"]).0, 1);
    assert_eq!(flatsolv(&["construct", "--cyclic", "3", "--abelian", "2"]).0, 1);
    assert_eq!(flatsolv(&[]).0, 1);
    assert_eq!(flatsolv(&["--help"]).0, 0);
}

#[test]
fn parse_errors_are_enveloped() {
    let (code, v) = json(&["check", "s=0;f=1/0"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert!(v["diagnostics"].as_array().unwrap().iter().any(|d| d.as_str().unwrap().contains("Usage")));
    let (code, v) = json(&["phi", "abc"]);
    assert_eq!((code, &v["status"]), (1, &Value::from("error")));
}

#[test]
fn spectrum_and_group_strings_round_trip() {
    let (_, v) = json(&["lattice", "s=1;f=3/5,1/5"]);
    let text = v["payload"]["spectrum"]["text"].as_str().unwrap();
    assert_eq!(text, "s=1;f=2/5,1/5");
    let parsed: RotationSpectrum = text.parse().unwrap();
    let decoded: RotationSpectrum = serde_json::from_value(v["payload"]["spectrum"].clone()).unwrap();
    assert_eq!(parsed, decoded);

    let (_, v) = json(&["construct", "--abelian", "4,6"]);
    let g = &v["payload"]["group"];
    assert_eq!(g["invariant_factors"], serde_json::json!([2, 12]));
    let parsed: FiniteAbelianGroup = g["display"].as_str().unwrap().parse().unwrap();
    let decoded: FiniteAbelianGroup = serde_json::from_value(g.clone()).unwrap();
    assert_eq!(parsed, decoded);
    assert_eq!(parsed.to_string(), "Z2+Z12");
}

#[test]
fn lattice_payload() {
    let (code, v) = json(&["lattice", "s=0;f=1/3", "--tol", "1e-8"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["order"], 3);
    assert_eq!(p["integer_model"], serde_json::json!([[0, -1], [1, -1]]));
    assert_eq!(p["tolerance"], 1e-8);
    assert!(p["residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(p["conjugator"].as_array().unwrap().len(), 2);
}

#[test]
fn construct_and_kahler() {
    let (_, v) = json(&["construct", "--cyclic", "12"]);
    assert_eq!(v["payload"]["dimension"], 5);
    assert_eq!(v["payload"]["group"]["display"], "Z12");
    let (_, v) = json(&["construct", "--abelian", "2,3", "--kahler"]);
    let dim = v["payload"]["dimension"].as_u64().unwrap();
    assert_eq!(dim % 2, 0);
    assert_eq!(v["payload"]["group"]["display"], "Z6");
}

#[test]
fn enumerate_and_tables() {
    let (code, v) = json(&["enumerate", "--dim", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["groups"].as_array().unwrap().len(), 17);
    assert_eq!(v["payload"]["products"].as_array().unwrap().len(), 10);
    let (_, v) = json(&["platycosms"]);
    let rows = v["payload"]["platycosms"].as_array().unwrap();
    assert_eq!(rows.iter().filter(|r| r["realizable"] == true).count(), 5);
    let (_, v) = json(&["pairs"]);
    assert_eq!(v["payload"]["count"], 19);
}

#[test]
fn seed_check_passes() {
    let (code, stdout, _) = flatsolv(&["--seed-check"]);
    assert_eq!(code, 0);
    assert!(!stdout.contains("FAIL"), "{stdout}");
    assert_eq!(flatsolv(&["--seed-check", "phi", "3"]).0, 1);
}

#[test]
fn library_entry_point_matches_binary() {
    let exec = run(["flatsolv", "check", "s=0;f=1/5"]);
    assert_eq!(exec.result.status, Status::Obstruction);
    assert_eq!(exec.exit_code(), 2);
    let exec = run(["flatsolv", "--json", "phi", "7"]);
    assert_eq!(exec.result.payload["phi"], 6);
    let v: Value = serde_json::from_str(&exec.stdout).unwrap();
    assert_eq!(v["payload"]["phi"], 6);
}
