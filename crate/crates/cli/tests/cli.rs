use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ydbraid(dir: &Path, args: &[&str]) -> Run {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_ydbraid"))
        .args(args)
        .current_dir(dir)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn ok(dir: &Path, args: &[&str]) -> Run {
    let r = ydbraid(dir, args);
    assert_eq!(r.code, 0, "{args:?}\nstdout:\n{}\nstderr:\n{}", r.stdout, r.stderr);
    r
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn write_json(p: &Path, v: &Value) {
    fs::write(p, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

fn workdir() -> (tempfile::TempDir, PathBuf) {
    let t = tempfile::tempdir().unwrap();
    let p = t.path().to_path_buf();
    (t, p)
}

#[test]
fn generated_s3_passes_hopf_and_yd_checks() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "S3", "-o", "s3.json"]);
    let r = ok(&d, &["check", "hopf", "s3.json"]);
    assert!(r.stdout.contains("s3.json: PASS"));
    ok(&d, &["gen", "regular-yd", "--hopf", "s3.json", "-o", "reg.json"]);
    ok(&d, &["check", "yd", "reg.json"]);
    ok(&d, &["dual", "yd", "reg.json", "-o", "reg-dual.json"]);
    ok(&d, &["check", "yd", "reg-dual.json"]);
}

#[test]
fn monoid_algebra_fails_the_hopf_check() {
    let (_t, d) = workdir();
    fs::write(d.join("mono.json"), r#"{"names": ["1", "e"], "table": [["1", "e"], ["e", "e"]]}"#).unwrap();
    ok(&d, &["gen", "group-algebra", "--group", "table", "--table", "mono.json", "--monoid", "-o", "m.json"]);
    ok(&d, &["check", "bialgebra", "m.json"]);
    let r = ydbraid(&d, &["check", "hopf", "m.json"]);
    assert_eq!(r.code, 1, "{}", r.stdout);
}

fn unit_r_matrix(hopf: &Value) -> Value {
    let unit = hopf["unit"].as_array().unwrap();
    let vector: Vec<Value> = unit
        .iter()
        .flat_map(|a| unit.iter().map(move |b| (a.as_str().unwrap(), b.as_str().unwrap())))
        .map(|(a, b)| {
            let one = |s: &str| s == "1";
            Value::String(if one(a) && one(b) {
                "1".into()
            } else if a == "0" || b == "0" {
                "0".into()
            } else {
                unreachable!()
            })
        })
        .collect();
    serde_json::json!({"type": "r-matrix", "field": hopf["field"], "hopf": hopf, "vector": vector})
}

#[test]
fn unit_r_matrix_over_the_dual_of_s3_fails_with_a_witness() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "S3", "-o", "s3.json"]);
    ok(&d, &["dual", "bialgebra", "s3.json", "-o", "s3d.json"]);
    write_json(&d.join("r.json"), &unit_r_matrix(&read_json(&d.join("s3d.json"))));
    let r = ydbraid(&d, &["check", "rmatrix", "--level", "strong", "r.json"]);
    assert_eq!(r.code, 1, "{}\n{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("FAIL"), "{}", r.stdout);
    assert!(r.stdout.contains("r.json: FAIL"));
}

#[test]
fn unit_r_matrix_over_s3_gives_yd_modules() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "S3", "-o", "s3.json"]);
    write_json(&d.join("r.json"), &unit_r_matrix(&read_json(&d.join("s3.json"))));
    ok(&d, &["check", "rmatrix", "--level", "strong", "r.json"]);
    ok(&d, &["gen", "regular-yd", "--hopf", "s3.json", "-o", "reg.json"]);
    ok(&d, &["rmatrix", "coaction", "--module", "reg.json", "--r", "r.json", "-o", "reg-r.json"]);
    ok(&d, &["check", "yd", "reg-r.json"]);
    ok(&d, &["rmatrix", "inverse", "--r", "r.json", "-o", "r-inv.json"]);
    assert!(read_json(&d.join("r-inv.json")).get("inverse").is_some());
    ok(&d, &["check", "rmatrix", "--level", "quantum", "r-inv.json"]);
}

#[test]
fn line_four_homology_on_z2() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "Z2", "-o", "z2.json"]);
    ok(&d, &["gen", "regular-yd", "--hopf", "z2.json", "-o", "m.json"]);
    ok(&d, &["gen", "trivial-yd", "--hopf", "z2.json", "-o", "n.json"]);
    let args =
        ["homology", "--hopf", "z2.json", "--mod", "m.json", "--coeff", "n.json", "--line", "4", "--max-degree", "4"];
    ok(&d, &[&args[..], &["-o", "rep.json"]].concat());
    let rep = read_json(&d.join("rep.json"));
    for key in ["d_squared_zero", "d_prime_squared_zero", "anticommute", "euler_holds"] {
        assert_eq!(rep[key], Value::Bool(true), "{key}");
    }
    assert_eq!(rep["truncation"], 4);
    assert_eq!(rep["degrees"].as_array().unwrap().len(), 5);
    ok(&d, &["report", "rep.json"]);
    ok(&d, &[&args[..], &["-o", "rep2.json"]].concat());
    assert_eq!(fs::read(d.join("rep.json")).unwrap(), fs::read(d.join("rep2.json")).unwrap());
}

#[test]
fn line_out_of_range_is_a_usage_error() {
    let (_t, d) = workdir();
    let r = ydbraid(&d, &["homology", "--hopf", "x", "--mod", "x", "--coeff", "x", "--line", "5", "--max-degree", "2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn systems_build_verify_and_glue() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "Z2", "-o", "z2.json"]);
    ok(&d, &["gen", "regular-yd", "--hopf", "z2.json", "-o", "m1.json"]);
    ok(&d, &["gen", "trivial-yd", "--hopf", "z2.json", "--dim", "2", "-o", "m2.json"]);
    ok(&d, &["build", "yd-system", "--hopf", "z2.json", "--mod", "m1.json", "m2.json", "-o", "sys.json"]);
    let sys = read_json(&d.join("sys.json"));
    assert_eq!(sys["components"].as_array().unwrap().len(), 4);
    assert_eq!(sys["sigma"].as_object().unwrap().len(), 10);
    let r = ok(&d, &["verify", "cybe", "sys.json"]);
    assert_eq!(r.stdout.matches("  ok ").count(), 20);
    ok(&d, &["glue", "--system", "sys.json", "--lo", "2", "--hi", "3", "-o", "glued.json"]);
    ok(&d, &["verify", "cybe", "glued.json"]);
    ok(&d, &["gen", "identity-maps", "--system", "sys.json", "-o", "id.json"]);
    ok(&d, &["verify", "morphism", "--from", "sys.json", "--to", "sys.json", "--maps", "id.json"]);
    let bad = ydbraid(&d, &["glue", "--system", "sys.json", "--lo", "3", "--hi", "2"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn ydalg_variant_uses_module_algebras() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "S3", "-o", "s3.json"]);
    ok(&d, &["gen", "regular-yd", "--hopf", "s3.json", "-o", "m.json"]);
    let r = ydbraid(&d, &["build", "yd-system", "--hopf", "s3.json", "--mod", "m.json", "--variant", "ydalg"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    ok(&d, &["gen", "formal-unit", "--mod", "m.json", "-o", "a.json"]);
    ok(&d, &["check", "yd-algebra", "a.json"]);
    ok(&d, &["build", "yd-system", "--hopf", "s3.json", "--mod", "a.json", "--variant", "ydalg", "-o", "sys.json"]);
    ok(&d, &["verify", "cybe", "sys.json"]);
}

#[test]
fn perturbed_system_fails_with_a_witness() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "S3", "-o", "s3.json"]);
    ok(&d, &["gen", "regular-yd", "--hopf", "s3.json", "-o", "m.json"]);
    ok(&d, &["build", "yd-system", "--hopf", "s3.json", "--mod", "m.json", "-o", "sys.json"]);
    let mut sys = read_json(&d.join("sys.json"));
    // σ_{H,M} replaced by the flip of two 6-dimensional spaces
    let flip: Vec<Value> = (0..36)
        .map(|row| {
            let (a, b) = (row / 6, row % 6);
            Value::Array((0..36).map(|col| Value::String(if col == b * 6 + a { "1" } else { "0" }.into())).collect())
        })
        .collect();
    sys["sigma"]["1,2"] = Value::Array(flip);
    write_json(&d.join("bad.json"), &sys);
    let r = ydbraid(&d, &["verify", "cybe", "bad.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL  cYBE (0,1,2)"), "{}", r.stdout);
}

#[test]
fn precision_harness_is_deterministic() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "Z2", "--field", "Fp:5", "-o", "z2.json"]);
    let args = ["harness", "precision", "--hopf", "z2.json", "--dim", "2", "--trials", "10", "--seed", "3"];
    let a = ok(&d, &args);
    let b = ok(&d, &args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("precision: PASS"));
}

#[test]
fn dualizing_twice_reproduces_the_file() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "D4", "-o", "d4.json"]);
    ok(&d, &["dual", "bialgebra", "d4.json", "-o", "d4d.json"]);
    ok(&d, &["dual", "bialgebra", "d4d.json", "-o", "d4dd.json"]);
    assert_eq!(fs::read(d.join("d4.json")).unwrap(), fs::read(d.join("d4dd.json")).unwrap());
}

#[test]
fn zero_denominator_is_an_input_error_naming_the_field() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "Z2", "-o", "z2.json"]);
    let mut v = read_json(&d.join("z2.json"));
    v["mul"][1][1][0] = Value::String("1/0".into());
    write_json(&d.join("bad.json"), &v);
    let r = ydbraid(&d, &["check", "bialgebra", "bad.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("mul[1][1][0]"), "{}", r.stderr);
}

#[test]
fn prime_field_coefficients_are_normalized_with_a_warning() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "Z3", "--field", "Fp:5", "-o", "z3.json"]);
    let mut v = read_json(&d.join("z3.json"));
    v["counit"][2] = Value::from(11);
    write_json(&d.join("big.json"), &v);
    let r = ok(&d, &["check", "hopf", "big.json"]);
    assert!(r.stderr.contains("warning") && r.stderr.contains("counit[2]"), "{}", r.stderr);
}

#[test]
fn mismatched_fields_are_rejected() {
    let (_t, d) = workdir();
    ok(&d, &["gen", "group-algebra", "--group", "Z2", "-o", "q.json"]);
    ok(&d, &["gen", "group-algebra", "--group", "Z2", "--field", "Fp:3", "-o", "f3.json"]);
    ok(&d, &["gen", "regular-yd", "--hopf", "f3.json", "-o", "m.json"]);
    let r = ydbraid(&d, &["build", "yd-system", "--hopf", "q.json", "--mod", "m.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("field mismatch"), "{}", r.stderr);
}
