use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn conelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conelab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("conelab-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn depth_of_orthant_is_one() {
    let o = conelab(&["depth", "--in", &fixture("orthant3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn depth_of_halfspace_is_one() {
    let o = conelab(&["depth", "--in", &fixture("halfspace2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn orthant_is_self_dual() {
    let dual = conelab(&["dual", "--in", &fixture("orthant3.json")]);
    let conv = conelab(&["convert", "--in", &fixture("orthant3.json")]);
    assert_eq!(dual.status.code(), Some(0));
    let (d, c) = (json(&dual), json(&conv));
    for key in ["rays", "lineality", "inequalities", "equations"] {
        assert_eq!(d[key], c[key], "{key}");
    }
}

#[test]
fn convert_round_trip_is_stable() {
    let first = conelab(&["convert", "--in", &fixture("diamond.json")]);
    assert_eq!(first.status.code(), Some(0));
    let path = temp_path("roundtrip.json");
    std::fs::write(&path, &first.stdout).unwrap();
    let second = conelab(&["convert", "--in", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(json(&first), json(&second));
}

#[test]
fn output_bytes_are_deterministic() {
    for args in [
        vec!["faces", "--in", "diamond.json"],
        vec!["classify", "--in", "diamond.json"],
        vec!["lextangents", "--in", "orthant3.json"],
    ] {
        let args: Vec<String> =
            args.iter().map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = conelab(&args);
        let b = conelab(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(["faces", "--in", &fixture("diamond.json")])
        .env("CONELAB_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(["faces", "--in", &fixture("diamond.json")])
        .env("CONELAB_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn diamond_has_ten_faces() {
    let o = conelab(&["faces", "--in", &fixture("diamond.json")]);
    assert_eq!(json(&o)["count"], 10);
    let o = conelab(&["faces", "--in", &fixture("diamond.json"), "--include-empty-face"]);
    assert_eq!(json(&o)["count"], 11);
}

#[test]
fn parse_error_names_the_path() {
    let o = conelab(&["dual", "--in", &fixture("bad_scalar.json")]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("$.rays[1][1]"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    let o = conelab(&["dual", "--in", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let o = conelab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_face_index_is_a_usage_error() {
    let o = conelab(&["tangent", "--in", &fixture("diamond.json"), "--face", "0,x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tangent_at_a_ray_of_the_diamond() {
    // ray (1,0,1) lies on the facets x3 - x1 - x2 >= 0 and x3 - x1 + x2 >= 0
    let o = conelab(&["tangent", "--in", &fixture("diamond.json"), "--face", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["inequalities"], serde_json::json!([["-1", "-1", "1"], ["-1", "1", "1"]]));
}

#[test]
fn check_reports_pass_on_polyhedral_cones() {
    for prop in ["exposed", "tangential", "strong", "fdc"] {
        let o = conelab(&["check", prop, "--in", &fixture("diamond.json")]);
        assert_eq!(o.status.code(), Some(0), "{prop}");
        assert_eq!(json(&o)["status"], "PASS", "{prop}");
    }
}

#[test]
fn out_flag_writes_the_file() {
    let path = temp_path("dual.json");
    let o = conelab(&["dual", "--in", &fixture("orthant3.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.ends_with("}\n"));
}

#[test]
fn slice_of_the_diamond() {
    let o = conelab(&["slice", "--in", &fixture("diamond.json"), "--height", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("OFF\n# non-authoritative"));
    assert!(text.contains("\n4 1 0\n"));
    let o = conelab(&["slice", "--in", &fixture("halfspace2.json"), "--height", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quick_verify_runs_pass() {
    for ex in ["roshchina", "cubic", "circles"] {
        let o = conelab(&["verify", ex, "--samples", "101"]);
        assert_eq!(o.status.code(), Some(0), "{ex}: {}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(json(&o)["status"], "PASS");
    }
}

#[test]
fn verify_rejects_bad_arguments() {
    assert_eq!(conelab(&["verify", "cubic", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(conelab(&["verify", "cubic", "--tol", "-1"]).status.code(), Some(2));
}
