use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigonal")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_reports_mode_and_violations() {
    let ok = run(&["validate", "--in", &fixture("tower_special_g3.json")]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!(v["valid"], true);
    assert_eq!(v["mode"], "special");
    assert_eq!(v["genus"], 3);

    // a transposition across two blocks breaks the block system
    let dir = std::env::temp_dir().join(format!("trigonal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"degree":6,"blocks":[[1,2],[3,4],[5,6]],"branch_points":[
            {"label":"a","monodromy":[[1,3]]},{"label":"b","monodromy":[[1,3]]}]}"#,
    )
    .unwrap();
    let out = run(&["validate", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["violations"].as_array().unwrap().len() >= 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn construct_matches_fixture() {
    let out = run(&["construct", "--in", &fixture("tower_general_g3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let want = std::fs::read(fixture("forward_general_g3.json")).unwrap();
    assert_eq!(out.stdout, want);
    let checks = run(&["construct", "--check", "--in", &fixture("tower_special_g3.json")]);
    assert_eq!(checks.status.code(), Some(0));
}

#[test]
fn invert_and_classify() {
    let out = run(&["invert", "--in", &fixture("cover_tetragonal_m1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(fixture("inverse_m1.json")).unwrap());
    let c = json(&run(&["classify", "--in", &fixture("cover_tetragonal_m1.json")]));
    assert_eq!(c["stratum"], "M1");
    // a degree-6 cover is not tetragonal
    assert_eq!(run(&["invert", "--in", &fixture("tower_general_g3.json")]).status.code(), Some(2));
}

#[test]
fn roundtrips_pass() {
    let s = run(&["roundtrip", "--mode", "special", "--in", &fixture("tower_special_g3.json")]);
    assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stdout));
    let e = run(&["roundtrip", "--mode", "etale", "--in", &fixture("cover_tetragonal_m0.json")]);
    assert_eq!(e.status.code(), Some(0), "{}", String::from_utf8_lossy(&e.stdout));
}

#[test]
fn sample_is_reproducible() {
    let a = run(&["sample", "--genus", "5", "--mode", "etale", "--seed", "9"]);
    let b = run(&["sample", "--genus", "5", "--mode", "etale", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let many = json(&run(&["sample", "--genus", "4", "--count", "3", "--three-cycles", "2"]));
    assert_eq!(many.as_array().unwrap().len(), 3);
}

#[test]
fn batch_is_independent_of_thread_count() {
    let base = ["batch", "--suite", "special-roundtrip", "--genus", "3-5", "--count", "30", "--seed", "4"];
    let one = run(&[&base[..], &["--threads", "1"]].concat());
    let four = run(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json(&one)["passed"], 30);
    assert!(json(&one).get("elapsed_ms").is_none());
    let timed = json(&run(&[&base[..], &["--timing"]].concat()));
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn coefficients_report() {
    let out = run(&["verify-coefficients", "--gmax", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(fixture("coefficients_g12.json")).unwrap());
    let md = run(&["verify-coefficients", "--gmax", "5", "--format", "md"]);
    assert!(String::from_utf8(md.stdout).unwrap().contains("| 5 |"));
    assert_eq!(run(&["verify-coefficients", "--gmax", "2"]).status.code(), Some(2));
}

#[test]
fn bad_input_is_an_error() {
    assert_eq!(run(&["construct", "--in", "/nonexistent.json"]).status.code(), Some(2));
}
