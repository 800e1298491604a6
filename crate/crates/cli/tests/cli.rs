use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn procsm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_procsm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_predicates_and_counts() {
    let out = procsm(&["validate", &data("p2.fan")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid, smooth, complete, cones: 1/3/3\n");

    let out = procsm(&["validate", &data("a2.fan")]);
    assert_eq!(stdout(&out), "valid, smooth, not complete, cones: 1/2/1\n");
}

#[test]
fn validate_rejects_bad_files_with_positions() {
    let out = procsm(&["validate", &data("bad_ray.fan")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("bad_ray.fan:3:1:"), "{text}");
    assert!(text.contains("not primitive"), "{text}");

    let out = procsm(&["validate", &data("empty.fan")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("empty.fan:1:1:"));

    let out = procsm(&["validate", &data("missing.fan")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csm_of_projective_spaces() {
    let out = procsm(&["csm", "--fan", &data("p2.fan")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "dim 2: [V{}]\n\
         dim 1: [V{2}] + [V{1}] + [V{0}]\n\
         dim 0: [V{1,2}] + [V{0,2}] + [V{0,1}]\n\
         degree: 3\n\
         euler characteristic: 3\n"
    );

    let out = procsm(&["csm", "--fan", &data("p1.fan"), "--function", "oneX"]);
    assert!(stdout(&out).starts_with("dim 1: [V{}]\ndim 0: [V{1}] + [V{0}]\ndegree: 2\n"));

    let out = procsm(&["csm", "--fan", &data("a2.fan")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degree: not complete: degree undefined"));
}

#[test]
fn porcelain_output_parses_back() {
    let out = procsm(&["--porcelain", "csm", "--fan", &data("p1.fan")]);
    let listing = stdout(&out);
    assert_eq!(listing, "{}:1\n{1}:1\n{0}:1\n");

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(listing.as_bytes()).unwrap();
    let listing_arg = format!("@{}", file.path().display());
    let again = procsm(&["--porcelain", "csm", "--fan", &data("p1.fan"), "--function", &listing_arg]);
    assert_eq!(stdout(&again), listing);
}

#[test]
fn explicit_functions() {
    let out = procsm(&["euler", "--fan", &data("p2.fan"), "--function", "{0}:1; {0,1}:1 {0,2}:1"]);
    assert_eq!(stdout(&out), "2\n");
    let out = procsm(&["euler", "--fan", &data("p2.fan"), "--function", "{0,1,2}:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chow_groups() {
    let out = procsm(&["chow", "--fan", &data("p1xp1.fan")]);
    assert_eq!(stdout(&out), "A_2: Z\nA_1: Z^2\nA_0: Z\n");
    let out = procsm(&["chow", "--fan", &data("a2.fan")]);
    assert_eq!(stdout(&out), "A_2: Z\nA_1: 0\nA_0: 0\n");
}

#[test]
fn push_functions_and_cycles() {
    let p1 = data("p1.fan");
    let out = procsm(&["push", "--morphism", &data("double.mat"), "--source", &p1, "--target", &p1]);
    assert_eq!(stdout(&out), "{}:2\n{1}:1\n{0}:1\n");

    let out = procsm(&[
        "--porcelain", "push", "--morphism", &data("identity2.mat"), "--source", &data("f1.fan"),
        "--target", &data("p2.fan"), "--cycle", "{3}:1 {0,3}:1",
    ]);
    assert_eq!(stdout(&out), "{0,1}:1\n");

    let out = procsm(&[
        "push", "--morphism", &data("diagonal.mat"), "--source", &p1, "--target", &data("p1xp1.fan"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a union of torus orbits"));

    let out = procsm(&[
        "push", "--morphism", &data("identity1.mat"), "--source", &data("a1.fan"), "--target", &p1,
        "--cycle", "{}:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verifications_exit_zero() {
    let p1 = data("p1.fan");
    let cases: Vec<Vec<String>> = vec![
        vec!["naturality".into(), "--morphism".into(), data("identity2.mat"), "--source".into(), data("f1.fan"), "--target".into(), data("p2.fan")],
        vec!["verify".into(), "naturality".into(), "--morphism".into(), data("double.mat"), "--source".into(), p1.clone(), "--target".into(), p1.clone()],
        vec!["verify".into(), "naturality".into(), "--morphism".into(), data("first.mat"), "--source".into(), data("p1xp1.fan"), "--target".into(), p1.clone()],
        vec!["verify".into(), "dagger".into(), "--fan".into(), data("p1xp1.fan")],
        vec!["chern-oracle".into(), "--fan".into(), data("f1.fan")],
        vec!["verify".into(), "product".into(), "--fan".into(), data("p2.fan"), p1.clone()],
        vec!["product".into(), "--fan".into(), p1.clone(), p1.clone(), "--function".into(), "{0}:2 {}:-1".into(), "oneX".into()],
        vec!["verify".into(), "prochow".into(), "--diagram".into(), data("torus.diagram")],
        vec!["prochow-verify".into(), "--diagram".into(), data("a2.diagram")],
        vec!["prochow-verify".into(), "--diagram".into(), data("punctured.diagram"), "--function".into(), "{0}:3 {}:1".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = procsm(&refs);
        assert_eq!(out.status.code(), Some(0), "{args:?}\n{}", stdout(&out));
    }
}

#[test]
fn product_reports_euler_characteristics() {
    let out = procsm(&["product", "--fan", &data("p1.fan"), &data("p1.fan")]);
    assert!(stdout(&out).ends_with("euler characteristic: 2 * 2 = 4\n"));
}

#[test]
fn verification_failures() {
    let out = procsm(&["verify", "dagger", "--fan", &data("a2.fan")]);
    assert_eq!(out.status.code(), Some(2));
    let out = procsm(&["verify", "prochow", "--diagram", &data("backwards.diagram")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a support-preserving refinement"));
    let out = procsm(&["verify", "naturality", "--fan", &data("p1.fan")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_reports() {
    let a = procsm(&["csm", "--fan", &data("f1.fan")]);
    let b = procsm(&["csm", "--fan", &data("f1.fan")]);
    assert_eq!(a.stdout, b.stdout);
}
