use std::path::PathBuf;
use std::process::{Command, Output};

use eulercalc::ratgeom::rat;
use eulercalc::AffineCF;
use eulercalc_cli::document::{self, Function};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulercalc")).args(args).output().expect("binary runs")
}

fn affine(path: &std::path::Path) -> AffineCF {
    match document::load(path).unwrap() {
        Function::Affine(f) => f,
        Function::Projective(_) => panic!("expected an affine document"),
    }
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn integrate_open_interval() {
    let out = run(&["integrate", "--input", &data("open_interval.json")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-1");
}

#[test]
fn integrals_of_bundled_documents() {
    for (name, expected) in
        [("triangle.json", "1"), ("cube.json", "1"), ("square_annulus.json", "0"), ("dirac.json", "1")]
    {
        let out = run(&["integrate", "--input", &data(name)]);
        assert_eq!(stdout(&out).trim(), expected, "{name}");
    }
}

#[test]
fn radon_inversion_on_a_triangle() {
    let out = run(&["radon-invert", "--input", &data("triangle_p2.json")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("equal: true"));
}

#[test]
fn betti_numbers_of_the_annulus() {
    let out = run(&["betti-slice", "--input", &data("square_annulus.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b0: 1"));
    assert!(text.contains("b1: 1"));
}

#[test]
fn dual_is_written_and_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    let src = data("open_interval.json");
    assert!(run(&["dual", "--input", &src, "--output", once.to_str().unwrap()]).status.success());
    assert!(run(&["dual", "--input", once.to_str().unwrap(), "--output", twice.to_str().unwrap()]).status.success());

    let original = affine(src.as_ref());
    let dual = affine(&once);
    let back = affine(&twice);
    assert_eq!(back, original);
    assert_eq!(dual.evaluate(&[rat(0)]).unwrap(), -1);
    assert_eq!(dual.evaluate(&[rat(2)]).unwrap(), 0);
}

#[test]
fn pushforward_along_a_projection() {
    let out = run(&["push", "--input", &data("triangle.json"), "--map", &data("projection_x.json")]);
    assert!(out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("push.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let pushed = affine(&path);
    let tri = affine(data("triangle.json").as_ref());
    assert_eq!(pushed.dim(), 1);
    assert_eq!(pushed.integrate(), tri.integrate());
}

#[test]
fn malformed_document_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"kind":"affine"}"#).unwrap();
    let out = run(&["integrate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_point_exits_with_validation_code() {
    let out = run(&["eval", "--input", &data("triangle.json"), "--point", "0.5,0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cell_budget_exits_with_resource_code() {
    let tri = data("triangle.json");
    let out = run(&["convolve", "--input", &tri, "--input2", &tri, "--max-cells", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
