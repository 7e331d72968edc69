use std::io::Write;
use std::process::{Command, Output};

use kmdual_cli::{parse_algebra_file, run, Options, Scenario};
use kmdual_core::{Error, Field};

fn kmdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmdual")).args(args).output().unwrap()
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const DUAL_NUMBERS: &str = "\
# k[x]/x^2
field Q
basis 1 0
basis x 0
unit 1
mul 1 1 = 1
mul 1 x = x
mul x 1 = x

module k
  mbasis v 0
end

module free
  mbasis e 0
  mbasis f 0
  act x e = f
end
";

const ACYCLIC: &str = "\
field Q
basis 1 0
basis x -1
unit 1
mul 1 1 = 1
mul 1 x = x
mul x 1 = x
diff x = 1
";

#[test]
fn parses_dual_numbers() {
    let f = parse_algebra_file(DUAL_NUMBERS, Field::Rational, None).unwrap();
    assert_eq!(f.algebra.dim(), 2);
    assert_eq!(f.modules.len(), 2);
}

#[test]
fn parses_acyclic_algebra() {
    let f = parse_algebra_file(ACYCLIC, Field::Rational, None).unwrap();
    assert_eq!(f.algebra.dim(), 2);
    let h = kmdual_core::certify::algebra_cohomology(f.algebra, -2, 2).unwrap();
    assert!(h.values().all(|&b| b == 0));
}

#[test]
fn non_associative_table_names_the_triple() {
    let text = "field Q\nbasis 1 0\nbasis x 0\nbasis y 0\nunit 1\nmul 1 1 = 1\nmul 1 x = x\nmul x 1 = x\nmul 1 y = y\nmul y 1 = y\nmul x x = y\nmul x y = y\n";
    match parse_algebra_file(text, Field::Rational, None) {
        Err(Error::Validation(r)) => {
            assert!(r.failed("associativity"), "{r}");
            let w = &r
                .failures
                .iter()
                .find(|v| v.identity == "associativity")
                .unwrap()
                .witness;
            assert!(w.contains('x'), "{w}");
        }
        other => panic!("expected a validation failure, got {:?}", other.err()),
    }
}

#[test]
fn koszul_check_dual_numbers() {
    let out = kmdual(&[
        "koszul-check",
        "--algebra",
        "dual_numbers",
        "--module",
        "k",
        "--truncation",
        "4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("hochschild = 1,1,1"), "{text}");
    assert!(text.contains("ext = 1,1,1"), "{text}");
}

#[test]
fn simples_upper_triangular() {
    let r = run(
        Scenario::Simples,
        &Options {
            algebra: "upper_tri_2".into(),
            ..Default::default()
        },
    )
    .unwrap();
    assert!(r.values.contains(&("count".into(), "2".into())));
    assert!(r.passed());
}

#[test]
fn verify_any_builtin() {
    for name in kmdual_core::algebra::BUILTINS {
        let r = run(
            Scenario::Verify,
            &Options {
                algebra: name.into(),
                truncation: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.passed(), "{}", r.to_human());
        assert!(r.checks.iter().any(|c| c.name == "algebra.axioms"));
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        let out = kmdual(&[
            "morita",
            "--algebra",
            "upper_tri_2",
            "--seed",
            "7",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let ra = std::fs::read(&a).unwrap();
    assert_eq!(ra, std::fs::read(&b).unwrap());
    assert!(String::from_utf8(ra).unwrap().ends_with("summary.failed=0\n"));
}

#[test]
fn file_inputs_and_module_blocks() {
    let f = file(DUAL_NUMBERS);
    let path = f.path().to_str().unwrap();
    let out = kmdual(&["ext", "--algebra", path, "--module", "free", "--truncation", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ext = 2,0,0,0"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.txt");
    let out = kmdual(&[
        "hochschild",
        "--algebra",
        path,
        "--module",
        "k",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let kv = std::fs::read_to_string(report).unwrap();
    assert!(kv.contains("input.algebra.sha256="));
    assert!(kv.contains("check.direct_equals_twist=pass"));
}

#[test]
fn module_from_separate_file() {
    let algebra = file(DUAL_NUMBERS);
    let module = file(DUAL_NUMBERS);
    let out = kmdual(&[
        "koszul-check",
        "--algebra",
        "dual_numbers",
        "--module",
        module.path().to_str().unwrap(),
        "--truncation",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = kmdual(&[
        "koszul-check",
        "--algebra",
        algebra.path().to_str().unwrap(),
        "--module",
        "free",
        "--truncation",
        "3",
    ]);
    assert!(out.status.success());
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(kmdual(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kmdual(&["verify", "--algebra", "/nonexistent"]).status.code(), Some(2));
    assert_eq!(kmdual(&["verify", "--field", "F4"]).status.code(), Some(2));
    assert_eq!(kmdual(&["hochschild", "--window", "3:1"]).status.code(), Some(2));
    let bad = file("field Q\nbasis 1 0\nunit 1\nmul 1 1 = 2*q\n");
    let out = kmdual(&["verify", "--algebra", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("4:"));
}

#[test]
fn field_conflict_is_an_input_error() {
    let f = file("field F 5\nbasis 1 0\nunit 1\nmul 1 1 = 1\n");
    let out = kmdual(&["simples", "--algebra", f.path().to_str().unwrap(), "--field", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kmdual(&["simples", "--algebra", f.path().to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn failed_checks_exit_with_one() {
    // a truncation too short for the declared window changes H^3
    let out = kmdual(&[
        "hochschild",
        "--algebra",
        "dual_numbers",
        "--truncation",
        "2",
        "--window",
        "0:3",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL] stable_at_next_truncation"));
}
