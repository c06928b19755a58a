use std::io::Write;
use std::process::{Command, Stdio};

use ks_core::fixture::{builtin, serialize, AlgebraBlock, Fixture};
use ks_core::linalg::Matrix;
use ks_core::scalars::{ComplexQuad, Rational, Scalar};

use ks_cli::{run_command, EXIT_CONFIG, EXIT_CONSTRUCTION, EXIT_OK, EXIT_VALIDATION};

fn run(args: &[&str], stdin: &str) -> ks_cli::Outcome {
    let mut argv = vec!["kuga-satake"];
    argv.extend_from_slice(args);
    run_command(argv, &mut stdin.as_bytes())
}

const BROKEN: &str =
    "name broken\nfield 1\nrank 3\ngram\n  1 0 0\n  0 1 0\n  0 0 -1\nh20\n  1 ; 0 ; {re:0, im:1}\n";

#[test]
fn construct_f1_clifford() {
    let out = run(&["construct", "f1", "--clifford"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.output);
    assert!(out.output.contains("rank 8, g = 4, exact = true"));
    assert!(out.output.contains("a = 4*e{1}e{2}"));
    assert!(out.output.contains("dim M = 0"));
}

#[test]
fn construct_endk2() {
    let out = run(&["construct", "endk2"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.output);
    assert!(out.output.contains("dim M = 8"));
    assert!(out.output.contains("sigma √2: dim 8, in M, exact"));
    assert!(out.output.contains("sigma -√2: dim 8, in W+Wbar, exact"));
}

#[test]
fn validate_broken_fixture() {
    let out = run(&["validate", "-"], BROKEN);
    assert_eq!(out.code, EXIT_VALIDATION, "{}", out.output);
    assert!(out.output.contains("FAIL h20-positive"));
}

#[test]
fn parse_errors_are_config_errors() {
    let out = run(&["validate", "-"], "name x\nfield 4\n");
    assert_eq!(out.code, EXIT_CONFIG);
    assert!(out.output.contains("square-free"));
    let out = run(&["frobnicate"], "");
    assert_eq!(out.code, EXIT_CONFIG);
    assert!(out.output.contains("Usage"));
    let out = run(&["universal", "-", "-"], BROKEN);
    assert_eq!(out.code, EXIT_CONFIG);
    let out = run(&["construct", "f1", "--tol", "2"], "");
    assert_eq!(out.code, EXIT_CONFIG);
}

#[test]
fn construct_without_algebra_needs_clifford() {
    let out = run(&["construct", "f2"], "");
    assert_eq!(out.code, EXIT_CONFIG);
    let out = run(&["construct", "f2", "--clifford"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.output);
    assert!(out.output.contains("g = 8"));
}

#[test]
fn clifford_needs_a_plain_lattice() {
    let out = run(&["clifford", "quat"], "");
    assert_eq!(out.code, EXIT_CONFIG, "{}", out.output);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["construct", "f1", "--clifford", "--seed", "5"][..],
        &["construct", "quat"],
        &["center", "endk2"],
    ] {
        let a = run(args, "");
        let b = run(args, "");
        assert_eq!(a, b);
        assert!(a.output.contains("seed:"));
    }
}

#[test]
fn universal_and_center() {
    let out = run(&["universal", "f1", "f1", "--clifford"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.output);
    assert!(out.output.contains("PASS stacked-injective"));
    let out = run(&["center", "f1", "--clifford"], "");
    assert_eq!(out.code, EXIT_OK);
    assert!(
        out.output
            .contains("center: dimension 2\n  1\n  e{1}e{2}e{3}\n"),
        "{}",
        out.output
    );
}

#[test]
fn algebra_validation_names_the_invariant() {
    // C with t = conjugation but an H20 that t does not preserve
    let text = "name flat\nfield 1\nrank 2\ngram\n  1 0\n  0 1\nh20\n  1 ; {re:0, im:1}\n\
structure_constants\n  0 0 0 1\n  0 1 1 1\n  1 0 1 1\n  1 1 0 -1\nunit 1 0\ninvolution\n  1 0\n  0 -1\n";
    let out = run(&["construct", "-"], text);
    assert_eq!(out.code, EXIT_VALIDATION, "{}", out.output);
    assert!(out.output.contains("violated invariant: t-preserves-type"));
}

fn direct_sum(f: &Fixture, g: &Fixture) -> Fixture {
    let (n, m) = (f.rank(), g.rank());
    let mut gram = Matrix::<Rational>::zeros(n + m, n + m);
    let mut invol = Matrix::<Rational>::zeros(n + m, n + m);
    let (fa, ga) = (f.algebra.as_ref().unwrap(), g.algebra.as_ref().unwrap());
    for (off, x, a) in [(0, f, fa), (n, g, ga)] {
        for i in 0..x.rank() {
            for j in 0..x.rank() {
                gram[(off + i, off + j)] = x.gram[(i, j)].clone();
                invol[(off + i, off + j)] = a.involution[(i, j)].clone();
            }
        }
    }
    let pad = |v: &Vec<ComplexQuad>, off: usize| {
        let mut out = vec![ComplexQuad::zero(); n + m];
        out[off..off + v.len()].clone_from_slice(v);
        out
    };
    let mut h20: Vec<_> = f.h20.iter().map(|v| pad(v, 0)).collect();
    h20.extend(g.h20.iter().map(|v| pad(v, n)));
    let mut sc = fa.structure_constants.clone();
    sc.extend(
        ga.structure_constants
            .iter()
            .map(|(i, j, k, v)| (i + n, j + n, k + n, v.clone())),
    );
    let mut unit = fa.unit.clone();
    unit.extend(ga.unit.iter().cloned());
    Fixture {
        name: format!("{}+{}", f.name, g.name),
        algebra: Some(AlgebraBlock {
            structure_constants: sc,
            unit,
            involution: invol,
        }),
        gram,
        h20,
        ..f.clone()
    }
}

#[test]
fn split_center_is_a_construction_failure() {
    let v = builtin("endk2").unwrap();
    let text = serialize(&direct_sum(&v, &v));
    let out = run(&["construct", "-"], &text);
    assert_eq!(out.code, EXIT_CONSTRUCTION, "{}", out.output);
    assert!(out.output.contains("unsupported center"), "{}", out.output);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kuga-satake");
    let status = Command::new(bin)
        .args(["construct", "f1", "--clifford"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(EXIT_OK));
    let mut child = Command::new(bin)
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(BROKEN.as_bytes())
        .unwrap();
    assert_eq!(
        child.wait_with_output().unwrap().status.code(),
        Some(EXIT_VALIDATION)
    );
    let status = Command::new(bin).arg("bogus").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_CONFIG));
}
