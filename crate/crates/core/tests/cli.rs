mod common;

use std::path::{Path, PathBuf};

use common::bbop_matrix;
use weakhopf::cli::{run, run_with_env, Outcome, EXIT_FAIL, EXIT_IO, EXIT_PASS};
use weakhopf::document::{emit, parse};
use weakhopf::factory::{cyclic_table, group_algebra};
use weakhopf::{Complexes, Field};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn data(name: &str) -> String {
    root().join("data").join(name).display().to_string()
}

fn wha(args: &[&str]) -> Outcome {
    run_with_env(std::iter::once("wha").chain(args.iter().copied()), None)
}

/// Compares against tests/golden/<name>; set UPDATE_GOLDEN=1 to rewrite.
fn golden(name: &str, actual: &str) {
    let path = root().join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, want, "output differs from {}", path.display());
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn z2_text() -> String {
    emit(&group_algebra(&weakhopf::Rationals, &cyclic_table(2), None).unwrap())
}

#[test]
fn verify_passes_on_a_group_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z2.wha.json", &z2_text());
    let out = wha(&["verify", &p]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    golden("verify_z2.txt", &out.stdout.replace(&p, "z2.wha.json"));
}

#[test]
fn corrupted_tensor_names_the_failing_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let text = z2_text().replacen("[1, 1, 0, \"1\"]", "[1, 1, 1, \"1\"]", 1);
    let p = write(dir.path(), "bad.wha.json", &text);
    let out = wha(&["verify", &p]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("FAIL x₁S(x₂) = Π^L(x)"), "{}", out.stdout);
}

#[test]
fn io_and_parse_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = wha(&["verify", &dir.path().join("missing.wha.json").display().to_string()]);
    assert_eq!(out.code, EXIT_IO);
    assert!(out.stderr.contains("missing.wha.json"));
    let p = write(dir.path(), "broken.wha.json", "{\n  \"version\": 1,\n  \"dim\": \n}");
    let out = wha(&["verify", &p]);
    assert_eq!(out.code, EXIT_IO);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    let p = write(dir.path(), "extra.wha.json", &z2_text().replacen("\"dim\"", "\"notes\": \"x\",\n  \"dim\"", 1));
    assert_eq!(wha(&["verify", &p]).code, EXIT_IO);
    let p = write(dir.path(), "range.wha.json", &z2_text().replacen("[1, 1, 0, \"1\"]", "[1, 9, 0, \"1\"]", 1));
    let out = wha(&["verify", &p]);
    assert_eq!(out.code, EXIT_IO);
    assert!(out.stderr.contains("mult entry #3"), "{}", out.stderr);
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(wha(&["frobnicate"]).code, EXIT_IO);
    assert_eq!(wha(&["make", "group"]).code, EXIT_IO);
    assert_eq!(wha(&["twist", "x.json", "--kind", "sideways"]).code, EXIT_IO);
    let help = wha(&["--help"]);
    assert_eq!(help.code, EXIT_PASS);
    assert!(help.stdout.contains("verify"));
}

#[test]
fn make_cyclic_group() {
    let out = wha(&["make", "group", "--cyclic", "3"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    golden("z3.wha.json", &out.stdout);
    let doc = parse(&out.stdout).unwrap();
    assert_eq!(doc.dim(), 3);
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z3.wha.json", &out.stdout);
    let rep = wha(&["report", &p]);
    assert!(rep.stdout.contains("Hopf: yes"), "{}", rep.stdout);
}

#[test]
fn make_rejects_non_groups() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", "{\"table\": [[0, 1], [1, 1]]}");
    let out = wha(&["make", "group", "--table", &p]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stderr.contains("invalid construction input"), "{}", out.stderr);
}

#[test]
fn dual_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "z2.wha.json", &z2_text());
    let once = wha(&["dual", &src]);
    assert_eq!(once.code, EXIT_PASS);
    golden("z2_dual.wha.json", &once.stdout);
    let mid = write(dir.path(), "dual.wha.json", &once.stdout);
    let twice = wha(&["dual", &mid]);
    assert_eq!(twice.stdout, z2_text());
}

#[test]
fn make_bbop_from_files() {
    let out = wha(&["make", "bbop", "--B", &data("m2q.alg"), "--E", &data("tr.fun")]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert_eq!(parse(&out.stdout).unwrap().dim(), 16);
    golden("bbop_m2q.wha.json", &out.stdout);
}

#[test]
fn bbop_index_must_be_one() {
    let dir = tempfile::tempdir().unwrap();
    let fun = write(dir.path(), "half.fun", "{\"version\": 1, \"values\": [\"1\", \"0\", \"0\", \"1\"]}");
    let out = wha(&["make", "bbop", "--B", &data("m2q.alg"), "--E", &fun]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stderr.contains("index must be 1"), "{}", out.stderr);
    let out = wha(&["make", "bbop", "--B", &data("m2q.alg"), "--E", &fun, "--normalize"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
}

#[test]
fn machine_output_re_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "z2.wha.json", &z2_text());
    let out = wha(&["verify", &src, "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["pass"], true);
    assert!(v["report"]["checks"]["axioms"]["checks"].as_array().unwrap().iter().all(|c| c["residual"] == 0.0));
    let again = write(dir.path(), "z2r.wha.json", &out.stdout);
    assert_eq!(wha(&["verify", &again]).code, EXIT_PASS);
    // emit∘parse leaves the report in place
    assert_eq!(wha(&["convert", &again]).stdout, out.stdout);
}

#[test]
fn convert_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let messy = std::fs::read_to_string(data("m2z2.wha.json")).unwrap();
    let p = write(dir.path(), "m.wha.json", &messy);
    let once = wha(&["convert", &p]).stdout;
    let q = write(dir.path(), "m2.wha.json", &once);
    assert_eq!(wha(&["convert", &q]).stdout, once);
    assert_eq!(once, wha(&["make", "m2z2"]).stdout);
}

#[test]
fn convert_to_complex() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z2.wha.json", &z2_text());
    let out = wha(&["convert", &p, "--to", "complex"]);
    assert_eq!(out.code, EXIT_PASS);
    let q = write(dir.path(), "z2c.wha.json", &out.stdout);
    assert_eq!(wha(&["verify", &q]).code, EXIT_PASS);
    assert_eq!(wha(&["convert", &q, "--to", "rational"]).code, EXIT_FAIL);
}

#[test]
fn report_haar_on_group_algebras() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z2.wha.json", &z2_text());
    let out = wha(&["report", &p, "--haar"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("Haar integral: 1/2·g0 + 1/2·g1"), "{}", out.stdout);
    let c = Complexes::default();
    let q = write(dir.path(), "z2c.wha.json", &emit(&group_algebra(&c, &cyclic_table(2), None).unwrap()));
    let out = wha(&["report", &q, "--haar"]);
    assert!(out.stdout.contains("Haar integral: 0.5·g0 + 0.5·g1"), "{}", out.stdout);
}

#[test]
fn report_frobenius_on_m2z2() {
    let out = wha(&["report", &data("m2z2.wha.json"), "--frobenius"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert!(out.stdout.contains("dim I^R = dim A^L: 2 vs 2"), "{}", out.stdout);
    assert!(out.stdout.contains("non-degenerate left integral: e11 + e12 + e21 + e22"), "{}", out.stdout);
}

#[test]
fn report_grouplike_on_twisted_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let c = Complexes::default();
    let a = bbop_matrix(&c, &[c.from_i64(2), c.parse("0.5").unwrap()]);
    let p = write(dir.path(), "bbop.wha.json", &emit(&a));
    let out = wha(&["report", &p, "--grouplike", "--sectors"]);
    assert_eq!(out.code, EXIT_PASS, "{}\n{}", out.stdout, out.stderr);
    for key in ["g:", "g_L:", "g_R:", "PASS  grouplike", "PASS  modular", "PASS  sectors", "vacua: [0]"] {
        assert!(out.stdout.contains(key), "{key}\n{}", out.stdout);
    }
}

#[test]
fn grouplike_needs_a_star() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z2.wha.json", &z2_text());
    let out = wha(&["report", &p, "--grouplike"]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stderr.contains("star section"), "{}", out.stderr);
}

#[test]
fn indefinite_haar_is_reported_as_not_cstar() {
    let dir = tempfile::tempdir().unwrap();
    let c = Complexes::default();
    let a = bbop_matrix(&c, &[c.from_i64(2), c.from_i64(-1)]);
    let p = write(dir.path(), "ind.wha.json", &emit(&a));
    let out = wha(&["report", &p, "--grouplike"]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("C*: no"), "{}", out.stdout);
}

#[test]
fn tolerance_comes_from_flag_or_environment() {
    let dir = tempfile::tempdir().unwrap();
    let c = Complexes::default();
    let text = emit(&group_algebra(&c, &cyclic_table(2), None).unwrap()).replacen("[1, 1, 0, \"1\"]", "[1, 1, 0, \"1.0000001\"]", 1);
    let p = write(dir.path(), "z2c.wha.json", &text);
    assert_eq!(wha(&["verify", &p]).code, EXIT_FAIL);
    assert_eq!(wha(&["verify", &p, "--tol", "1e-5"]).code, EXIT_PASS);
    let args = ["wha", "verify", p.as_str()];
    assert_eq!(run_with_env(args, Some("1e-5".into())).code, EXIT_PASS);
    assert_eq!(run_with_env(args, Some("lots".into())).code, EXIT_IO);
    // the real environment is not consulted by run_with_env
    assert_eq!(run(["wha", "verify", "--tol", "1e-5", p.as_str()]).code, EXIT_PASS);
}

#[test]
fn twist_and_sum() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z2.wha.json", &z2_text());
    for kind in ["op", "cop", "opcop"] {
        let out = wha(&["twist", &p, "--kind", kind]);
        assert_eq!(out.code, EXIT_PASS, "{kind}");
    }
    let z3 = write(dir.path(), "z3.wha.json", &wha(&["make", "group", "--cyclic", "3"]).stdout);
    let out = wha(&["make", "sum", &p, &z3]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert_eq!(parse(&out.stdout).unwrap().dim(), 5);
    let m = write(dir.path(), "m.wha.json", &wha(&["make", "m2z2"]).stdout);
    assert_eq!(wha(&["make", "sum", &p, &m]).code, EXIT_FAIL);
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("g.json");
    let out = wha(&["make", "groupoid", "--pair", "2", "-o", &target.display().to_string()]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.is_empty());
    assert_eq!(parse(&std::fs::read_to_string(target).unwrap()).unwrap().dim(), 4);
}
