mod common;

use common::{bbop_matrix, prime_zoo, rational_zoo};
use proptest::prelude::*;
use weakhopf::document::{
    emit, emit_algebra, emit_document, emit_functional, parse, parse_algebra, parse_as, parse_functional, AnyAlgebra,
    AnyDocument, Document, NamedModule,
};
use weakhopf::factory::{bbop, Algebra, cyclic_table, group_algebra, m2z2, matrix_algebra};
use weakhopf::hopf_modules::regular_whm;
use weakhopf::{check_axioms, Complexes, Field, PrimeField, Rationals, WhaError};

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn parse_error(text: &str) -> String {
    match parse(text) {
        Err(WhaError::Parse(m)) => m,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

fn z2_text() -> String {
    emit(&group_algebra(&Rationals, &cyclic_table(2), None).unwrap())
}

#[test]
fn z2_round_trip() {
    let a = group_algebra(&Rationals, &cyclic_table(2), None).unwrap();
    let text = emit(&a);
    let back = parse_as::<Rationals>(&text).unwrap();
    assert_eq!(back.wha, a);
    assert_eq!(emit_document(&back), text);
}

#[test]
fn exact_zoo_round_trips() {
    for (name, a) in rational_zoo() {
        let text = emit(&a);
        let b = parse_as::<Rationals>(&text).unwrap().wha;
        assert_eq!(b, a, "{name}");
        assert_eq!(emit(&b), text, "{name}");
    }
    for (name, a) in prime_zoo() {
        let text = emit(&a);
        assert_eq!(parse_as::<PrimeField>(&text).unwrap().wha, a, "{name}");
    }
}

#[test]
fn complex_values_survive_printing() {
    let c = Complexes::default();
    let a = bbop_matrix(&c, &[c.parse("0.3+0.7i").unwrap(), c.from_i64(3)]);
    let text = emit(&a);
    let b = parse_as::<Complexes>(&text).unwrap().wha;
    // shortest round-trip printing is bit-exact
    assert_eq!(b, a);
    assert!(b.star().is_some());
    assert_eq!(emit(&b), text);
}

#[test]
fn hand_written_m2z2_matches_the_builder() {
    let doc = parse_as::<PrimeField>(&data("m2z2.wha.json")).unwrap();
    assert_eq!(doc.wha, m2z2());
    assert!(check_axioms(&doc.wha).is_wha);
}

#[test]
fn out_of_range_entry_is_named() {
    let text = z2_text().replacen("[1, 1, 0, \"1\"]", "[1, 5, 0, \"1\"]", 1);
    let m = parse_error(&text);
    assert!(m.contains("mult entry #3") && m.contains("index 5"), "{m}");
    let line = text.lines().position(|l| l.contains("[1, 5, 0")).unwrap() + 1;
    assert!(m.starts_with(&format!("line {line}:")), "{m}");
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let text = z2_text().replacen("\"dim\": 2,", "\"dim\": 2", 1);
    let m = parse_error(&text);
    assert!(m.starts_with("line 5 "), "{m}");
}

#[test]
fn unknown_sections_are_rejected() {
    let text = z2_text().replacen("\"dim\"", "\"extra\": 1,\n  \"dim\"", 1);
    assert!(parse_error(&text).contains("unknown field `extra`"));
}

#[test]
fn version_is_mandatory() {
    let text = z2_text().replacen("  \"version\": 1,\n", "", 1);
    assert!(parse_error(&text).contains("missing field `version`"));
    let text = z2_text().replacen("\"version\": 1", "\"version\": 9", 1);
    assert!(parse_error(&text).contains("version 9"));
}

#[test]
fn bad_coefficients_and_shapes() {
    let m = parse_error(&z2_text().replacen("\"counit\": [\"1\", \"1\"]", "\"counit\": [\"1\", \"x\"]", 1));
    assert!(m.contains("counit entry #1"), "{m}");
    let m = parse_error(&z2_text().replacen("\"counit\": [\"1\", \"1\"]", "\"counit\": [\"1\"]", 1));
    assert!(m.contains("expected 2"), "{m}");
    let m = parse_error(&z2_text().replacen("\"kind\":\"rational\"", "\"kind\":\"quaternion\"", 1));
    assert!(m.contains("quaternion"), "{m}");
    let m = parse_error(&z2_text().replacen("\"basis\": [\"g0\", \"g1\"]", "\"basis\": [\"g0\", \"g0\"]", 1));
    assert!(m.contains("duplicate"), "{m}");
}

#[test]
fn prime_coefficients_must_match_the_field() {
    let text = data("m2z2.wha.json").replacen("\"1 mod 2\"", "\"1 mod 3\"", 1);
    assert!(parse_error(&text).contains("comult entry #3"));
}

#[test]
fn modules_and_reports_round_trip() {
    let a = group_algebra(&Rationals, &cyclic_table(2), None).unwrap();
    let mut doc = Document::new(a.clone());
    doc.modules.push(NamedModule { name: "regular".into(), module: regular_whm(&a) });
    doc.report = Some(serde_json::json!({"axioms": {"passed": true}, "dims": [1, 1]}));
    let text = emit_document(&doc);
    let back = parse_as::<Rationals>(&text).unwrap();
    assert_eq!(back.modules, doc.modules);
    assert_eq!(back.report, doc.report);
    assert_eq!(emit_document(&back), text);
}

#[test]
fn module_shapes_are_checked() {
    let a = group_algebra(&Rationals, &cyclic_table(2), None).unwrap();
    let mut doc = Document::new(a.clone());
    doc.modules.push(NamedModule { name: "regular".into(), module: regular_whm(&a) });
    let text = emit_document(&doc).replacen("\"dim\": 2,\n      \"action\"", "\"dim\": 3,\n      \"action\"", 1);
    assert!(parse_error(&text).contains("regular"));
}

#[test]
fn algebra_and_functional_inputs_build_bbop() {
    let alg = parse_algebra(&data("m2q.alg")).unwrap();
    let AnyAlgebra::Rational(b) = alg else { panic!("rational input") };
    assert_eq!(b, Algebra { star: None, ..matrix_algebra(&Rationals, 2) });
    let e = parse_functional(&b, &data("tr.fun")).unwrap();
    let w = bbop(&b, &e).unwrap().wha;
    assert_eq!(w.dim(), 16);
    assert!(check_axioms(&w).is_wha);
    let again = parse_algebra(&emit_algebra(&b)).unwrap();
    assert!(matches!(again, AnyAlgebra::Rational(ref c) if *c == b));
    assert_eq!(parse_functional(&b, &emit_functional(&Rationals, &e)).unwrap(), e);
}

#[test]
fn functional_length_is_checked() {
    let AnyAlgebra::Rational(b) = parse_algebra(&data("m2q.alg")).unwrap() else { panic!() };
    assert!(parse_functional(&b, "{\"version\": 1, \"values\": [\"1\"]}").is_err());
}

#[test]
fn tolerance_override_only_touches_complex_documents() {
    let c = Complexes::default();
    let doc = AnyDocument::Complex(Document::new(group_algebra(&c, &cyclic_table(2), None).unwrap()));
    let doc = doc.with_tolerance(1e-6);
    assert_eq!(doc.field_spec(), weakhopf::FieldSpec::Complex { tolerance: 1e-6 });
    let q = parse(&z2_text()).unwrap().with_tolerance(1e-6);
    assert_eq!(q.field_spec(), weakhopf::FieldSpec::Rational);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn emit_parse_is_idempotent(p in 0usize..3, n in 1usize..6, twist in 0usize..4) {
        let a = group_algebra(&Rationals, &cyclic_table(n), None).unwrap();
        let a = match twist {
            0 => a,
            1 => a.dual(),
            k => a.twist(weakhopf::Twist::ALL[k - 1]).unwrap(),
        };
        let text = match p {
            0 => emit(&a),
            1 => emit(&a.dual()),
            _ => emit(&a.with_labels((0..n).map(|i| format!("x \"{i}\"")).collect()).unwrap()),
        };
        let once = parse(&text).unwrap().emit();
        prop_assert_eq!(&once, &text);
        prop_assert_eq!(parse(&once).unwrap().emit(), once);
    }
}
