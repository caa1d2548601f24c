//! `verify` and `report`.

use std::path::Path;

use serde_json::{json, Map, Value};

use super::{Config, Failure, OutputFormat, Outcome, ReportFlags, EXIT_FAIL, EXIT_PASS};
use crate::check::CheckList;
use crate::cstar::{
    canonical_grouplike, certify_conditional_expectation, check_star, cstar_certify, haar_modular_identities,
};
use crate::document::{AnyDocument, Document};
use crate::field::{Complexes, Field, FieldSpec};
use crate::hopf_modules::check_whm;
use crate::integrals::{
    frobenius_test, haar, integral_properties, integral_space, normalized_integral, two_sided_integrals,
};
use crate::wha::invariants::calculus_invariants;
use crate::wha::{check_axioms, counital_subalgebras, dual_label, Side, Wha};
use crate::with_document;

/// Collects facts and check sections for both output formats.
struct Sink {
    verbose: bool,
    lines: Vec<String>,
    facts: Map<String, Value>,
    checks: Map<String, Value>,
    pass: bool,
}

impl Sink {
    fn new(verbose: bool) -> Self {
        Sink { verbose, lines: Vec::new(), facts: Map::new(), checks: Map::new(), pass: true }
    }

    fn section(&mut self, name: &str, list: CheckList) {
        let ok = list.all_pass();
        self.pass &= ok;
        let failed = list.failures().len();
        let status = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!(
            "{status}  {name}: {}/{} checks, worst residual {:.2e}",
            list.len() - failed,
            list.len(),
            list.worst_residual()
        ));
        for c in &list.checks {
            if !c.pass || self.verbose {
                let note = c.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
                let tag = if c.pass { "ok  " } else { "FAIL" };
                self.lines.push(format!("      {tag} {}  residual {:.2e}{note}", c.name, c.residual));
            }
        }
        self.checks.insert(name.into(), serde_json::to_value(&list).expect("check lists serialize"));
    }

    fn fact(&mut self, key: &str, value: Value, text: impl Into<String>) {
        self.lines.push(format!("{key}: {}", text.into()));
        self.facts.insert(key.into(), value);
    }

    fn note(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn report_value(&self, command: &str) -> Value {
        json!({ "command": command, "pass": self.pass, "facts": self.facts, "checks": self.checks })
    }
}

/// Human-readable coefficient; complex values are rounded to nine decimals.
fn coeff<F: Field>(f: &F, c: &F::Elem) -> String {
    let s = f.format(c);
    if f.is_exact() {
        return s.split(" mod ").next().unwrap_or_default().to_string();
    }
    let cf = Complexes::default();
    match cf.parse(&s) {
        Ok(z) => {
            let r = |x: f64| {
                let y = (x * 1e9).round() / 1e9;
                if y == 0.0 { 0.0 } else { y }
            };
            cf.format(&num::complex::Complex64::new(r(z.re), r(z.im)))
        }
        Err(_) => s,
    }
}

/// x as a combination of basis labels (or of dual basis labels).
fn element<F: Field>(a: &Wha<F>, v: &[F::Elem], dual: bool) -> (Value, String) {
    let f = a.field();
    let dense: Vec<Value> = v.iter().map(|c| Value::String(f.format(c))).collect();
    let mut terms = Vec::new();
    for (c, label) in v.iter().zip(a.labels()) {
        if f.is_zero(c) {
            continue;
        }
        let label = if dual { dual_label(label) } else { label.clone() };
        let s = coeff(f, c);
        let s = if s.contains(['+', 'i']) || s.get(1..).is_some_and(|t| t.contains('-')) { format!("({s})") } else { s };
        terms.push(match s.as_str() {
            "1" => label,
            "-1" => format!("-{label}"),
            _ => format!("{s}·{label}"),
        });
    }
    let text = if terms.is_empty() { "0".into() } else { terms.join(" + ").replace("+ -", "- ") };
    (Value::Array(dense), text)
}

pub(super) fn field_name(spec: &FieldSpec) -> String {
    match spec {
        FieldSpec::Rational => "Q".into(),
        FieldSpec::Complex { tolerance } => format!("C, tolerance {tolerance:e}"),
        FieldSpec::Prime { p } => format!("GF({p})"),
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Axioms, the dual's axioms, the calculus suite and any carried modules.
fn verify_generic<F: Field>(d: &Document<F>, sink: &mut Sink) -> bool {
    let rep = check_axioms(&d.wha);
    sink.section("axioms", rep.checks);
    sink.section("dual axioms", rep.dual_checks);
    if rep.is_wha {
        match calculus_invariants(&d.wha) {
            Ok(c) => sink.section("calculus", c),
            Err(e) => {
                sink.pass = false;
                sink.note(format!("FAIL  calculus: {e}"));
            }
        }
    }
    for m in &d.modules {
        sink.section(&format!("module {}", m.name), check_whm(&d.wha, &m.module));
    }
    rep.is_wha
}

fn verify_star(d: &Document<Complexes>, sink: &mut Sink) {
    if d.wha.star().is_some() {
        match check_star(&d.wha) {
            Ok(c) => sink.section("star", c),
            Err(e) => {
                sink.pass = false;
                sink.note(format!("FAIL  star: {e}"));
            }
        }
    }
}

fn finish(path: &Path, command: &str, doc: &mut AnyDocument, sink: Sink, cfg: &Config, out: &mut Outcome) -> Result<i32, Failure> {
    let code = if sink.pass { EXIT_PASS } else { EXIT_FAIL };
    match cfg.format {
        OutputFormat::Json => {
            doc.set_report(Some(sink.report_value(command)));
            super::deliver(doc.emit(), cfg, out)?;
        }
        OutputFormat::Text => {
            let header = format!(
                "{command} {}: {} (field {}, dim {})\n",
                path.display(),
                if sink.pass { "PASS" } else { "FAIL" },
                field_name(&doc.field_spec()),
                doc.dim()
            );
            out.stdout.push_str(&header);
            for l in &sink.lines {
                out.stdout.push_str(&format!("  {l}\n"));
            }
        }
    }
    Ok(code)
}

pub(super) fn verify(path: &Path, mut doc: AnyDocument, cfg: &Config, out: &mut Outcome) -> Result<i32, Failure> {
    let mut sink = Sink::new(cfg.verbose);
    let is_wha = with_document!(&doc, d => verify_generic(d, &mut sink));
    if let (AnyDocument::Complex(d), true) = (&doc, is_wha) {
        verify_star(d, &mut sink);
    }
    finish(path, "verify", &mut doc, sink, cfg, out)
}

fn report_generic<F: Field>(d: &Document<F>, flags: ReportFlags, seed: u64, sink: &mut Sink) -> Result<(), Failure> {
    let a = &d.wha;
    let subs = counital_subalgebras(a)?;
    let il = integral_space(a, Side::Left)?;
    let ir = integral_space(a, Side::Right)?;
    let two = two_sided_integrals(a)?;
    let norm = normalized_integral(a, Side::Left)?;
    let hopf = check_axioms(a).is_hopf;
    sink.fact("Hopf", json!(hopf), verdict(hopf));
    let dims = json!({"A^L": subs.left.dim(), "A^R": subs.right.dim(), "I^L": il.dim(), "I^R": ir.dim(), "I": two.dim()});
    sink.fact(
        "dimensions",
        dims,
        format!("A^L {}, A^R {}, I^L {}, I^R {}, I {}", subs.left.dim(), subs.right.dim(), il.dim(), ir.dim(), two.dim()),
    );
    sink.fact("semisimple", json!(norm.semisimple), verdict(norm.semisimple));
    if flags.integrals {
        let (jl, tl): (Vec<Value>, Vec<String>) = il.basis().iter().map(|l| element(a, l, false)).unzip();
        sink.fact("I^L basis", Value::Array(jl), tl.join("; "));
        let (jr, tr): (Vec<Value>, Vec<String>) = ir.basis().iter().map(|l| element(a, l, false)).unzip();
        sink.fact("I^R basis", Value::Array(jr), tr.join("; "));
        match &norm.integral {
            Some(l) => {
                let (j, t) = element(a, l, false);
                sink.fact("normalized left integral", j, t);
            }
            None => sink.fact("normalized left integral", Value::Null, "none"),
        }
        sink.section("normalized integral", norm.checks.clone());
        sink.section("integral calculus", integral_properties(a, seed)?);
    }
    if flags.haar {
        let hr = haar(a)?;
        match &hr.h {
            Some(h) => {
                let (j, t) = element(a, h, false);
                sink.fact("Haar integral", j, t);
            }
            None => sink.fact("Haar integral", Value::Null, "none"),
        }
        let (j, t) = element(a, &hr.chi, true);
        sink.fact("chi", j, t);
        sink.section("haar", hr.checks);
    }
    if flags.frobenius {
        let fr = frobenius_test(a, seed)?;
        sink.fact("Frobenius", json!(fr.frobenius), format!("{:?}", fr.frobenius).to_lowercase());
        sink.fact(
            "dim I^R = dim A^L",
            json!(fr.dim_right_integrals == fr.dim_left_subalgebra),
            format!("{} vs {}", fr.dim_right_integrals, fr.dim_left_subalgebra),
        );
        match &fr.nondegenerate_left_integral {
            Some(l) => {
                let (j, t) = element(a, l, false);
                sink.fact("non-degenerate left integral", j, t);
            }
            None => sink.fact("non-degenerate left integral", Value::Null, "none found"),
        }
        sink.fact(
            "Frobenius criteria",
            json!({"integral search": fr.integral_search, "functional search": fr.functional_search, "dual dims equal": fr.dual_dims_equal}),
            format!(
                "integral search {:?}, functional search {:?}, dual side {}",
                fr.integral_search,
                fr.functional_search,
                verdict(fr.dual_dims_equal)
            ),
        );
    }
    Ok(())
}

fn report_cstar(d: &Document<Complexes>, flags: ReportFlags, seed: u64, sink: &mut Sink) -> Result<(), Failure> {
    let a = &d.wha;
    let cr = cstar_certify(a, seed)?;
    sink.fact("C*", json!(cr.is_cstar), verdict(cr.is_cstar));
    sink.section("C*", cr.checks.clone());
    if !cr.is_cstar {
        sink.fact("diagnostics", json!(cr.diagnostics), cr.diagnostics.join("; "));
        sink.pass = false;
        return Ok(());
    }
    let c = cr.into_cstar()?;
    let gd = canonical_grouplike(&c, seed)?;
    if flags.grouplike {
        for (key, v, dual) in [
            ("g", &gd.g, false),
            ("g_L", &gd.g_l, false),
            ("g_R", &gd.g_r, false),
            ("g^", &gd.g_hat, true),
            ("g^_L", &gd.g_hat_l, true),
            ("g^_R", &gd.g_hat_r, true),
        ] {
            let (j, t) = element(a, v, dual);
            sink.fact(key, j, t);
        }
        sink.section("grouplike", gd.checks.clone());
        sink.section("modular", haar_modular_identities(&c, &gd)?);
    }
    if flags.sectors {
        let s = &gd.sectors;
        sink.fact("block dimensions", json!(s.block_dims), format!("{:?}", s.block_dims));
        sink.fact("vacua", json!(s.vacua()), format!("{:?}", s.vacua()));
        let (jz, tz): (Vec<Value>, Vec<String>) = s.z_left.iter().map(|z| element(a, z, false)).unzip();
        sink.fact("z^L", Value::Array(jz), tz.join("; "));
        sink.section("sectors", s.checks.clone());
        sink.section("E^L", certify_conditional_expectation(&c, Side::Left, seed)?);
        sink.section("E^R", certify_conditional_expectation(&c, Side::Right, seed)?);
    }
    Ok(())
}

pub(super) fn report(path: &Path, mut doc: AnyDocument, flags: ReportFlags, cfg: &Config, out: &mut Outcome) -> Result<i32, Failure> {
    let needs_star = flags.grouplike || flags.sectors;
    if needs_star {
        let ok = matches!(&doc, AnyDocument::Complex(d) if d.wha.star().is_some());
        if !ok {
            return Err(Failure::math(
                "--grouplike and --sectors need a complex document with a star section (the canonical grouplike element lives in a C*-weak Hopf algebra)",
            ));
        }
    }
    let mut sink = Sink::new(cfg.verbose);
    let mut probe = Sink::new(false);
    let is_wha = with_document!(&doc, d => verify_generic(d, &mut probe));
    if !is_wha || !probe.pass {
        return Err(Failure::math(format!("{} does not verify; run `wha verify` for details", path.display())));
    }
    with_document!(&doc, d => report_generic(d, flags, cfg.seed, &mut sink))?;
    if needs_star {
        if let AnyDocument::Complex(d) = &doc {
            report_cstar(d, flags, cfg.seed, &mut sink)?;
        }
    }
    finish(path, "report", &mut doc, sink, cfg, out)
}
