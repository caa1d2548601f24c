//! The `.wha.json` document format, and the `.alg`/`.fun` inputs of the
//! B⊗B^op builder.
//!
//! Coefficients are strings in the field's own notation ("3/4", "1+2i",
//! "5 mod 7"). Structure tensors are sparse lists `[i, j, k, "c"]`; unit,
//! counit, antipode and star are dense. Unknown top-level keys are rejected.

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Result, WhaError};
use crate::factory::Algebra;
use crate::field::{Complexes, Field, FieldSpec, PrimeField, Rationals};
use crate::hopf_modules::RightWHM;
use crate::linear::{Mat, Tensor3, Vector};
use crate::wha::Wha;

pub const FORMAT_VERSION: u32 = 1;

type Entry = (usize, usize, usize, String);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: u32,
    field: FieldSpec,
    dim: usize,
    basis: Vec<String>,
    mult: Vec<Entry>,
    unit: Vec<String>,
    comult: Vec<Entry>,
    counit: Vec<String>,
    antipode: Vec<Vec<String>>,
    #[serde(default)]
    star: Option<Vec<Vec<String>>>,
    #[serde(default)]
    modules: Option<Vec<RawModule>>,
    #[serde(default)]
    report: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: String,
    dim: usize,
    action: Vec<Vec<Vec<String>>>,
    coaction: Vec<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    version: u32,
    field: FieldSpec,
    basis: Vec<String>,
    mult: Vec<Entry>,
    unit: Vec<String>,
    #[serde(default)]
    star: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctional {
    version: u32,
    values: Vec<String>,
}

/// A named right weak Hopf module carried along with the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedModule<F: Field> {
    pub name: String,
    pub module: RightWHM<F>,
}

#[derive(Clone, Debug)]
pub struct Document<F: Field> {
    pub wha: Wha<F>,
    pub modules: Vec<NamedModule<F>>,
    /// Free-form report written by the CLI; carried through, never certified.
    pub report: Option<Value>,
}

impl<F: Field> Document<F> {
    pub fn new(wha: Wha<F>) -> Self {
        Document { wha, modules: Vec::new(), report: None }
    }
}

/// A document over whichever field it declares.
#[derive(Clone, Debug)]
pub enum AnyDocument {
    Rational(Document<Rationals>),
    Complex(Document<Complexes>),
    Prime(Document<PrimeField>),
}

/// Runs `$body` with `$d` bound to the concrete `Document<F>`.
#[macro_export]
macro_rules! with_document {
    ($doc:expr, $d:ident => $body:expr) => {
        match $doc {
            $crate::document::AnyDocument::Rational($d) => $body,
            $crate::document::AnyDocument::Complex($d) => $body,
            $crate::document::AnyDocument::Prime($d) => $body,
        }
    };
}

/// Same dispatch for a parsed `.alg` file.
#[macro_export]
macro_rules! with_algebra {
    ($alg:expr, $b:ident => $body:expr) => {
        match $alg {
            $crate::document::AnyAlgebra::Rational($b) => $body,
            $crate::document::AnyAlgebra::Complex($b) => $body,
            $crate::document::AnyAlgebra::Prime($b) => $body,
        }
    };
}

impl AnyDocument {
    pub fn field_spec(&self) -> FieldSpec {
        with_document!(self, d => d.wha.field().spec())
    }

    pub fn dim(&self) -> usize {
        with_document!(self, d => d.wha.dim())
    }

    pub fn emit(&self) -> String {
        with_document!(self, d => emit_document(d))
    }

    pub fn set_report(&mut self, report: Option<Value>) {
        with_document!(self, d => d.report = report)
    }

    /// Replaces the tolerance of a complex document; exact fields are unchanged.
    pub fn with_tolerance(self, tol: f64) -> Self {
        match self {
            AnyDocument::Complex(d) => {
                let f = d.wha.field().with_tolerance(tol);
                AnyDocument::Complex(Document { wha: d.wha.with_field(f), ..d })
            }
            other => other,
        }
    }
}

#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Rational(Algebra<Rationals>),
    Complex(Algebra<Complexes>),
    Prime(Algebra<PrimeField>),
}

fn perr(msg: impl Into<String>) -> WhaError {
    WhaError::Parse(msg.into())
}

fn json_error(e: serde_json::Error) -> WhaError {
    perr(format!("line {} column {}: {e}", e.line(), e.column()))
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(perr(format!("unsupported format version {v} (expected {FORMAT_VERSION})")));
    }
    Ok(())
}

/// 1-based line of the `index`-th element of the top-level array under `key`.
fn locate(text: &str, key: &str, index: usize) -> Option<usize> {
    let start = text.find(&format!("\"{key}\""))?;
    let open = start + text[start..].find('[')?;
    let (mut depth, mut count, mut in_str, mut escaped) = (0usize, 0usize, false, false);
    for (off, ch) in text[open..].char_indices() {
        if in_str {
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_str = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => {
                if depth == 1 {
                    if count == index {
                        return Some(text[..open + off].matches('\n').count() + 1);
                    }
                    count += 1;
                }
                in_str = true;
            }
            '[' | '{' => {
                if depth == 1 {
                    if count == index {
                        return Some(text[..open + off].matches('\n').count() + 1);
                    }
                    count += 1;
                }
                depth += 1;
            }
            ']' | '}' => {
                depth -= 1;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

/// Builds the element/index error, with a line number when one can be found.
struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, key: &str, index: usize, msg: impl std::fmt::Display) -> WhaError {
        match locate(self.text, key, index) {
            Some(line) => perr(format!("line {line}: {key} entry #{index}: {msg}")),
            None => perr(format!("{key} entry #{index}: {msg}")),
        }
    }

    fn scalar<F: Field>(&self, f: &F, key: &str, index: usize, s: &str) -> Result<F::Elem> {
        f.parse(s).map_err(|e| self.err(key, index, e))
    }

    fn vector<F: Field>(&self, f: &F, key: &str, n: usize, v: &[String]) -> Result<Vector<F>> {
        if v.len() != n {
            return Err(perr(format!("{key}: expected {n} coefficients, found {}", v.len())));
        }
        v.iter().enumerate().map(|(i, s)| self.scalar(f, key, i, s)).collect()
    }

    fn matrix<F: Field>(&self, f: &F, key: &str, n: usize, rows: &[Vec<String>]) -> Result<Mat<F>> {
        if rows.len() != n {
            return Err(perr(format!("{key}: expected {n} rows, found {}", rows.len())));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(self.err(key, i, format!("row has {} entries, expected {n}", row.len())));
            }
            for s in row {
                data.push(self.scalar(f, key, i, s)?);
            }
        }
        Ok(Mat::from_vec(f, n, n, data))
    }

    fn tensor<F: Field>(&self, f: &F, key: &str, n: usize, entries: &[Entry]) -> Result<Tensor3<F>> {
        let mut out = Vec::with_capacity(entries.len());
        for (idx, (i, j, k, c)) in entries.iter().enumerate() {
            if let Some(bad) = [i, j, k].into_iter().find(|&&x| x >= n) {
                return Err(self.err(key, idx, format!("[{i}, {j}, {k}, {c:?}]: index {bad} out of range for dimension {n}")));
            }
            out.push((*i, *j, *k, self.scalar(f, key, idx, c)?));
        }
        Tensor3::new(f, [n, n, n], out)
    }
}

fn build<F: Field>(f: F, raw: RawDocument, ctx: &Ctx) -> Result<Document<F>> {
    let n = raw.dim;
    if raw.basis.len() != n {
        return Err(perr(format!("basis has {} labels but dim is {n}", raw.basis.len())));
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = raw.basis.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(perr(format!("duplicate basis label {dup:?}")));
    }
    let mult = ctx.tensor(&f, "mult", n, &raw.mult)?;
    let comult = ctx.tensor(&f, "comult", n, &raw.comult)?;
    let unit = ctx.vector(&f, "unit", n, &raw.unit)?;
    let counit = ctx.vector(&f, "counit", n, &raw.counit)?;
    let antipode = ctx.matrix(&f, "antipode", n, &raw.antipode)?;
    let star = raw.star.as_ref().map(|s| ctx.matrix(&f, "star", n, s)).transpose()?;
    let wha = Wha::new(f.clone(), raw.basis, mult, unit, comult, counit, antipode, star)?;
    let mut modules = Vec::new();
    for (mi, m) in raw.modules.into_iter().flatten().enumerate() {
        let mats = |what: &str, list: &[Vec<Vec<String>>]| -> Result<Vec<Mat<F>>> {
            list.iter()
                .map(|rows| ctx.matrix(&f, "modules", m.dim, rows).map_err(|e| perr(format!("module {:?} {what}: {e}", m.name))))
                .collect()
        };
        let action = mats("action", &m.action)?;
        let coaction = mats("coaction", &m.coaction)?;
        let module = RightWHM::new(&wha, m.dim, action, coaction).map_err(|e| ctx.err("modules", mi, e))?;
        modules.push(NamedModule { name: m.name, module });
    }
    Ok(Document { wha, modules, report: raw.report })
}

enum AnyField {
    Rational(Rationals),
    Complex(Complexes),
    Prime(PrimeField),
}

fn any_field(spec: &FieldSpec) -> Result<AnyField> {
    Ok(match *spec {
        FieldSpec::Rational => AnyField::Rational(Rationals),
        FieldSpec::Complex { tolerance } => {
            if !(tolerance >= 0.0 && tolerance.is_finite()) {
                return Err(perr(format!("tolerance must be a finite non-negative number, got {tolerance}")));
            }
            AnyField::Complex(Complexes::new(tolerance))
        }
        FieldSpec::Prime { p } => AnyField::Prime(PrimeField::new(p).map_err(|e| perr(e.to_string()))?),
    })
}

/// Parses a `.wha.json` document.
pub fn parse(text: &str) -> Result<AnyDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(json_error)?;
    check_version(raw.version)?;
    let ctx = Ctx { text };
    match any_field(&raw.field)? {
        AnyField::Rational(f) => build(f, raw, &ctx).map(AnyDocument::Rational),
        AnyField::Complex(f) => build(f, raw, &ctx).map(AnyDocument::Complex),
        AnyField::Prime(f) => build(f, raw, &ctx).map(AnyDocument::Prime),
    }
}

/// Parses a document and requires it to be over the field type `F`.
pub fn parse_as<F: Field>(text: &str) -> Result<Document<F>>
where
    AnyDocument: IntoTyped<F>,
{
    parse(text)?.into_typed()
}

pub trait IntoTyped<F: Field> {
    fn into_typed(self) -> Result<Document<F>>;
}

macro_rules! into_typed {
    ($f:ty, $variant:ident) => {
        impl IntoTyped<$f> for AnyDocument {
            fn into_typed(self) -> Result<Document<$f>> {
                match self {
                    AnyDocument::$variant(d) => Ok(d),
                    other => Err(perr(format!("document is over {:?}", other.field_spec()))),
                }
            }
        }
    };
}
into_typed!(Rationals, Rational);
into_typed!(Complexes, Complex);
into_typed!(PrimeField, Prime);

fn q(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn row<F: Field>(f: &F, v: &[F::Elem]) -> String {
    let items: Vec<String> = v.iter().map(|c| q(&f.format(c))).collect();
    format!("[{}]", items.join(", "))
}

fn block(indent: &str, lines: &[String]) -> String {
    if lines.is_empty() {
        return "[]".into();
    }
    let inner: Vec<String> = lines.iter().map(|l| format!("{indent}  {l}")).collect();
    format!("[\n{}\n{indent}]", inner.join(",\n"))
}

fn tensor_lines<F: Field>(f: &F, t: &Tensor3<F>) -> Vec<String> {
    t.entries().iter().map(|(i, j, k, c)| format!("[{i}, {j}, {k}, {}]", q(&f.format(c)))).collect()
}

fn matrix_lines<F: Field>(f: &F, m: &Mat<F>) -> Vec<String> {
    (0..m.rows()).map(|i| row(f, &m.row(i))).collect()
}

/// Canonical text: fixed key order, sorted sparse entries, one entry per line.
pub fn emit_document<F: Field>(d: &Document<F>) -> String {
    let a = &d.wha;
    let f = a.field();
    let spec = serde_json::to_string(&f.spec()).expect("field spec serializes");
    let labels: Vec<String> = a.labels().iter().map(|l| q(l)).collect();
    let mut parts = vec![
        format!("  \"version\": {FORMAT_VERSION}"),
        format!("  \"field\": {spec}"),
        format!("  \"dim\": {}", a.dim()),
        format!("  \"basis\": [{}]", labels.join(", ")),
        format!("  \"mult\": {}", block("  ", &tensor_lines(f, a.mult()))),
        format!("  \"unit\": {}", row(f, a.unit())),
        format!("  \"comult\": {}", block("  ", &tensor_lines(f, a.comult()))),
        format!("  \"counit\": {}", row(f, a.counit())),
        format!("  \"antipode\": {}", block("  ", &matrix_lines(f, a.antipode()))),
    ];
    if let Some(s) = a.star() {
        parts.push(format!("  \"star\": {}", block("  ", &matrix_lines(f, s))));
    }
    if !d.modules.is_empty() {
        let mods: Vec<String> = d
            .modules
            .iter()
            .map(|m| {
                let mats = |list: &[Mat<F>]| {
                    let items: Vec<String> = list.iter().map(|x| block("      ", &matrix_lines(f, x))).collect();
                    block("    ", &items)
                };
                format!(
                    "{{\n      \"name\": {},\n      \"dim\": {},\n      \"action\": {},\n      \"coaction\": {}\n    }}",
                    q(&m.name),
                    m.module.dim,
                    mats(&m.module.action),
                    mats(&m.module.coaction)
                )
            })
            .collect();
        parts.push(format!("  \"modules\": {}", block("  ", &mods)));
    }
    if let Some(r) = &d.report {
        let pretty = serde_json::to_string_pretty(r).expect("json values serialize");
        parts.push(format!("  \"report\": {}", pretty.replace('\n', "\n  ")));
    }
    format!("{{\n{}\n}}\n", parts.join(",\n"))
}

/// Canonical text of a bare algebra.
pub fn emit<F: Field>(a: &Wha<F>) -> String {
    emit_document(&Document::new(a.clone()))
}

fn build_algebra<F: Field>(f: F, raw: &RawAlgebra, ctx: &Ctx) -> Result<Algebra<F>> {
    let n = raw.basis.len();
    let mult = ctx.tensor(&f, "mult", n, &raw.mult)?;
    let unit = ctx.vector(&f, "unit", n, &raw.unit)?;
    let star = raw.star.as_ref().map(|s| ctx.matrix(&f, "star", n, s)).transpose()?;
    Algebra::new(&f, raw.basis.clone(), mult, unit, star)
}

/// Parses a `.alg` file: an associative unital algebra B.
pub fn parse_algebra(text: &str) -> Result<AnyAlgebra> {
    let raw: RawAlgebra = serde_json::from_str(text).map_err(json_error)?;
    check_version(raw.version)?;
    let ctx = Ctx { text };
    match any_field(&raw.field)? {
        AnyField::Rational(f) => build_algebra(f, &raw, &ctx).map(AnyAlgebra::Rational),
        AnyField::Complex(f) => build_algebra(f, &raw, &ctx).map(AnyAlgebra::Complex),
        AnyField::Prime(f) => build_algebra(f, &raw, &ctx).map(AnyAlgebra::Prime),
    }
}

/// Parses a `.fun` file (a functional on B) over the field of `b`.
pub fn parse_functional<F: Field>(b: &Algebra<F>, text: &str) -> Result<Vector<F>> {
    let raw: RawFunctional = serde_json::from_str(text).map_err(json_error)?;
    check_version(raw.version)?;
    Ctx { text }.vector(&b.field, "values", b.dim(), &raw.values)
}

/// Canonical `.alg` text.
pub fn emit_algebra<F: Field>(b: &Algebra<F>) -> String {
    let f = &b.field;
    let spec = serde_json::to_string(&f.spec()).expect("field spec serializes");
    let labels: Vec<String> = b.labels.iter().map(|l| q(l)).collect();
    let mut parts = vec![
        format!("  \"version\": {FORMAT_VERSION}"),
        format!("  \"field\": {spec}"),
        format!("  \"basis\": [{}]", labels.join(", ")),
        format!("  \"mult\": {}", block("  ", &tensor_lines(f, &b.mult))),
        format!("  \"unit\": {}", row(f, &b.unit)),
    ];
    if let Some(s) = &b.star {
        parts.push(format!("  \"star\": {}", block("  ", &matrix_lines(f, s))));
    }
    format!("{{\n{}\n}}\n", parts.join(",\n"))
}

/// Canonical `.fun` text.
pub fn emit_functional<F: Field>(f: &F, e: &[F::Elem]) -> String {
    format!("{{\n  \"version\": {FORMAT_VERSION},\n  \"values\": {}\n}}\n", row(f, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locate_counts_entries() {
        let t = "{\n \"mult\": [\n  [0, 0, 0, \"1\"],\n  [1, 2, 0, \"1\"]\n ]\n}";
        assert_eq!(locate(t, "mult", 0), Some(3));
        assert_eq!(locate(t, "mult", 1), Some(4));
        assert_eq!(locate(t, "mult", 2), None);
    }

    #[test]
    fn locate_skips_brackets_in_strings() {
        let t = "{\"unit\": [\"[\",\n \"x\"]}";
        assert_eq!(locate(t, "unit", 1), Some(2));
    }
}
