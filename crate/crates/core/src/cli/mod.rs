//! The `wha` command line: verify, report, dual, twist, make, convert.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 I/O, parse or usage failure.

mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::ToPrimitive;
use serde::Deserialize;

use crate::document::{self, AnyAlgebra, AnyDocument, Document};
use crate::error::WhaError;
use crate::factory::{self, bbop, normalize_functional, Groupoid};
use crate::field::{Complexes, Field, PrimeField, Rationals, DEFAULT_TOLERANCE};
use crate::linear::{Mat, Tensor3};
use crate::wha::{check_axioms, Twist, Wha};
use crate::{with_algebra, with_document};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wha", version, about = "Verify and compute with finite-dimensional weak Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: CliConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable lines.
    Text,
    /// The document itself with a "report" section.
    Json,
}

#[derive(Args, Clone, Debug)]
pub struct CliConfig {
    /// Absolute tolerance for complex documents (default: $WHA_TOL, else 1e-9).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// List passing checks too.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    /// Write documents here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms and the invariant suites of a document.
    Verify { path: PathBuf },
    /// Print counital subalgebras, integrals and, on request, deeper structure.
    Report {
        path: PathBuf,
        #[command(flatten)]
        flags: ReportFlags,
    },
    /// The dual algebra.
    Dual { path: PathBuf },
    /// The opposite, co-opposite or both.
    Twist {
        path: PathBuf,
        /// op, cop or opcop.
        #[arg(long)]
        kind: Twist,
    },
    /// Build a document from construction data.
    Make {
        #[command(subcommand)]
        what: Make,
    },
    /// Rewrite a document canonically, optionally over another field.
    Convert {
        path: PathBuf,
        /// Target field; only rational → complex is supported.
        #[arg(long)]
        to: Option<FieldArg>,
    },
}

#[derive(Args, Clone, Copy, Debug, Default)]
pub struct ReportFlags {
    /// Integral spaces and a normalized integral.
    #[arg(long)]
    pub integrals: bool,
    /// Haar integral and the canonical functional χ.
    #[arg(long)]
    pub haar: bool,
    /// Canonical grouplike element and its factors (complex with star).
    #[arg(long)]
    pub grouplike: bool,
    /// Sectors, vacua and conditional expectations (complex with star).
    #[arg(long)]
    pub sectors: bool,
    /// Frobenius criteria.
    #[arg(long)]
    pub frobenius: bool,
}

#[derive(Subcommand, Debug)]
enum Make {
    /// Group algebra from a cyclic order or a multiplication table file.
    Group {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        cyclic: Option<usize>,
        /// JSON file {"table": [[...]], "labels": [...]}.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value = "rational")]
        field: FieldArg,
    },
    /// Groupoid algebra from a pair groupoid size or a groupoid file.
    Groupoid {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        pair: Option<usize>,
        /// JSON file {"objects": [...], "morphisms": [...], "products": [...]}.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value = "rational")]
        field: FieldArg,
    },
    /// B⊗B^op from an algebra (.alg) and a functional (.fun).
    Bbop {
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long = "E")]
        e: PathBuf,
        /// Rescale E to index 1 first.
        #[arg(long)]
        normalize: bool,
    },
    /// M₂ over GF(2) with matrix-unit coproduct.
    M2z2,
    /// Direct sum of two documents over the same field.
    Sum { first: PathBuf, second: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldArg {
    Rational,
    Complex,
    Prime(u64),
}

impl std::str::FromStr for FieldArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" => Ok(FieldArg::Rational),
            "complex" => Ok(FieldArg::Complex),
            _ => s
                .strip_prefix("prime:")
                .and_then(|p| p.parse().ok())
                .map(FieldArg::Prime)
                .ok_or_else(|| format!("unknown field '{s}' (expected rational, complex or prime:P)")),
        }
    }
}

impl std::fmt::Display for FieldArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldArg::Rational => f.write_str("rational"),
            FieldArg::Complex => f.write_str("complex"),
            FieldArg::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit code.
#[derive(Debug)]
pub(crate) struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    pub(crate) fn math(message: impl Into<String>) -> Self {
        Failure { code: EXIT_FAIL, message: message.into() }
    }
    fn io(message: impl Into<String>) -> Self {
        Failure { code: EXIT_IO, message: message.into() }
    }
}

impl From<WhaError> for Failure {
    fn from(e: WhaError) -> Self {
        match e {
            WhaError::Parse(_) => Failure::io(e.to_string()),
            other => Failure::math(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// Settings resolved from flags and environment.
#[derive(Clone, Debug)]
pub(crate) struct Config {
    pub tol: Option<f64>,
    pub seed: u64,
    pub format: OutputFormat,
    pub verbose: bool,
    pub output: Option<PathBuf>,
}

fn resolve(c: CliConfig, env_tol: Option<String>) -> CliResult<Config> {
    let tol = match (c.tol, env_tol) {
        (Some(t), _) => Some(t),
        (None, Some(s)) => Some(s.trim().parse::<f64>().map_err(|_| Failure::io(format!("WHA_TOL={s:?} is not a number")))?),
        (None, None) => None,
    };
    if let Some(t) = tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::io(format!("tolerance must be finite and ≥ 0, got {t}")));
        }
    }
    Ok(Config { tol, seed: c.seed, format: c.format, verbose: c.verbose, output: c.output })
}

/// Runs the tool on an argument list (program name first), reading WHA_TOL from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var("WHA_TOL").ok())
}

/// As [`run`], with the value of WHA_TOL passed explicitly.
pub fn run_with_env<I, T>(args: I, env_tol: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Outcome::default();
    let result = resolve(cli.config, env_tol).and_then(|cfg| execute(cli.command, &cfg, &mut out));
    match result {
        Ok(code) => out.code = code,
        Err(f) => {
            out.code = f.code;
            out.stderr.push_str(&format!("error: {}\n", f.message));
        }
    }
    out
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn load(path: &Path, cfg: &Config) -> CliResult<AnyDocument> {
    let text = read(path)?;
    let doc = document::parse(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    Ok(match cfg.tol {
        Some(t) => doc.with_tolerance(t),
        None => doc,
    })
}

/// Writes a document to `-o` or to standard output.
fn deliver(text: String, cfg: &Config, out: &mut Outcome) -> CliResult<()> {
    match &cfg.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::io(format!("{}: {e}", p.display()))),
        None => {
            out.stdout.push_str(&text);
            Ok(())
        }
    }
}

/// Emits a constructed algebra; exit 1 if it does not pass the axioms.
fn emit_checked<F: Field>(a: &Wha<F>, cfg: &Config, out: &mut Outcome) -> CliResult<i32> {
    deliver(document::emit(a), cfg, out)?;
    let rep = check_axioms(a);
    if rep.is_wha {
        Ok(EXIT_PASS)
    } else {
        let bad: Vec<String> = rep.checks.failures().iter().map(|c| c.name.clone()).collect();
        out.stderr.push_str(&format!("warning: output fails the axioms: {}\n", bad.join(", ")));
        Ok(EXIT_FAIL)
    }
}

fn execute(cmd: Command, cfg: &Config, out: &mut Outcome) -> CliResult<i32> {
    match cmd {
        Command::Verify { path } => {
            let doc = load(&path, cfg)?;
            report::verify(&path, doc, cfg, out)
        }
        Command::Report { path, flags } => {
            let doc = load(&path, cfg)?;
            report::report(&path, doc, flags, cfg, out)
        }
        Command::Dual { path } => {
            let doc = load(&path, cfg)?;
            with_document!(&doc, d => emit_checked(&d.wha.dual(), cfg, out))
        }
        Command::Twist { path, kind } => {
            let doc = load(&path, cfg)?;
            with_document!(&doc, d => emit_checked(&d.wha.twist(kind)?, cfg, out))
        }
        Command::Convert { path, to } => {
            let doc = load(&path, cfg)?;
            match (to, doc) {
                (None, doc) => {
                    deliver(doc.emit(), cfg, out)?;
                    Ok(EXIT_PASS)
                }
                (Some(FieldArg::Complex), AnyDocument::Rational(d)) => {
                    let c = rational_to_complex(&d.wha, cfg.tol.unwrap_or(DEFAULT_TOLERANCE))?;
                    deliver(document::emit_document(&Document::new(c)), cfg, out)?;
                    Ok(EXIT_PASS)
                }
                (Some(to), doc) => Err(Failure::math(format!("cannot convert a document over {} to {to}", report::field_name(&doc.field_spec())))),
            }
        }
        Command::Make { what } => make(what, cfg, out),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    table: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::io(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column())))
}

fn complex_field(cfg: &Config) -> Complexes {
    Complexes::new(cfg.tol.unwrap_or(DEFAULT_TOLERANCE))
}

fn build_groupoid(g: &Groupoid, field: FieldArg, cfg: &Config, out: &mut Outcome) -> CliResult<i32> {
    match field {
        FieldArg::Rational => emit_checked(&g.algebra(&Rationals)?, cfg, out),
        FieldArg::Complex => emit_checked(&g.algebra(&complex_field(cfg))?, cfg, out),
        FieldArg::Prime(p) => {
            let f = PrimeField::new(p).map_err(Failure::math)?;
            emit_checked(&g.algebra(&f)?, cfg, out)
        }
    }
}

fn make(what: Make, cfg: &Config, out: &mut Outcome) -> CliResult<i32> {
    match what {
        Make::Group { cyclic, table, field } => {
            let (table, labels) = match (cyclic, table) {
                (Some(0), _) => return Err(Failure::math("the cyclic group needs order ≥ 1")),
                (Some(n), _) => (factory::cyclic_table(n), None),
                (None, Some(p)) => {
                    let t: TableFile = parse_json(&p)?;
                    (t.table, t.labels)
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            build_groupoid(&Groupoid::from_group_table(&table, labels)?, field, cfg, out)
        }
        Make::Groupoid { pair, file, field } => {
            let g = match (pair, file) {
                (Some(0), _) => return Err(Failure::math("the pair groupoid needs at least one object")),
                (Some(k), _) => factory::pair_groupoid(k),
                (None, Some(p)) => parse_json::<Groupoid>(&p)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            build_groupoid(&g, field, cfg, out)
        }
        Make::Bbop { b, e, normalize } => {
            let alg = document::parse_algebra(&read(&b)?).map_err(|err| Failure::io(format!("{}: {err}", b.display())))?;
            let alg = match (alg, cfg.tol) {
                (AnyAlgebra::Complex(mut c), Some(t)) => {
                    c.field = c.field.with_tolerance(t);
                    AnyAlgebra::Complex(c)
                }
                (other, _) => other,
            };
            let fun = read(&e)?;
            with_algebra!(&alg, b_alg => {
                let mut func = document::parse_functional(b_alg, &fun).map_err(|err| Failure::io(format!("{}: {err}", e.display())))?;
                if normalize {
                    func = normalize_functional(b_alg, &func)?.1;
                }
                let built = bbop(b_alg, &func)?;
                if !built.checks.all_pass() {
                    let bad: Vec<String> = built.checks.failures().iter().map(|c| c.name.clone()).collect();
                    out.stderr.push_str(&format!("warning: builder checks failed: {}\n", bad.join(", ")));
                }
                emit_checked(&built.wha, cfg, out)
            })
        }
        Make::M2z2 => emit_checked(&factory::m2z2(), cfg, out),
        Make::Sum { first, second } => {
            let (a, b) = (load(&first, cfg)?, load(&second, cfg)?);
            match (&a, &b) {
                (AnyDocument::Rational(x), AnyDocument::Rational(y)) => emit_checked(&factory::direct_sum(&x.wha, &y.wha)?, cfg, out),
                (AnyDocument::Complex(x), AnyDocument::Complex(y)) => emit_checked(&factory::direct_sum(&x.wha, &y.wha)?, cfg, out),
                (AnyDocument::Prime(x), AnyDocument::Prime(y)) => emit_checked(&factory::direct_sum(&x.wha, &y.wha)?, cfg, out),
                _ => Err(Failure::math(format!(
                    "direct sum of algebras over different fields ({:?} and {:?})",
                    a.field_spec(),
                    b.field_spec()
                ))),
            }
        }
    }
}

/// The same structure constants read as complex numbers. No star is attached.
fn rational_to_complex(a: &Wha<Rationals>, tol: f64) -> CliResult<Wha<Complexes>> {
    let c = Complexes::new(tol);
    let z = |q: &num::rational::BigRational| num::complex::Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0);
    let n = a.dim();
    let tensor = |t: &Tensor3<Rationals>| Tensor3::new(&c, [n, n, n], t.entries().iter().map(|(i, j, k, v)| (*i, *j, *k, z(v))).collect());
    let s = a.antipode();
    Ok(Wha::new(
        c,
        a.labels().to_vec(),
        tensor(a.mult())?,
        a.unit().iter().map(z).collect(),
        tensor(a.comult())?,
        a.counit().iter().map(z).collect(),
        Mat::from_fn(&c, n, n, |i, j| z(&s[(i, j)])),
        None,
    )?)
}
