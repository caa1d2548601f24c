//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed.

use std::path::PathBuf;
use std::time::Instant;

use num::complex::Complex64;
use weakhopf::cli::{run_with_env, EXIT_FAIL, EXIT_IO, EXIT_PASS};
use weakhopf::cstar::{
    canonical_grouplike, certify_conditional_expectation, check_star, cstar_certify, haar_modular_identities,
    radon_nikodym,
};
use weakhopf::document::parse;
use weakhopf::factory::{
    bbop, cyclic_table, dual_basis, group_algebra, m2z2, matrix_algebra, normalize_functional, pair_groupoid,
    symmetric3_table, trace_functional, Algebra, Groupoid,
};
use weakhopf::hopf_modules::{dual_regular_whm, fundamental_iso};
use weakhopf::integrals::{
    annihilator_duality_check, frobenius_test, haar, integral_properties, integral_space, is_nondegenerate_element,
    normalized_integral,
};
use weakhopf::linear::{solve_affine, vector, Mat, Tensor3};
use weakhopf::{check_axioms, CheckList, Complexes, Field, PrimeField, Rationals, Side, Twist, Verdict, Wha};

/// Pinned tolerances.
const COMPLEX_TOL: f64 = 1e-9;
const HAAR_TOL: f64 = 1e-12;
const CSTAR_TOL: f64 = 1e-8;
const AXIOM_BUDGET_SECS: f64 = 30.0;
const CSTAR_BUDGET_SECS: f64 = 60.0;
const SEED: u64 = 7;

type Zoo<F> = Vec<(String, Wha<F>)>;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when a failure is the documented, unattainable clause.
    known_failure: bool,
}

impl Outcome {
    fn from(fails: &[String], detail: String) -> Outcome {
        let detail = if fails.is_empty() { detail } else { format!("{detail}; failures: {}", fails.join(" | ")) };
        Outcome { pass: fails.is_empty(), detail, known_failure: false }
    }
}

/// Largest residual an exact field may report (zero) or the complex tolerance.
fn limit<F: Field>(f: &F) -> f64 {
    if f.is_exact() {
        0.0
    } else {
        COMPLEX_TOL
    }
}

fn diag<F: Field>(f: &F, d: &[F::Elem]) -> Mat<F> {
    Mat::from_fn(f, d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { f.zero() })
}

fn bbop_of<F: Field>(b: &Algebra<F>, e: &[F::Elem]) -> Wha<F> {
    let (_, e) = normalize_functional(b, e).unwrap();
    bbop(b, &e).unwrap().wha
}

fn bbop_matrix<F: Field>(f: &F, gamma: &[F::Elem]) -> Wha<F> {
    let b = matrix_algebra(f, gamma.len());
    bbop_of(&b, &trace_functional(&diag(f, gamma)))
}

/// K and K² = K⊕K as plain algebras.
fn ground_algebra<F: Field>(f: &F, copies: usize) -> Algebra<F> {
    let labels = (0..copies).map(|i| format!("p{i}")).collect();
    let mult = Tensor3::new(f, [copies; 3], (0..copies).map(|i| (i, i, i, f.one())).collect()).unwrap();
    Algebra::new(f, labels, mult, vec![f.one(); copies], None).unwrap()
}

fn groupoid_zoo<F: Field>(f: &F, prefix: &str) -> Zoo<F> {
    let pt = pair_groupoid(1);
    let z2 = Groupoid::from_group_table(&cyclic_table(2), None).unwrap();
    let gs = vec![
        ("pair1", pt.clone()),
        ("pair2", pair_groupoid(2)),
        ("pair3", pair_groupoid(3)),
        ("pt+pt", pt.disjoint_union(&pt)),
        ("pt+pt+pt", pt.disjoint_union(&pt).disjoint_union(&pt)),
        ("pair2+pt", pair_groupoid(2).disjoint_union(&pt)),
        ("Z2+pt", z2.disjoint_union(&pt)),
        ("Z2xpair2", Groupoid::group_times_pair(&cyclic_table(2), 2).unwrap()),
    ];
    gs.into_iter().map(|(n, g)| (format!("{prefix}{n}"), g.algebra(f).unwrap())).collect()
}

fn group_zoo<F: Field>(f: &F, prefix: &str) -> Zoo<F> {
    let (s3, labels) = symmetric3_table();
    let mut out: Zoo<F> =
        [2, 3, 4].iter().map(|&n| (format!("{prefix}[Z{n}]"), group_algebra(f, &cyclic_table(n), None).unwrap())).collect();
    out.push((format!("{prefix}[S3]"), group_algebra(f, &s3, Some(labels)).unwrap()));
    out
}

fn rational_zoo() -> Zoo<Rationals> {
    let q = Rationals;
    let mut z = group_zoo(&q, "Q");
    z.extend(groupoid_zoo(&q, "Q "));
    z.push(("bbop K".into(), bbop_of(&ground_algebra(&q, 1), &[q.one()])));
    z.push(("bbop K²".into(), bbop_of(&ground_algebra(&q, 2), &[q.one(), q.one()])));
    z.push(("bbop M2(Q)".into(), bbop_matrix(&q, &[q.from_i64(1), q.from_i64(2)])));
    z
}

fn prime_zoo() -> Zoo<PrimeField> {
    let f2 = PrimeField::new(2).unwrap();
    let f3 = PrimeField::new(3).unwrap();
    vec![
        ("m2z2".into(), m2z2()),
        ("GF2[Z2]".into(), group_algebra(&f2, &cyclic_table(2), None).unwrap()),
        ("GF3[Z3]".into(), group_algebra(&f3, &cyclic_table(3), None).unwrap()),
        ("GF3 pair2+pt".into(), pair_groupoid(2).disjoint_union(&pair_groupoid(1)).algebra(&f3).unwrap()),
    ]
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn bbop_t(t: f64) -> Wha<Complexes> {
    bbop_matrix(&Complexes::default(), &[c(t), c(1.0 / t)])
}

fn complex_zoo() -> Zoo<Complexes> {
    let f = Complexes::default();
    let (s3, labels) = symmetric3_table();
    vec![
        ("C[S3]".into(), group_algebra(&f, &s3, Some(labels)).unwrap()),
        ("C pair2+pt".into(), pair_groupoid(2).disjoint_union(&pair_groupoid(1)).algebra(&f).unwrap()),
        ("bbop M2(C)".into(), bbop_t(2.0)),
    ]
}

/// A, its three twists, Â and the three twists of Â.
fn variants<F: Field>(zoo: &Zoo<F>) -> Zoo<F> {
    let mut out = Vec::new();
    for (name, a) in zoo {
        for (tag, base) in [("", a.clone()), ("^", a.dual())] {
            out.push((format!("{name}{tag}"), base.clone()));
            for t in Twist::ALL {
                out.push((format!("{name}{tag} {t}"), base.twist(t).unwrap()));
            }
        }
    }
    out
}

fn with_duals<F: Field>(zoo: &Zoo<F>) -> Zoo<F> {
    zoo.iter().flat_map(|(n, a)| [(n.clone(), a.clone()), (format!("{n}^"), a.dual())]).collect()
}

fn note_checks(fails: &mut Vec<String>, worst: &mut f64, name: &str, what: &str, checks: &CheckList, lim: f64) {
    if !checks.all_pass() {
        let names: Vec<&str> = checks.failures().iter().map(|c| c.name.as_str()).collect();
        fails.push(format!("{name} {what}: {}", names.join(", ")));
    }
    let w = checks.worst_residual();
    if w > lim {
        fails.push(format!("{name} {what}: residual {w:.2e} > {lim:.0e}"));
    }
    *worst = worst.max(w);
}

// ---- criterion 1

fn axioms_on<F: Field>(zoo: &Zoo<F>, fails: &mut Vec<String>, worst: &mut f64) -> usize {
    let vs = variants(zoo);
    for (name, a) in &vs {
        let r = check_axioms(a);
        if !r.is_wha || !r.dual_agrees {
            fails.push(format!("{name}: is_wha {} dual_agrees {}", r.is_wha, r.dual_agrees));
        }
        let lim = limit(a.field());
        note_checks(fails, worst, name, "axioms", &r.checks, lim);
        note_checks(fails, worst, name, "dual axioms", &r.dual_checks, lim);
    }
    vs.len()
}

fn criterion1(q: &Zoo<Rationals>, p: &Zoo<PrimeField>, cz: &Zoo<Complexes>) -> Outcome {
    let start = Instant::now();
    let mut fails = Vec::new();
    let (mut we, mut wc) = (0.0, 0.0);
    let n = axioms_on(q, &mut fails, &mut we) + axioms_on(p, &mut fails, &mut we) + axioms_on(cz, &mut fails, &mut wc);
    let secs = start.elapsed().as_secs_f64();
    if secs > AXIOM_BUDGET_SECS {
        fails.push(format!("runtime {secs:.1}s"));
    }
    Outcome::from(
        &fails,
        format!("axioms on {n} algebras (bases, duals, twists); exact residual {we:.0e}, complex {wc:.1e} ≤ {COMPLEX_TOL:.0e}; {secs:.1}s < {AXIOM_BUDGET_SECS}s"),
    )
}

// ---- criterion 2

fn double_dual_on<F: Field>(zoo: &Zoo<F>, fails: &mut Vec<String>, worst: &mut f64) -> usize {
    let vs = variants(zoo);
    for (name, a) in &vs {
        let dd = a.dual().dual();
        let f = a.field();
        let d = a.mult().dist(f, dd.mult())
            .max(a.comult().dist(f, dd.comult()))
            .max(vector::dist(f, a.unit(), dd.unit()))
            .max(vector::dist(f, a.counit(), dd.counit()))
            .max(a.antipode().dist(dd.antipode()));
        *worst = worst.max(d);
        let ok = if f.is_exact() { dd == *a } else { d <= COMPLEX_TOL && dd.labels() == a.labels() };
        if !ok {
            fails.push(format!("{name}: distance {d:.2e}"));
        }
    }
    vs.len()
}

fn criterion2(q: &Zoo<Rationals>, p: &Zoo<PrimeField>, cz: &Zoo<Complexes>) -> Outcome {
    let mut fails = Vec::new();
    let (mut we, mut wc) = (0.0, 0.0);
    let n = double_dual_on(q, &mut fails, &mut we)
        + double_dual_on(p, &mut fails, &mut we)
        + double_dual_on(cz, &mut fails, &mut wc);
    Outcome::from(&fails, format!("dual∘dual = id on {n} algebras; exact distance {we:.0e}, complex {wc:.1e}"))
}

// ---- criterion 3

fn criterion3() -> Outcome {
    let a = m2z2();
    let f = *a.field();
    let mut fails = Vec::new();
    let il = integral_space(&a, Side::Left).unwrap();
    if il.dim() != 2 {
        fails.push(format!("dim I^L = {}", il.dim()));
        return Outcome::from(&fails, String::new());
    }
    let (b0, b1) = (&il.basis()[0], &il.basis()[1]);
    let elems = [b0.clone(), b1.clone(), vector::add(&f, b0, b1)];
    let normalized = |l: &[_]| vector::dist(&f, &a.pi(l, Side::Left), a.unit()) == 0.0;
    let (norm, rest): (Vec<_>, Vec<_>) = elems.into_iter().partition(|l| normalized(l));
    if norm.len() != 2 {
        fails.push(format!("{} normalized elements in I^L, expected 2", norm.len()));
        return Outcome::from(&fails, String::new());
    }
    let (l1, l2) = (&norm[0], &norm[1]);
    let sum = vector::add(&f, l1, l2);
    if rest[0] != sum {
        fails.push("l₁+l₂ is not the third integral".into());
    }
    for (nm, l) in [("l₁", l1), ("l₂", l2)] {
        if is_nondegenerate_element(&a, l) {
            fails.push(format!("{nm} non-degenerate"));
        }
    }
    if !is_nondegenerate_element(&a, &sum) {
        fails.push("l₁+l₂ degenerate".into());
    }
    if !vector::is_zero(&f, &a.pi(&sum, Side::Left)) {
        fails.push("Π^L(l₁+l₂) ≠ 0".into());
    }
    let show = |l: &[_]| {
        let terms: Vec<&str> = (0..a.dim()).filter(|&i| !f.is_zero(&l[i])).map(|i| a.labels()[i].as_str()).collect();
        terms.join("+")
    };
    Outcome::from(
        &fails,
        format!(
            "over GF(2): l₁ = {}, l₂ = {} normalized and degenerate; l₁+l₂ non-degenerate with Π^L = 0",
            show(l1),
            show(l2)
        ),
    )
}

// ---- criterion 4

fn maschke_on<F: Field>(zoo: &Zoo<F>, fails: &mut Vec<String>, worst: &mut f64, tally: &mut (usize, usize)) {
    for (name, a) in with_duals(zoo) {
        let ni = normalized_integral(&a, Side::Left).unwrap();
        match ni.oracle {
            Some(o) if o == ni.semisimple => {}
            o => fails.push(format!("{name}: integral {} oracle {o:?}", ni.semisimple)),
        }
        if ni.semisimple {
            tally.0 += 1;
            if ni.checks.get("(x⊗1)q = q(1⊗x)").is_none() {
                fails.push(format!("{name}: separability identity not checked"));
            }
        } else {
            tally.1 += 1;
        }
        note_checks(fails, worst, &name, "separability", &ni.checks, limit(a.field()));
    }
}

fn criterion4(q: &Zoo<Rationals>, p: &Zoo<PrimeField>, cz: &Zoo<Complexes>) -> Outcome {
    let mut fails = Vec::new();
    let (mut we, mut wc) = (0.0, 0.0);
    let mut tally = (0, 0);
    maschke_on(q, &mut fails, &mut we, &mut tally);
    maschke_on(p, &mut fails, &mut we, &mut tally);
    maschke_on(cz, &mut fails, &mut wc, &mut tally);
    let f2 = PrimeField::new(2).unwrap();
    let neg = normalized_integral(&group_algebra(&f2, &cyclic_table(2), None).unwrap(), Side::Left).unwrap();
    if neg.semisimple || neg.oracle != Some(false) {
        fails.push("GF(2)[Z2] reported semisimple".into());
    }
    Outcome::from(
        &fails,
        format!(
            "{} semisimple, {} not (incl. GF(2)[Z2]); (x⊗1)q = q(1⊗x) exact residual {we:.0e}, complex {wc:.1e}",
            tally.0, tally.1
        ),
    )
}

// ---- criterion 5

/// Normalized two-sided integrals by direct solve: xh = Π^L(x)h, hx = hΠ^R(x), Π^L(h) = Π^R(h) = 1.
fn brute_force_haar<F: Field>(a: &Wha<F>) -> Option<Vec<F::Elem>> {
    let f = a.field();
    let n = a.dim();
    let mut blocks = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..n {
        let bx = a.basis_vector(x);
        blocks.push(a.left_mul_matrix(&bx).sub(&a.left_mul_matrix(&a.pi(&bx, Side::Left))));
        blocks.push(a.right_mul_matrix(&bx).sub(&a.right_mul_matrix(&a.pi(&bx, Side::Right))));
        rhs.extend(std::iter::repeat_n(f.zero(), 2 * n));
    }
    blocks.push(a.pi_matrix(Side::Left).clone());
    blocks.push(a.pi_matrix(Side::Right).clone());
    rhs.extend(a.unit().iter().cloned());
    rhs.extend(a.unit().iter().cloned());
    let sol = solve_affine(&Mat::vstack(f, &blocks), Some(&rhs)).ok()?;
    sol.kernel.is_empty().then_some(())?;
    sol.particular
}

/// Σ fᵢγ²eᵢ for E = tr(·γ) on M_n, after rescaling E to index 1.
/// Returns None when no rescaling reaches index 1.
fn haar_criterion(gamma: &Mat<Complexes>) -> Option<(Wha<Complexes>, bool)> {
    let f = *gamma.field();
    let n = gamma.rows();
    let b = matrix_algebra(&f, n);
    let (_, e) = normalize_functional(&b, &trace_functional(gamma)).ok()?;
    let wha = bbop(&b, &e).ok()?.wha;
    // E = tr(·γ') with γ'[i][j] = E(e_ji)
    let g: Vec<Complex64> = (0..n * n).map(|c| e[(c % n) * n + c / n]).collect();
    let g2 = b.mul(&g, &g);
    let fs = dual_basis(&b, &e).ok()?;
    let mut s = vector::zeros(&f, n * n);
    for (i, fi) in fs.iter().enumerate() {
        s = vector::add(&f, &s, &b.mul(&b.mul(fi, &g2), &b.basis(i)));
    }
    let invertible = b.left_mul_matrix(&s).inverse().is_some();
    Some((wha, invertible))
}

fn criterion5() -> Outcome {
    let f = Complexes::default();
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    let mut groups = group_zoo(&f, "C");
    groups.truncate(4);
    for (name, a) in &groups {
        let n = a.dim();
        let want = vec![c(1.0 / n as f64); n];
        let h = haar(a).unwrap().h;
        let brute = brute_force_haar(a);
        match (h, brute) {
            (Some(h), Some(b)) => {
                let d = vector::dist(&f, &h, &want).max(vector::dist(&f, &h, &b));
                worst = worst.max(d);
                if d > HAAR_TOL {
                    fails.push(format!("{name}: distance {d:.2e}"));
                }
            }
            other => fails.push(format!("{name}: haar/brute force {:?}", (other.0.is_some(), other.1.is_some()))),
        }
    }

    // bbop(M₂(ℂ), γ): Haar exists ⟺ Σfᵢγ²eᵢ invertible.
    let mut agree = true;
    let (mut positive, mut negative, mut rejected) = (0, 0, 0);
    let mut candidates = vec![
        diag(&f, &[c(2.0), c(0.5)]),
        diag(&f, &[c(1.0), c(1.0)]),
        diag(&f, &[c(1.0), c(-1.0)]),
        diag(&f, &[Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)]),
        Mat::from_rows(&f, vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]),
        Mat::from_rows(&f, vec![vec![c(1.0), c(2.0)], vec![c(3.0), c(-1.0)]]),
        diag(&f, &[c(3.0), c(-1.0)]),
    ];
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..24 {
        let mut z = || Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (p, q, r) = (z(), z(), z());
        // traceless ones are the only candidates for a singular criterion
        candidates.push(Mat::from_rows(&f, vec![vec![p, q], vec![r, -p]]));
    }
    for gamma in &candidates {
        match haar_criterion(gamma) {
            None => rejected += 1,
            Some((wha, invertible)) => {
                let exists = haar(&wha).unwrap().h.is_some();
                agree &= exists == invertible;
                if invertible {
                    positive += 1;
                } else {
                    negative += 1;
                }
            }
        }
    }
    if !agree {
        fails.push("Haar existence disagrees with Σfᵢγ²eᵢ invertibility".into());
    }
    if positive == 0 {
        fails.push("no positive bbop(M₂) instance".into());
    }
    let clause_unmet = negative == 0;

    // The same agreement on M₃, where a negative instance exists.
    let m3 = diag(&f, &[c(1.5), c(1.5), c(-3.0)]);
    let m3_note = match haar_criterion(&m3) {
        Some((wha, invertible)) => {
            let exists = haar(&wha).unwrap().h.is_some();
            if exists != invertible {
                fails.push("M₃ substitute disagrees".into());
            }
            format!("M₃ γ = diag(3/2,3/2,-3): criterion invertible {invertible}, Haar exists {exists}")
        }
        None => {
            fails.push("M₃ substitute rejected".into());
            String::new()
        }
    };
    let detail = format!(
        "C[G] Haar = |G|⁻¹Σg and brute force within {worst:.1e} ≤ {HAAR_TOL:.0e}; bbop(M₂(C)): {positive} positive, \
         {negative} negative, {rejected} γ without index 1 among {} candidates; {m3_note}",
        candidates.len()
    );
    if clause_unmet && fails.is_empty() {
        return Outcome {
            pass: false,
            known_failure: true,
            detail: format!(
                "{detail}; no negative bbop(M₂(C), γ) instance exists: index 1 needs Tr γ⁻¹ ≠ 0 while \
                 Σfᵢγ²eᵢ ∝ Tr γ·1, and Tr γ = 0 forces Tr γ⁻¹ = 0 for 2×2 γ"
            ),
        };
    }
    if clause_unmet {
        fails.push("no negative bbop(M₂) instance".into());
    }
    Outcome::from(&fails, detail)
}

// ---- criterion 6

fn frobenius_on<F: Field>(zoo: &Zoo<F>, fails: &mut Vec<String>, tally: &mut (usize, usize)) {
    for (name, a) in with_duals(zoo) {
        match frobenius_test(&a, SEED) {
            Ok(r) => {
                let d = r.frobenius;
                let same = d != Verdict::Unknown
                    && r.integral_search == d
                    && r.functional_search == d
                    && r.dual_dims_equal == d.is_yes();
                if !same {
                    fails.push(format!(
                        "{name}: dims {d}, integral {}, functional {}, dual {}",
                        r.integral_search, r.functional_search, r.dual_dims_equal
                    ));
                }
                if d.is_yes() {
                    tally.0 += 1;
                } else {
                    tally.1 += 1;
                }
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
}

fn criterion6(q: &Zoo<Rationals>, p: &Zoo<PrimeField>, cz: &Zoo<Complexes>) -> Outcome {
    let mut fails = Vec::new();
    let mut tally = (0, 0);
    frobenius_on(q, &mut fails, &mut tally);
    frobenius_on(p, &mut fails, &mut tally);
    frobenius_on(cz, &mut fails, &mut tally);
    Outcome::from(&fails, format!("identical verdicts: {} Frobenius, {} not", tally.0, tally.1))
}

// ---- criterion 7

fn fundamental_on<F: Field>(zoo: &Zoo<F>, fails: &mut Vec<String>, worst: &mut f64) -> usize {
    let all = with_duals(zoo);
    for (name, a) in &all {
        match fundamental_iso(a, &dual_regular_whm(a)) {
            Ok(iso) => note_checks(fails, worst, name, "Â ≅ I^L(Â)⊗A", &iso.checks, limit(a.field())),
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    all.len()
}

fn criterion7(q: &Zoo<Rationals>, p: &Zoo<PrimeField>, cz: &Zoo<Complexes>) -> Outcome {
    let mut fails = Vec::new();
    let (mut we, mut wc) = (0.0, 0.0);
    let n = fundamental_on(q, &mut fails, &mut we) + fundamental_on(p, &mut fails, &mut we) + fundamental_on(cz, &mut fails, &mut wc);
    Outcome::from(
        &fails,
        format!("α∘β = id, β∘α = id on {n} dual regular modules; exact residual {we:.0e}, complex {wc:.1e} ≤ {COMPLEX_TOL:.0e}"),
    )
}

// ---- criterion 8

fn criterion8() -> Outcome {
    let start = Instant::now();
    let f = Complexes::default();
    let (s3, labels) = symmetric3_table();
    let algebras: Vec<(&str, Wha<Complexes>)> = vec![
        ("C[S3]", group_algebra(&f, &s3, Some(labels)).unwrap()),
        ("C pair2+pt", pair_groupoid(2).disjoint_union(&pair_groupoid(1)).algebra(&f).unwrap()),
        ("C Z2xpair2", Groupoid::group_times_pair(&cyclic_table(2), 2).unwrap().algebra(&f).unwrap()),
        ("bbop t=1", bbop_t(1.0)),
        ("bbop t=2", bbop_t(2.0)),
    ];
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (name, a) in &algebras {
        let mut note = |what: &str, checks: &CheckList| note_checks(&mut fails, &mut worst, name, what, checks, CSTAR_TOL);
        note("star", &check_star(a).unwrap());
        let report = cstar_certify(a, SEED).unwrap();
        if !report.is_cstar {
            fails.push(format!("{name}: not certified C*: {:?}", report.diagnostics));
            continue;
        }
        note("C*", &report.checks);
        let cs = report.into_cstar().unwrap();
        let gd = canonical_grouplike(&cs, SEED).unwrap();
        note("grouplike", &gd.checks);
        note("sectors", &gd.sectors.checks);
        note("Haar modular", &haar_modular_identities(&cs, &gd).unwrap());
        for side in [Side::Left, Side::Right] {
            note("conditional expectation", &certify_conditional_expectation(&cs, side, SEED).unwrap());
        }
        note("Radon–Nikodym", &radon_nikodym(&cs, &gd, &cs.h).unwrap().checks);
        for l in integral_space(a, Side::Left).unwrap().basis() {
            note("Radon–Nikodym basis", &radon_nikodym(&cs, &gd, l).unwrap().checks);
        }

        let n = a.dim();
        let s2 = a.antipode_power(2).unwrap();
        let ad = (0..n)
            .map(|x| {
                let bx = a.basis_vector(x);
                vector::dist(&f, &a.mul3(&gd.g, &bx, &gd.g_inv), &s2.mul_vec(&bx))
            })
            .fold(0.0, f64::max);
        worst = worst.max(ad);
        if ad > CSTAR_TOL {
            fails.push(format!("{name}: Ad_g ≠ S², residual {ad:.2e}"));
        }
        let s2_moves = s2.dist(&Mat::identity(&f, n));
        let g_dist = vector::dist(&f, &gd.g, a.unit());
        match *name {
            "bbop t=1" => {
                if g_dist > HAAR_TOL {
                    fails.push(format!("{name}: g differs from 1 by {g_dist:.2e}"));
                }
                notes.push(format!("t=1: |g-1| = {g_dist:.0e}"));
            }
            "bbop t=2" => {
                if s2_moves <= 0.1 {
                    fails.push(format!("{name}: S² = id"));
                }
                notes.push(format!("t=2: Ad_g = S² with |S²-id| = {s2_moves:.2}"));
            }
            _ => {}
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > CSTAR_BUDGET_SECS {
        fails.push(format!("runtime {secs:.1}s"));
    }
    Outcome::from(
        &fails,
        format!(
            "{} algebras certified; worst residual {worst:.1e} ≤ {CSTAR_TOL:.0e}; {}; {secs:.1}s < {CSTAR_BUDGET_SECS}s",
            algebras.len(),
            notes.join(", ")
        ),
    )
}

// ---- criterion 9

fn calculus_on<F: Field>(zoo: &Zoo<F>, fails: &mut Vec<String>, worst: &mut f64) -> usize {
    let all = with_duals(zoo);
    let lim = |a: &Wha<F>| if a.field().is_exact() { 0.0 } else { COMPLEX_TOL };
    for (name, a) in &all {
        match integral_properties(a, SEED) {
            Ok(ch) => note_checks(fails, worst, name, "integral properties", &ch, lim(a)),
            Err(e) => fails.push(format!("{name}: {e}")),
        }
        match annihilator_duality_check(a) {
            Ok(r) => note_checks(fails, worst, name, "annihilators", &r.checks, lim(a)),
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    all.len()
}

fn criterion9(q: &Zoo<Rationals>, p: &Zoo<PrimeField>, cz: &Zoo<Complexes>) -> Outcome {
    let mut fails = Vec::new();
    let (mut we, mut wc) = (0.0, 0.0);
    let n = calculus_on(q, &mut fails, &mut we) + calculus_on(p, &mut fails, &mut we) + calculus_on(cz, &mut fails, &mut wc);
    Outcome::from(
        &fails,
        format!("integral characterizations, twisted arrows, dual bases and annihilators on {n} algebras; exact residual {we:.0e}, complex {wc:.1e}"),
    )
}

// ---- criterion 10

fn criterion10() -> Outcome {
    let tests = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests");
    let golden = tests.join("golden");
    let wha = |args: &[&str]| run_with_env(std::iter::once("wha").chain(args.iter().copied()), None);
    let mut fails = Vec::new();
    let mut files = 0;
    for entry in std::fs::read_dir(&golden).unwrap() {
        let path = entry.unwrap().path();
        if !path.to_string_lossy().ends_with(".wha.json") {
            continue;
        }
        files += 1;
        let text = std::fs::read_to_string(&path).unwrap();
        match parse(&text) {
            Ok(doc) if doc.emit() == text => {}
            Ok(_) => fails.push(format!("{}: emit∘parse changes the bytes", path.display())),
            Err(e) => fails.push(format!("{}: {e}", path.display())),
        }
        let p = path.display().to_string();
        let out = wha(&["verify", &p]);
        if out.code != EXIT_PASS {
            fails.push(format!("verify {p}: exit {}", out.code));
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let z3 = std::fs::read_to_string(golden.join("z3.wha.json")).unwrap();
    let broken = dir.path().join("broken.wha.json");
    std::fs::write(&broken, z3.replacen("\"1\"]", "\"2\"]", 1)).unwrap();
    let unparsable = dir.path().join("unparsable.wha.json");
    std::fs::write(&unparsable, &z3[..z3.len() / 2]).unwrap();
    let missing = dir.path().join("missing.wha.json");
    for (path, want) in [(&broken, EXIT_FAIL), (&unparsable, EXIT_IO), (&missing, EXIT_IO)] {
        let out = wha(&["verify", &path.display().to_string()]);
        if out.code != want {
            fails.push(format!("verify {}: exit {} (want {want})", path.display(), out.code));
        }
    }
    if wha(&["frobnicate"]).code != EXIT_IO {
        fails.push("usage error does not exit 2".into());
    }
    Outcome::from(&fails, format!("emit∘parse byte-identical on {files} golden documents; exit codes 0/1/2 for pass/fail/io+usage"))
}

fn main() {
    let q = rational_zoo();
    let p = prime_zoo();
    let cz = complex_zoo();
    let start = Instant::now();
    let outcomes = [
        criterion1(&q, &p, &cz),
        criterion2(&q, &p, &cz),
        criterion3(),
        criterion4(&q, &p, &cz),
        criterion5(),
        criterion6(&q, &p, &cz),
        criterion7(&q, &p, &cz),
        criterion8(),
        criterion9(&q, &p, &cz),
        criterion10(),
    ];
    println!("acceptance: tolerances exact 0, complex {COMPLEX_TOL:.0e}, Haar {HAAR_TOL:.0e}, C* {CSTAR_TOL:.0e}");
    let mut unexpected = 0;
    for (i, o) in outcomes.iter().enumerate() {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let tag = if o.known_failure { " (known, unattainable as stated)" } else { "" };
        println!("criterion {:>2}: {verdict}{tag}  {}", i + 1, o.detail);
        if !o.pass && !o.known_failure {
            unexpected += 1;
        }
    }
    println!("acceptance: {:.1}s total, {unexpected} unexpected failure(s)", start.elapsed().as_secs_f64());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
