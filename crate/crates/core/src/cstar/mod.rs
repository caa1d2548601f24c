//! Star structure over ℂ: *-WHA checks, C* certification through the Haar
//! scalar product, positivity in the GNS representation, the canonical
//! grouplike element, sectors, conditional expectations, modular identities
//! and Radon–Nikodym derivatives of left integrals.
//!
//! An antilinear map is stored as a matrix T with x* = T·conj(x).

mod grouplike;
mod radon;
mod sectors;

pub use grouplike::{canonical_grouplike, haar_modular_identities, GrouplikeData};
pub use radon::{radon_nikodym, RadonNikodym};
pub use sectors::{certify_conditional_expectation, conditional_expectation, sectors, SectorData};

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Complexes;
use crate::integrals::haar;
use crate::linear::spectral::{hermitian_eigen, is_hermitian};
use crate::linear::{hermitian_sqrt, vector, Mat, Vector};
use crate::wha::{counital_subalgebras, Side, Wha};

pub type CMat = Mat<Complexes>;
pub type CVec = Vector<Complexes>;

/// Random probes used by the positivity checks.
pub const POSITIVITY_PROBES: usize = 8;

pub(crate) fn star_matrix(a: &Wha<Complexes>) -> Result<&CMat> {
    a.star().ok_or_else(|| WhaError::Precondition("the algebra carries no star operation".into()))
}

pub(crate) fn star(a: &Wha<Complexes>, x: &[Complex64]) -> CVec {
    a.apply_star(x).expect("star checked by the caller")
}

/// Residual limit scaled by the size of the quantities compared.
pub(crate) fn scaled(tol: f64, size: f64) -> f64 {
    tol * (1.0 + size)
}

fn star_axioms(a: &Wha<Complexes>) -> Result<CheckList> {
    let f = *a.field();
    let n = a.dim();
    let tol = a.tol();
    let t = star_matrix(a)?;
    let mut checks = CheckList::new();
    checks.residual("x** = x", t.mul(&t.conj()).dist(&Mat::identity(&f, n)), tol);
    let mut r: f64 = 0.0;
    for i in 0..n {
        let bi = a.basis_vector(i);
        for j in 0..n {
            let bj = a.basis_vector(j);
            let lhs = star(a, &a.mul(&bi, &bj));
            let rhs = a.mul(&star(a, &bj), &star(a, &bi));
            r = r.max(vector::dist(&f, &lhs, &rhs));
        }
    }
    checks.residual("(xy)* = y*x*", r, tol);
    let mut r: f64 = 0.0;
    for k in 0..n {
        let bk = a.basis_vector(k);
        let lhs = a.coproduct(&star(a, &bk));
        let rhs = t.mul(&a.coproduct(&bk).conj()).mul(&t.transpose());
        r = r.max(lhs.dist(&rhs));
    }
    checks.residual("Δ(x*) = x₍₁₎*⊗x₍₂₎*", r, tol);
    checks.residual("1* = 1", vector::dist(&f, &star(a, a.unit()), a.unit()), tol);
    let eps_star = t.vec_mul(a.counit());
    checks.residual("ε(x*) = conj ε(x)", vector::dist(&f, &eps_star, &vector::conj(&f, a.counit())), tol);
    match a.antipode_inverse_matrix() {
        Some(si) => {
            // x ↦ S(x*)* is linear with matrix T·conj(S·T)
            let m = t.mul(&a.antipode().mul(t).conj());
            checks.residual("S(x*)* = S⁻¹(x)", m.dist(si), tol);
        }
        None => {
            checks.flag("S(x*)* = S⁻¹(x)", false);
        }
    }
    for side in [Side::Left, Side::Right] {
        let pi = a.pi_matrix(side);
        let mut r: f64 = 0.0;
        for x in 0..n {
            let bx = a.basis_vector(x);
            let lhs = star(a, &pi.mul_vec(&bx));
            let rhs = pi.mul_vec(&star(a, &a.apply_antipode(&bx)));
            r = r.max(vector::dist(&f, &lhs, &rhs));
        }
        let name = if side == Side::Left { "Π^L(x)* = Π^L(S(x)*)" } else { "Π^R(x)* = Π^R(S(x)*)" };
        checks.residual(name, r, tol);
    }
    let subs = counital_subalgebras(a)?;
    for (name, s) in [("A^L is a *-subalgebra", &subs.left), ("A^R is a *-subalgebra", &subs.right)] {
        checks.flag(name, s.basis().iter().all(|x| s.contains(&star(a, x))));
    }
    Ok(checks)
}

/// *-WHA axioms on A and, with ⟨φ*, x⟩ = conj⟨φ, S(x)*⟩, on Â.
pub fn check_star(a: &Wha<Complexes>) -> Result<CheckList> {
    let mut checks = star_axioms(a)?;
    checks.extend_prefixed("dual: ", star_axioms(&a.dual())?);
    Ok(checks)
}

/// The GNS representation of A on itself with scalar product
/// (x, y) = ω(x*y) for a faithful positive functional ω.
#[derive(Clone, Debug)]
pub struct Gns {
    /// G[i][j] = ω(bᵢ*bⱼ).
    pub gram: CMat,
    root: CMat,
    root_inv: CMat,
}

/// Hermiticity defect and spectrum bottom of π(x).
#[derive(Clone, Copy, Debug)]
pub struct Positivity {
    pub hermitian_residual: f64,
    pub min_eigenvalue: f64,
    pub positive: bool,
}

pub fn gram_of(a: &Wha<Complexes>, omega: &[Complex64]) -> CMat {
    let f = *a.field();
    let n = a.dim();
    let stars: Vec<CVec> = (0..n).map(|i| star(a, &a.basis_vector(i))).collect();
    Mat::from_fn(&f, n, n, |i, j| vector::dot(&f, omega, &a.mul(&stars[i], &a.basis_vector(j))))
}

impl Gns {
    /// Fails with `NotPositive` unless the Gram matrix is positive definite.
    pub fn new(a: &Wha<Complexes>, omega: &[Complex64]) -> Result<Gns> {
        star_matrix(a)?;
        let gram = gram_of(a, omega);
        let tol = a.tol();
        if !is_hermitian(&gram) {
            return Err(WhaError::NotPositive("the Gram matrix is not Hermitian".into()));
        }
        let (values, _) = hermitian_eigen(&gram)?;
        let low = values.first().copied().unwrap_or(1.0);
        if low <= tol {
            return Err(WhaError::NotPositive(format!("Gram matrix has eigenvalue {low:.3e}")));
        }
        let root = hermitian_sqrt(&gram)?;
        let root_inv = root.inverse().ok_or_else(|| WhaError::Inconsistent("Gram root is singular".into()))?;
        Ok(Gns { gram, root, root_inv })
    }

    /// π(x) in an orthonormal basis.
    pub fn represent(&self, a: &Wha<Complexes>, x: &[Complex64]) -> CMat {
        self.root.mul(&a.left_mul_matrix(x)).mul(&self.root_inv)
    }

    /// The element y with π(y) = m, for m in the image of π.
    pub fn pull_back(&self, a: &Wha<Complexes>, m: &CMat) -> CVec {
        self.root_inv.mul(m).mul(&self.root).mul_vec(a.unit())
    }

    pub fn positivity(&self, a: &Wha<Complexes>, x: &[Complex64]) -> Result<Positivity> {
        let p = self.represent(a, x);
        let tol = a.tol();
        let size = p.max_abs();
        let hermitian_residual = p.dist(&p.adjoint());
        if hermitian_residual > scaled(tol, size) {
            return Ok(Positivity { hermitian_residual, min_eigenvalue: f64::NAN, positive: false });
        }
        let sym = p.add(&p.adjoint()).scale(&Complex64::new(0.5, 0.0));
        let (values, _) = hermitian_eigen(&sym)?;
        let min_eigenvalue = values.first().copied().unwrap_or(0.0);
        Ok(Positivity { hermitian_residual, min_eigenvalue, positive: min_eigenvalue >= -scaled(tol, size) })
    }

    pub fn is_positive(&self, a: &Wha<Complexes>, x: &[Complex64]) -> bool {
        self.positivity(a, x).map(|p| p.positive).unwrap_or(false)
    }

    /// The positive square root of a positive element.
    pub fn sqrt(&self, a: &Wha<Complexes>, x: &[Complex64]) -> Result<CVec> {
        let p = self.positivity(a, x)?;
        if !p.positive {
            return Err(WhaError::NotPositive(format!(
                "element is not positive (Hermitian defect {:.3e}, lowest eigenvalue {:.3e})",
                p.hermitian_residual, p.min_eigenvalue
            )));
        }
        let m = self.represent(a, x);
        let m = m.add(&m.adjoint()).scale(&Complex64::new(0.5, 0.0));
        Ok(self.pull_back(a, &hermitian_sqrt(&m)?))
    }
}

/// A certified C*-weak Hopf algebra with its Haar measures and the GNS
/// representations of A (from ĥ) and of Â (from h).
#[derive(Clone, Debug)]
pub struct CStar {
    pub wha: Wha<Complexes>,
    pub dual: Wha<Complexes>,
    pub h: CVec,
    pub h_hat: CVec,
    pub gns: Gns,
    pub dual_gns: Gns,
    pub checks: CheckList,
}

impl CStar {
    pub fn new(a: &Wha<Complexes>, seed: u64) -> Result<CStar> {
        cstar_certify(a, seed)?.into_cstar()
    }

    /// The same data seen from Â.
    pub fn swapped(&self) -> CStar {
        CStar {
            wha: self.dual.clone(),
            dual: self.wha.clone(),
            h: self.h_hat.clone(),
            h_hat: self.h.clone(),
            gns: self.dual_gns.clone(),
            dual_gns: self.gns.clone(),
            checks: self.checks.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CStarReport {
    pub is_cstar: bool,
    pub certified: Option<CStar>,
    /// Lowest eigenvalue of G[i][j] = ĥ(bᵢ*bⱼ), when ĥ exists.
    pub gram_min_eigenvalue: Option<f64>,
    pub checks: CheckList,
    pub diagnostics: Vec<String>,
}

impl CStarReport {
    pub fn into_cstar(self) -> Result<CStar> {
        match self.certified {
            Some(c) if self.is_cstar => Ok(c),
            _ => Err(WhaError::NotPositive(format!("not C*: {}", self.diagnostics.join("; ")))),
        }
    }
}

fn lowest(m: &CMat) -> Option<f64> {
    if !is_hermitian(m) {
        return None;
    }
    hermitian_eigen(m).ok().and_then(|(v, _)| v.first().copied())
}

/// Haar measures on both sides, h* = h, positive definite Haar scalar
/// products on A and Â, the regular representation as a *-representation,
/// and ε(x*x) ≥ 0 on random x.
pub fn cstar_certify(a: &Wha<Complexes>, seed: u64) -> Result<CStarReport> {
    let f = *a.field();
    let n = a.dim();
    let tol = a.tol();
    let stars = check_star(a)?;
    if !stars.all_pass() {
        let bad: Vec<_> = stars.failures().iter().map(|c| c.name.clone()).collect();
        return Err(WhaError::Precondition(format!("not a *-WHA: {}", bad.join(", "))));
    }
    let dual = a.dual();
    let mut checks = CheckList::new();
    let mut diagnostics = Vec::new();
    let h = haar(a)?.h;
    let h_hat = haar(&dual)?.h;
    checks.flag("Haar measure of A exists", h.is_some());
    checks.flag("Haar measure of Â exists", h_hat.is_some());
    let (Some(h), Some(h_hat)) = (h, h_hat) else {
        diagnostics.push("no Haar measure".into());
        return Ok(CStarReport { is_cstar: false, certified: None, gram_min_eigenvalue: None, checks, diagnostics });
    };
    checks.residual("h* = h", vector::dist(&f, &star(a, &h), &h), tol);
    checks.residual("ĥ* = ĥ", vector::dist(&f, &star(&dual, &h_hat), &h_hat), tol);
    let gram = gram_of(a, &h_hat);
    let dual_gram = gram_of(&dual, &h);
    let low = lowest(&gram);
    let dual_low = lowest(&dual_gram);
    let pd = |m: Option<f64>| m.is_some_and(|v| v > tol);
    checks.flag_with_note("ĥ(x*y) positive definite", pd(low), format!("lowest eigenvalue {low:?}"));
    checks.flag_with_note("⟨φ*ψ, h⟩ positive definite", pd(dual_low), format!("lowest eigenvalue {dual_low:?}"));
    if !pd(low) {
        diagnostics.push(format!("the Gram matrix of ĥ is not positive definite (lowest eigenvalue {low:?})"));
    }
    if !pd(dual_low) {
        diagnostics.push(format!("the Haar scalar product on Â is not positive definite (lowest eigenvalue {dual_low:?})"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..POSITIVITY_PROBES {
        let x = vector::random(&f, n, &mut rng);
        let v = a.counit_of(&a.mul(&star(a, &x), &x));
        let size = vector::max_abs(&f, &x).powi(2) * n as f64;
        // distance below the half line, normalized by the size of x
        let bad = v.im.abs().max((-v.re).max(0.0)) / (1.0 + size);
        worst = worst.max(bad);
    }
    checks.residual("ε(x*x) ≥ 0", worst, tol);
    let gnses = if pd(low) && pd(dual_low) {
        match (Gns::new(a, &h_hat), Gns::new(&dual, &h)) {
            (Ok(g), Ok(d)) => Some((g, d)),
            (e1, e2) => {
                diagnostics.push(format!("GNS construction failed: {:?} {:?}", e1.err(), e2.err()));
                None
            }
        }
    } else {
        None
    };
    if let Some((gns, _)) = &gnses {
        let mut r: f64 = 0.0;
        for x in 0..n {
            let bx = a.basis_vector(x);
            r = r.max(gns.represent(a, &star(a, &bx)).dist(&gns.represent(a, &bx).adjoint()));
        }
        checks.residual("π(x*) = π(x)*", r, scaled(tol, gns.gram.max_abs()));
    }
    let is_cstar = checks.all_pass() && gnses.is_some();
    if !checks.all_pass() {
        diagnostics.extend(checks.failures().iter().map(|c| format!("failed: {}", c.name)));
        diagnostics.dedup();
    }
    let certified = gnses.map(|(gns, dual_gns)| CStar {
        wha: a.clone(),
        dual,
        h,
        h_hat,
        gns,
        dual_gns,
        checks: checks.clone(),
    });
    Ok(CStarReport { is_cstar, certified, gram_min_eigenvalue: low, checks, diagnostics })
}

/// (M⊗N) applied to an element of A⊗A.
pub(crate) fn on_legs(t: &CMat, m: &CMat, n: &CMat) -> CMat {
    m.mul(t).mul(&n.transpose())
}

/// Whether an element of A⊗A lies in {Σ a_k*⊗a_k}: with x* = T·conj(x) this
/// is the set T·P for P Hermitian positive semidefinite.
pub fn in_positive_cone(a: &Wha<Complexes>, t: &CMat) -> Result<(bool, f64)> {
    let s = star_matrix(a)?;
    let p = s.conj().mul(t);
    let tol = a.tol();
    let size = p.max_abs();
    if p.dist(&p.adjoint()) > scaled(tol, size) {
        return Ok((false, f64::NAN));
    }
    let (values, _) = hermitian_eigen(&p.add(&p.adjoint()).scale(&Complex64::new(0.5, 0.0)))?;
    let low = values.first().copied().unwrap_or(0.0);
    Ok((low >= -scaled(tol, size), low))
}
