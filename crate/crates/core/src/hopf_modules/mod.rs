//! Right weak Hopf modules: axioms, coinvariants and the projection onto them,
//! amalgamated products over A^L and the fundamental isomorphism, plus
//! invariants of one-sided modules and the eight basic modules on A and Â.

mod amalgam;
mod basic;

pub use amalgam::{amalgamated_product, fundamental_iso, Amalgamated, FundamentalIso};
pub use basic::{basic_modules, dual_regular_whm, invariants, is_subcomodule, is_submodule, regular_whm, Module};

use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{Mat, Subspace, Vector};
use crate::wha::{Side, Wha};

/// A right A-module that is also a right A-comodule.
///
/// `action[x]` is the matrix of m ↦ m·b_x. The coaction is stored through its
/// components: m₀⊗m₁ = Σ_k coaction[k](m) ⊗ b_k.
#[derive(Clone, Debug, PartialEq)]
pub struct RightWHM<F: Field> {
    pub dim: usize,
    pub action: Vec<Mat<F>>,
    pub coaction: Vec<Mat<F>>,
}

impl<F: Field> RightWHM<F> {
    pub fn new(a: &Wha<F>, dim: usize, action: Vec<Mat<F>>, coaction: Vec<Mat<F>>) -> Result<Self> {
        let n = a.dim();
        if action.len() != n || coaction.len() != n {
            return Err(WhaError::Dimension(format!(
                "expected {n} action and coaction matrices, got {} and {}",
                action.len(),
                coaction.len()
            )));
        }
        if action.iter().chain(&coaction).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(WhaError::Dimension(format!("module matrices must be {dim}×{dim}")));
        }
        Ok(RightWHM { dim, action, coaction })
    }

    /// The zero module.
    pub fn zero(a: &Wha<F>) -> Self {
        let f = a.field();
        let z = Mat::zeros(f, 0, 0);
        RightWHM { dim: 0, action: vec![z.clone(); a.dim()], coaction: vec![z; a.dim()] }
    }

    /// Matrix of m ↦ m·x for an arbitrary element x.
    pub fn act(&self, f: &F, x: &[F::Elem]) -> Mat<F> {
        combine(f, self.dim, x, &self.action)
    }
}

pub(crate) fn combine<F: Field>(f: &F, dim: usize, coeffs: &[F::Elem], mats: &[Mat<F>]) -> Mat<F> {
    let mut acc = Mat::zeros(f, dim, dim);
    for (c, m) in coeffs.iter().zip(mats) {
        if !f.is_exact_zero(c) {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

/// Module, comodule and compatibility axioms, plus m₀·Π^R(m₁) = m.
pub fn check_whm<F: Field>(a: &Wha<F>, m: &RightWHM<F>) -> CheckList {
    let f = a.field();
    let n = a.dim();
    let d = m.dim;
    let tol = a.tol();
    let mut checks = CheckList::new();
    let mut prod: Vec<Vec<Mat<F>>> = vec![vec![Mat::zeros(f, d, d); n]; n];
    for (x, y, k, c) in a.mult().entries() {
        prod[*x][*y] = prod[*x][*y].add(&m.action[*k].scale(c));
    }
    let mut r: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            // (m·x)·y = m·(xy)
            r = r.max(m.action[y].mul(&m.action[x]).dist(&prod[x][y]));
        }
    }
    checks.residual("action associative", r, tol);
    checks.residual("action unital", m.act(f, a.unit()).dist(&Mat::identity(f, d)), tol);

    let mut co: Vec<Vec<Mat<F>>> = vec![vec![Mat::zeros(f, d, d); n]; n];
    for (k, i, j, c) in a.comult().entries() {
        co[*i][*j] = co[*i][*j].add(&m.coaction[*k].scale(c));
    }
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            r = r.max(m.coaction[i].mul(&m.coaction[j]).dist(&co[i][j]));
        }
    }
    checks.residual("coaction coassociative", r, tol);
    checks.residual("coaction counital", combine(f, d, a.counit(), &m.coaction).dist(&Mat::identity(f, d)), tol);

    // (m·x)₀⊗(m·x)₁ = m₀·x₍₁₎ ⊗ m₁x₍₂₎
    let mut by_q: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new(); n];
    for (j, q, k, c) in a.mult().entries() {
        by_q[*q].push((*j, *k, c.clone()));
    }
    let mut r: f64 = 0.0;
    for x in 0..n {
        let mut rhs = vec![Mat::zeros(f, d, d); n];
        for (xx, p, q, c) in a.comult().entries() {
            if *xx != x {
                continue;
            }
            for (j, k, c2) in &by_q[*q] {
                let t = m.action[*p].mul(&m.coaction[*j]).scale(&f.mul(c, c2));
                rhs[*k] = rhs[*k].add(&t);
            }
        }
        for k in 0..n {
            r = r.max(m.coaction[k].mul(&m.action[x]).dist(&rhs[k]));
        }
    }
    checks.residual("compatibility", r, tol);

    let pr = a.pi_matrix(Side::Right);
    let mut acc = Mat::zeros(f, d, d);
    for k in 0..n {
        acc = acc.add(&m.act(f, &pr.column(k)).mul(&m.coaction[k]));
    }
    checks.residual("m₀·Π^R(m₁) = m", acc.dist(&Mat::identity(f, d)), tol);
    checks
}

fn stacked_kernel<F: Field>(f: &F, d: usize, blocks: Vec<Mat<F>>) -> Subspace<F> {
    if d == 0 {
        return Subspace::zero(f, 0);
    }
    Subspace::span(f, d, &Mat::vstack(f, &blocks).kernel())
}

/// Coinv M = {m : m₀⊗m₁ = m·1₍₁₎⊗1₍₂₎}, cross-checked against the defining
/// condition m₀⊗m₁ = m₀⊗Π^L(m₁) and certified to be a right A^L-submodule.
pub fn coinvariants<F: Field>(a: &Wha<F>, m: &RightWHM<F>) -> Result<Subspace<F>> {
    let f = a.field();
    let n = a.dim();
    let d = m.dim;
    let one = a.unit_coproduct();
    let blocks: Vec<Mat<F>> = (0..n).map(|k| m.coaction[k].sub(&m.act(f, &one.column(k)))).collect();
    let coinv = stacked_kernel(f, d, blocks);
    let pl = a.pi_matrix(Side::Left);
    // Σ_k C_k m ⊗ Π^L(b_k) has b_j-component Σ_k Π^L[j,k] C_k
    let blocks: Vec<Mat<F>> = (0..n).map(|j| m.coaction[j].sub(&combine(f, d, &pl.row(j), &m.coaction))).collect();
    let defining = stacked_kernel(f, d, blocks);
    if !coinv.same_as(&defining) {
        return Err(WhaError::Inconsistent("the two descriptions of the coinvariants differ".into()));
    }
    let al = crate::wha::counital_subalgebras(a)?.left;
    for x in al.basis() {
        let act = m.act(f, x);
        if !coinv.basis().iter().all(|v| coinv.contains(&act.mul_vec(v))) {
            return Err(WhaError::Inconsistent("coinvariants are not an A^L-submodule".into()));
        }
    }
    Ok(coinv)
}

/// Matrix of E(m) = m₀·S(m₁).
pub fn whm_projection_matrix<F: Field>(a: &Wha<F>, m: &RightWHM<F>) -> Mat<F> {
    let f = a.field();
    let s = a.antipode();
    let mut acc = Mat::zeros(f, m.dim, m.dim);
    for k in 0..a.dim() {
        acc = acc.add(&m.act(f, &s.column(k)).mul(&m.coaction[k]));
    }
    acc
}

pub fn whm_project<F: Field>(a: &Wha<F>, m: &RightWHM<F>, v: &[F::Elem]) -> Vector<F> {
    whm_projection_matrix(a, m).mul_vec(v)
}

/// E∘E = E, image E = Coinv M and E fixes coinvariants.
pub fn certify_projection<F: Field>(a: &Wha<F>, m: &RightWHM<F>) -> Result<CheckList> {
    let f = a.field();
    let tol = a.tol();
    let e = whm_projection_matrix(a, m);
    let coinv = coinvariants(a, m)?;
    let mut checks = CheckList::new();
    checks.residual("E∘E = E", e.mul(&e).dist(&e), tol);
    checks.flag("image E = Coinv M", Subspace::span(f, m.dim, &e.columns()).same_as(&coinv));
    let mut r: f64 = 0.0;
    for v in coinv.basis() {
        r = r.max(crate::linear::vector::dist(f, &e.mul_vec(v), v));
    }
    checks.residual("E fixes Coinv M", r, tol);
    Ok(checks)
}
