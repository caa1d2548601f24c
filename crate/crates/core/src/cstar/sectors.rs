//! Simple blocks, vacuum sectors and the conditional expectations onto A^L, A^R.

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{scaled, star, CMat, CStar, CVec};
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Complexes;
use crate::linear::{split_commutative, vector, Mat, Subspace};
use crate::wha::{centers, counital_subalgebras, trivial_representation, Side, Wha};

#[derive(Clone, Debug)]
pub struct SectorData {
    /// Minimal central idempotents e_r.
    pub idempotents: Vec<CVec>,
    /// n_r with e_rA ≅ M_{n_r}.
    pub block_dims: Vec<usize>,
    /// D_r(h) ≠ 0.
    pub vacuum: Vec<bool>,
    /// Π^L(e_q), Π^R(e_q) and h·e_q for the vacua q, in sector order.
    pub z_left: Vec<CVec>,
    pub z_right: Vec<CVec>,
    pub h_parts: Vec<CVec>,
    pub checks: CheckList,
}

impl SectorData {
    pub fn vacua(&self) -> Vec<usize> {
        (0..self.vacuum.len()).filter(|&r| self.vacuum[r]).collect()
    }

    /// tr D_r(x) for every sector, read off the regular representation.
    pub fn block_traces(&self, a: &Wha<Complexes>, x: &[Complex64]) -> Vec<Complex64> {
        let lx = a.left_mul_matrix(x);
        self.idempotents
            .iter()
            .zip(&self.block_dims)
            .map(|(e, &nr)| lx.mul(&a.left_mul_matrix(e)).trace() / nr as f64)
            .collect()
    }
}

fn integer_sqrt(d: usize) -> Option<usize> {
    let r = (d as f64).sqrt().round() as usize;
    (r * r == d).then_some(r)
}

pub(crate) fn central_idempotents(a: &Wha<Complexes>, seed: u64) -> Result<Vec<CVec>> {
    let f = *a.field();
    let n = a.dim();
    let z = centers(a)?.center;
    let zb = z.basis().to_vec();
    let actions: Vec<CMat> = zb
        .iter()
        .map(|zk| {
            let cols = zb.iter().map(|zj| z.coordinates(&a.mul(zk, zj)).ok_or_else(|| WhaError::Inconsistent("center not closed".into())));
            Ok(Mat::from_columns(&f, zb.len(), &cols.collect::<Result<Vec<_>>>()?))
        })
        .collect::<Result<_>>()?;
    let idem = split_commutative(&actions, seed)
        .map_err(|e| WhaError::SplitFailed(format!("{e}; rerun with a different seed")))?;
    Ok(idem.iter().map(|c| vector::combine(&f, n, c, &zb)).collect())
}

/// Block decomposition of A and its vacuum sectors.
pub fn sectors(c: &CStar, seed: u64) -> Result<SectorData> {
    let a = &c.wha;
    let f = *a.field();
    let n = a.dim();
    let tol = a.tol();
    let h = &c.h;
    let idempotents = central_idempotents(a, seed)?;
    let mut checks = CheckList::new();
    let total = idempotents.iter().fold(a.zero_vector(), |acc, e| vector::add(&f, &acc, e));
    checks.residual("Σ e_r = 1", vector::dist(&f, &total, a.unit()), tol);
    let mut r: f64 = 0.0;
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, ej) in idempotents.iter().enumerate() {
            let want = if i == j { ei.clone() } else { a.zero_vector() };
            r = r.max(vector::dist(&f, &a.mul(ei, ej), &want));
        }
    }
    checks.residual("e_r e_s = δ_rs e_r", r, scaled(tol, 1.0) * 10.0);
    let mut block_dims = Vec::new();
    let mut vacuum = Vec::new();
    let (mut rank_ok, mut self_adjoint) = (true, 0.0f64);
    for e in &idempotents {
        self_adjoint = self_adjoint.max(vector::dist(&f, &star(a, e), e));
        let d = a.left_mul_matrix(e).rank();
        let nr = integer_sqrt(d).ok_or_else(|| {
            WhaError::NotPositive(format!("a simple block has dimension {d}, which is not a square: not C*"))
        })?;
        block_dims.push(nr);
        let he = a.mul(h, e);
        let is_vac = vector::max_abs(&f, &he) > tol.sqrt();
        vacuum.push(is_vac);
        // rank D_r(h) = rank L_{he}/n_r
        let rk = a.left_mul_matrix(&he).rank();
        let want = if is_vac { nr } else { 0 };
        rank_ok &= rk == want;
    }
    checks.residual("e_r* = e_r", self_adjoint, tol * 10.0);
    checks.flag("D_q(h) has rank 1 on vacua and vanishes elsewhere", rank_ok);
    checks.flag("Σ n_r² = dim A", block_dims.iter().map(|d| d * d).sum::<usize>() == n);
    let cs = centers(a)?;
    let zl_space = &cs.left;
    let vac: Vec<usize> = (0..idempotents.len()).filter(|&r| vacuum[r]).collect();
    checks.flag("#vacua = dim Z^L", vac.len() == zl_space.dim());
    let mut z_left = Vec::new();
    let mut z_right = Vec::new();
    let mut h_parts = Vec::new();
    let (mut r_idem, mut r_s, mut r_h): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut minimal = true;
    let mut in_zl = true;
    for &q in &vac {
        let e = &idempotents[q];
        let zl = a.pi(e, Side::Left);
        let zr = a.pi(e, Side::Right);
        r_idem = r_idem.max(vector::dist(&f, &a.mul(&zl, &zl), &zl));
        r_s = r_s.max(vector::dist(&f, &a.apply_antipode(&zl), &zr));
        in_zl &= zl_space.contains(&zl);
        let products: Vec<CVec> = zl_space.basis().iter().map(|z| a.mul(&zl, z)).collect();
        minimal &= Subspace::span(&f, n, &products).dim() == 1;
        let hq = a.mul(h, e);
        r_h = r_h.max(vector::dist(&f, &a.mul(&hq, &hq), &hq));
        z_left.push(zl);
        z_right.push(zr);
        h_parts.push(hq);
    }
    checks.residual("z^L_q idempotent", r_idem, tol * 10.0);
    checks.flag("z^L_q ∈ Z^L", in_zl);
    checks.flag("z^L_q minimal in Z^L", minimal);
    checks.residual("z^R_q = S(z^L_q)", r_s, tol * 10.0);
    let zsum = z_left.iter().fold(a.zero_vector(), |acc, z| vector::add(&f, &acc, z));
    checks.residual("Σ z^L_q = 1", vector::dist(&f, &zsum, a.unit()), tol * 10.0);
    checks.residual("h_q idempotent", r_h, tol * 10.0);
    let hsum = h_parts.iter().fold(a.zero_vector(), |acc, x| vector::add(&f, &acc, x));
    checks.residual("Σ h_q = h", vector::dist(&f, &hsum, h), tol * 10.0);
    let two_sided = crate::integrals::two_sided_integrals(a)?;
    checks.flag("I = span{h_q}", Subspace::span(&f, n, &h_parts).same_as(&two_sided));
    // trivial representation: D_ε(e_q) = D_ε(z^L_q) = D_ε(z^R_q)
    let triv = trivial_representation(a)?;
    let act = |x: &[Complex64]| crate::hopf_modules::combine(&f, triv.carrier.dim(), x, &triv.action);
    let mut r: f64 = 0.0;
    for (i, &q) in vac.iter().enumerate() {
        let de = act(&idempotents[q]);
        r = r.max(de.dist(&act(&z_left[i]))).max(de.dist(&act(&z_right[i])));
    }
    checks.residual("D_ε(e_q) = D_ε(z^L_q) = D_ε(z^R_q)", r, tol * 10.0);
    let mut r: f64 = 0.0;
    for (q, e) in idempotents.iter().enumerate() {
        if !vacuum[q] {
            r = r.max(act(e).max_abs());
        }
    }
    checks.residual("D_ε(e_r) = 0 off the vacua", r, tol * 10.0);
    Ok(SectorData { idempotents, block_dims, vacuum, z_left, z_right, h_parts, checks })
}

/// E^L(x) = ĥ⇀x and E^R(x) = x↼ĥ.
pub fn conditional_expectation(c: &CStar, x: &[Complex64], side: Side) -> CVec {
    match side {
        Side::Left => c.wha.dual_hit(&c.h_hat, x),
        Side::Right => c.wha.dual_hit_from_right(x, &c.h_hat),
    }
}

/// Unit preserving, idempotent onto A^side, bimodule map over A^side and positive.
pub fn certify_conditional_expectation(c: &CStar, side: Side, seed: u64) -> Result<CheckList> {
    let a = &c.wha;
    let f = *a.field();
    let n = a.dim();
    let tol = a.tol();
    let target = counital_subalgebras(a)?.side(side).clone();
    let e = |x: &[Complex64]| conditional_expectation(c, x, side);
    let mut checks = CheckList::new();
    let images: Vec<CVec> = (0..n).map(|x| e(&a.basis_vector(x))).collect();
    checks.flag("image in the counital subalgebra", images.iter().all(|y| target.contains(y)));
    checks.residual("E(1) = 1", vector::dist(&f, &e(a.unit()), a.unit()), tol);
    let mut r: f64 = 0.0;
    for y in target.basis() {
        r = r.max(vector::dist(&f, &e(y), y));
    }
    checks.residual("E fixes the counital subalgebra", r, tol);
    let mut r: f64 = 0.0;
    for x in 0..n {
        let bx = a.basis_vector(x);
        let ex = &images[x];
        for p in target.basis() {
            for q in target.basis() {
                let lhs = e(&a.mul3(p, &bx, q));
                let rhs = a.mul3(p, ex, q);
                r = r.max(vector::dist(&f, &lhs, &rhs));
            }
        }
    }
    checks.residual("E(pxq) = pE(x)q", r, scaled(tol, 1.0));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positive = true;
    let mut low = f64::INFINITY;
    for _ in 0..super::POSITIVITY_PROBES {
        let x = vector::random(&f, n, &mut rng);
        let p = c.gns.positivity(a, &e(&a.mul(&star(a, &x), &x)))?;
        positive &= p.positive;
        low = low.min(p.min_eigenvalue);
    }
    checks.flag_with_note("E(x*x) ≥ 0", positive, format!("lowest eigenvalue {low:.3e}"));
    Ok(checks)
}
