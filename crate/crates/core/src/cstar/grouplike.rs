//! The canonical grouplike element g = g_L·g_R⁻¹ and the modular data of the
//! Haar measures.

use super::sectors::sectors;
use super::{in_positive_cone, on_legs, scaled, CMat, CStar, CVec, SectorData};
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Complexes;
use crate::integrals::{chi, modular_automorphism, quasibasis};
use crate::linear::{vector, Mat};
use crate::wha::{counital_subalgebras, grouplike_residual, Wha};

#[derive(Clone, Debug)]
pub struct GrouplikeData {
    pub g: CVec,
    pub g_inv: CVec,
    /// (ĥ⇀h)^{1/2} ∈ A^L.
    pub g_l: CVec,
    /// (h↼ĥ)^{1/2} ∈ A^R.
    pub g_r: CVec,
    /// The same construction on Â, as functionals on A.
    pub g_hat: CVec,
    pub g_hat_l: CVec,
    pub g_hat_r: CVec,
    /// The S-invariant trace g⁻¹⇀χ.
    pub tau: CVec,
    pub sectors: SectorData,
    pub checks: CheckList,
}

struct Factors {
    g_l: CVec,
    g_r: CVec,
    g: CVec,
    g_inv: CVec,
}

fn inverse(a: &Wha<Complexes>, x: &[num::complex::Complex64], what: &str) -> Result<CVec> {
    a.inverse(x).ok_or_else(|| WhaError::NotPositive(format!("{what} is not invertible: not C*")))
}

fn factors(c: &CStar) -> Result<Factors> {
    let a = &c.wha;
    let left = a.dual_hit(&c.h_hat, &c.h);
    let right = a.dual_hit_from_right(&c.h, &c.h_hat);
    let g_l = c.gns.sqrt(a, &left)?;
    let g_r = c.gns.sqrt(a, &right)?;
    let g_r_inv = inverse(a, &g_r, "h↼ĥ")?;
    inverse(a, &g_l, "ĥ⇀h")?;
    let g = a.mul(&g_l, &g_r_inv);
    let g_inv = inverse(a, &g, "g")?;
    Ok(Factors { g_l, g_r, g, g_inv })
}

/// x ↦ u x v as a matrix.
fn sandwich(a: &Wha<Complexes>, u: &[num::complex::Complex64], v: &[num::complex::Complex64]) -> CMat {
    a.left_mul_matrix(u).mul(&a.right_mul_matrix(v))
}

/// g from the Haar route, certified against its defining properties: g ≥ 0,
/// Ad_g = S², tr_r(g) = tr_r(g⁻¹), S(g) = g⁻¹, the flip identity for Δ(h),
/// grouplikeness, the cross-relations with ĝ, and the coproduct of h in
/// terms of the quasibasis of τ.
pub fn canonical_grouplike(c: &CStar, seed: u64) -> Result<GrouplikeData> {
    let a = &c.wha;
    let d = &c.dual;
    let f = *a.field();
    let n = a.dim();
    let fa = factors(c)?;
    let fd = factors(&c.swapped())?;
    let (g, g_inv, g_l, g_r) = (&fa.g, &fa.g_inv, &fa.g_l, &fa.g_r);
    let (gh_l, gh_r) = (&fd.g_l, &fd.g_r);
    let size = [g, g_inv, g_l, g_r, gh_l, gh_r].iter().map(|v| vector::max_abs(&f, v)).fold(1.0, f64::max);
    let lim = scaled(a.tol(), size * size);
    let dist = |x: &[num::complex::Complex64], y: &[num::complex::Complex64]| vector::dist(&f, x, y);
    let mut checks = CheckList::new();

    let subs = counital_subalgebras(a)?;
    checks.flag("g_L ∈ A^L", subs.left.contains(g_l));
    checks.flag("g_R ∈ A^R", subs.right.contains(g_r));
    checks.residual("g_L g_R = g_R g_L", dist(&a.mul(g_l, g_r), &a.mul(g_r, g_l)), lim);
    checks.residual("E^L(h) = g_L²", dist(&a.mul(g_l, g_l), &a.dual_hit(&c.h_hat, &c.h)), lim);
    let g_r_inv = inverse(a, g_r, "g_R")?;
    let left_over_right = a.mul(&a.dual_hit(&c.h_hat, &c.h), &inverse(a, &a.mul(g_r, g_r), "g_R²")?);
    checks.residual("(ĥ⇀h)(h↼ĥ)⁻¹ = g²", dist(&left_over_right, &a.mul(g, g)), lim);
    checks.residual("g = g_L g_R⁻¹", dist(g, &a.mul(g_l, &g_r_inv)), lim);

    // defining properties of g
    let pos = c.gns.positivity(a, g)?;
    checks.flag_with_note("g ≥ 0", pos.positive, format!("lowest eigenvalue {:.3e}", pos.min_eigenvalue));
    let s2 = a.antipode_power(2)?;
    checks.residual("g x g⁻¹ = S²(x)", sandwich(a, g, g_inv).dist(&s2), lim);
    let sectors = sectors(c, seed)?;
    let tg = sectors.block_traces(a, g);
    let tgi = sectors.block_traces(a, g_inv);
    let r = tg.iter().zip(&tgi).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    checks.residual("tr_r(g) = tr_r(g⁻¹)", r, lim * n as f64);
    checks.residual("S(g) = g⁻¹", dist(&a.apply_antipode(g), g_inv), lim);

    let dh = a.coproduct(&c.h);
    let id = Mat::identity(&f, n);
    checks.residual("h₍₂₎⊗h₍₁₎ = h₍₁₎⊗g h₍₂₎ g", dh.transpose().dist(&on_legs(&dh, &id, &sandwich(a, g, g))), lim);
    checks.residual("g grouplike", grouplike_residual(a, g), lim);

    // cross-relations with the dual factors
    let one = a.unit();
    let eps = a.counit();
    checks.residual("ĝ_L = 1̂↼g_L = 1̂↼g_R", dist(gh_l, &a.hit_from_right(eps, g_l)).max(dist(gh_l, &a.hit_from_right(eps, g_r))), lim);
    checks.residual("g_L = 1↼ĝ_L = 1↼ĝ_R", dist(g_l, &a.dual_hit_from_right(one, gh_l)).max(dist(g_l, &a.dual_hit_from_right(one, gh_r))), lim);
    checks.residual("ĝ_R = g_R⇀1̂ = g_L⇀1̂", dist(gh_r, &a.hit(g_r, eps)).max(dist(gh_r, &a.hit(g_l, eps))), lim);
    checks.residual("g_R = ĝ_R⇀1 = ĝ_L⇀1", dist(g_r, &a.dual_hit(gh_r, one)).max(dist(g_r, &a.dual_hit(gh_l, one))), lim);
    let s_inv_gl = a.apply_antipode_inverse(g_l)?;
    checks.residual("S(g_L) = g_R = S⁻¹(g_L)", dist(&a.apply_antipode(g_l), g_r).max(dist(&s_inv_gl, g_r)), lim);
    let sh_inv = d.apply_antipode_inverse(gh_l)?;
    checks.residual("Ŝ(ĝ_L) = ĝ_R = Ŝ⁻¹(ĝ_L)", dist(&a.dual_antipode(gh_l), gh_r).max(dist(&sh_inv, gh_r)), lim);

    // τ and the coproduct of h
    let chi_v = chi(a)?;
    let tau = a.hit(g_inv, &chi_v);
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (a.basis_vector(i), a.basis_vector(j));
            let x = vector::dot(&f, &tau, &a.mul(&bi, &bj)) - vector::dot(&f, &tau, &a.mul(&bj, &bi));
            r = r.max(x.norm());
        }
    }
    checks.residual("τ is a trace", r, lim);
    checks.residual("τ∘S = τ", dist(&a.antipode().vec_mul(&tau), &tau), lim);
    checks.residual("χ = g⇀τ", dist(&a.hit(g, &tau), &chi_v), lim);
    let q = quasibasis(a, &tau)?.element;
    let s = a.antipode();
    let lhs = on_legs(&dh, s, &id);
    checks.residual("S(h₍₁₎)⊗h₍₂₎ = Σ xᵢ⊗g⁻¹yᵢ", lhs.dist(&on_legs(&q, &id, &a.left_mul_matrix(g_inv))), lim);
    let rhs = on_legs(&q, &a.right_mul_matrix(g), &id);
    checks.residual("h₍₁₎⊗S(h₍₂₎) = Σ xᵢg⊗yᵢ", on_legs(&dh, &id, s).dist(&rhs), lim);
    let (in_cone, low) = in_positive_cone(a, &lhs)?;
    checks.flag_with_note("S(h₍₁₎)⊗h₍₂₎ ∈ {Σ a*⊗a}", in_cone, format!("lowest eigenvalue {low:.3e}"));

    Ok(GrouplikeData {
        g: fa.g.clone(),
        g_inv: fa.g_inv.clone(),
        g_l: fa.g_l.clone(),
        g_r: fa.g_r.clone(),
        g_hat: fd.g,
        g_hat_l: fd.g_l,
        g_hat_r: fd.g_r,
        tau,
        sectors,
        checks,
    })
}

/// θ_ĥ = Ad_{g_L g_R}, χ = ĥĝ_R⁻², τ = ĝ_L⁻¹ĥĝ_R⁻¹, ĥ = g_Lg_R⇀τ, τ∘S = τ,
/// and θ_h(ψ) = g⇀ψ↼g for the Haar functional on Â.
pub fn haar_modular_identities(c: &CStar, gd: &GrouplikeData) -> Result<CheckList> {
    let a = &c.wha;
    let d = &c.dual;
    let f = *a.field();
    let n = a.dim();
    let size = [&gd.g, &gd.g_inv, &gd.g_l, &gd.g_r, &gd.g_hat_l, &gd.g_hat_r]
        .iter()
        .map(|v| vector::max_abs(&f, v))
        .fold(1.0, f64::max);
    let lim = scaled(a.tol(), size.powi(4));
    let dist = |x: &[num::complex::Complex64], y: &[num::complex::Complex64]| vector::dist(&f, x, y);
    let mut checks = CheckList::new();
    let k = a.mul(&gd.g_l, &gd.g_r);
    let k_inv = inverse(a, &k, "g_L g_R")?;
    let theta = modular_automorphism(a, &c.h_hat)?.theta;
    checks.residual("θ_ĥ = Ad(g_L g_R)", theta.dist(&sandwich(a, &k, &k_inv)), lim);
    let chi_v = chi(a)?;
    let ghr_inv = inverse(d, &gd.g_hat_r, "ĝ_R")?;
    let ghl_inv = inverse(d, &gd.g_hat_l, "ĝ_L")?;
    checks.residual("χ = ĥ ĝ_R⁻²", dist(&chi_v, &d.mul3(&c.h_hat, &ghr_inv, &ghr_inv)), lim);
    checks.residual("τ = ĝ_L⁻¹ ĥ ĝ_R⁻¹", dist(&gd.tau, &d.mul3(&ghl_inv, &c.h_hat, &ghr_inv)), lim);
    checks.residual("ĥ = g_L g_R⇀τ", dist(&c.h_hat, &a.hit(&k, &gd.tau)), lim);
    checks.residual("τ∘S = τ", dist(&a.antipode().vec_mul(&gd.tau), &gd.tau), lim);
    let theta_h = modular_automorphism(d, &c.h)?.theta;
    let cols: Vec<CVec> = (0..n).map(|j| a.hit(&gd.g, &a.hit_from_right(&a.basis_vector(j), &gd.g))).collect();
    checks.residual("θ_h(ψ) = g⇀ψ↼g", theta_h.dist(&Mat::from_columns(&f, n, &cols)), lim);
    Ok(checks)
}
