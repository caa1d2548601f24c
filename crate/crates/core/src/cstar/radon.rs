//! Radon–Nikodym derivatives of left integrals with respect to the Haar measure.

use num::complex::Complex64;

use super::{scaled, star, CStar, CVec, GrouplikeData};
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::integrals::{dual_left_integral, integral_space, is_nondegenerate_element};
use crate::linear::{spectral::hermitian_eigen, spectral::is_hermitian, vector, Mat};
use crate::wha::Side;

#[derive(Clone, Debug)]
pub struct RadonNikodym {
    /// Π^R(l)⇀1̂.
    pub rho_r: CVec,
    /// Ŝ²(ρ_R).
    pub rho_l: CVec,
    pub nondegenerate: bool,
    pub rho_invertible: bool,
    /// Π^L(l) = 1, decided only for non-degenerate l.
    pub normalized: Option<bool>,
    pub idempotent: bool,
    /// φ ↦ ⟨φ*φ, l⟩ is positive semidefinite.
    pub positive_type: bool,
    pub pi_r_positive: bool,
    /// Π^R(l)^{1/2}⇀1̂ when l is of positive type.
    pub xi: Option<CVec>,
    pub checks: CheckList,
}

/// ρ_R, ρ_L and the four properties relating l to its derivatives.
pub fn radon_nikodym(c: &CStar, gd: &GrouplikeData, l: &[Complex64]) -> Result<RadonNikodym> {
    let a = &c.wha;
    let d = &c.dual;
    let f = *a.field();
    let n = a.dim();
    if !integral_space(a, Side::Left)?.contains(l) {
        return Err(WhaError::Precondition("l is not a left integral".into()));
    }
    let size = vector::max_abs(&f, l).max(1.0) * [&gd.g_l, &gd.g_r].iter().map(|v| vector::max_abs(&f, v)).fold(1.0, f64::max).powi(2);
    let lim = scaled(a.tol(), size);
    let dist = |x: &[Complex64], y: &[Complex64]| vector::dist(&f, x, y);
    let eps = a.counit();
    let mut checks = CheckList::new();
    let pr = a.pi(l, Side::Right);
    let rho_r = a.hit(&pr, eps);
    let s2 = a.antipode_power(2)?;
    let rho_l = s2.vec_mul(&rho_r);
    checks.residual("ρ_L = S⁻¹(Π^R(l))⇀1̂", dist(&rho_l, &a.hit(&a.apply_antipode_inverse(&pr)?, eps)), lim);
    let (mut r1, mut r2): (f64, f64) = (0.0, 0.0);
    for i in 0..n {
        let phi = a.basis_vector(i);
        let want = l[i];
        r1 = r1.max((vector::dot(&f, &d.mul(&phi, &rho_r), &c.h) - want).norm());
        r2 = r2.max((vector::dot(&f, &d.mul(&rho_l, &phi), &c.h) - want).norm());
    }
    checks.residual("⟨φ, l⟩ = ⟨φρ_R, h⟩", r1, lim);
    checks.residual("⟨φ, l⟩ = ⟨ρ_Lφ, h⟩", r2, lim);

    let nondegenerate = is_nondegenerate_element(a, l);
    let rho_invertible = d.inverse(&rho_r).is_some();
    checks.flag("l non-degenerate ⟺ ρ_R invertible", nondegenerate == rho_invertible);
    checks.flag("l non-degenerate ⟺ ρ_L invertible", nondegenerate == d.inverse(&rho_l).is_some());

    let idempotent = dist(&a.mul(l, l), l) <= lim;
    let normalized = nondegenerate.then(|| dist(&a.pi(l, Side::Left), a.unit()) <= lim);
    if let Some(nz) = normalized {
        checks.flag("normalized ⟺ l² = l", nz == idempotent);
    }

    // ⟨βᵢ*βⱼ, l⟩
    let stars: Vec<CVec> = (0..n).map(|i| star(d, &d.basis_vector(i))).collect();
    let gram = Mat::from_fn(&f, n, n, |i, j| vector::dot(&f, &d.mul(&stars[i], &d.basis_vector(j)), l));
    let positive_type = is_hermitian(&gram)
        && hermitian_eigen(&gram)?.0.first().is_none_or(|&v| v >= -scaled(a.tol(), gram.max_abs()));
    let pi_r_positive = c.gns.is_positive(a, &pr);
    checks.flag("positive type ⟺ Π^R(l) ≥ 0", positive_type == pi_r_positive);
    // ρ_R ∈ ĝ_R^{1/2} Â^R_+ ĝ_R^{-1/2}
    let root = c.dual_gns.sqrt(d, &gd.g_hat_r)?;
    let root_inv = d.inverse(&root).ok_or_else(|| WhaError::Inconsistent("ĝ_R^{1/2} not invertible".into()))?;
    let conjugated = d.mul3(&root_inv, &rho_r, &root);
    checks.flag("Π^R(l) ≥ 0 ⟺ ĝ_R^{-1/2}ρ_Rĝ_R^{1/2} ≥ 0", pi_r_positive == c.dual_gns.is_positive(d, &conjugated));
    let xi = if pi_r_positive {
        let x = a.hit(&c.gns.sqrt(a, &pr)?, eps);
        let xs = star(d, &x);
        let mut r: f64 = 0.0;
        for i in 0..n {
            let v = vector::dot(&f, &d.mul3(&xs, &d.basis_vector(i), &x), &c.h);
            r = r.max((v - l[i]).norm());
        }
        checks.residual("⟨φ, l⟩ = ⟨ξ*φξ, h⟩", r, lim);
        checks.residual("ρ_L = ρ_R*", dist(&rho_l, &star(d, &rho_r)), lim);
        Some(x)
    } else {
        None
    };

    if nondegenerate {
        let lambda = dual_left_integral(a, l)?.lambda;
        let p = d.pi(&lambda, Side::Right);
        let lhs = a.mul(&pr, &a.dual_hit(&p, a.unit()));
        let gr2 = a.mul(&gd.g_r, &gd.g_r);
        let want = a.inverse(&gr2).ok_or_else(|| WhaError::Inconsistent("g_R not invertible".into()))?;
        checks.residual("Π^R(l)(Π̂^R(λ)⇀1) = g_R⁻²", dist(&lhs, &want), lim);
    }
    Ok(RadonNikodym { rho_r, rho_l, nondegenerate, rho_invertible, normalized, idempotent, positive_type, pi_r_positive, xi, checks })
}
