//! Non-degenerate functionals: quasibases, modular automorphisms, χ and Haar integrals.

use num::complex::Complex64;

use super::spaces::{dual_left_integral, integral_space, normalized_integral, two_sided_integrals};
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::{Complexes, Field};
use crate::linear::{solve_affine, split_commutative, vector, Mat, Vector};
use crate::wha::{centers, Side, Wha};

/// G[i][j] = f(bᵢbⱼ).
pub fn gram_matrix<F: Field>(a: &Wha<F>, f: &[F::Elem]) -> Mat<F> {
    let fl = a.field();
    let n = a.dim();
    let mut g = Mat::zeros(fl, n, n);
    for (i, j, k, c) in a.mult().entries() {
        if !fl.is_exact_zero(&f[*k]) {
            g[(*i, *j)] = fl.add(&g[(*i, *j)], &fl.mul(c, &f[*k]));
        }
    }
    g
}

pub fn is_nondegenerate_functional<F: Field>(a: &Wha<F>, f: &[F::Elem]) -> bool {
    a.dim() > 0 && gram_matrix(a, f).rank() == a.dim()
}

#[derive(Clone, Debug)]
pub struct QuasiBasis<F: Field> {
    /// Σᵢ aᵢ⊗bᵢ as an n×n coefficient matrix.
    pub element: Mat<F>,
    pub index: Vector<F>,
    pub checks: CheckList,
}

pub fn quasibasis<F: Field>(a: &Wha<F>, f: &[F::Elem]) -> Result<QuasiBasis<F>> {
    let fl = a.field();
    let n = a.dim();
    let tol = a.tol();
    let g = gram_matrix(a, f);
    let element = g.inverse().ok_or_else(|| WhaError::Degenerate("functional is degenerate".into()))?;
    let aa: Vec<Vector<F>> = element.columns();
    let mut checks = CheckList::new();
    let (mut r1, mut r2): (f64, f64) = (0.0, 0.0);
    for x in 0..n {
        let bx = a.basis_vector(x);
        let mut s1 = vector::zeros(fl, n);
        let mut s2 = vector::zeros(fl, n);
        for (i, ai) in aa.iter().enumerate() {
            let bi = a.basis_vector(i);
            let c1 = vector::dot(fl, f, &a.mul(&bx, ai));
            s1 = vector::add(fl, &s1, &vector::scale(fl, &c1, &bi));
            let c2 = vector::dot(fl, f, &a.mul(&bi, &bx));
            s2 = vector::add(fl, &s2, &vector::scale(fl, &c2, ai));
        }
        r1 = r1.max(vector::dist(fl, &s1, &bx));
        r2 = r2.max(vector::dist(fl, &s2, &bx));
    }
    checks.residual("Σ f(x aᵢ) bᵢ = x", r1, tol);
    checks.residual("Σ aᵢ f(bᵢ x) = x", r2, tol);
    let index = a.mu(&element);
    checks.flag("index is central", a.is_central(&index));
    Ok(QuasiBasis { element, index, checks })
}

#[derive(Clone, Debug)]
pub struct ModularData<F: Field> {
    pub functional: Vector<F>,
    /// Column j is θ_f(b_j).
    pub theta: Mat<F>,
    pub is_qtrace: bool,
    pub checks: CheckList,
}

/// θ_f = f_R⁻¹∘f_L, i.e. f(xy) = f(yθ_f(x)).
pub fn modular_automorphism<F: Field>(a: &Wha<F>, f: &[F::Elem]) -> Result<ModularData<F>> {
    let fl = a.field();
    let n = a.dim();
    let tol = a.tol();
    let g = gram_matrix(a, f);
    let gi = g.inverse().ok_or_else(|| WhaError::Degenerate("functional is degenerate".into()))?;
    let theta = gi.mul(&g.transpose());
    let mut checks = CheckList::new();
    let mut r: f64 = 0.0;
    let mut rm: f64 = 0.0;
    for x in 0..n {
        let bx = a.basis_vector(x);
        let tx = theta.column(x);
        for y in 0..n {
            let by = a.basis_vector(y);
            let lhs = vector::dot(fl, f, &a.mul(&bx, &by));
            let rhs = vector::dot(fl, f, &a.mul(&by, &tx));
            r = r.max(fl.magnitude(&fl.sub(&lhs, &rhs)));
            let ty = theta.column(y);
            rm = rm.max(vector::dist(fl, &theta.mul_vec(&a.mul(&bx, &by)), &a.mul(&tx, &ty)));
        }
    }
    checks.residual("f(xy) = f(yθ(x))", r, tol);
    checks.residual("θ multiplicative", rm, tol);
    let is_qtrace = theta.dist(&a.antipode_power(2)?) <= tol;
    Ok(ModularData { functional: f.to_vec(), theta, is_qtrace, checks })
}

/// χ(y) = Tr_A(z ↦ S⁻²(z)y).
pub fn chi<F: Field>(a: &Wha<F>) -> Result<Vector<F>> {
    let fl = a.field();
    let sm2 = a.antipode_power(-2)?;
    let mut out = vector::zeros(fl, a.dim());
    for (k, y, i, c) in a.mult().entries() {
        out[*y] = fl.add(&out[*y], &fl.mul(c, &sm2[(*k, *i)]));
    }
    Ok(out)
}

/// χ is a left integral in Â, satisfies χ(xy) = χ(yS²(x)), and l⇀χ = Ŝ²(1̂↼l) for l ∈ I^L.
pub fn certify_chi<F: Field>(a: &Wha<F>, chi: &[F::Elem]) -> Result<CheckList> {
    let fl = a.field();
    let n = a.dim();
    let tol = a.tol();
    let mut checks = CheckList::new();
    checks.flag("χ ∈ I^L(Â)", integral_space(&a.dual(), Side::Left)?.contains(chi));
    let s2 = a.antipode_power(2)?;
    let mut r: f64 = 0.0;
    for x in 0..n {
        let bx = a.basis_vector(x);
        let s2x = s2.column(x);
        for y in 0..n {
            let by = a.basis_vector(y);
            let d = fl.sub(&vector::dot(fl, chi, &a.mul(&bx, &by)), &vector::dot(fl, chi, &a.mul(&by, &s2x)));
            r = r.max(fl.magnitude(&d));
        }
    }
    checks.residual("χ(xy) = χ(yS²(x))", r, tol);
    let mut r: f64 = 0.0;
    for l in integral_space(a, Side::Left)?.basis() {
        let lhs = a.hit(l, chi);
        let eps_l = a.hit_from_right(a.counit(), l);
        // Ŝ²(φ) = φ∘S²
        let rhs = s2.vec_mul(&eps_l);
        r = r.max(vector::dist(fl, &lhs, &rhs));
    }
    checks.residual("l⇀χ = Ŝ²(1̂↼l)", r, tol);
    Ok(checks)
}

#[derive(Clone, Debug)]
pub struct Haar<F: Field> {
    pub h: Option<Vector<F>>,
    pub chi: Vector<F>,
    /// Rank of the Gram matrix of χ; n exactly when χ is non-degenerate.
    pub chi_rank: usize,
    /// Whether some left integral l has Π^R(l) = 1.
    pub alternative: bool,
    pub checks: CheckList,
}

/// h is the dual left integral of χ when χ is non-degenerate.
pub fn haar<F: Field>(a: &Wha<F>) -> Result<Haar<F>> {
    let fl = a.field();
    let n = a.dim();
    let tol = a.tol();
    let chi_v = chi(a)?;
    let g = gram_matrix(a, &chi_v);
    let chi_rank = g.rank();
    let mut checks = CheckList::new();
    let h = if chi_rank == n && n > 0 {
        // h⇀χ = ε, i.e. χ(b_y h) = ε(b_y)
        let sol = solve_affine(&g, Some(a.counit()))?;
        Some(sol.particular.expect("rhs supplied"))
    } else {
        None
    };
    let left = integral_space(a, Side::Left)?;
    let lb = left.space.matrix();
    let alt = solve_affine(&a.pi_matrix(Side::Right).mul(&lb), Some(a.unit()));
    let alternative = alt.is_ok();
    if alternative != h.is_some() {
        return Err(WhaError::Inconsistent(format!(
            "χ non-degeneracy ({}) disagrees with the Π^R(l) = 1 criterion ({alternative})",
            h.is_some()
        )));
    }
    if let Some(h) = &h {
        checks.flag("h ∈ I^L", left.contains(h));
        checks.flag("h ∈ I^R", integral_space(a, Side::Right)?.contains(h));
        checks.residual("Π^L(h) = 1", vector::dist(fl, &a.pi(h, Side::Left), a.unit()), tol);
        checks.residual("Π^R(h) = 1", vector::dist(fl, &a.pi(h, Side::Right), a.unit()), tol);
        checks.residual("h² = h", vector::dist(fl, &a.mul(h, h), h), tol);
        checks.residual("S(h) = h", vector::dist(fl, &a.apply_antipode(h), h), tol);
        checks.residual("χ⇀h = 1", vector::dist(fl, &a.dual_hit(&chi_v, h), a.unit()), tol);
        if let Ok(sol) = &alt {
            let l = lb.mul_vec(sol.particular.as_ref().expect("rhs supplied"));
            checks.residual("Π^R-normalized left integral equals h", vector::dist(fl, &l, h), tol);
        }
        // uniqueness: the normalized two-sided integrals form a single point
        let two = two_sided_integrals(a)?;
        let tb = two.matrix();
        let m = Mat::vstack(fl, &[a.pi_matrix(Side::Left).mul(&tb), a.pi_matrix(Side::Right).mul(&tb)]);
        let rhs: Vec<F::Elem> = a.unit().iter().chain(a.unit()).cloned().collect();
        match solve_affine(&m, Some(&rhs)) {
            Ok(s) => checks.flag("Haar integral unique", s.kernel.is_empty()),
            Err(_) => checks.flag("Haar integral unique", false),
        };
        match dual_left_integral(a, h) {
            Ok(p) => checks.residual("(h, χ) dual pair", vector::dist(fl, &p.lambda, &chi_v), tol),
            Err(_) => checks.flag("(h, χ) dual pair", false),
        };
    }
    Ok(Haar { h, chi: chi_v, chi_rank, alternative, checks })
}

#[derive(Clone, Debug)]
pub struct HaarSplitCriterion {
    pub semisimple: bool,
    /// An invertible g with gxg⁻¹ = S²(x).
    pub implementer: Option<Vector<Complexes>>,
    /// tr D_r(g⁻¹), up to the positive factor n_r, per simple block.
    pub block_traces: Vec<Complex64>,
    pub haar_exists: bool,
}

/// Existence criterion over ℂ: semisimple, S² inner by some g, and
/// tr D_r(g⁻¹) ≠ 0 for every irreducible D_r.
pub fn haar_split_criterion(a: &Wha<Complexes>, seed: u64) -> Result<HaarSplitCriterion> {
    let f = *a.field();
    let n = a.dim();
    let semisimple = normalized_integral(a, Side::Left)?.integral.is_some();
    let none = |semisimple| HaarSplitCriterion { semisimple, implementer: None, block_traces: Vec::new(), haar_exists: false };
    if !semisimple {
        return Ok(none(false));
    }
    let s2 = a.antipode_power(2)?;
    // g x − S²(x) g = 0 for every basis x
    let blocks = (0..n).map(|x| a.right_mul_matrix(&a.basis_vector(x)).sub(&a.left_mul_matrix(&s2.column(x))));
    let sols = super::common_kernel(&f, n, blocks);
    let mats: Vec<Mat<Complexes>> = sols.iter().map(|g| a.left_mul_matrix(g)).collect();
    let (_, coeffs) = super::search_invertible(&f, &mats, seed);
    let Some(c) = coeffs else {
        return Ok(none(true));
    };
    let g = vector::combine(&f, n, &c, &sols);
    let ginv = a.inverse(&g).ok_or_else(|| WhaError::Inconsistent("implementer not invertible".into()))?;
    let z = centers(a)?.center;
    let zb = z.basis().to_vec();
    let actions: Vec<Mat<Complexes>> = zb
        .iter()
        .map(|zk| {
            Mat::from_columns(
                &f,
                zb.len(),
                &zb.iter().map(|zj| z.coordinates(&a.mul(zk, zj)).expect("center is a subalgebra")).collect::<Vec<_>>(),
            )
        })
        .collect();
    let idem = split_commutative(&actions, seed)?;
    let lg = a.left_mul_matrix(&ginv);
    let block_traces: Vec<Complex64> = idem
        .iter()
        .map(|c| {
            let e = vector::combine(&f, n, c, &zb);
            lg.mul(&a.left_mul_matrix(&e)).trace()
        })
        .collect();
    let haar_exists = block_traces.iter().all(|t| t.norm() > f.tol.sqrt());
    Ok(HaarSplitCriterion { semisimple, implementer: Some(g), block_traces, haar_exists })
}
