//! Two-sided integrals and the algebra-structure verdicts: Frobenius,
//! symmetric, S⁴ innerness and quasi-Frobenius annihilator duality.

use super::functionals::{gram_matrix, modular_automorphism};
use super::spaces::{dual_left_integral, integral_space, two_sided_integrals};
use super::{common_kernel, search_invertible};
use crate::check::{CheckList, Verdict};
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{vector, Mat, Subspace, Vector};
use crate::wha::{centers, counital_subalgebras, Side, Wha};

#[derive(Clone, Debug)]
pub struct TwoSided<F: Field> {
    pub space: Subspace<F>,
    /// Whether a non-degenerate two-sided integral exists.
    pub nondegenerate_exists: Verdict,
    pub nondegenerate: Option<Vector<F>>,
    pub checks: CheckList,
}

/// I = I^L ∩ I^R, a non-degenerate member j when one is found, S(i) = i on I
/// and I = j·Z^R.
pub fn two_sided_analysis<F: Field>(a: &Wha<F>, seed: u64) -> Result<TwoSided<F>> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let space = two_sided_integrals(a)?;
    let mut checks = CheckList::new();
    if space.dim() == 0 {
        return Ok(TwoSided { space, nondegenerate_exists: Verdict::No, nondegenerate: None, checks });
    }
    let mats: Vec<Mat<F>> = space.basis().iter().map(|i| a.coproduct(i)).collect();
    let (verdict, coeffs) = search_invertible(f, &mats, seed);
    let nondegenerate = coeffs.map(|c| vector::combine(f, n, &c, space.basis()));
    if let Some(j) = &nondegenerate {
        let mut r: f64 = 0.0;
        for i in space.basis() {
            r = r.max(vector::dist(f, &a.apply_antipode(i), i));
        }
        checks.residual("S(i) = i on I", r, tol);
        let c = centers(a)?;
        let zr = c.center.intersect(&c.right);
        let jz: Vec<Vector<F>> = zr.basis().iter().map(|z| a.mul(j, z)).collect();
        checks.flag("I = j·Z^R", Subspace::span(f, n, &jz).same_as(&space));
    }
    Ok(TwoSided { space, nondegenerate_exists: verdict, nondegenerate, checks })
}

#[derive(Clone, Debug)]
pub struct S4Witness<F: Field> {
    pub a_l: Vector<F>,
    pub a_r: Vector<F>,
    pub alpha_l: Vector<F>,
    pub alpha_r: Vector<F>,
    pub checks: CheckList,
}

#[derive(Clone, Debug)]
pub struct SymmetricReport<F: Field> {
    pub symmetric: Verdict,
    pub s2_inner: Verdict,
    /// g with gxg⁻¹ = S²(x).
    pub s2_implementer: Option<Vector<F>>,
    /// The trace g⁻¹⇀χ_j built from a non-degenerate two-sided integral j.
    pub witness_trace: Option<Vector<F>>,
    pub s4: Option<S4Witness<F>>,
    pub checks: CheckList,
}

/// Symmetric ⟺ (I_* ≠ ∅ and S² inner); S⁴ innerness when both A and Â have
/// non-degenerate two-sided integrals.
pub fn symmetric_and_s4<F: Field>(a: &Wha<F>, seed: u64) -> Result<SymmetricReport<F>> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let mut checks = CheckList::new();
    let two = two_sided_analysis(a, seed)?;
    let s2 = a.antipode_power(2)?;
    let blocks = (0..n).map(|x| a.right_mul_matrix(&a.basis_vector(x)).sub(&a.left_mul_matrix(&s2.column(x))));
    let sols = common_kernel(f, n, blocks);
    let mats: Vec<Mat<F>> = sols.iter().map(|g| a.left_mul_matrix(g)).collect();
    let (s2_inner, coeffs) = search_invertible(f, &mats, seed.wrapping_add(1));
    let s2_implementer = coeffs.map(|c| vector::combine(f, n, &c, &sols));
    if let Some(g) = &s2_implementer {
        let ginv = a.inverse(g).ok_or_else(|| WhaError::Inconsistent("implementer not invertible".into()))?;
        let mut r: f64 = 0.0;
        for x in 0..n {
            let bx = a.basis_vector(x);
            r = r.max(vector::dist(f, &a.mul3(g, &bx, &ginv), &s2.column(x)));
        }
        checks.residual("Ad_g = S²", r, tol);
    }
    let symmetric = two.nondegenerate_exists.and(s2_inner);
    let mut witness_trace = None;
    if let (Some(j), Some(g)) = (&two.nondegenerate, &s2_implementer) {
        let pair = dual_left_integral(a, j)?;
        let ginv = a.inverse(g).expect("checked above");
        let tau = a.hit(&ginv, &pair.lambda);
        let md = modular_automorphism(a, &tau)?;
        checks.residual("g⁻¹⇀χ_j is a trace", md.theta.dist(&Mat::identity(f, n)), tol);
        witness_trace = Some(tau);
    }
    checks.extend_prefixed("I: ", two.checks.clone());

    let mut s4 = None;
    if let Some(h) = &two.nondegenerate {
        let dual = a.dual();
        let dtwo = two_sided_analysis(&dual, seed.wrapping_add(2))?;
        if let Some(hh) = &dtwo.nondegenerate {
            s4 = Some(s4_witness(a, &dual, h, hh)?);
        }
    }
    Ok(SymmetricReport { symmetric, s2_inner, s2_implementer, witness_trace, s4, checks })
}

fn s4_witness<F: Field>(a: &Wha<F>, dual: &Wha<F>, h: &[F::Elem], hh: &[F::Elem]) -> Result<S4Witness<F>> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let mut checks = CheckList::new();
    let a_l = a.dual_hit(hh, h);
    let a_r = a.apply_antipode(&a_l);
    let alpha_l = a.hit(h, hh);
    let alpha_r = a.dual_antipode(&alpha_l);
    let sub = counital_subalgebras(a)?;
    checks.flag("a_L ∈ A^L", sub.left.contains(&a_l));
    checks.residual("1̂↼a_L = α_L", vector::dist(f, &a.hit_from_right(a.counit(), &a_l), &alpha_l), tol);
    let (Some(ar_inv), Some(al_inv)) = (a.inverse(&a_r), a.inverse(&a_l)) else {
        checks.flag("a_L, a_R invertible", false);
        return Ok(S4Witness { a_l, a_r, alpha_l, alpha_r, checks });
    };
    let u = a.mul(&a_l, &ar_inv);
    let u_inv = a.mul(&a_r, &al_inv);
    let v = a.mul(&a_l, &a_r);
    let v_inv = a.mul(&ar_inv, &al_inv);
    let s4m = a.antipode_power(4)?;
    let theta = modular_automorphism(a, hh)?.theta;
    let theta2 = theta.mul(&theta);
    let (mut r1, mut r2): (f64, f64) = (0.0, 0.0);
    for x in 0..n {
        let bx = a.basis_vector(x);
        r1 = r1.max(vector::dist(f, &a.mul3(&u, &bx, &u_inv), &s4m.column(x)));
        r2 = r2.max(vector::dist(f, &a.mul3(&v, &bx, &v_inv), &theta2.column(x)));
    }
    checks.residual("Ad_{a_L a_R⁻¹} = S⁴", r1, tol);
    checks.residual("Ad_{a_L a_R} = θ_ĥ²", r2, tol);
    match (dual.inverse(&alpha_l), dual.inverse(&alpha_r)) {
        (Some(al_i), Some(ar_i)) => {
            let w = dual.mul(&alpha_l, &alpha_r);
            let w_inv = dual.mul(&ar_i, &al_i);
            let mut r: f64 = 0.0;
            for p in 0..n {
                let psi = a.basis_vector(p);
                let lhs = a.hit(&u, &a.hit_from_right(&psi, &u));
                let rhs = dual.mul3(&w, &psi, &w_inv);
                r = r.max(vector::dist(f, &lhs, &rhs));
            }
            checks.residual("a_La_R⁻¹⇀ψ↼a_La_R⁻¹ = α_Lα_R ψ α_R⁻¹α_L⁻¹", r, tol);
        }
        _ => {
            checks.flag("α_L, α_R invertible", false);
        }
    }
    Ok(S4Witness { a_l, a_r, alpha_l, alpha_r, checks })
}

#[derive(Clone, Debug)]
pub struct FrobeniusReport<F: Field> {
    pub dim_right_integrals: usize,
    pub dim_left_subalgebra: usize,
    /// A non-degenerate left integral, when found.
    pub nondegenerate_left_integral: Option<Vector<F>>,
    pub integral_search: Verdict,
    /// Search for a non-degenerate functional on A directly.
    pub functional_search: Verdict,
    pub dual_dims_equal: bool,
    pub frobenius: Verdict,
}

/// dim I^R = dim A^L ⟺ non-degenerate integrals exist ⟺ A Frobenius ⟺ Â Frobenius.
pub fn frobenius_test<F: Field>(a: &Wha<F>, seed: u64) -> Result<FrobeniusReport<F>> {
    let f = a.field();
    let n = a.dim();
    let ir = integral_space(a, Side::Right)?;
    let il = integral_space(a, Side::Left)?;
    let sub = counital_subalgebras(a)?;
    let dims = ir.dim() == sub.left.dim();
    let mats: Vec<Mat<F>> = il.basis().iter().map(|l| a.coproduct(l)).collect();
    let (integral_search, coeffs) = search_invertible(f, &mats, seed);
    let nondegenerate_left_integral = coeffs.map(|c| vector::combine(f, n, &c, il.basis()));
    let grams: Vec<Mat<F>> = (0..n).map(|k| gram_matrix(a, &a.basis_vector(k))).collect();
    let (functional_search, _) = search_invertible(f, &grams, seed.wrapping_add(1));
    let dual = a.dual();
    let dual_dims_equal =
        integral_space(&dual, Side::Right)?.dim() == counital_subalgebras(&dual)?.left.dim();
    let d = Verdict::from_bool(dims);
    let all = [d, integral_search, functional_search, Verdict::from_bool(dual_dims_equal)];
    if !all.iter().all(|v| v.compatible(d)) {
        return Err(WhaError::Inconsistent(format!(
            "Frobenius criteria disagree: dims {dims}, integral {integral_search}, functional {functional_search}, dual dims {dual_dims_equal}"
        )));
    }
    Ok(FrobeniusReport {
        dim_right_integrals: ir.dim(),
        dim_left_subalgebra: sub.left.dim(),
        nondegenerate_left_integral,
        integral_search,
        functional_search,
        dual_dims_equal,
        frobenius: d,
    })
}

#[derive(Clone, Debug)]
pub struct AnnihilatorReport<F: Field> {
    pub kernel: Subspace<F>,
    pub right_annihilator: Subspace<F>,
    pub double_annihilator: Subspace<F>,
    pub checks: CheckList,
}

/// lann(rann(Ker Π^L)) = Ker Π^L, rann(Ker Π^L) = I^L, and the pairing
/// A^L × I^L → A, (x, l) ↦ xl, is non-degenerate on both sides.
pub fn annihilator_duality_check<F: Field>(a: &Wha<F>) -> Result<AnnihilatorReport<F>> {
    let f = a.field();
    let n = a.dim();
    let kernel = Subspace::span(f, n, &a.pi_matrix(Side::Left).kernel());
    let rann = Subspace::span(f, n, &common_kernel(f, n, kernel.basis().iter().map(|k| a.left_mul_matrix(k))));
    let lann = Subspace::span(f, n, &common_kernel(f, n, rann.basis().iter().map(|y| a.right_mul_matrix(y))));
    let il = integral_space(a, Side::Left)?;
    let sub = counital_subalgebras(a)?;
    let mut checks = CheckList::new();
    checks.flag("rann(Ker Π^L) = I^L", rann.same_as(&il.space));
    checks.flag("lann(rann(Ker Π^L)) = Ker Π^L", lann.same_as(&kernel));
    // x ↦ (x l_k)_k injective on A^L
    let al = sub.left.matrix();
    let stack: Vec<Mat<F>> = il.basis().iter().map(|l| a.right_mul_matrix(l).mul(&al)).collect();
    checks.flag("x^L l = 0 ∀l ⇒ x^L = 0", Mat::vstack(f, &stack).rank() == sub.left.dim());
    let lb = il.space.matrix();
    let stack: Vec<Mat<F>> = sub.left.basis().iter().map(|x| a.left_mul_matrix(x).mul(&lb)).collect();
    checks.flag("x^L l = 0 ∀x^L ⇒ l = 0", Mat::vstack(f, &stack).rank() == il.dim());
    Ok(AnnihilatorReport { kernel, right_annihilator: rann, double_annihilator: lann, checks })
}
