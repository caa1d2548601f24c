//! Identities of the weak bialgebra and weak Hopf calculus, evaluated on
//! basis elements (bilinearity extends them).

use super::calculus::counital_subalgebras;
use super::{Side, Wha};
use crate::check::CheckList;
use crate::error::Result;
use crate::field::Field;
use crate::linear::{vector, Mat, Vector};

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// The calculus suite. Needs a weak Hopf algebra (the antipode is used).
pub fn calculus_invariants<F: Field>(a: &Wha<F>) -> Result<CheckList> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let mut out = CheckList::new();
    let pil = a.pi_matrix(Side::Left).clone();
    let pir = a.pi_matrix(Side::Right).clone();
    let e2 = a.counit_products().clone();
    let d1 = a.unit_coproduct().clone();
    let s = a.antipode().clone();
    let basis: Vec<Vector<F>> = (0..n).map(|i| a.basis_vector(i)).collect();

    // ε(xΠ^L(y)) = ε(xy), ε(Π^R(x)y) = ε(xy)
    out.residual("counit absorbs Pi^L", e2.mul(&pil).dist(&e2), tol);
    out.residual("counit absorbs Pi^R", pir.transpose().mul(&e2).dist(&e2), tol);
    out.residual("Pi^L idempotent", pil.mul(&pil).dist(&pil), tol);
    out.residual("Pi^R idempotent", pir.mul(&pir).dist(&pir), tol);
    // Δ(1) ∈ A^R ⊗ A^L
    out.residual("unit coproduct in A^R (x) A^L", pir.mul(&d1).dist(&d1).max(d1.mul(&pil.transpose()).dist(&d1)), tol);

    let mut r_pl = 0.0f64;
    let mut r_pr = 0.0f64;
    let mut r_mod_l = 0.0f64;
    let mut r_mod_r = 0.0f64;
    for x in &basis {
        for y in &basis {
            let xy = a.mul(x, y);
            let pl_xy = pil.mul_vec(&xy);
            r_pl = r_pl.max(vector::dist(f, &pil.mul_vec(&a.mul(x, &pil.mul_vec(y))), &pl_xy));
            r_pr = r_pr.max(vector::dist(f, &pir.mul_vec(&a.mul(&pir.mul_vec(x), y)), &pir.mul_vec(&xy)));
            let pl_x = pil.mul_vec(x);
            r_mod_l = r_mod_l.max(vector::dist(
                f,
                &pil.mul_vec(&a.mul(&pl_x, y)),
                &a.mul(&pl_x, &pil.mul_vec(y)),
            ));
            let pr_y = pir.mul_vec(y);
            r_mod_r = r_mod_r.max(vector::dist(
                f,
                &pir.mul_vec(&a.mul(x, &pr_y)),
                &a.mul(&pir.mul_vec(x), &pr_y),
            ));
        }
    }
    out.residual("Pi^L(x Pi^L(y)) = Pi^L(xy)", r_pl, tol);
    out.residual("Pi^R(Pi^R(x) y) = Pi^R(xy)", r_pr, tol);
    out.residual("Pi^L left A^L-linear", r_mod_l, tol);
    out.residual("Pi^R right A^R-linear", r_mod_r, tol);

    let subs = counital_subalgebras(a)?;
    // Δ(x^L) = 1₍₁₎x^L⊗1₍₂₎, Δ(x^R) = 1₍₁₎⊗x^R1₍₂₎
    let r_cl = worst(subs.left.basis().iter().map(|x| a.coproduct(x).dist(&a.right_mul_matrix(x).mul(&d1))));
    let r_cr = worst(
        subs.right.basis().iter().map(|x| a.coproduct(x).dist(&d1.mul(&a.left_mul_matrix(x).transpose()))),
    );
    out.residual("coproduct of left elements", r_cl, tol);
    out.residual("coproduct of right elements", r_cr, tol);

    // x₍₁₎⊗Π^L(x₍₂₎) = 1₍₁₎x⊗1₍₂₎ and Π^R(x₍₁₎)⊗x₍₂₎ = 1₍₁₎⊗x1₍₂₎
    let mut r13a = 0.0f64;
    let mut r13b = 0.0f64;
    let mut r14a = 0.0f64;
    let mut r14b = 0.0f64;
    for x in &basis {
        let dx = a.coproduct(x);
        let rx = a.right_mul_matrix(x);
        let lx = a.left_mul_matrix(x);
        r13a = r13a.max(dx.mul(&pil.transpose()).dist(&rx.mul(&d1)));
        r13b = r13b.max(pir.mul(&dx).dist(&d1.mul(&lx.transpose())));
        // xΠ^L(y) = ε(x₍₁₎y)x₍₂₎, Π^R(x)y = y₍₁₎ε(xy₍₂₎)
        for y in &basis {
            let lhs = a.mul(x, &pil.mul_vec(y));
            let mut rhs = a.zero_vector();
            let ey = e2.mul_vec(y);
            for i in 0..n {
                for j in 0..n {
                    if !f.is_exact_zero(&dx[(i, j)]) {
                        rhs[j] = f.add(&rhs[j], &f.mul(&dx[(i, j)], &ey[i]));
                    }
                }
            }
            r14a = r14a.max(vector::dist(f, &lhs, &rhs));
            let dy = a.coproduct(y);
            let lhs = a.mul(&pir.mul_vec(x), y);
            let xe = e2.vec_mul(x);
            let mut rhs = a.zero_vector();
            for i in 0..n {
                for j in 0..n {
                    if !f.is_exact_zero(&dy[(i, j)]) {
                        rhs[i] = f.add(&rhs[i], &f.mul(&dy[(i, j)], &xe[j]));
                    }
                }
            }
            r14b = r14b.max(vector::dist(f, &lhs, &rhs));
        }
    }
    out.residual("x1 (x) Pi^L(x2) = 1_1 x (x) 1_2", r13a, tol);
    out.residual("Pi^R(x1) (x) x2 = 1_1 (x) x 1_2", r13b, tol);
    out.residual("x Pi^L(y) = eps(x1 y) x2", r14a, tol);
    out.residual("Pi^R(x) y = y1 eps(x y2)", r14b, tol);

    // commutation of left and right elements
    let comm = worst(subs.left.basis().iter().flat_map(|x| {
        subs.right.basis().iter().map(move |y| vector::dist(f, &a.mul(x, y), &a.mul(y, x)))
    }));
    out.residual("left and right elements commute", comm, tol);

    // the four arrow identities
    let one_hat = a.counit();
    let mut arrows = [0.0f64; 4];
    for phi in &basis {
        for xl in subs.left.basis() {
            arrows[0] = arrows[0].max(vector::dist(f, &a.hit(xl, phi), &a.dual_mul(&a.hit(xl, one_hat), phi)));
            arrows[2] = arrows[2].max(vector::dist(
                f,
                &a.hit_from_right(phi, xl),
                &a.dual_mul(&a.hit_from_right(one_hat, xl), phi),
            ));
        }
        for xr in subs.right.basis() {
            arrows[1] = arrows[1].max(vector::dist(
                f,
                &a.hit_from_right(phi, xr),
                &a.dual_mul(phi, &a.hit_from_right(one_hat, xr)),
            ));
            arrows[3] = arrows[3].max(vector::dist(f, &a.hit(xr, phi), &a.dual_mul(phi, &a.hit(xr, one_hat))));
        }
    }
    out.residual("x^L hits phi", arrows[0], tol);
    out.residual("phi hit by x^R", arrows[1], tol);
    out.residual("phi hit by x^L", arrows[2], tol);
    out.residual("x^R hits phi", arrows[3], tol);

    // Π̂^L, Π̂^R are the transposes of Π^L, Π^R
    let dual = a.dual();
    out.residual("dual Pi^L is transpose", dual.pi_matrix(Side::Left).dist(&pil.transpose()), tol);
    out.residual("dual Pi^R is transpose", dual.pi_matrix(Side::Right).dist(&pir.transpose()), tol);

    // Π through the antipode
    let s_pi = |x: &[F::Elem]| -> (Vector<F>, Vector<F>, Vector<F>, Vector<F>) {
        let sx = s.mul_vec(x);
        let mut l1 = a.zero_vector();
        let mut r1 = a.zero_vector();
        let mut l2 = a.zero_vector();
        let mut r2 = a.zero_vector();
        let sx_e = e2.vec_mul(&sx); // ε(S(x) b_i)
        let e_sx = e2.mul_vec(&sx); // ε(b_i S(x))
        let x_e = e2.vec_mul(x);
        let e_x = e2.mul_vec(x);
        for i in 0..n {
            for j in 0..n {
                let c = &d1[(i, j)];
                if f.is_exact_zero(c) {
                    continue;
                }
                // Π^L(x) = ε(S(x)1₁)1₂ ; Π^R(x) = 1₁ε(1₂S(x))
                l1[j] = f.add(&l1[j], &f.mul(c, &sx_e[i]));
                r1[i] = f.add(&r1[i], &f.mul(c, &e_sx[j]));
                // Π^L(x) = S(1₁)ε(1₂x) ; Π^R(x) = ε(x1₁)S(1₂)
                vector::axpy(f, &f.mul(c, &e_x[j]), &s.column(i), &mut l2);
                vector::axpy(f, &f.mul(c, &x_e[i]), &s.column(j), &mut r2);
            }
        }
        (l1, r1, l2, r2)
    };
    let mut r23 = 0.0f64;
    let mut r24 = 0.0f64;
    for x in &basis {
        let (l1, r1, l2, r2) = s_pi(x);
        let pl = pil.mul_vec(x);
        let pr = pir.mul_vec(x);
        r23 = r23.max(vector::dist(f, &l1, &pl)).max(vector::dist(f, &r1, &pr));
        r24 = r24.max(vector::dist(f, &l2, &pl)).max(vector::dist(f, &r2, &pr));
    }
    out.residual("Pi via antipode and counit", r23, tol);
    out.residual("Pi via antipode of unit legs", r24, tol);
    let pls = pil.mul(&s);
    let plpr = pil.mul(&pir);
    let spr = s.mul(&pir);
    out.residual("Pi^L S = Pi^L Pi^R = S Pi^R", pls.dist(&plpr).max(plpr.dist(&spr)), tol);
    let prs = pir.mul(&s);
    let prpl = pir.mul(&pil);
    let spl = s.mul(&pil);
    out.residual("Pi^R S = Pi^R Pi^L = S Pi^L", prs.dist(&prpl).max(prpl.dist(&spl)), tol);

    original_antipode_axioms(a, &basis, &d1, &s, &mut out);
    separability(a, subs.left.basis(), subs.right.basis(), &basis, &d1, &s, &mut out);
    Ok(out)
}

fn three_leg_to_first_two<F: Field>(a: &Wha<F>, t: &[F::Elem], prod: &dyn Fn(usize, usize) -> Vector<F>, which: u8) -> Mat<F> {
    // which = 0: Σ t_abc b_a ⊗ prod(b, c); which = 1: Σ t_abc prod(a, b) ⊗ b_c
    let f = a.field();
    let n = a.dim();
    let mut m = Mat::zeros(f, n, n);
    for ai in 0..n {
        for b in 0..n {
            for c in 0..n {
                let coef = &t[(ai * n + b) * n + c];
                if f.is_exact_zero(coef) {
                    continue;
                }
                if which == 0 {
                    let v = prod(b, c);
                    for (q, vq) in v.iter().enumerate() {
                        m[(ai, q)] = f.add(&m[(ai, q)], &f.mul(coef, vq));
                    }
                } else {
                    let v = prod(ai, b);
                    for (p, vp) in v.iter().enumerate() {
                        m[(p, c)] = f.add(&m[(p, c)], &f.mul(coef, vp));
                    }
                }
            }
        }
    }
    m
}

fn original_antipode_axioms<F: Field>(
    a: &Wha<F>,
    basis: &[Vector<F>],
    d1: &Mat<F>,
    s: &Mat<F>,
    out: &mut CheckList,
) {
    let n = a.dim();
    let s_cols = s.columns();
    let b_s: Vec<Vector<F>> =
        (0..n * n).map(|idx| a.mul(&basis[idx / n], &s_cols[idx % n])).collect();
    let s_b: Vec<Vector<F>> =
        (0..n * n).map(|idx| a.mul(&s_cols[idx / n], &basis[idx % n])).collect();
    let bs = |p: usize, q: usize| b_s[p * n + q].clone();
    let sb = |p: usize, q: usize| s_b[p * n + q].clone();
    let (mut ra, mut rb, mut rc, mut rd) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for x in basis {
        let t = a.coproduct2(x);
        let rx = a.right_mul_matrix(x);
        let lx = a.left_mul_matrix(x);
        // x₁⊗x₂S(x₃) = 1₁x⊗1₂
        ra = ra.max(three_leg_to_first_two(a, &t, &bs, 0).dist(&rx.mul(d1)));
        // S(x₁)x₂⊗x₃ = 1₁⊗x1₂
        rb = rb.max(three_leg_to_first_two(a, &t, &sb, 1).dist(&d1.mul(&lx.transpose())));
        // x₁⊗S(x₂)x₃ = x1₁⊗S(1₂)
        rc = rc.max(three_leg_to_first_two(a, &t, &sb, 0).dist(&lx.mul(d1).mul(&s.transpose())));
        // x₁S(x₂)⊗x₃ = S(1₁)⊗1₂x
        rd = rd.max(three_leg_to_first_two(a, &t, &bs, 1).dist(&s.mul(d1).mul(&rx.transpose())));
    }
    let tol = a.tol();
    out.residual("original antipode axiom a", ra, tol);
    out.residual("original antipode axiom b", rb, tol);
    out.residual("original antipode axiom c", rc, tol);
    out.residual("original antipode axiom d", rd, tol);
}

#[allow(clippy::too_many_arguments)]
fn separability<F: Field>(
    a: &Wha<F>,
    left: &[Vector<F>],
    right: &[Vector<F>],
    basis: &[Vector<F>],
    d1: &Mat<F>,
    s: &Mat<F>,
    out: &mut CheckList,
) {
    let tol = a.tol();
    let (mut ra, mut rb) = (0.0f64, 0.0f64);
    for x in basis {
        let dx = a.coproduct(x);
        for yr in right {
            // x₁y^R⊗x₂ = x₁⊗x₂S(y^R)
            let lhs = a.right_mul_matrix(yr).mul(&dx);
            let rhs = dx.mul(&a.right_mul_matrix(&s.mul_vec(yr)).transpose());
            ra = ra.max(lhs.dist(&rhs));
        }
        for yl in left {
            // x₁⊗y^Lx₂ = S(y^L)x₁⊗x₂
            let lhs = dx.mul(&a.left_mul_matrix(yl).transpose());
            let rhs = a.left_mul_matrix(&s.mul_vec(yl)).mul(&dx);
            rb = rb.max(lhs.dist(&rhs));
        }
    }
    out.residual("separability identity a", ra, tol);
    out.residual("separability identity b", rb, tol);
    // q^L = S(1₁)⊗1₂, q^R = 1₁⊗S(1₂)
    let ql = s.mul(d1);
    let qr = d1.mul(&s.transpose());
    let f = a.field();
    out.residual("mu(q^L) = 1", vector::dist(f, &a.mu(&ql), a.unit()), tol);
    out.residual("mu(q^R) = 1", vector::dist(f, &a.mu(&qr), a.unit()), tol);
    let bimod = |q: &Mat<F>, elems: &[Vector<F>]| {
        worst(elems.iter().map(|x| {
            let lhs = a.left_mul_matrix(x).mul(q);
            let rhs = q.mul(&a.right_mul_matrix(x).transpose());
            lhs.dist(&rhs)
        }))
    };
    out.residual("q^L separability idempotent", bimod(&ql, left), tol);
    out.residual("q^R separability idempotent", bimod(&qr, right), tol);
}
