//! Cross-checks of the integral calculus on a concrete algebra: the equivalent
//! descriptions of left integrals, the twisted arrow identities, conditional
//! expectations, dual bases, the behaviour under twists and the projections.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::spaces::{integral_projection_matrix, integral_space};
use crate::check::CheckList;
use crate::error::Result;
use crate::field::Field;
use crate::linear::{vector, Mat, Subspace, Vector};
use crate::wha::{counital_subalgebras, Side, Twist, Wha};

const PROBE_LIMIT: usize = 16;
const RANDOM_PROBES: usize = 6;

fn probes<F: Field>(a: &Wha<F>, rng: &mut ChaCha8Rng) -> Vec<Vector<F>> {
    let n = a.dim();
    if n <= PROBE_LIMIT {
        (0..n).map(|i| a.basis_vector(i)).collect()
    } else {
        (0..RANDOM_PROBES).map(|_| vector::random(a.field(), n, rng)).collect()
    }
}

/// The six equivalent descriptions of l ∈ I^L, evaluated on one element.
fn integral_conditions<F: Field>(a: &Wha<F>, l: &[F::Elem], xs: &[Vector<F>], dual_left: &Subspace<F>, ir: &Subspace<F>, ker: &[Vector<F>]) -> [bool; 6] {
    let f = a.field();
    let il = integral_space(a, Side::Left).map(|s| s.contains(l)).unwrap_or(false);
    let d = a.coproduct(l);
    let b = xs.iter().all(|x| {
        let sx = a.apply_antipode(x);
        d.mul(&a.left_mul_matrix(x).transpose()).approx_eq(&a.left_mul_matrix(&sx).mul(&d))
    });
    let c = xs.iter().all(|phi| dual_left.contains(&a.hit(l, phi)));
    let dd = xs.iter().all(|phi| {
        xs.iter().all(|x| {
            let lhs = a.dual_hit(&a.hit_from_right(phi, x), l);
            let rhs = a.mul(&a.apply_antipode(x), &a.dual_hit(phi, l));
            vector::approx_eq(f, &lhs, &rhs)
        })
    });
    let e = ker.iter().all(|k| vector::is_zero(f, &a.mul(k, l)));
    let sf = ir.contains(&a.apply_antipode(l));
    [il, b, c, dd, e, sf]
}

/// Runs every integral-calculus certification. Probes are the basis when the
/// dimension is at most 16, otherwise seeded random vectors.
pub fn integral_properties<F: Field>(a: &Wha<F>, seed: u64) -> Result<CheckList> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = probes(a, &mut rng);
    let phis = probes(a, &mut rng);
    let dual = a.dual();
    let il = integral_space(a, Side::Left)?;
    let ir = integral_space(a, Side::Right)?;
    let dil = integral_space(&dual, Side::Left)?;
    let sub = counital_subalgebras(a)?;
    let dsub = counital_subalgebras(&dual)?;
    let sinv = a.antipode_power(-1)?;
    let mut checks = CheckList::new();

    // equivalent descriptions of left integrals
    let ker = a.pi_matrix(Side::Left).kernel();
    let mut candidates: Vec<Vector<F>> = il.basis().to_vec();
    candidates.extend(xs.iter().take(4).cloned());
    if let Some(l) = il.basis().first() {
        candidates.extend(xs.iter().take(2).map(|x| vector::add(f, l, x)));
    }
    let mut agree = true;
    let mut hits = 0;
    for l in &candidates {
        let c = integral_conditions(a, l, &xs, &dsub.left, &ir.space, &ker);
        agree &= c.iter().all(|&v| v == c[0]);
        hits += c[0] as usize;
    }
    checks.flag("equivalent characterizations of I^L agree", agree);
    checks.flag("every basis integral satisfies them", hits >= il.dim());

    // twisted arrow identities
    let (mut r1, mut r2, mut r3, mut r4): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for x in &xs {
        let sx = a.apply_antipode(x);
        let six = sinv.mul_vec(x);
        for phi in &phis {
            let phi_x = a.hit_from_right(phi, x);
            let x_phi = a.hit(x, phi);
            for l in il.basis() {
                let lhs = a.dual_hit(&phi_x, l);
                let rhs = a.mul(&sx, &a.dual_hit(phi, l));
                r1 = r1.max(vector::dist(f, &lhs, &rhs));
                let lhs = a.dual_hit_from_right(l, &phi_x);
                let rhs = a.mul(&six, &a.dual_hit_from_right(l, phi));
                r3 = r3.max(vector::dist(f, &lhs, &rhs));
            }
            for r in ir.basis() {
                let lhs = a.dual_hit(&x_phi, r);
                let rhs = a.mul(&a.dual_hit(phi, r), &six);
                r2 = r2.max(vector::dist(f, &lhs, &rhs));
                let lhs = a.dual_hit_from_right(r, &x_phi);
                let rhs = a.mul(&a.dual_hit_from_right(r, phi), &sx);
                r4 = r4.max(vector::dist(f, &lhs, &rhs));
            }
        }
    }
    checks.residual("(φ↼x)⇀l = S(x)(φ⇀l)", r1, tol);
    checks.residual("(x⇀φ)⇀r = (φ⇀r)S⁻¹(x)", r2, tol);
    checks.residual("l↼(φ↼x) = S⁻¹(x)(l↼φ)", r3, tol);
    checks.residual("r↼(x⇀φ) = (r↼φ)S(x)", r4, tol);

    // conditional expectations E_λ(x) = λ⇀x
    let mut in_al = true;
    let mut r: f64 = 0.0;
    for lambda in dil.basis() {
        for x in &xs {
            let e = a.dual_hit(lambda, x);
            in_al &= sub.left.contains(&e);
            for phi in &phis {
                let lhs = a.dual_hit(lambda, &a.dual_hit_from_right(x, phi));
                let rhs = a.dual_hit_from_right(&e, phi);
                r = r.max(vector::dist(f, &lhs, &rhs));
            }
        }
    }
    checks.flag("E_λ(A) ⊂ A^L", in_al);
    checks.residual("E_λ(x↼φ) = E_λ(x)↼φ", r, tol);

    // dual bases of I^L(Â) and I^R
    let lam = dil.space.matrix();
    let rb = ir.space.matrix();
    let pairing = lam.transpose().mul(&rb);
    match pairing.inverse() {
        Some(pi) => {
            let rs = rb.mul(&pi).columns();
            let mut one_hat = vector::zeros(f, n);
            let mut one = vector::zeros(f, n);
            for (la, ra) in dil.basis().iter().zip(&rs) {
                one_hat = vector::add(f, &one_hat, &a.hit(&a.apply_antipode(ra), la));
                one = vector::add(f, &one, &a.dual_hit_from_right(ra, &a.dual_antipode(la)));
            }
            checks.residual("Σ S(r_a)⇀λ^a = 1̂", vector::dist(f, &one_hat, a.counit()), tol);
            checks.residual("Σ r_a↼Ŝ(λ^a) = 1", vector::dist(f, &one, a.unit()), tol);
        }
        None => {
            checks.flag("⟨I^L(Â), I^R⟩ non-degenerate", false);
        }
    }

    twist_table(a, &il.space, &ir.space, &sub.left, &sub.right, &sinv, &mut checks)?;

    // projections onto integrals
    let lp = integral_projection_matrix(a, Side::Left)?;
    let rp = integral_projection_matrix(a, Side::Right)?;
    let image = |m: &Mat<F>| Subspace::span(f, n, &m.columns());
    checks.residual("L∘L = L", lp.mul(&lp).dist(&lp), tol);
    checks.residual("R∘R = R", rp.mul(&rp).dist(&rp), tol);
    checks.flag("image L = I^L", image(&lp).same_as(&il.space));
    checks.flag("image R = I^R", image(&rp).same_as(&ir.space));
    let dual_l = integral_projection_matrix(&dual, Side::Left)?;
    checks.residual("L̂ᵀ = R", dual_l.transpose().dist(&rp), tol);
    checks.residual("R = S L S⁻¹", a.antipode().mul(&lp).mul(&sinv).dist(&rp), tol);
    checks.flag("S(I^L) = I^R", il.space.image(a.antipode()).same_as(&ir.space));
    Ok(checks)
}

fn twist_table<F: Field>(
    a: &Wha<F>,
    il: &Subspace<F>,
    ir: &Subspace<F>,
    al: &Subspace<F>,
    ar: &Subspace<F>,
    sinv: &Mat<F>,
    checks: &mut CheckList,
) -> Result<()> {
    let f = a.field();
    let tol = a.tol();
    let pl = a.pi_matrix(Side::Left);
    let pr = a.pi_matrix(Side::Right);
    let dual = a.dual();
    for t in Twist::ALL {
        let b = a.twist(t)?;
        let (want_pl, want_pr, want_al, want_ar, want_il, want_ir, dual_twist) = match t {
            Twist::Op => (sinv.mul(pr), sinv.mul(pl), al, ar, ir, il, Twist::Cop),
            Twist::Cop => (sinv.mul(pl), sinv.mul(pr), ar, al, il, ir, Twist::Op),
            Twist::OpCop => (pr.clone(), pl.clone(), ar, al, ir, il, Twist::OpCop),
        };
        let sub = counital_subalgebras(&b)?;
        let p = format!("{t}: ");
        checks.residual(format!("{p}Π^L"), b.pi_matrix(Side::Left).dist(&want_pl), tol);
        checks.residual(format!("{p}Π^R"), b.pi_matrix(Side::Right).dist(&want_pr), tol);
        checks.flag(format!("{p}A^L"), sub.left.same_as(want_al));
        checks.flag(format!("{p}A^R"), sub.right.same_as(want_ar));
        checks.flag(format!("{p}I^L"), integral_space(&b, Side::Left)?.space.same_as(want_il));
        checks.flag(format!("{p}I^R"), integral_space(&b, Side::Right)?.space.same_as(want_ir));
        let bd = b.dual();
        let dt = dual.twist(dual_twist)?;
        let r = bd
            .mult()
            .dist(f, dt.mult())
            .max(bd.comult().dist(f, dt.comult()))
            .max(bd.antipode().dist(dt.antipode()));
        checks.residual(format!("{p}dual is the {dual_twist} twist of the dual"), r, tol);
    }
    Ok(())
}
