//! Integral spaces, the projections onto them, normalized integrals and dual pairs.

use serde::Serialize;

use super::common_kernel;
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{solve_affine, vector, Mat, Subspace, Vector};
use crate::wha::{counital_subalgebras, Side, Wha};

#[derive(Clone, Debug)]
pub struct IntegralSpace<F: Field> {
    pub side: Side,
    pub space: Subspace<F>,
}

impl<F: Field> IntegralSpace<F> {
    pub fn basis(&self) -> &[Vector<F>] {
        self.space.basis()
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn contains(&self, x: &[F::Elem]) -> bool {
        self.space.contains(x)
    }
}

/// I^L = {l : xl = Π^L(x)l} or I^R = {r : rx = rΠ^R(x)}.
pub fn integral_space<F: Field>(a: &Wha<F>, side: Side) -> Result<IntegralSpace<F>> {
    let n = a.dim();
    let f = a.field();
    let pi = a.pi_matrix(side);
    let blocks = (0..n).map(|x| {
        let bx = a.basis_vector(x);
        let px = pi.column(x);
        match side {
            Side::Left => a.left_mul_matrix(&bx).sub(&a.left_mul_matrix(&px)),
            Side::Right => a.right_mul_matrix(&bx).sub(&a.right_mul_matrix(&px)),
        }
    });
    let ker = common_kernel(f, n, blocks);
    if ker.is_empty() && n > 0 {
        return Err(WhaError::Inconsistent("the space of integrals is zero".into()));
    }
    Ok(IntegralSpace { side, space: Subspace::span(f, n, &ker) })
}

/// I = I^L ∩ I^R.
pub fn two_sided_integrals<F: Field>(a: &Wha<F>) -> Result<Subspace<F>> {
    let l = integral_space(a, Side::Left)?;
    let r = integral_space(a, Side::Right)?;
    Ok(l.space.intersect(&r.space))
}

/// Matrix of L(x) = Σᵢ Ŝ²(βⁱ)⇀(bᵢx) (left) or R(x) = Σᵢ (xbᵢ)↼Ŝ²(βⁱ) (right).
pub fn integral_projection_matrix<F: Field>(a: &Wha<F>, side: Side) -> Result<Mat<F>> {
    let n = a.dim();
    let f = a.field();
    let s2 = a.antipode_power(2)?;
    let cols: Vec<Vector<F>> = (0..n)
        .map(|x| {
            let bx = a.basis_vector(x);
            let mut acc = vector::zeros(f, n);
            for i in 0..n {
                let bi = a.basis_vector(i);
                let row = s2.row(i);
                let v = match side {
                    Side::Left => a.coproduct(&a.mul(&bi, &bx)).mul_vec(&row),
                    Side::Right => a.coproduct(&a.mul(&bx, &bi)).vec_mul(&row),
                };
                acc = vector::add(f, &acc, &v);
            }
            acc
        })
        .collect();
    Ok(Mat::from_columns(f, n, &cols))
}

pub fn integral_projection<F: Field>(a: &Wha<F>, x: &[F::Elem], side: Side) -> Result<Vector<F>> {
    Ok(integral_projection_matrix(a, side)?.mul_vec(x))
}

/// Trace-form radical (char 0) or the separability-idempotent system (char p,
/// small dimension). `None` when neither applies.
pub fn semisimplicity_oracle<F: Field>(a: &Wha<F>) -> Option<bool> {
    let n = a.dim();
    let f = a.field();
    if n == 0 {
        return Some(true);
    }
    if f.characteristic() == 0 {
        let mut t = vector::zeros(f, n);
        for (k, i, j, c) in a.mult().entries() {
            if i == j {
                t[*k] = f.add(&t[*k], c);
            }
        }
        let mut form = Mat::zeros(f, n, n);
        for (i, j, k, c) in a.mult().entries() {
            form[(*i, *j)] = f.add(&form[(*i, *j)], &f.mul(c, &t[*k]));
        }
        return Some(form.rank() == n);
    }
    if n > 12 {
        return None;
    }
    // e = Σ e_uv b_u⊗b_v with μ(e) = 1 and (x⊗1)e = e(1⊗x)
    let nn = n * n;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..n {
        let mut row = vector::zeros(f, nn);
        for u in 0..n {
            for v in 0..n {
                row[u * n + v] = a.mul(&a.basis_vector(u), &a.basis_vector(v))[k].clone();
            }
        }
        rows.push(row);
        rhs.push(a.unit()[k].clone());
    }
    for x in 0..n {
        let lx = a.left_mul_matrix(&a.basis_vector(x));
        let rx = a.right_mul_matrix(&a.basis_vector(x));
        // coefficient of b_p⊗b_q
        for p in 0..n {
            for q in 0..n {
                let mut row = vector::zeros(f, nn);
                for u in 0..n {
                    row[u * n + q] = f.add(&row[u * n + q], &lx[(p, u)]);
                }
                for v in 0..n {
                    row[p * n + v] = f.sub(&row[p * n + v], &rx[(q, v)]);
                }
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    let m = Mat::from_rows(f, rows);
    Some(solve_affine(&m, Some(&rhs)).is_ok())
}

#[derive(Clone, Debug)]
pub struct NormalizedIntegral<F: Field> {
    pub side: Side,
    /// A normalized integral, or `None` when A is not semisimple.
    pub integral: Option<Vector<F>>,
    pub semisimple: bool,
    /// Independent semisimplicity verdict, when one is available.
    pub oracle: Option<bool>,
    pub checks: CheckList,
}

/// Solves Π^L(l) = 1 inside I^L (or Π^R(r) = 1 inside I^R).
pub fn normalized_integral<F: Field>(a: &Wha<F>, side: Side) -> Result<NormalizedIntegral<F>> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let space = integral_space(a, side)?;
    let b = space.space.matrix();
    let pi = a.pi_matrix(side);
    let integral = match solve_affine(&pi.mul(&b), Some(a.unit())) {
        Ok(sol) => sol.particular.map(|c| b.mul_vec(&c)),
        Err(WhaError::NoSolution) => None,
        Err(e) => return Err(e),
    };
    let mut checks = CheckList::new();
    if let Some(l) = &integral {
        checks.residual("normalized", vector::dist(f, &pi.mul_vec(l), a.unit()), tol);
        let left = match side {
            Side::Left => l.clone(),
            Side::Right => a.apply_antipode(l),
        };
        // separability idempotent q = l₁⊗S(l₂)
        let q = a.coproduct(&left).mul(&a.antipode().transpose());
        checks.residual("μ(q) = 1", vector::dist(f, &a.mu(&q), a.unit()), tol);
        let mut r: f64 = 0.0;
        for x in 0..n {
            let bx = a.basis_vector(x);
            let lhs = a.left_mul_matrix(&bx).mul(&q);
            let rhs = q.mul(&a.right_mul_matrix(&bx).transpose());
            r = r.max(lhs.dist(&rhs));
        }
        checks.residual("(x⊗1)q = q(1⊗x)", r, tol);
    }
    let semisimple = integral.is_some();
    let oracle = semisimplicity_oracle(a);
    if let Some(o) = oracle {
        checks.flag("semisimplicity oracle agrees", o == semisimple);
    }
    Ok(NormalizedIntegral { side, integral, semisimple, oracle, checks })
}

/// Rank test of φ ↦ φ⇀l from Â to A.
pub fn is_nondegenerate_element<F: Field>(a: &Wha<F>, l: &[F::Elem]) -> bool {
    a.dim() > 0 && a.coproduct(l).rank() == a.dim()
}

#[derive(Clone, Debug, Serialize)]
pub struct NondegeneracyReport {
    pub nondegenerate: bool,
    /// Separating and cyclic for the action of A^L and of A^R.
    pub separating_left: bool,
    pub separating_right: bool,
    pub cyclic_left: bool,
    pub cyclic_right: bool,
}

impl NondegeneracyReport {
    pub fn consistent(&self) -> bool {
        let v = self.nondegenerate;
        [self.separating_left, self.separating_right, self.cyclic_left, self.cyclic_right].iter().all(|&b| b == v)
    }
}

/// Non-degeneracy of an integral, cross-checked against the separating and
/// cyclic characterizations (right action on I^L, left action on I^R).
pub fn integral_nondegeneracy<F: Field>(a: &Wha<F>, l: &[F::Elem], side: Side) -> Result<NondegeneracyReport> {
    let space = integral_space(a, side)?;
    if !space.contains(l) {
        return Err(WhaError::Precondition("element is not an integral on the requested side".into()));
    }
    let sub = counital_subalgebras(a)?;
    let act = match side {
        Side::Left => a.left_mul_matrix(l),
        Side::Right => a.right_mul_matrix(l),
    };
    let probe = |s: &Subspace<F>| {
        let img = s.image(&act);
        (img.dim() == s.dim(), img.same_as(&space.space))
    };
    let (separating_left, cyclic_left) = probe(&sub.left);
    let (separating_right, cyclic_right) = probe(&sub.right);
    Ok(NondegeneracyReport {
        nondegenerate: is_nondegenerate_element(a, l),
        separating_left,
        separating_right,
        cyclic_left,
        cyclic_right,
    })
}

#[derive(Clone, Debug)]
pub struct DualPair<F: Field> {
    pub l: Vector<F>,
    pub lambda: Vector<F>,
    pub checks: CheckList,
}

/// Solves λ⇀l = 1 and certifies the dual-pair relations.
pub fn dual_left_integral<F: Field>(a: &Wha<F>, l: &[F::Elem]) -> Result<DualPair<F>> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    if !integral_space(a, Side::Left)?.contains(l) {
        return Err(WhaError::Precondition("not a left integral".into()));
    }
    let d = a.coproduct(l);
    if d.rank() < n {
        return Err(WhaError::NoDualPair("left integral is degenerate".into()));
    }
    let lambda = match solve_affine(&d, Some(a.unit())) {
        Ok(s) => s.particular.expect("rhs supplied"),
        Err(WhaError::NoSolution) => return Err(WhaError::NoDualPair("λ⇀l = 1 has no solution".into())),
        Err(e) => return Err(e),
    };
    let mut checks = CheckList::new();
    checks.residual("λ⇀l = 1", vector::dist(f, &a.dual_hit(&lambda, l), a.unit()), tol);
    checks.residual("l⇀λ = ε", vector::dist(f, &a.hit(l, &lambda), a.counit()), tol);
    let dual = a.dual();
    checks.flag("λ ∈ I^L(Â)", integral_space(&dual, Side::Left)?.contains(&lambda));
    let comp = Mat::from_columns(
        f,
        n,
        &(0..n).map(|x| a.dual_hit(&a.hit_from_right(&lambda, &a.basis_vector(x)), l)).collect::<Vec<_>>(),
    );
    checks.residual("l_R∘λ_L = S", comp.dist(a.antipode()), tol);
    let sinv = a.antipode_power(-1)?;
    // quasibasis of λ is l₂⊗S⁻¹(l₁)
    let qb = d.transpose().mul(&sinv.transpose());
    let g = super::gram_matrix(a, &lambda);
    if let Some(gi) = g.inverse() {
        checks.residual("quasibasis of λ = l₂⊗S⁻¹(l₁)", gi.dist(&qb), tol);
    } else {
        checks.flag("λ non-degenerate", false);
    }
    let index = a.mu(&qb);
    let want = sinv.mul_vec(&a.pi(l, Side::Left));
    checks.residual("Index λ = S⁻¹Π^L(l)", vector::dist(f, &index, &want), tol);
    Ok(DualPair { l: l.to_vec(), lambda, checks })
}
