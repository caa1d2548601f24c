//! N⊗_{A^L}A and the isomorphism Coinv M ⊗_{A^L} A ≅ M.

use super::{check_whm, coinvariants, whm_projection_matrix, RightWHM};
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{row_reduce, Mat, Subspace, Vector};
use crate::wha::{counital_subalgebras, Wha};

/// Quotient of N⊗A, with index i·n + a for n_i⊗b_a.
#[derive(Clone, Debug)]
pub struct Amalgamated<F: Field> {
    pub whm: RightWHM<F>,
    /// N⊗A → quotient.
    pub quotient: Mat<F>,
    /// A section of `quotient`: standard basis vectors outside the relation pivots.
    pub lift: Mat<F>,
    pub relation_rank: usize,
    pub checks: CheckList,
}

/// I_p ⊗ B for an n×n matrix B acting on the second factor.
fn on_second<F: Field>(f: &F, p: usize, b: &Mat<F>) -> Mat<F> {
    let n = b.rows();
    Mat::from_fn(f, p * n, p * n, |r, c| if r / n == c / n { b[(r % n, c % n)].clone() } else { f.zero() })
}

/// N⊗_{A^L}A for a right A^L-module N of dimension `n_dim`, given by
/// (x^L, matrix of n ↦ n·x^L) pairs whose elements span A^L.
pub fn amalgamated_product<F: Field>(a: &Wha<F>, n_dim: usize, al_action: &[(Vector<F>, Mat<F>)]) -> Result<Amalgamated<F>> {
    let f = a.field();
    let n = a.dim();
    let p = n_dim;
    let tol = a.tol();
    let al = counital_subalgebras(a)?.left;
    let given: Vec<Vector<F>> = al_action.iter().map(|(x, _)| x.clone()).collect();
    if !Subspace::span(f, n, &given).same_as(&al) {
        return Err(WhaError::Precondition("the acting elements must span A^L".into()));
    }
    if al_action.iter().any(|(_, m)| m.rows() != p || m.cols() != p) {
        return Err(WhaError::Dimension(format!("A^L action matrices must be {p}×{p}")));
    }
    let pn = p * n;
    // (n·x^L)⊗a − n⊗(x^L a)
    let mut rel: Vec<Vec<F::Elem>> = Vec::new();
    for (x, act) in al_action {
        let lx = a.left_mul_matrix(x);
        for i in 0..p {
            for b in 0..n {
                let mut v = vec![f.zero(); pn];
                for j in 0..p {
                    v[j * n + b] = f.add(&v[j * n + b], &act[(j, i)]);
                }
                for c in 0..n {
                    v[i * n + c] = f.sub(&v[i * n + c], &lx[(c, b)]);
                }
                rel.push(v);
            }
        }
    }
    let (rref, pivots) = if rel.is_empty() { (Mat::zeros(f, 0, pn), Vec::new()) } else { row_reduce(&Mat::from_rows(f, rel)) };
    let mut is_pivot = vec![None; pn];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let free: Vec<usize> = (0..pn).filter(|&c| is_pivot[c].is_none()).collect();
    let q = free.len();
    let quotient = Mat::from_fn(f, q, pn, |j, c| match is_pivot[c] {
        None => {
            if c == free[j] {
                f.one()
            } else {
                f.zero()
            }
        }
        Some(r) => f.neg(&rref[(r, free[j])]),
    });
    let lift = Mat::from_fn(f, pn, q, |r, j| if r == free[j] { f.one() } else { f.zero() });
    let rel_basis = Mat::from_fn(f, pn, pivots.len(), |r, c| rref[(c, r)].clone());

    let mut checks = CheckList::new();
    checks.residual("quotient kills relations", quotient.mul(&rel_basis).max_abs(), tol);
    checks.residual("quotient∘lift = id", quotient.mul(&lift).dist(&Mat::identity(f, q)), tol);
    let mut action = Vec::with_capacity(n);
    let mut coaction = Vec::with_capacity(n);
    let (mut ra, mut rc): (f64, f64) = (0.0, 0.0);
    for x in 0..n {
        let full = on_second(f, p, &a.right_mul_matrix(&a.basis_vector(x)));
        ra = ra.max(quotient.mul(&full).mul(&rel_basis).max_abs());
        action.push(quotient.mul(&full).mul(&lift));
    }
    for k in 0..n {
        // a ↦ a₍₁₎⟨b_k-coefficient of a₍₂₎⟩
        let mut dk = Mat::zeros(f, n, n);
        for (b, i, kk, c) in a.comult().entries() {
            if *kk == k {
                dk[(*i, *b)] = f.add(&dk[(*i, *b)], c);
            }
        }
        let full = on_second(f, p, &dk);
        rc = rc.max(quotient.mul(&full).mul(&rel_basis).max_abs());
        coaction.push(quotient.mul(&full).mul(&lift));
    }
    checks.residual("relations invariant under the action", ra, tol);
    checks.residual("relations invariant under the coaction", rc, tol);
    let whm = RightWHM { dim: q, action, coaction };
    checks.extend_prefixed("N⊗A: ", check_whm(a, &whm));
    Ok(Amalgamated { whm, quotient, lift, relation_rank: pivots.len(), checks })
}

#[derive(Clone, Debug)]
pub struct FundamentalIso<F: Field> {
    pub coinvariants: Subspace<F>,
    pub product: Amalgamated<F>,
    /// N⊗_{A^L}A → M.
    pub alpha: Mat<F>,
    /// M → N⊗_{A^L}A.
    pub beta: Mat<F>,
    pub checks: CheckList,
}

/// α(n⊗x) = n·x with inverse β(m) = E(m₀)⊗m₁.
pub fn fundamental_iso<F: Field>(a: &Wha<F>, m: &RightWHM<F>) -> Result<FundamentalIso<F>> {
    let f = a.field();
    let n = a.dim();
    let d = m.dim;
    let tol = a.tol();
    let coinv = coinvariants(a, m)?;
    let p = coinv.dim();
    let nb = coinv.matrix();
    let al = counital_subalgebras(a)?.left;
    let coords = |v: &[F::Elem]| coinv.coordinates(v).ok_or_else(|| WhaError::Inconsistent("leaves the coinvariants".into()));
    let mut al_action = Vec::new();
    for x in al.basis() {
        let act = m.act(f, x);
        let cols = nb.columns().iter().map(|v| coords(&act.mul_vec(v))).collect::<Result<Vec<_>>>()?;
        al_action.push((x.clone(), Mat::from_columns(f, p, &cols)));
    }
    let product = amalgamated_product(a, p, &al_action)?;
    let alpha_full = Mat::from_columns(
        f,
        d,
        &(0..p * n).map(|c| m.action[c % n].mul_vec(&nb.column(c / n))).collect::<Vec<_>>(),
    );
    let alpha = alpha_full.mul(&product.lift);
    let e = whm_projection_matrix(a, m);
    let mut beta_full = Mat::zeros(f, p * n, d);
    for k in 0..n {
        let ek = e.mul(&m.coaction[k]);
        for col in 0..d {
            let c = coords(&ek.column(col))?;
            for i in 0..p {
                beta_full[(i * n + k, col)] = c[i].clone();
            }
        }
    }
    let beta = product.quotient.mul(&beta_full);
    let mut checks = CheckList::new();
    let r1 = alpha.mul(&beta).dist(&Mat::identity(f, d));
    let r2 = beta.mul(&alpha).dist(&Mat::identity(f, product.whm.dim));
    if r1 > tol || r2 > tol {
        return Err(WhaError::Inconsistent(format!("α and β are not mutually inverse ({r1:.2e}, {r2:.2e})")));
    }
    checks.residual("α∘β = id", r1, tol);
    checks.residual("β∘α = id", r2, tol);
    let (mut ra, mut rc): (f64, f64) = (0.0, 0.0);
    for x in 0..n {
        ra = ra.max(alpha.mul(&product.whm.action[x]).dist(&m.action[x].mul(&alpha)));
        rc = rc.max(alpha.mul(&product.whm.coaction[x]).dist(&m.coaction[x].mul(&alpha)));
    }
    checks.residual("α intertwines the action", ra, tol);
    checks.residual("α intertwines the coaction", rc, tol);
    checks.extend_prefixed("", product.checks.clone());
    Ok(FundamentalIso { coinvariants: coinv, product, alpha, beta, checks })
}
