//! The weak Hopf algebra B⊗B^op built from a non-degenerate functional E on B
//! with index 1.

use super::{wants_star, Algebra};
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{vector, Mat, Tensor3, Vector};
use crate::wha::{Side, Wha};

#[derive(Clone, Debug)]
pub struct Bbop<F: Field> {
    pub wha: Wha<F>,
    /// Gram matrix G[i][j] = E(e_i e_j).
    pub gram: Mat<F>,
    /// f_j with E(e_i f_j) = δ_ij.
    pub dual_basis: Vec<Vector<F>>,
    /// Modular automorphism of E; column i is θ(e_i).
    pub theta: Mat<F>,
    pub checks: CheckList,
}

fn gram<F: Field>(b: &Algebra<F>, e: &[F::Elem]) -> Result<Mat<F>> {
    if e.len() != b.dim() {
        return Err(WhaError::Dimension(format!("functional has length {}, algebra has dimension {}", e.len(), b.dim())));
    }
    let n = b.dim();
    let f = &b.field;
    Ok(Mat::from_fn(f, n, n, |i, j| vector::dot(f, e, &b.mul(&b.basis(i), &b.basis(j)))))
}

/// The dual basis {f_j} of the basis {e_i} with respect to E.
pub fn dual_basis<F: Field>(b: &Algebra<F>, e: &[F::Elem]) -> Result<Vec<Vector<F>>> {
    let g = gram(b, e)?;
    let gi = g.inverse().ok_or_else(|| WhaError::Degenerate("E(xy) is a degenerate bilinear form".into()))?;
    Ok(gi.columns())
}

/// Σ f_i e_i.
pub fn index_element<F: Field>(b: &Algebra<F>, e: &[F::Elem]) -> Result<Vector<F>> {
    let fs = dual_basis(b, e)?;
    let f = &b.field;
    let mut out = vector::zeros(f, b.dim());
    for (i, fi) in fs.iter().enumerate() {
        out = vector::add(f, &out, &b.mul(fi, &b.basis(i)));
    }
    Ok(out)
}

/// If the index of E is λ·1 with λ ≠ 0, returns (λ, λE), which has index 1.
pub fn normalize_functional<F: Field>(b: &Algebra<F>, e: &[F::Elem]) -> Result<(F::Elem, Vector<F>)> {
    let f = &b.field;
    let idx = index_element(b, e)?;
    let k = (0..b.dim())
        .find(|&k| !f.is_zero(&b.unit[k]))
        .ok_or_else(|| WhaError::InvalidInput("algebra has zero unit".into()))?;
    let lambda = f.div(&idx[k], &b.unit[k]).expect("nonzero pivot");
    let resid = vector::dist(f, &idx, &vector::scale(f, &lambda, &b.unit));
    if resid > f.tolerance() || f.is_zero(&lambda) {
        return Err(WhaError::IndexNotOne(format!("index of E is not a nonzero multiple of 1 (residual {resid:.3e})")));
    }
    let scaled = vector::scale(f, &lambda, e);
    Ok((lambda, scaled))
}

/// E(x) = tr(x γ) on M_n in the matrix-unit basis e_ij ↦ i·n + j.
pub fn trace_functional<F: Field>(gamma: &Mat<F>) -> Vector<F> {
    let n = gamma.rows();
    (0..n * n).map(|c| gamma[(c % n, c / n)].clone()).collect()
}

fn outer<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Mat<F> {
    Mat::from_fn(f, x.len(), y.len(), |i, j| f.mul(&x[i], &y[j]))
}

fn sum_outer<F: Field>(f: &F, n: usize, pairs: impl Iterator<Item = (Vector<F>, Vector<F>)>) -> Mat<F> {
    pairs.fold(Mat::zeros(f, n, n), |acc, (x, y)| acc.add(&outer(f, &x, &y)))
}

/// Builds B⊗B^op with basis e_a⊗e_b at index a·d + b.
pub fn bbop<F: Field>(b: &Algebra<F>, e: &[F::Elem]) -> Result<Bbop<F>> {
    let f = &b.field;
    let d = b.dim();
    let g = gram(b, e)?;
    let gi = g.inverse().ok_or_else(|| WhaError::Degenerate("E(xy) is a degenerate bilinear form".into()))?;
    let fs = gi.columns();
    let tol = f.tolerance();

    let idx = index_element(b, e)?;
    let idx_resid = vector::dist(f, &idx, &b.unit);
    if idx_resid > tol {
        return Err(WhaError::IndexNotOne(format!("Σ f_i e_i differs from 1 by {idx_resid:.3e}")));
    }
    let theta = gi.mul(&g.transpose());
    let theta_inv = theta.inverse().ok_or_else(|| WhaError::Inconsistent("modular automorphism not invertible".into()))?;

    let mut mult = Vec::new();
    for (a, x, k, c1) in b.mult.entries() {
        for (y, bb, l, c2) in b.mult.entries() {
            mult.push((a * d + bb, x * d + y, k * d + l, f.mul(c1, c2)));
        }
    }
    let mut comult = Vec::new();
    for a in 0..d {
        for bb in 0..d {
            for k in 0..d {
                for i in 0..d {
                    let c = &gi[(k, i)];
                    if !f.is_exact_zero(c) {
                        comult.push((a * d + bb, a * d + k, i * d + bb, c.clone()));
                    }
                }
            }
        }
    }
    let n = d * d;
    let comult = Tensor3::new(f, [n, n, n], comult)?;
    let counit: Vector<F> = (0..n).map(|c| g[(c / d, c % d)].clone()).collect();
    let unit: Vector<F> = (0..n).map(|c| f.mul(&b.unit[c / d], &b.unit[c % d])).collect();
    let antipode = Mat::from_fn(f, n, n, |r, c| {
        let (a, bb) = (c / d, c % d);
        let (r1, l) = (r / d, r % d);
        if r1 == bb {
            theta[(l, a)].clone()
        } else {
            f.zero()
        }
    });
    let star = match (&b.star, wants_star(f)) {
        (Some(t), true) => {
            let tt = theta.mul(t);
            Some(Mat::from_fn(f, n, n, |r, c| {
                let (a, bb) = (c / d, c % d);
                f.mul(&t[(r / d, a)], &tt[(r % d, bb)])
            }))
        }
        _ => None,
    };
    let labels = b.labels.iter().flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}"))).collect();
    let wha = Wha::new(f.clone(), labels, Tensor3::new(f, [n, n, n], mult)?, unit, comult, counit, antipode, star)?;

    let mut checks = CheckList::new();
    let canonical = gi.clone();
    // a) another basis: unipotent upper-triangular change, invertible over every field
    let p = Mat::from_fn(f, d, d, |i, j| if i <= j { f.one() } else { f.zero() });
    let g2 = p.transpose().mul(&g).mul(&p);
    let r_a = match g2.inverse() {
        Some(g2i) => p.mul(&g2i).mul(&p.transpose()).dist(&canonical),
        None => f64::INFINITY,
    };
    checks.residual("Σ f_i⊗e_i is basis independent", r_a, tol);
    let mut r_b: f64 = 0.0;
    for x in 0..d {
        let xv = b.basis(x);
        let left = vector::combine(f, d, &fs.iter().map(|fi| vector::dot(f, e, &b.mul(&xv, fi))).collect::<Vec<_>>(), &(0..d).map(|i| b.basis(i)).collect::<Vec<_>>());
        let right = vector::combine(f, d, &(0..d).map(|i| vector::dot(f, e, &b.mul(&b.basis(i), &xv))).collect::<Vec<_>>(), &fs);
        r_b = r_b.max(vector::dist(f, &left, &xv)).max(vector::dist(f, &right, &xv));
    }
    checks.residual("dual basis expansion", r_b, tol);
    checks.residual("Σ f_i e_i = 1", idx_resid, tol);
    let (mut r_d, mut r_e): (f64, f64) = (0.0, 0.0);
    for x in 0..d {
        let xv = b.basis(x);
        let tx = theta.column(x);
        let l = sum_outer(f, d, (0..d).map(|i| (b.mul(&xv, &fs[i]), b.basis(i))));
        let r = sum_outer(f, d, (0..d).map(|i| (fs[i].clone(), b.mul(&b.basis(i), &xv))));
        r_d = r_d.max(l.dist(&r));
        let l = sum_outer(f, d, (0..d).map(|i| (fs[i].clone(), b.mul(&xv, &b.basis(i)))));
        let r = sum_outer(f, d, (0..d).map(|i| (b.mul(&fs[i], &tx), b.basis(i))));
        r_e = r_e.max(l.dist(&r));
    }
    checks.residual("x f_i⊗e_i = f_i⊗e_i x", r_d, tol);
    checks.residual("f_i⊗x e_i = f_i θ(x)⊗e_i", r_e, tol);
    let base = sum_outer(f, d, (0..d).map(|i| (fs[i].clone(), b.basis(i))));
    let alt1 = sum_outer(f, d, (0..d).map(|i| (b.basis(i), theta_inv.mul_vec(&fs[i]))));
    let alt2 = sum_outer(f, d, (0..d).map(|i| (theta.column(i), fs[i].clone())));
    checks.residual("f_i⊗e_i = e_i⊗θ⁻¹(f_i) = θ(e_i)⊗f_i", base.dist(&alt1).max(base.dist(&alt2)), tol);

    let (mut r_pl, mut r_pr): (f64, f64) = (0.0, 0.0);
    for a in 0..d {
        for bb in 0..d {
            let v = wha.basis_vector(a * d + bb);
            let xy = b.mul(&b.basis(a), &b.basis(bb));
            let want_l: Vector<F> = outer(f, &xy, &b.unit).into_vec();
            let yt = b.mul(&b.basis(bb), &theta.column(a));
            let want_r: Vector<F> = outer(f, &b.unit, &yt).into_vec();
            r_pl = r_pl.max(vector::dist(f, &wha.pi(&v, Side::Left), &want_l));
            r_pr = r_pr.max(vector::dist(f, &wha.pi(&v, Side::Right), &want_r));
        }
    }
    checks.residual("Π^L(x⊗y) = xy⊗1", r_pl, tol);
    checks.residual("Π^R(x⊗y) = 1⊗yθ(x)", r_pr, tol);

    Ok(Bbop { wha, gram: g, dual_basis: fs, theta, checks })
}

impl<F: Field> Bbop<F> {
    /// The canonical left integral Σ f_i⊗e_i.
    pub fn canonical_integral(&self) -> Vector<F> {
        let f = self.wha.field();
        let d = self.dual_basis.len();
        let mut out = vector::zeros(f, d * d);
        for (i, fi) in self.dual_basis.iter().enumerate() {
            for k in 0..d {
                out[k * d + i] = f.add(&out[k * d + i], &fi[k]);
            }
        }
        out
    }
}
