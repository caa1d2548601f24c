//! Spectral tools over the complex field: Hermitian eigen-decomposition by
//! cyclic Jacobi rotations, positive square roots, and the splitting of a
//! commutative semisimple algebra into minimal idempotents.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::mat::Mat;
use super::solve::solve_affine;
use super::vector::{self, Vector};
use crate::error::{Result, WhaError};
use crate::field::Complexes;

/// Reseeds allowed in [`split_commutative`].
pub const SPLIT_ATTEMPTS: usize = 16;

const MAX_SWEEPS: usize = 100;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn is_hermitian(m: &Mat<Complexes>) -> bool {
    m.is_square() && m.dist(&m.adjoint()) <= m.field().tol * (1.0 + m.max_abs())
}

/// Eigenvalues (ascending) and unitary eigenvector matrix of a Hermitian matrix.
pub fn hermitian_eigen(m: &Mat<Complexes>) -> Result<(Vec<f64>, Mat<Complexes>)> {
    if !is_hermitian(m) {
        return Err(WhaError::Precondition("matrix is not Hermitian".into()));
    }
    let f = *m.field();
    let n = m.rows();
    // symmetrize away rounding noise before rotating
    let mut a = m.add(&m.adjoint()).scale(&c(0.5));
    let mut v = Mat::identity(&f, n);
    let total: f64 = a.entries().iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // U on the (p,q) plane: [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]
                let ph_bar = phase.conj();
                let upp = c(cs);
                let upq = c(sn);
                let uqp = -ph_bar * sn;
                let uqq = ph_bar * cs;
                for i in 0..n {
                    let (x, y) = (a[(i, p)], a[(i, q)]);
                    a[(i, p)] = x * upp + y * uqp;
                    a[(i, q)] = x * upq + y * uqq;
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x * upp + y * uqp;
                    v[(i, q)] = x * upq + y * uqq;
                }
                for j in 0..n {
                    let (x, y) = (a[(p, j)], a[(q, j)]);
                    a[(p, j)] = upp.conj() * x + uqp.conj() * y;
                    a[(q, j)] = upq.conj() * x + uqq.conj() * y;
                }
                a[(p, q)] = c(0.0);
                a[(q, p)] = c(0.0);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = Mat::from_fn(&f, n, n, |i, j| v[(i, order[j])]);
    Ok((values, vecs))
}

/// Spectral function of a Hermitian matrix: V·diag(g(λ))·V*.
fn spectral_apply(m: &Mat<Complexes>, values: &[f64], vecs: &Mat<Complexes>, g: impl Fn(f64) -> f64) -> Mat<Complexes> {
    let n = m.rows();
    let d = Mat::from_fn(m.field(), n, n, |i, j| if i == j { c(g(values[i])) } else { c(0.0) });
    vecs.mul(&d).mul(&vecs.adjoint())
}

/// The unique positive semidefinite square root.
pub fn hermitian_sqrt(m: &Mat<Complexes>) -> Result<Mat<Complexes>> {
    let tol = m.field().tol;
    let (values, vecs) = hermitian_eigen(m)?;
    if let Some(&low) = values.first() {
        if low < -tol {
            return Err(WhaError::NotPositive(format!("eigenvalue {low:e} below -{tol:e}")));
        }
    }
    let r = spectral_apply(m, &values, &vecs, |x| x.max(0.0).sqrt());
    let res = r.mul(&r).dist(m);
    if res > tol * (1.0 + m.max_abs()) * 10.0 {
        return Err(WhaError::Inconsistent(format!("square root residual {res:e}")));
    }
    Ok(r)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &Mat<Complexes>) -> Result<f64> {
    let (values, _) = hermitian_eigen(m)?;
    Ok(values.first().copied().unwrap_or(0.0))
}

/// Eigenvalues of a general complex matrix: Householder reduction to
/// Hessenberg form followed by Wilkinson-shifted QR sweeps.
fn general_eigenvalues(m: &Mat<Complexes>) -> Result<Vec<Complex64>> {
    let n = m.rows();
    let mut h: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i)).collect();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-300 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { c(1.0) };
        let mut v = x.clone();
        v[0] += phase * norm;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn <= 1e-300 {
            continue;
        }
        for z in &mut v {
            *z /= vn;
        }
        // H ← (I − 2vv*) H (I − 2vv*) on the trailing block
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * h[k + 1 + t][j]).sum();
            for (t, vt) in v.iter().enumerate() {
                h[k + 1 + t][j] -= vt * s * 2.0;
            }
        }
        for row in h.iter_mut() {
            let s: Complex64 = v.iter().enumerate().map(|(t, vt)| row[k + 1 + t] * vt).sum();
            for (t, vt) in v.iter().enumerate() {
                row[k + 1 + t] -= s * vt.conj() * 2.0;
            }
        }
    }
    let mut eig = vec![c(0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let mut hi = n - 1;
    let mut iters = 0;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = h[l - 1][l - 1].norm() + h[l][l].norm();
            if h[l][l - 1].norm() <= 1e-15 * s.max(1e-300) {
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        if iters > 500 {
            return Err(WhaError::SplitFailed("QR iteration did not converge".into()));
        }
        let (a, b, cc, d) = (h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
        let half = (a - d) * 0.5;
        let disc = (half * half + b * cc).sqrt();
        let m1 = (a + d) * 0.5 + disc;
        let m2 = (a + d) * 0.5 - disc;
        let mut mu = if (m1 - d).norm() < (m2 - d).norm() { m1 } else { m2 };
        if iters % 11 == 10 {
            mu += c(h[hi][hi - 1].norm());
        }
        for (i, row) in h.iter_mut().enumerate().take(hi + 1).skip(l) {
            row[i] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h[k][k];
            let y = h[k + 1][k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (gc, gs) = if r <= 1e-300 { (c(1.0), c(0.0)) } else { (x / r, y / r) };
            for j in k..=hi {
                let (p, q) = (h[k][j], h[k + 1][j]);
                h[k][j] = gc.conj() * p + gs.conj() * q;
                h[k + 1][j] = -gs * p + gc * q;
            }
            rots.push((gc, gs));
        }
        for (idx, k) in (l..hi).enumerate() {
            let (gc, gs) = rots[idx];
            for row in h.iter_mut().take((k + 2).min(hi) + 1).skip(l) {
                let (p, q) = (row[k], row[k + 1]);
                row[k] = p * gc + q * gs;
                row[k + 1] = -gs.conj() * p + gc.conj() * q;
            }
        }
        for (i, row) in h.iter_mut().enumerate().take(hi + 1).skip(l) {
            row[i] += mu;
        }
    }
    eig[0] = h[0][0];
    Ok(eig)
}

/// Dense solve with partial pivoting and no zero-threshold, for inverse iteration.
fn solve_shifted(m: &Mat<Complexes>, shift: Complex64, rhs: &[Complex64]) -> Vec<Complex64> {
    let n = m.rows();
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i)).collect();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= shift;
    }
    let mut b = rhs.to_vec();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
        a.swap(col, p);
        b.swap(col, p);
        if a[col][col].norm() < 1e-300 {
            a[col][col] = c(1e-300);
        }
        for i in col + 1..n {
            let factor = a[i][col] / a[col][col];
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let t = a[col][j];
                a[i][j] -= factor * t;
            }
            let t = b[col];
            b[i] -= factor * t;
        }
    }
    let mut x = vec![c(0.0); n];
    for i in (0..n).rev() {
        let s: Complex64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Element of the algebra with coordinates `x`, as a multiplication matrix.
fn action_of(f: &Complexes, actions: &[Mat<Complexes>], x: &[Complex64]) -> Mat<Complexes> {
    let n = actions[0].rows();
    let mut m = Mat::zeros(f, n, n);
    for (xi, a) in x.iter().zip(actions) {
        if xi.norm() != 0.0 {
            m = m.add(&a.scale(xi));
        }
    }
    m
}

/// Minimal idempotents of a commutative semisimple algebra given by its
/// regular representation (`mult_action[k]` is multiplication by the k-th
/// basis element).
pub fn split_commutative(mult_action: &[Mat<Complexes>], seed: u64) -> Result<Vec<Vector<Complexes>>> {
    let dim = mult_action.len();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let f = *mult_action[0].field();
    if mult_action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err(WhaError::Dimension("regular representation must be dim×dim".into()));
    }
    // the unit u satisfies M_k u = e_k for every k
    let stacked = Mat::vstack(&f, mult_action);
    let rhs: Vec<Complex64> = (0..dim).flat_map(|k| vector::unit(&f, dim, k)).collect();
    let unit = solve_affine(&stacked, Some(&rhs))
        .map_err(|_| WhaError::SplitFailed("algebra has no unit".into()))?
        .particular
        .unwrap_or_default();
    let tol = f.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..SPLIT_ATTEMPTS {
        let z: Vec<Complex64> =
            (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let mz = action_of(&f, mult_action, &z);
        let eig = general_eigenvalues(&mz)?;
        let scale = 1.0 + mz.max_abs();
        let gap = (0..dim)
            .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
            .map(|(i, j)| (eig[i] - eig[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if gap < 1e-6 * scale {
            last = format!("eigenvalue collision (gap {gap:e})");
            continue;
        }
        let mut idempotents = Vec::with_capacity(dim);
        let mut ok = true;
        for lam in &eig {
            let mut w: Vec<Complex64> =
                (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let shift = lam + Complex64::new(1e-10 * scale, 1e-10 * scale);
            for _ in 0..3 {
                w = solve_shifted(&mz, shift, &w);
                let nrm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                w.iter_mut().for_each(|x| *x /= nrm);
            }
            let sq = action_of(&f, mult_action, &w).mul_vec(&w);
            let num: Complex64 = w.iter().zip(&sq).map(|(a, b)| a.conj() * b).sum();
            let den: f64 = w.iter().map(|a| a.norm_sqr()).sum();
            let ratio = num / den;
            if ratio.norm() < 1e-8 {
                ok = false;
                last = "nilpotent eigenvector: algebra is not semisimple".into();
                break;
            }
            let mut e: Vec<Complex64> = w.iter().map(|x| x / ratio).collect();
            // Newton-type polishing e ← 3e² − 2e³
            for _ in 0..3 {
                let le = action_of(&f, mult_action, &e);
                let e2 = le.mul_vec(&e);
                let e3 = le.mul_vec(&e2);
                e = e2.iter().zip(&e3).map(|(a, b)| a * 3.0 - b * 2.0).collect();
            }
            idempotents.push(e);
        }
        if !ok {
            continue;
        }
        let check_tol = 100.0 * tol * scale;
        let total = idempotents.iter().fold(vector::zeros(&f, dim), |acc, e| vector::add(&f, &acc, e));
        let mut worst = vector::dist(&f, &total, &unit);
        for (i, ei) in idempotents.iter().enumerate() {
            let li = action_of(&f, mult_action, ei);
            for (j, ej) in idempotents.iter().enumerate() {
                let prod = li.mul_vec(ej);
                let expect = if i == j { ei.clone() } else { vector::zeros(&f, dim) };
                worst = worst.max(vector::dist(&f, &prod, &expect));
            }
        }
        if worst <= check_tol {
            return Ok(idempotents);
        }
        last = format!("idempotent residual {worst:e}");
    }
    Err(WhaError::SplitFailed(format!("{last}; try another seed")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_eigenvalues_of_triangular() {
        let f = Complexes::default();
        let m = Mat::from_rows(&f, vec![vec![c(2.0), c(1.0), c(3.0)], vec![c(0.0), c(-1.0), c(5.0)], vec![c(0.0), c(0.0), c(4.0)]]);
        let mut e: Vec<f64> = general_eigenvalues(&m).unwrap().iter().map(|z| z.re).collect();
        e.sort_by(f64::total_cmp);
        assert!((e[0] + 1.0).abs() < 1e-10 && (e[1] - 2.0).abs() < 1e-10 && (e[2] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn general_eigenvalues_rotation() {
        let f = Complexes::default();
        let m = Mat::from_rows(&f, vec![vec![c(0.0), c(-1.0)], vec![c(1.0), c(0.0)]]);
        let e = general_eigenvalues(&m).unwrap();
        for z in e {
            assert!((z.norm() - 1.0).abs() < 1e-10 && z.re.abs() < 1e-10);
        }
    }
}
