//! Coordinate vectors as plain `Vec`s, with field-aware helpers.

use crate::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zeros<F: Field>(f: &F, n: usize) -> Vector<F> {
    vec![f.zero(); n]
}

pub fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zeros(f, n);
    v[i] = f.one();
    v
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn conj<F: Field>(f: &F, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| f.conj(x)).collect()
}

/// `y += c·x`
pub fn axpy<F: Field>(f: &F, c: &F::Elem, x: &[F::Elem], y: &mut [F::Elem]) {
    if f.is_exact_zero(c) {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !f.is_exact_zero(xi) {
            *yi = f.add(yi, &f.mul(c, xi));
        }
    }
}

/// Bilinear pairing Σ aᵢbᵢ (no conjugation).
pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_exact_zero(x) && !f.is_exact_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn max_abs<F: Field>(f: &F, a: &[F::Elem]) -> f64 {
    a.iter().map(|x| f.magnitude(x)).fold(0.0, f64::max)
}

/// Largest coordinate difference; infinite on length mismatch.
pub fn dist<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| f.magnitude(&f.sub(x, y))).fold(0.0, f64::max)
}

pub fn is_zero<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn approx_eq<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| f.eq_tol(x, y))
}

/// Σ cᵢ vᵢ
pub fn combine<F: Field>(f: &F, n: usize, coeffs: &[F::Elem], vecs: &[Vector<F>]) -> Vector<F> {
    let mut out = zeros(f, n);
    for (c, v) in coeffs.iter().zip(vecs) {
        axpy(f, c, v, &mut out);
    }
    out
}

pub fn random<F: Field, R: rand::Rng + ?Sized>(f: &F, n: usize, rng: &mut R) -> Vector<F> {
    (0..n).map(|_| f.random(rng)).collect()
}
