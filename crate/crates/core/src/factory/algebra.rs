//! Plain unital algebras, the input of the B⊗B^op construction.

use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{vector, Mat, Tensor3, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F: Field> {
    pub field: F,
    pub labels: Vec<String>,
    pub mult: Tensor3<F>,
    pub unit: Vector<F>,
    /// Optional antilinear involution, x* = T·conj(x).
    pub star: Option<Mat<F>>,
}

impl<F: Field> Algebra<F> {
    pub fn new(field: &F, labels: Vec<String>, mult: Tensor3<F>, unit: Vector<F>, star: Option<Mat<F>>) -> Result<Self> {
        let n = labels.len();
        if mult.dims() != [n, n, n] || unit.len() != n || star.as_ref().is_some_and(|s| s.rows() != n || s.cols() != n) {
            return Err(WhaError::Dimension(format!("algebra data inconsistent with dimension {n}")));
        }
        let a = Algebra { field: field.clone(), labels, mult, unit, star };
        let id = Mat::identity(field, n);
        let lu = Mat::from_columns(field, n, &(0..n).map(|j| a.mul(&a.unit, &a.basis(j))).collect::<Vec<_>>());
        let ru = Mat::from_columns(field, n, &(0..n).map(|j| a.mul(&a.basis(j), &a.unit)).collect::<Vec<_>>());
        if lu.dist(&id) > field.tolerance() || ru.dist(&id) > field.tolerance() {
            return Err(WhaError::InvalidInput("unit is not a two-sided unit".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (a.basis(i), a.basis(j), a.basis(k));
                    let d = vector::dist(field, &a.mul(&a.mul(&x, &y), &z), &a.mul(&x, &a.mul(&y, &z)));
                    if d > field.tolerance() {
                        return Err(WhaError::InvalidInput("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis(&self, i: usize) -> Vector<F> {
        vector::unit(&self.field, self.dim(), i)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = vector::zeros(f, self.dim());
        for (i, j, k, c) in self.mult.entries() {
            if f.is_exact_zero(&x[*i]) || f.is_exact_zero(&y[*j]) {
                continue;
            }
            out[*k] = f.add(&out[*k], &f.mul(c, &f.mul(&x[*i], &y[*j])));
        }
        out
    }

    pub fn left_mul_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let n = self.dim();
        Mat::from_columns(&self.field, n, &(0..n).map(|j| self.mul(x, &self.basis(j))).collect::<Vec<_>>())
    }

    pub fn apply_star(&self, x: &[F::Elem]) -> Option<Vector<F>> {
        self.star.as_ref().map(|t| t.mul_vec(&vector::conj(&self.field, x)))
    }
}

/// M_n(K) on matrix units e_ij (index i·n + j), with e_ij* = e_ji.
pub fn matrix_algebra<F: Field>(field: &F, n: usize) -> Algebra<F> {
    let d = n * n;
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mult.push((i * n + j, j * n + k, i * n + k, field.one()));
            }
        }
    }
    let mut unit = vector::zeros(field, d);
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    let star = Mat::from_fn(field, d, d, |r, c| {
        let (i, j) = (c / n, c % n);
        if r == j * n + i {
            field.one()
        } else {
            field.zero()
        }
    });
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1))).collect();
    Algebra {
        field: field.clone(),
        labels,
        mult: Tensor3::new(field, [d, d, d], mult).expect("matrix units in range"),
        unit,
        star: Some(star),
    }
}
