use std::ops::{Index, IndexMut};

use crate::field::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_exact_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if f.is_exact_zero(b) {
                        continue;
                    }
                    let t = f.mul(a, b);
                    out[(i, j)] = f.add(&out[(i, j)], &t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !f.is_exact_zero(a) && !f.is_exact_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.transpose().mul_vec(v)
    }

    pub fn zip_with(&self, other: &Mat<F>, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn map(&self, op: impl Fn(&F::Elem) -> F::Elem) -> Mat<F> {
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(op).collect() }
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: &F::Elem) -> Mat<F> {
        let f = self.field.clone();
        self.map(|a| f.mul(c, a))
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Mat<F> {
        let f = self.field.clone();
        self.map(|a| f.conj(a))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat<F> {
        self.transpose().conj()
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, &self[(i, i)]))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| self.field.magnitude(a)).fold(0.0, f64::max)
    }

    /// Largest entrywise difference; infinite on shape mismatch.
    pub fn dist(&self, other: &Mat<F>) -> f64 {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return f64::INFINITY;
        }
        self.sub(other).max_abs()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn approx_eq(&self, other: &Mat<F>) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.sub(other).is_zero()
    }

    pub fn vstack(field: &F, blocks: &[Mat<F>]) -> Mat<F> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack width mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn hstack(field: &F, blocks: &[Mat<F>]) -> Mat<F> {
        let t: Vec<Mat<F>> = blocks.iter().map(|b| b.transpose()).collect();
        Mat::vstack(field, &t).transpose()
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    /// Row-major flattening.
    pub fn into_vec(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn with_field(&self, field: &F) -> Mat<F> {
        Mat { field: field.clone(), rows: self.rows, cols: self.cols, data: self.data.clone() }
    }

    pub fn rank(&self) -> usize {
        super::solve::row_reduce(self).1.len()
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Mat::hstack(&self.field, &[self.clone(), Mat::identity(&self.field, n)]);
        let (r, pivots) = super::solve::row_reduce(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(&self.field, n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        super::solve::kernel_of(self)
    }

    pub fn pow(&self, e: u32) -> Mat<F> {
        let mut out = Mat::identity(&self.field, self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl<F: Field> Index<(usize, usize)> for Mat<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }
}
