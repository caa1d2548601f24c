use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::mat::Mat;
use super::vector::{self, Vector};
use crate::error::{Result, WhaError};
use crate::field::Field;

/// Random draws used by [`invertible_in_span`] over infinite or large fields.
pub const INVERTIBLE_ATTEMPTS: usize = 64;

/// Finite spans with at most this many nonzero members are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;

/// Reduced row echelon form and pivot columns.
///
/// Exact fields pivot on the first nonzero entry; the complex field uses
/// partial pivoting and treats entries within tolerance as zero.
pub fn row_reduce<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let f = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pick = if f.is_exact() {
            (r..rows).find(|&i| !f.is_zero(&a[(i, c)]))
        } else {
            (r..rows)
                .map(|i| (i, f.magnitude(&a[(i, c)])))
                .filter(|&(i, _)| !f.is_zero(&a[(i, c)]))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .map(|(i, _)| i)
        };
        let Some(p) = pick else { continue };
        if p != r {
            for j in c..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = f.inv(&a[(r, c)]).expect("pivot is nonzero");
        for j in c..cols {
            a[(r, j)] = f.mul(&a[(r, j)], &inv);
        }
        for i in 0..rows {
            if i == r || f.is_exact_zero(&a[(i, c)]) {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if f.is_exact_zero(&a[(r, j)]) {
                    continue;
                }
                let t = f.mul(&factor, &a[(r, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
            a[(i, c)] = f.zero();
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn kernel_from_rref<F: Field>(r: &Mat<F>, pivots: &[usize], cols: usize) -> Vec<Vector<F>> {
    let f = r.field();
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    (0..cols)
        .filter(|&j| is_pivot[j].is_none())
        .map(|j| {
            let mut v = vector::zeros(f, cols);
            v[j] = f.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(&r[(row, j)]);
            }
            v
        })
        .collect()
}

pub fn kernel_of<F: Field>(m: &Mat<F>) -> Vec<Vector<F>> {
    let (r, pivots) = row_reduce(m);
    kernel_from_rref(&r, &pivots, m.cols())
}

#[derive(Clone, Debug)]
pub struct AffineSolution<F: Field> {
    /// A particular solution, present when a right-hand side was supplied.
    pub particular: Option<Vector<F>>,
    pub kernel: Vec<Vector<F>>,
    pub rank: usize,
}

/// Acceptance threshold for a residual of `M·v` against a right-hand side.
fn residual_limit<F: Field>(m: &Mat<F>, v: &[F::Elem]) -> f64 {
    let f = m.field();
    if f.is_exact() {
        return 0.0;
    }
    let scale = (1.0 + m.max_abs()) * (1.0 + vector::max_abs(f, v)) * (m.cols().max(1) as f64);
    f.tolerance() * scale
}

/// Solve `M·x = b` (or just compute the kernel when `b` is absent).
pub fn solve_affine<F: Field>(m: &Mat<F>, b: Option<&[F::Elem]>) -> Result<AffineSolution<F>> {
    let f = m.field().clone();
    let cols = m.cols();
    let (particular, kernel, rank) = match b {
        None => {
            let (r, pivots) = row_reduce(m);
            (None, kernel_from_rref(&r, &pivots, cols), pivots.len())
        }
        Some(b) => {
            if b.len() != m.rows() {
                return Err(WhaError::Dimension(format!("rhs length {} vs {} rows", b.len(), m.rows())));
            }
            let bcol = Mat::from_columns(&f, m.rows(), &[b.to_vec()]);
            let aug = Mat::hstack(&f, &[m.clone(), bcol]);
            let (r, pivots) = row_reduce(&aug);
            if pivots.last() == Some(&cols) {
                return Err(WhaError::NoSolution);
            }
            let mut x = vector::zeros(&f, cols);
            for (row, &c) in pivots.iter().enumerate() {
                x[c] = r[(row, cols)].clone();
            }
            let rsub = Mat::from_fn(&f, r.rows(), cols, |i, j| r[(i, j)].clone());
            (Some(x), kernel_from_rref(&rsub, &pivots, cols), pivots.len())
        }
    };
    for v in &kernel {
        let res = vector::max_abs(&f, &m.mul_vec(v));
        if res > residual_limit(m, v) {
            return Err(WhaError::Inconsistent(format!("kernel vector residual {res:e}")));
        }
    }
    if let (Some(x), Some(b)) = (&particular, b) {
        let res = vector::dist(&f, &m.mul_vec(x), b);
        if res > residual_limit(m, x) {
            return Err(WhaError::Inconsistent(format!("particular solution residual {res:e}")));
        }
    }
    Ok(AffineSolution { particular, kernel, rank })
}

/// A linear subspace of Kⁿ given by a basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vector<F>>,
}

impl<F: Field> Subspace<F> {
    /// Span of arbitrary vectors; a linearly independent subset is kept.
    pub fn span(field: &F, ambient: usize, vectors: &[Vector<F>]) -> Self {
        let basis = independent_subset(field, ambient, vectors);
        Subspace { field: field.clone(), ambient, basis }
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new() }
    }

    pub fn whole(field: &F, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| vector::unit(field, ambient, i)).collect();
        Subspace { field: field.clone(), ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }
    pub fn field(&self) -> &F {
        &self.field
    }

    /// Basis vectors as matrix columns.
    pub fn matrix(&self) -> Mat<F> {
        Mat::from_columns(&self.field, self.ambient, &self.basis)
    }

    /// Coordinates of `v` with respect to the basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        if self.basis.is_empty() {
            return vector::is_zero(&self.field, v).then(Vec::new);
        }
        solve_affine(&self.matrix(), Some(v)).ok().and_then(|s| s.particular)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_all(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_all(other)
            && other.contains_all(self)
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(&self.field, self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        let f = &self.field;
        if self.basis.is_empty() || other.basis.is_empty() {
            return Subspace::zero(f, self.ambient);
        }
        let neg: Vec<Vector<F>> = other.basis.iter().map(|v| vector::neg(f, v)).collect();
        let mut cols = self.basis.clone();
        cols.extend(neg);
        let m = Mat::from_columns(f, self.ambient, &cols);
        let k = self.basis.len();
        let vecs: Vec<Vector<F>> = kernel_of(&m)
            .iter()
            .map(|c| vector::combine(f, self.ambient, &c[..k], &self.basis))
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &Mat<F>) -> Subspace<F> {
        let vecs: Vec<Vector<F>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(&self.field, m.rows(), &vecs)
    }
}

/// A maximal linearly independent subset, in the given order.
pub fn independent_subset<F: Field>(field: &F, ambient: usize, vectors: &[Vector<F>]) -> Vec<Vector<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_columns(field, ambient, vectors);
    let (_, pivots) = row_reduce(&m);
    pivots.into_iter().map(|c| vectors[c].clone()).collect()
}

/// Outcome of a search for an invertible matrix in a linear span.
#[derive(Clone, Debug)]
pub enum InvertibleSearch<F: Field> {
    Found { element: Mat<F>, coefficients: Vector<F> },
    /// `exhaustive` is true when every member of the span was examined,
    /// which makes the negative answer a proof.
    NoneFound { exhaustive: bool },
}

impl<F: Field> InvertibleSearch<F> {
    pub fn found(&self) -> Option<(&Mat<F>, &Vector<F>)> {
        match self {
            InvertibleSearch::Found { element, coefficients } => Some((element, coefficients)),
            InvertibleSearch::NoneFound { .. } => None,
        }
    }
}

fn combine_mats<F: Field>(field: &F, coeffs: &[F::Elem], basis: &[Mat<F>]) -> Mat<F> {
    let n = basis[0].rows();
    let mut acc = Mat::zeros(field, n, basis[0].cols());
    for (c, b) in coeffs.iter().zip(basis) {
        if !field.is_exact_zero(c) {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

fn is_invertible<F: Field>(m: &Mat<F>) -> bool {
    m.is_square() && m.rank() == m.rows()
}

/// Find an invertible member of span(basis) by seeded random draws, or by
/// full enumeration when the field is finite and the span is small.
pub fn invertible_in_span<F: Field>(basis: &[Mat<F>], seed: u64) -> InvertibleSearch<F> {
    if basis.is_empty() {
        return InvertibleSearch::NoneFound { exhaustive: true };
    }
    let field = basis[0].field().clone();
    assert!(
        basis.iter().all(|b| b.is_square() && b.rows() == basis[0].rows()),
        "span members must be square of equal size"
    );
    let k = basis.len() as u32;
    if let Some(q) = field.order() {
        if let Some(total) = q.checked_pow(k) {
            if total - 1 <= EXHAUSTIVE_LIMIT {
                for idx in 1..total {
                    let mut rem = idx;
                    let coeffs: Vector<F> = (0..k)
                        .map(|_| {
                            let d = rem % q;
                            rem /= q;
                            field.nth(d)
                        })
                        .collect();
                    let m = combine_mats(&field, &coeffs, basis);
                    if is_invertible(&m) {
                        return InvertibleSearch::Found { element: m, coefficients: coeffs };
                    }
                }
                return InvertibleSearch::NoneFound { exhaustive: true };
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..INVERTIBLE_ATTEMPTS {
        let coeffs = vector::random(&field, basis.len(), &mut rng);
        let m = combine_mats(&field, &coeffs, basis);
        if is_invertible(&m) {
            return InvertibleSearch::Found { element: m, coefficients: coeffs };
        }
    }
    InvertibleSearch::NoneFound { exhaustive: false }
}
