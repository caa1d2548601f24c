use crate::error::{Result, WhaError};
use crate::field::Field;

/// Sparse three-leg tensor: a list of (i, j, k, coefficient) with no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<F: Field> {
    dims: [usize; 3],
    entries: Vec<(usize, usize, usize, F::Elem)>,
}

impl<F: Field> Tensor3<F> {
    /// Builds a tensor, summing duplicate positions and dropping zeros.
    /// Entries are kept sorted by position.
    pub fn new(field: &F, dims: [usize; 3], entries: Vec<(usize, usize, usize, F::Elem)>) -> Result<Self> {
        let mut sorted = entries;
        for (n, e) in sorted.iter().enumerate() {
            if e.0 >= dims[0] || e.1 >= dims[1] || e.2 >= dims[2] {
                return Err(WhaError::Dimension(format!(
                    "entry #{n} ({}, {}, {}) out of range for dims {:?}",
                    e.0, e.1, e.2, dims
                )));
            }
        }
        sorted.sort_by_key(|e| (e.0, e.1, e.2));
        let mut merged: Vec<(usize, usize, usize, F::Elem)> = Vec::with_capacity(sorted.len());
        for e in sorted {
            match merged.last_mut() {
                Some(last) if (last.0, last.1, last.2) == (e.0, e.1, e.2) => last.3 = field.add(&last.3, &e.3),
                _ => merged.push(e),
            }
        }
        merged.retain(|e| !field.is_exact_zero(&e.3));
        Ok(Tensor3 { dims, entries: merged })
    }

    pub fn from_fn(field: &F, dims: [usize; 3], f: impl Fn(usize, usize, usize) -> F::Elem) -> Self {
        let mut entries = Vec::new();
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    let v = f(i, j, k);
                    if !field.is_exact_zero(&v) {
                        entries.push((i, j, k, v));
                    }
                }
            }
        }
        Tensor3 { dims, entries }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn entries(&self) -> &[(usize, usize, usize, F::Elem)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Reorders legs: output leg `t` is input leg `perm[t]`.
    pub fn permute(&self, field: &F, perm: [usize; 3]) -> Self {
        let dims = [self.dims[perm[0]], self.dims[perm[1]], self.dims[perm[2]]];
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let idx = [e.0, e.1, e.2];
                (idx[perm[0]], idx[perm[1]], idx[perm[2]], e.3.clone())
            })
            .collect();
        Tensor3::new(field, dims, entries).expect("permuted indices stay in range")
    }

    /// Largest coefficient difference against another tensor of the same shape.
    pub fn dist(&self, field: &F, other: &Tensor3<F>) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            let ka = x.get(a).map(|e| (e.0, e.1, e.2));
            let kb = y.get(b).map(|e| (e.0, e.1, e.2));
            let d = match (ka, kb) {
                (Some(p), Some(q)) if p == q => {
                    let d = field.magnitude(&field.sub(&x[a].3, &y[b].3));
                    a += 1;
                    b += 1;
                    d
                }
                (Some(p), Some(q)) if p < q => {
                    a += 1;
                    field.magnitude(&x[a - 1].3)
                }
                (Some(_), None) => {
                    a += 1;
                    field.magnitude(&x[a - 1].3)
                }
                _ => {
                    b += 1;
                    field.magnitude(&y[b - 1].3)
                }
            };
            worst = worst.max(d);
        }
        worst
    }
}
