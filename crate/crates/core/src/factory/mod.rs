//! Constructors for concrete weak Hopf algebras.

mod algebra;
mod bbop;
mod groupoid;

pub use algebra::{matrix_algebra, Algebra};
pub use bbop::{bbop, dual_basis, normalize_functional, trace_functional, Bbop};
pub use groupoid::{cyclic_table, pair_groupoid, symmetric3_table, Groupoid};

use crate::error::{Result, WhaError};
use crate::field::{Field, FieldSpec};
use crate::linear::{Mat, Tensor3};
use crate::wha::Wha;

/// Whether constructors should attach the natural star operation.
pub(crate) fn wants_star<F: Field>(f: &F) -> bool {
    matches!(f.spec(), FieldSpec::Complex { .. })
}

/// Group algebra K[G] from a multiplication table (`table[g][h]` = index of gh).
pub fn group_algebra<F: Field>(field: &F, table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Wha<F>> {
    Groupoid::from_group_table(table, labels)?.algebra(field)
}

/// The groupoid algebra of a finite groupoid.
pub fn groupoid_algebra<F: Field>(field: &F, groupoid: &Groupoid) -> Result<Wha<F>> {
    groupoid.algebra(field)
}

/// M₂ over GF(2) with matrix-unit coproduct Δ(e_ij) = e_ij⊗e_ij.
pub fn m2z2() -> Wha<crate::field::PrimeField> {
    let f = crate::field::PrimeField::new(2).expect("2 is prime");
    let mut g = pair_groupoid(2);
    g.relabel(|a, b| format!("e{}{}", a + 1, b + 1));
    g.algebra(&f).expect("pair groupoid is valid")
}

/// Block-diagonal direct sum.
pub fn direct_sum<F: Field>(a: &Wha<F>, b: &Wha<F>) -> Result<Wha<F>> {
    if a.field().spec() != b.field().spec() {
        return Err(WhaError::InvalidInput("direct sum of algebras over different fields".into()));
    }
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let shift = |t: &Tensor3<F>, off: usize| -> Vec<(usize, usize, usize, F::Elem)> {
        t.entries().iter().map(|(i, j, k, c)| (i + off, j + off, k + off, c.clone())).collect()
    };
    let mut mult = shift(a.mult(), 0);
    mult.extend(shift(b.mult(), na));
    let mut comult = shift(a.comult(), 0);
    comult.extend(shift(b.comult(), na));
    let block = |x: &Mat<F>, y: &Mat<F>| {
        Mat::from_fn(f, n, n, |i, j| {
            if i < na && j < na {
                x[(i, j)].clone()
            } else if i >= na && j >= na {
                y[(i - na, j - na)].clone()
            } else {
                f.zero()
            }
        })
    };
    let star = match (a.star(), b.star()) {
        (Some(x), Some(y)) => Some(block(x, y)),
        _ => None,
    };
    let mut labels: Vec<String> = a.labels().to_vec();
    labels.extend(b.labels().iter().cloned());
    let mut seen = std::collections::HashSet::new();
    if !labels.iter().all(|l| seen.insert(l.clone())) {
        labels = a
            .labels()
            .iter()
            .map(|l| format!("1:{l}"))
            .chain(b.labels().iter().map(|l| format!("2:{l}")))
            .collect();
    }
    let cat = |x: &[F::Elem], y: &[F::Elem]| x.iter().chain(y).cloned().collect::<Vec<_>>();
    Wha::new(
        f.clone(),
        labels,
        Tensor3::new(f, [n, n, n], mult)?,
        cat(a.unit(), b.unit()),
        Tensor3::new(f, [n, n, n], comult)?,
        cat(a.counit(), b.counit()),
        block(a.antipode(), b.antipode()),
        star,
    )
}

/// The zero-dimensional weak Hopf algebra.
pub fn zero_algebra<F: Field>(field: &F) -> Wha<F> {
    Wha::new(
        field.clone(),
        Vec::new(),
        Tensor3::new(field, [0, 0, 0], Vec::new()).expect("empty"),
        Vec::new(),
        Tensor3::new(field, [0, 0, 0], Vec::new()).expect("empty"),
        Vec::new(),
        Mat::zeros(field, 0, 0),
        wants_star(field).then(|| Mat::zeros(field, 0, 0)),
    )
    .expect("empty shapes")
}
