#![allow(dead_code)]

use weakhopf::factory::{
    bbop, cyclic_table, group_algebra, matrix_algebra, m2z2, normalize_functional, pair_groupoid, trace_functional,
    Groupoid,
};
use weakhopf::linear::Mat;
use weakhopf::{Field, PrimeField, Rationals, Wha};

pub fn diag<F: Field>(f: &F, d: &[F::Elem]) -> Mat<F> {
    Mat::from_fn(f, d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { f.zero() })
}

/// B⊗B^op for M_n with E ∝ tr(·γ), γ diagonal, normalized to index 1.
pub fn bbop_matrix<F: Field>(f: &F, gamma: &[F::Elem]) -> Wha<F> {
    let b = matrix_algebra(f, gamma.len());
    let e = trace_functional(&diag(f, gamma));
    let (_, e) = normalize_functional(&b, &e).unwrap();
    bbop(&b, &e).unwrap().wha
}

pub fn rational_zoo() -> Vec<(&'static str, Wha<Rationals>)> {
    let q = Rationals;
    vec![
        ("Z3", group_algebra(&q, &cyclic_table(3), None).unwrap()),
        ("pair2", pair_groupoid(2).algebra(&q).unwrap()),
        ("pair3", pair_groupoid(3).algebra(&q).unwrap()),
        ("Z2xpair2", Groupoid::group_times_pair(&cyclic_table(2), 2).unwrap().algebra(&q).unwrap()),
        ("pair2+pt", pair_groupoid(2).disjoint_union(&pair_groupoid(1)).algebra(&q).unwrap()),
        ("bbop M2", bbop_matrix(&q, &[q.from_i64(1), q.from_i64(2)])),
    ]
}

pub fn prime_zoo() -> Vec<(&'static str, Wha<PrimeField>)> {
    let f3 = PrimeField::new(3).unwrap();
    vec![
        ("m2z2", m2z2()),
        ("Z3 over GF(3)", group_algebra(&f3, &cyclic_table(3), None).unwrap()),
        ("pair2+pt over GF(3)", pair_groupoid(2).disjoint_union(&pair_groupoid(1)).algebra(&f3).unwrap()),
    ]
}
