use weakhopf::factory::{
    bbop, cyclic_table, direct_sum, group_algebra, matrix_algebra, m2z2, normalize_functional, pair_groupoid,
    symmetric3_table, trace_functional, Groupoid,
};
use weakhopf::linear::Mat;
use weakhopf::{check_axioms, Complexes, Field, PrimeField, Rationals};

fn diag<F: Field>(f: &F, d: &[i64]) -> Mat<F> {
    Mat::from_fn(f, d.len(), d.len(), |i, j| if i == j { f.from_i64(d[i]) } else { f.zero() })
}

#[test]
fn group_algebras_are_hopf() {
    let q = Rationals;
    for n in 1..5 {
        let a = group_algebra(&q, &cyclic_table(n), None).unwrap();
        let r = check_axioms(&a);
        assert!(r.is_hopf, "Z_{n}: {:?}", r.checks.failures());
    }
    let (t, l) = symmetric3_table();
    let a = group_algebra(&Complexes::default(), &t, Some(l)).unwrap();
    assert!(check_axioms(&a).is_hopf);
}

#[test]
fn pair_groupoids_are_weak_but_not_hopf() {
    for k in 1..4 {
        let a = pair_groupoid(k).algebra(&Rationals).unwrap();
        let r = check_axioms(&a);
        assert!(r.is_wha, "{:?}", r.checks.failures());
        assert_eq!(r.is_hopf, k == 1);
        assert!(r.dual_agrees);
    }
    let r = check_axioms(&m2z2());
    assert!(r.is_wha && !r.is_hopf);
}

#[test]
fn products_and_unions() {
    let g = Groupoid::group_times_pair(&cyclic_table(2), 2).unwrap();
    assert!(check_axioms(&g.algebra(&Rationals).unwrap()).is_wha);
    let u = pair_groupoid(2).disjoint_union(&pair_groupoid(1));
    assert!(check_axioms(&u.algebra(&PrimeField::new(3).unwrap()).unwrap()).is_wha);
    let s = direct_sum(&m2z2(), &m2z2()).unwrap();
    assert!(check_axioms(&s).is_wha);
}

#[test]
fn bbop_of_m2() {
    let q = Rationals;
    let b = matrix_algebra(&q, 2);
    let e = trace_functional(&diag(&q, &[1, 2]));
    let (_, e) = normalize_functional(&b, &e).unwrap();
    let bb = bbop(&b, &e).unwrap();
    assert!(bb.checks.all_pass(), "{:?}", bb.checks.failures());
    let r = check_axioms(&bb.wha);
    assert!(r.is_wha && !r.is_hopf, "{:?}", r.checks.failures());
}
