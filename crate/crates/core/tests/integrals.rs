mod common;

use num::complex::Complex64;
use num::{BigRational, One, Zero};
use proptest::prelude::*;
use weakhopf::factory::{
    bbop, cyclic_table, group_algebra, m2z2, matrix_algebra, normalize_functional, pair_groupoid, symmetric3_table,
    trace_functional,
};
use weakhopf::integrals::*;
use weakhopf::linear::{solve_affine, vector, Mat, Vector};
use weakhopf::{Complexes, Field, PrimeField, Rationals, Side, Verdict, Wha, WhaError};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn all_ones<F: Field>(f: &F, n: usize) -> Vector<F> {
    vec![f.one(); n]
}

/// Haar integral straight from its definition: one stacked affine system in h.
fn haar_oracle<F: Field>(a: &Wha<F>) -> Option<Vector<F>> {
    let f = a.field();
    let n = a.dim();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..n {
        let bx = a.basis_vector(x);
        let l = a.left_mul_matrix(&bx).sub(&a.left_mul_matrix(&a.pi(&bx, Side::Left)));
        let r = a.right_mul_matrix(&bx).sub(&a.right_mul_matrix(&a.pi(&bx, Side::Right)));
        for m in [l, r] {
            for i in 0..n {
                rows.push(m.row(i));
                rhs.push(f.zero());
            }
        }
    }
    for side in [Side::Left, Side::Right] {
        let p = a.pi_matrix(side);
        for i in 0..n {
            rows.push(p.row(i));
            rhs.push(a.unit()[i].clone());
        }
    }
    let m = Mat::from_rows(f, rows);
    solve_affine(&m, Some(&rhs)).ok().map(|s| {
        assert!(s.kernel.is_empty(), "Haar integral not unique");
        s.particular.unwrap()
    })
}

fn assert_pass(name: &str, c: &weakhopf::CheckList) {
    assert!(c.all_pass(), "{name}: {:?}", c.failures());
}

#[test]
fn group_algebra_integrals() {
    let f = Rationals;
    for n in 2..=4 {
        let a = group_algebra(&f, &cyclic_table(n), None).unwrap();
        for side in [Side::Left, Side::Right] {
            let s = integral_space(&a, side).unwrap();
            assert_eq!(s.dim(), 1);
            assert!(s.contains(&all_ones(&f, n)));
        }
        let h = haar(&a).unwrap();
        let want = vec![q(1, n as i64); n];
        assert_eq!(h.h.as_ref(), Some(&want));
        assert_pass("haar", &h.checks);
        let mut chi_want = vec![BigRational::zero(); n];
        chi_want[0] = q(n as i64, 1);
        assert_eq!(h.chi, chi_want);
        let ni = normalized_integral(&a, Side::Left).unwrap();
        assert_eq!(ni.integral, Some(want));
        assert_eq!(ni.oracle, Some(true));
        assert_pass("normalized", &ni.checks);
    }
}

#[test]
fn matrix_unit_fixture() {
    let a = m2z2();
    let f = *a.field();
    let el = |v: [u64; 4]| -> Vector<PrimeField> { v.iter().map(|&x| f.nth(x)).collect() };
    let l1 = el([1, 0, 1, 0]);
    let l2 = el([0, 1, 0, 1]);
    let il = integral_space(&a, Side::Left).unwrap();
    assert!(il.contains(&l1) && il.contains(&l2));
    for l in [&l1, &l2] {
        assert_eq!(&a.pi(l, Side::Left), a.unit());
        assert!(!is_nondegenerate_element(&a, l));
        assert!(matches!(dual_left_integral(&a, l), Err(WhaError::NoDualPair(_))));
        let rep = integral_nondegeneracy(&a, l, Side::Left).unwrap();
        assert!(rep.consistent(), "{rep:?}");
    }
    let s = vector::add(&f, &l1, &l2);
    assert!(is_nondegenerate_element(&a, &s));
    assert!(vector::is_zero(&f, &a.pi(&s, Side::Left)));
    assert!(integral_nondegeneracy(&a, &s, Side::Left).unwrap().consistent());
    assert!(!is_nondegenerate_element(&a, &a.zero_vector()));
    let ni = normalized_integral(&a, Side::Left).unwrap();
    assert!(ni.semisimple);
    let fr = frobenius_test(&a, 1).unwrap();
    assert_eq!(fr.dim_right_integrals, fr.dim_left_subalgebra);
    assert_eq!(fr.frobenius, Verdict::Yes);
    let l = fr.nondegenerate_left_integral.unwrap();
    assert!(is_nondegenerate_element(&a, &l));
    let pair = dual_left_integral(&a, &l).unwrap();
    assert_pass("dual pair", &pair.checks);
}

#[test]
fn no_normalized_integral_in_char_2() {
    let f = PrimeField::new(2).unwrap();
    let a = group_algebra(&f, &cyclic_table(2), None).unwrap();
    let ni = normalized_integral(&a, Side::Left).unwrap();
    assert!(ni.integral.is_none() && !ni.semisimple);
    assert_eq!(ni.oracle, Some(false));
    let h = haar(&a).unwrap();
    assert!(h.h.is_none());
    assert!(h.chi_rank < 2);
}

#[test]
fn group_dual_pair_over_c() {
    let f = Complexes::default();
    let a = group_algebra(&f, &cyclic_table(2), None).unwrap();
    let l = all_ones(&f, 2);
    let p = dual_left_integral(&a, &l).unwrap();
    assert!(vector::dist(&f, &p.lambda, &[Complex64::one(), Complex64::zero()]) < 1e-12);
    assert_pass("pair", &p.checks);
    let ni = normalized_integral(&a, Side::Left).unwrap();
    let half = Complex64::new(0.5, 0.0);
    assert!(vector::dist(&f, ni.integral.as_ref().unwrap(), &[half, half]) < 1e-12);
}

#[test]
fn trace_quasibasis_on_matrices() {
    let f = Rationals;
    for n in 1..=3 {
        let a = pair_groupoid(n).algebra(&f).unwrap();
        let tr: Vector<Rationals> = (0..n * n).map(|c| if c / n == c % n { f.one() } else { f.zero() }).collect();
        let qb = quasibasis(&a, &tr).unwrap();
        assert_pass("quasibasis", &qb.checks);
        // Σ e_ij⊗e_ji
        let want = Mat::from_fn(&f, n * n, n * n, |u, v| {
            if u / n == v % n && u % n == v / n {
                f.one()
            } else {
                f.zero()
            }
        });
        assert_eq!(qb.element, want);
        assert_eq!(qb.index, vector::scale(&f, &f.from_i64(n as i64), a.unit()));
        let md = modular_automorphism(&a, &tr).unwrap();
        assert_eq!(md.theta, Mat::identity(&f, n * n));
    }
}

/// Σ f_i γ² e_i for E ∝ tr(·γ), computed from the dual basis directly.
fn bbop_haar_oracle<F: Field>(f: &F, gamma: &Mat<F>) -> bool {
    let n = gamma.rows();
    let b = matrix_algebra(f, n);
    let (_, e) = normalize_functional(&b, &trace_functional(gamma)).unwrap();
    let g = Mat::from_fn(f, n * n, n * n, |i, j| vector::dot(f, &e, &b.mul(&b.basis(i), &b.basis(j))));
    let fs = g.inverse().unwrap().columns();
    let gamma_elem: Vector<F> = (0..n * n).map(|c| gamma[(c / n, c % n)].clone()).collect();
    let g2 = b.mul(&gamma_elem, &gamma_elem);
    let mut s = vector::zeros(f, n * n);
    for (i, fi) in fs.iter().enumerate() {
        s = vector::add(f, &s, &b.mul(&b.mul(fi, &g2), &b.basis(i)));
    }
    b.left_mul_matrix(&s).inverse().is_some()
}

#[test]
fn bbop_haar_criterion() {
    let f = Rationals;
    let gamma = common::diag(&f, &[f.from_i64(1), f.from_i64(2)]);
    let b = matrix_algebra(&f, 2);
    let (_, e) = normalize_functional(&b, &trace_functional(&gamma)).unwrap();
    let bb = bbop(&b, &e).unwrap();
    assert!(bbop_haar_oracle(&f, &gamma));
    let h = haar(&bb.wha).unwrap();
    assert!(h.h.is_some());
    assert_pass("haar", &h.checks);
    assert_eq!(h.h, haar_oracle(&bb.wha));
    // θ = Ad_γ on B
    let gi = gamma.inverse().unwrap();
    for x in 0..4 {
        let xm = Mat::from_vec(&f, 2, 2, b.basis(x));
        let want = gamma.mul(&xm).mul(&gi).into_vec();
        assert_eq!(bb.theta.column(x), want);
    }
    let fr = frobenius_test(&bb.wha, 3).unwrap();
    assert_eq!(fr.frobenius, Verdict::Yes);
    assert!(is_nondegenerate_element(&bb.wha, &bb.canonical_integral()));
    assert!(integral_space(&bb.wha, Side::Left).unwrap().contains(&bb.canonical_integral()));

    // tr γ = 0 while tr γ⁻¹ ≠ 0 needs n = 3
    let f5 = PrimeField::new(5).unwrap();
    let gamma = common::diag(&f5, &[f5.nth(1), f5.nth(1), f5.nth(3)]);
    let b = matrix_algebra(&f5, 3);
    let (_, e) = normalize_functional(&b, &trace_functional(&gamma)).unwrap();
    let bb = bbop(&b, &e).unwrap();
    assert!(!bbop_haar_oracle(&f5, &gamma));
    let h = haar(&bb.wha).unwrap();
    assert!(h.h.is_none());
    assert!(haar_oracle(&bb.wha).is_none());
}

#[test]
fn haar_matches_definition_on_zoo() {
    for (name, a) in common::rational_zoo() {
        let h = haar(&a).unwrap();
        assert_eq!(h.h, haar_oracle(&a), "{name}");
        assert_pass(name, &h.checks);
        assert_pass(name, &certify_chi(&a, &h.chi).unwrap());
    }
    for (name, a) in common::prime_zoo() {
        let h = haar(&a).unwrap();
        assert_eq!(h.h, haar_oracle(&a), "{name}");
        assert_pass(name, &h.checks);
    }
}

#[test]
fn integral_calculus_on_zoo() {
    for (name, a) in common::rational_zoo() {
        assert_pass(name, &integral_properties(&a, 7).unwrap());
        let ni = normalized_integral(&a, Side::Left).unwrap();
        assert!(ni.semisimple, "{name}");
        assert_pass(name, &ni.checks);
        let nr = normalized_integral(&a, Side::Right).unwrap();
        assert_pass(name, &nr.checks);
        assert_pass(name, &annihilator_duality_check(&a).unwrap().checks);
        let fr = frobenius_test(&a, 5).unwrap();
        assert_eq!(fr.frobenius, Verdict::Yes, "{name}");
        let l = fr.nondegenerate_left_integral.unwrap();
        let rep = integral_nondegeneracy(&a, &l, Side::Left).unwrap();
        assert!(rep.nondegenerate && rep.consistent(), "{name}: {rep:?}");
        let r = a.apply_antipode(&l);
        let rep = integral_nondegeneracy(&a, &r, Side::Right).unwrap();
        assert!(rep.nondegenerate && rep.consistent(), "{name}: {rep:?}");
        assert_pass(name, &dual_left_integral(&a, &l).unwrap().checks);
        let two = two_sided_analysis(&a, 5).unwrap();
        assert_pass(name, &two.checks);
    }
    for (name, a) in common::prime_zoo() {
        assert_pass(name, &integral_properties(&a, 7).unwrap());
        assert_pass(name, &annihilator_duality_check(&a).unwrap().checks);
        let ni = normalized_integral(&a, Side::Left).unwrap();
        assert_pass(name, &ni.checks);
        assert!(frobenius_test(&a, 5).is_ok(), "{name}");
    }
}

#[test]
fn hopf_annihilator_is_counit_kernel() {
    let f = Rationals;
    let a = group_algebra(&f, &cyclic_table(3), None).unwrap();
    let r = annihilator_duality_check(&a).unwrap();
    assert_eq!(r.kernel.dim(), 2);
    for k in r.kernel.basis() {
        assert!(f.is_zero(&a.counit_of(k)));
    }
    assert_eq!(r.right_annihilator.dim(), 1);
    assert!(r.right_annihilator.contains(&all_ones(&f, 3)));
}

#[test]
fn symmetric_group_algebra() {
    let f = Complexes::default();
    let (t, labels) = symmetric3_table();
    let a = group_algebra(&f, &t, Some(labels)).unwrap();
    let s = symmetric_and_s4(&a, 11).unwrap();
    assert_eq!(s.symmetric, Verdict::Yes);
    assert!(s.witness_trace.is_some());
    assert_pass("S3", &s.checks);
    let w = s.s4.expect("both sides have Haar integrals");
    assert_pass("S3 s4", &w.checks);
    let crit = haar_split_criterion(&a, 3).unwrap();
    assert!(crit.haar_exists);
    assert_eq!(crit.block_traces.len(), 3);
    let h = haar(&a).unwrap().h.unwrap();
    let sixth = Complex64::new(1.0 / 6.0, 0.0);
    assert!(vector::dist(&f, &h, &[sixth; 6]) < 1e-10);
}

#[test]
fn s4_on_twisted_matrices() {
    let f = Complexes::default();
    let c = |x: f64| Complex64::new(x, 0.0);
    let a = common::bbop_matrix(&f, &[c(1.0), c(2.0)]);
    let s = symmetric_and_s4(&a, 5).unwrap();
    assert_pass("bbop", &s.checks);
    let w = s.s4.expect("Haar on both sides");
    assert_pass("bbop s4", &w.checks);
    // S⁴ ≠ id here, so the witness is not trivial
    let s4 = a.antipode_power(4).unwrap();
    assert!(s4.dist(&Mat::identity(&f, 16)) > 1e-3);
    let crit = haar_split_criterion(&a, 2).unwrap();
    assert_eq!(crit.haar_exists, haar(&a).unwrap().h.is_some());
}

#[test]
fn innerness_over_small_field_is_never_no() {
    let a = m2z2();
    let s = symmetric_and_s4(&a, 1).unwrap();
    assert_ne!(s.s2_inner, Verdict::No);
}

fn group_strategy() -> impl Strategy<Value = usize> {
    2usize..=5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_lands_in_integrals(n in group_strategy(), coeffs in prop::collection::vec(-5i64..5, 5)) {
        let f = Rationals;
        let a = pair_groupoid(2).disjoint_union(&weakhopf::factory::Groupoid::from_group_table(&cyclic_table(n), None).unwrap()).algebra(&f).unwrap();
        let x: Vector<Rationals> = (0..a.dim()).map(|i| f.from_i64(coeffs[i % coeffs.len()] + i as i64)).collect();
        let il = integral_space(&a, Side::Left).unwrap();
        let lx = integral_projection(&a, &x, Side::Left).unwrap();
        prop_assert!(il.contains(&lx));
        prop_assert_eq!(integral_projection(&a, &lx, Side::Left).unwrap(), lx);
        let ir = integral_space(&a, Side::Right).unwrap();
        prop_assert!(ir.contains(&integral_projection(&a, &x, Side::Right).unwrap()));
    }

    #[test]
    fn cyclic_haar_is_average(n in group_strategy()) {
        let f = Rationals;
        let a = group_algebra(&f, &cyclic_table(n), None).unwrap();
        let h = haar(&a).unwrap().h.unwrap();
        prop_assert_eq!(h, vec![q(1, n as i64); n]);
    }

    #[test]
    fn integrals_closed_under_combination(c in prop::collection::vec(-4i64..4, 4)) {
        let f = Rationals;
        let a = pair_groupoid(2).algebra(&f).unwrap();
        let il = integral_space(&a, Side::Left).unwrap();
        let coeffs: Vec<BigRational> = il.basis().iter().enumerate().map(|(i, _)| f.from_i64(c[i % 4])).collect();
        let l = vector::combine(&f, a.dim(), &coeffs, il.basis());
        for x in 0..a.dim() {
            let bx = a.basis_vector(x);
            prop_assert_eq!(a.mul(&bx, &l), a.mul(&a.pi(&bx, Side::Left), &l));
        }
        prop_assert!(integral_space(&a, Side::Right).unwrap().contains(&a.apply_antipode(&l)));
    }
}
