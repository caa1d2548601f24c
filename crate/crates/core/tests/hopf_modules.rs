mod common;

use proptest::prelude::*;
use weakhopf::factory::{cyclic_table, group_algebra, pair_groupoid};
use weakhopf::hopf_modules::*;
use weakhopf::integrals::{integral_projection_matrix, integral_space};
use weakhopf::linear::{Mat, Subspace};
use weakhopf::wha::{counital_subalgebras, trivial_representation};
use weakhopf::{Field, Rationals, Side, Wha};

fn assert_pass(name: &str, c: &weakhopf::CheckList) {
    assert!(c.all_pass(), "{name}: {:?}", c.failures());
}

fn exercise<F: Field>(name: &str, a: &Wha<F>) {
    let n = a.dim();
    let dual = a.dual();
    let ex = dual_regular_whm(a);
    assert_pass(name, &check_whm(a, &ex));
    let coinv = coinvariants(a, &ex).unwrap();
    assert!(coinv.same_as(&integral_space(&dual, Side::Left).unwrap().space), "{name}");
    assert_pass(name, &certify_projection(a, &ex).unwrap());
    let lhat = integral_projection_matrix(&dual, Side::Left).unwrap();
    assert!(whm_projection_matrix(a, &ex).dist(&lhat) <= a.tol(), "{name}: E ≠ L̂");
    let iso = fundamental_iso(a, &ex).unwrap();
    assert_pass(name, &iso.checks);
    assert_eq!(iso.product.whm.dim, n, "{name}");
    let p = iso.coinvariants.dim();
    assert_eq!(iso.product.whm.dim, p * n - iso.product.relation_rank);

    let reg = regular_whm(a);
    assert_pass(name, &check_whm(a, &reg));
    let sub = counital_subalgebras(a).unwrap();
    let c = coinvariants(a, &reg).unwrap();
    assert!(c.same_as(&sub.left), "{name}: Coinv A ≠ A^L");
    assert_pass(name, &certify_projection(a, &reg).unwrap());
    assert_pass(name, &fundamental_iso(a, &reg).unwrap().checks);

    let dsub = counital_subalgebras(&dual).unwrap();
    let il = integral_space(a, Side::Left).unwrap().space;
    let ir = integral_space(a, Side::Right).unwrap().space;
    for m in basic_modules(a) {
        assert_pass(&m.name, &m.check(a));
        let inv = invariants(a, &m);
        match m.name.as_str() {
            "_AA" => assert!(inv.same_as(&il), "{name}"),
            "A_A" => assert!(inv.same_as(&ir), "{name}"),
            "_AÂ" => assert!(inv.same_as(&dsub.left), "{name}"),
            "Â_A" => assert!(inv.same_as(&dsub.right), "{name}"),
            _ => {}
        }
        // generated submodule
        let mut gens: Vec<_> = inv.basis().to_vec();
        for _ in 0..n {
            let more: Vec<_> = gens.iter().flat_map(|v| m.action.iter().map(move |x| x.mul_vec(v))).collect();
            gens.extend(more);
            gens = Subspace::span(a.field(), n, &gens).basis().to_vec();
        }
        let closure = Subspace::span(a.field(), n, &gens);
        for s in [&inv, &closure] {
            assert_eq!(is_submodule(&m, s), is_subcomodule(a, &m, s), "{name} {}", m.name);
        }
        assert!(is_submodule(&m, &closure));
    }
    let t = trivial_representation(a).unwrap();
    let triv = Module { name: "trivial".into(), side: Side::Left, dim: t.carrier.dim(), action: t.action.clone() };
    // invariant vectors of the trivial representation are Â^R ∩ Â^L
    let inv = invariants(a, &triv);
    let cm = t.carrier.matrix();
    let img: Vec<_> = inv.basis().iter().map(|v| cm.mul_vec(v)).collect();
    assert!(Subspace::span(a.field(), n, &img).same_as(&dsub.left.intersect(&dsub.right)), "{name}");
    if sub.left.dim() == 1 {
        assert_eq!(inv.dim(), triv.dim, "{name}");
    }
}

#[test]
fn rational_modules() {
    for (name, a) in common::rational_zoo() {
        exercise(name, &a);
    }
}

#[test]
fn prime_modules() {
    for (name, a) in common::prime_zoo() {
        exercise(name, &a);
    }
}

#[test]
fn zero_coaction_is_not_counital() {
    let f = Rationals;
    let a = group_algebra(&f, &cyclic_table(2), None).unwrap();
    let mut m = regular_whm(&a);
    m.coaction = vec![Mat::zeros(&f, 2, 2); 2];
    let c = check_whm(&a, &m);
    assert!(!c.passed("coaction counital"));
    assert!(c.passed("action associative"));
}

#[test]
fn zero_module() {
    let f = Rationals;
    let a = pair_groupoid(2).algebra(&f).unwrap();
    let z = RightWHM::zero(&a);
    assert_pass("zero", &check_whm(&a, &z));
    assert_eq!(coinvariants(&a, &z).unwrap().dim(), 0);
}

#[test]
fn hopf_case_amalgamation() {
    let f = Rationals;
    let a = group_algebra(&f, &cyclic_table(3), None).unwrap();
    let p = amalgamated_product(&a, 1, &[(a.unit().clone(), Mat::identity(&f, 1))]).unwrap();
    assert_eq!(p.whm.dim, 3);
    assert_eq!(p.relation_rank, 0);
    assert_pass("K⊗A", &p.checks);
    // the Hopf case of the fundamental theorem: Â ≅ I^L(Â)⊗A with dim I^L(Â) = 1
    let iso = fundamental_iso(&a, &dual_regular_whm(&a)).unwrap();
    assert_eq!(iso.coinvariants.dim(), 1);
}

#[test]
fn amalgamation_needs_spanning_action() {
    let f = Rationals;
    let a = pair_groupoid(2).algebra(&f).unwrap();
    assert!(amalgamated_product(&a, 1, &[(a.unit().clone(), Mat::identity(&f, 1))]).is_err());
}

#[test]
fn rebuilt_product_is_identity_on_the_nose() {
    let f = Rationals;
    let a = pair_groupoid(2).disjoint_union(&pair_groupoid(1)).algebra(&f).unwrap();
    let iso = fundamental_iso(&a, &dual_regular_whm(&a)).unwrap();
    let again = fundamental_iso(&a, &iso.product.whm).unwrap();
    assert_eq!(again.alpha, Mat::identity(&f, again.alpha.rows()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn projection_lands_in_coinvariants(c in prop::collection::vec(-6i64..6, 5)) {
        let f = Rationals;
        let a = pair_groupoid(2).disjoint_union(&pair_groupoid(1)).algebra(&f).unwrap();
        let m = dual_regular_whm(&a);
        let v: Vec<_> = (0..a.dim()).map(|i| f.from_i64(c[i % c.len()] * (i as i64 + 1))).collect();
        let e = whm_project(&a, &m, &v);
        let coinv = coinvariants(&a, &m).unwrap();
        prop_assert!(coinv.contains(&e));
        // E(m)₀⊗E(m)₁ = E(m)·1₍₁₎⊗1₍₂₎
        let one = a.unit_coproduct();
        for k in 0..a.dim() {
            let lhs = m.coaction[k].mul_vec(&e);
            let rhs = m.act(&f, &one.column(k)).mul_vec(&e);
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(whm_project(&a, &m, &e), e.clone());
    }
}
