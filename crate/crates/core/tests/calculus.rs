mod common;

use weakhopf::wha::invariants::calculus_invariants;
use weakhopf::wha::{antipode_inverse, centers, counital_subalgebras, hopf_degeneration, kappa, trivial_representation};
use weakhopf::{check_axioms, Field, Side, Twist, Wha};

fn exercise<F: Field>(name: &str, a: &Wha<F>) {
    let inv = calculus_invariants(a).unwrap();
    assert!(inv.all_pass(), "{name}: {:?}", inv.failures());
    let sub = counital_subalgebras(a).unwrap();
    assert_eq!(sub.left.dim(), sub.right.dim(), "{name}");
    for side in [Side::Left, Side::Right] {
        let k = kappa(a, side).unwrap();
        assert!(k.checks.all_pass(), "{name}: {:?}", k.checks.failures());
    }
    let c = centers(a).unwrap();
    assert!(c.checks.all_pass(), "{name}: {:?}", c.checks.failures());
    let s = antipode_inverse(a).unwrap();
    assert!(s.checks.all_pass(), "{name}: {:?}", s.checks.failures());
    let t = trivial_representation(a).unwrap();
    assert!(t.checks.all_pass(), "{name}: {:?}", t.checks.failures());
    let h = hopf_degeneration(a).unwrap();
    assert!(h.all_equal());
    for tw in Twist::ALL {
        let b = a.twist(tw).unwrap();
        assert!(check_axioms(&b).is_wha, "{name} {tw}");
    }
    let d = a.dual();
    assert!(check_axioms(&d).is_wha, "{name} dual");
    assert_eq!(d.dual(), *a);
}

#[test]
fn rational_examples() {
    for (name, a) in common::rational_zoo() {
        exercise(name, &a);
    }
}

#[test]
fn prime_examples() {
    for (name, a) in common::prime_zoo() {
        exercise(name, &a);
    }
}
