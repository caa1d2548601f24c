//! Basis-wise evaluation of the weak Hopf algebra axioms.

use serde::Serialize;

use super::Wha;
use crate::check::CheckList;
use crate::field::Field;
use crate::linear::{vector, Mat, Vector};

pub const ASSOCIATIVITY: &str = "associativity";
pub const UNIT: &str = "unit";
pub const COASSOCIATIVITY: &str = "coassociativity";
pub const COUNIT: &str = "counit";
pub const MULTIPLICATIVITY: &str = "Δ multiplicative";
pub const WEAK_COUNIT: &str = "ε(xyz) = ε(xy₁)ε(y₂z)";
pub const WEAK_COUNIT_SWAPPED: &str = "ε(xyz) = ε(xy₂)ε(y₁z)";
pub const WEAK_UNIT: &str = "Δ²(1) = (Δ(1)⊗1)(1⊗Δ(1))";
pub const WEAK_UNIT_REVERSED: &str = "Δ²(1) = (1⊗Δ(1))(Δ(1)⊗1)";
pub const LEFT_ANTIPODE: &str = "x₁S(x₂) = Π^L(x)";
pub const RIGHT_ANTIPODE: &str = "S(x₁)x₂ = Π^R(x)";
pub const ANTIPODE_SANDWICH: &str = "S(x₁)x₂S(x₃) = S(x)";

/// Bialgebra axioms first (nine), then the three antipode axioms.
pub const AXIOMS: [&str; 12] = [
    ASSOCIATIVITY,
    UNIT,
    COASSOCIATIVITY,
    COUNIT,
    MULTIPLICATIVITY,
    WEAK_COUNIT,
    WEAK_COUNIT_SWAPPED,
    WEAK_UNIT,
    WEAK_UNIT_REVERSED,
    LEFT_ANTIPODE,
    RIGHT_ANTIPODE,
    ANTIPODE_SANDWICH,
];

/// Axiom of Â whose verdict must agree with the given axiom of A.
fn transposed(name: &str) -> &'static str {
    match name {
        ASSOCIATIVITY => COASSOCIATIVITY,
        COASSOCIATIVITY => ASSOCIATIVITY,
        UNIT => COUNIT,
        COUNIT => UNIT,
        MULTIPLICATIVITY => MULTIPLICATIVITY,
        WEAK_COUNIT => WEAK_UNIT,
        WEAK_UNIT => WEAK_COUNIT,
        WEAK_COUNIT_SWAPPED => WEAK_UNIT_REVERSED,
        WEAK_UNIT_REVERSED => WEAK_COUNIT_SWAPPED,
        LEFT_ANTIPODE => LEFT_ANTIPODE,
        RIGHT_ANTIPODE => RIGHT_ANTIPODE,
        _ => ANTIPODE_SANDWICH,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: CheckList,
    /// Verdicts of the transposed axioms evaluated on the dual.
    pub dual_checks: CheckList,
    pub dual_agrees: bool,
    pub is_wba: bool,
    pub is_wha: bool,
    pub is_hopf: bool,
    pub antipode_invertible: bool,
    /// ‖S‖_F·‖S⁻¹‖_F, when S is invertible.
    pub antipode_condition: Option<f64>,
}

impl AxiomReport {
    pub fn passed(&self, axiom: &str) -> bool {
        self.checks.passed(axiom)
    }
    pub fn residual(&self, axiom: &str) -> f64 {
        self.checks.get(axiom).map_or(f64::INFINITY, |c| c.residual)
    }
}

fn frobenius_norm<F: Field>(m: &Mat<F>) -> f64 {
    let f = m.field();
    m.entries().iter().map(|x| f.magnitude(x).powi(2)).sum::<f64>().sqrt()
}

pub fn check_axioms<F: Field>(a: &Wha<F>) -> AxiomReport {
    let checks = evaluate(a);
    let dual_checks = evaluate(&a.dual());
    let dual_agrees = AXIOMS.iter().all(|ax| checks.passed(ax) == dual_checks.passed(transposed(ax)));

    let inv = a.antipode_inverse_matrix();
    let antipode_invertible = inv.is_some();
    let antipode_condition = inv.map(|i| frobenius_norm(a.antipode()) * frobenius_norm(i));

    let is_wba = AXIOMS[..9].iter().all(|ax| checks.passed(ax));
    let is_wha = is_wba && AXIOMS[9..].iter().all(|ax| checks.passed(ax)) && antipode_invertible;
    let is_hopf = is_wha && a.unit_coproduct().approx_eq(&a.unit_tensor());
    AxiomReport { checks, dual_checks, dual_agrees, is_wba, is_wha, is_hopf, antipode_invertible, antipode_condition }
}

fn evaluate<F: Field>(a: &Wha<F>) -> CheckList {
    let tol = a.tol();
    let mut out = CheckList::new();
    out.residual(ASSOCIATIVITY, associativity(a), tol);
    out.residual(UNIT, unit_property(a), tol);
    out.residual(COASSOCIATIVITY, coassociativity(a), tol);
    out.residual(COUNIT, counit_property(a), tol);
    out.residual(MULTIPLICATIVITY, multiplicativity(a), tol);
    out.residual(WEAK_COUNIT, weak_counit(a, false), tol);
    out.residual(WEAK_COUNIT_SWAPPED, weak_counit(a, true), tol);
    out.residual(WEAK_UNIT, weak_unit(a, false), tol);
    out.residual(WEAK_UNIT_REVERSED, weak_unit(a, true), tol);
    let (r_left, r_right) = antipode_axioms(a);
    out.residual(LEFT_ANTIPODE, r_left, tol);
    out.residual(RIGHT_ANTIPODE, r_right, tol);
    out.residual(ANTIPODE_SANDWICH, antipode_sandwich(a), tol);
    out
}

/// Σ c·v accumulated into `acc`.
fn add_terms<F: Field>(f: &F, acc: &mut [F::Elem], scale: &F::Elem, terms: &[(usize, F::Elem)]) {
    for (k, c) in terms {
        acc[*k] = f.add(&acc[*k], &f.mul(scale, c));
    }
}

fn associativity<F: Field>(a: &Wha<F>) -> f64 {
    let f = a.field();
    let n = a.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = a.zero_vector();
                for (p, c) in a.mult_pair(i, j) {
                    add_terms(f, &mut lhs, c, a.mult_pair(*p, k));
                }
                let mut rhs = a.zero_vector();
                for (p, c) in a.mult_pair(j, k) {
                    add_terms(f, &mut rhs, c, a.mult_pair(i, *p));
                }
                worst = worst.max(vector::dist(f, &lhs, &rhs));
            }
        }
    }
    worst
}

fn unit_property<F: Field>(a: &Wha<F>) -> f64 {
    let id = Mat::identity(a.field(), a.dim());
    a.left_mul_matrix(a.unit()).dist(&id).max(a.right_mul_matrix(a.unit()).dist(&id))
}

fn coassociativity<F: Field>(a: &Wha<F>) -> f64 {
    (0..a.dim())
        .map(|k| {
            let e = a.basis_vector(k);
            vector::dist(a.field(), &a.coproduct2(&e), &a.coproduct2_right(&e))
        })
        .fold(0.0, f64::max)
}

fn counit_property<F: Field>(a: &Wha<F>) -> f64 {
    let f = a.field();
    let n = a.dim();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let mut left = a.zero_vector();
        let mut right = a.zero_vector();
        for (i, j, c) in a.comult_of(k) {
            left[*j] = f.add(&left[*j], &f.mul(c, &a.counit()[*i]));
            right[*i] = f.add(&right[*i], &f.mul(c, &a.counit()[*j]));
        }
        let e = a.basis_vector(k);
        worst = worst.max(vector::dist(f, &left, &e)).max(vector::dist(f, &right, &e));
    }
    worst
}

fn multiplicativity<F: Field>(a: &Wha<F>) -> f64 {
    let n = a.dim();
    let deltas: Vec<Mat<F>> = (0..n).map(|k| a.coproduct(&a.basis_vector(k))).collect();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut prod = a.zero_vector();
            add_terms(a.field(), &mut prod, &a.field().one(), a.mult_pair(i, j));
            let lhs = a.coproduct(&prod);
            let rhs = a.tensor_mul(&deltas[i], &deltas[j]);
            worst = worst.max(lhs.dist(&rhs));
        }
    }
    worst
}

/// ε(xyz) against ε(xy₍₁₎)ε(y₍₂₎z), or with the legs swapped.
fn weak_counit<F: Field>(a: &Wha<F>, swapped: bool) -> f64 {
    let f = a.field();
    let n = a.dim();
    let e2 = a.counit_products();
    let mut worst: f64 = 0.0;
    for y in 0..n {
        // lhs[x][z] = Σ_p m[x,y,p] ε(b_p b_z)
        let mut lhs = Mat::zeros(f, n, n);
        for x in 0..n {
            for (p, c) in a.mult_pair(x, y) {
                for z in 0..n {
                    lhs[(x, z)] = f.add(&lhs[(x, z)], &f.mul(c, &e2[(*p, z)]));
                }
            }
        }
        let mut rhs = Mat::zeros(f, n, n);
        for (i, j, c) in a.comult_of(y) {
            let (first, second) = if swapped { (*j, *i) } else { (*i, *j) };
            for x in 0..n {
                let left = f.mul(c, &e2[(x, first)]);
                if f.is_exact_zero(&left) {
                    continue;
                }
                for z in 0..n {
                    rhs[(x, z)] = f.add(&rhs[(x, z)], &f.mul(&left, &e2[(second, z)]));
                }
            }
        }
        worst = worst.max(lhs.dist(&rhs));
    }
    worst
}

fn nonzero_entries<F: Field>(m: &Mat<F>) -> Vec<(usize, usize, F::Elem)> {
    let f = m.field();
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !f.is_exact_zero(&m[(i, j)]) {
                out.push((i, j, m[(i, j)].clone()));
            }
        }
    }
    out
}

/// Δ²(1) against (Δ(1)⊗1)(1⊗Δ(1)), or the reversed product.
fn weak_unit<F: Field>(a: &Wha<F>, reversed: bool) -> f64 {
    let f = a.field();
    let n = a.dim();
    let d1 = nonzero_entries(a.unit_coproduct());
    let lhs = a.coproduct2(a.unit());
    let mut rhs: Vector<F> = vector::zeros(f, n * n * n);
    for (p, q, c1) in &d1 {
        for (r, s, c2) in &d1 {
            // (b_p⊗b_q⊗1)(1⊗b_r⊗b_s) = b_p⊗b_q b_r⊗b_s
            // (1⊗b_r⊗b_s)(b_p⊗b_q⊗1) = b_p⊗b_r b_q⊗b_s
            let middle = if reversed { (*r, *q) } else { (*q, *r) };
            let coef = f.mul(c1, c2);
            for (k, c) in a.mult_pair(middle.0, middle.1) {
                let idx = (p * n + k) * n + s;
                rhs[idx] = f.add(&rhs[idx], &f.mul(&coef, c));
            }
        }
    }
    vector::dist(f, &lhs, &rhs)
}

fn antipode_axioms<F: Field>(a: &Wha<F>) -> (f64, f64) {
    let f = a.field();
    let n = a.dim();
    let s_cols = a.antipode().columns();
    let (mut w_left, mut w_right): (f64, f64) = (0.0, 0.0);
    for k in 0..n {
        let mut l_left = a.zero_vector();
        let mut l_right = a.zero_vector();
        for (i, j, c) in a.comult_of(k) {
            vector::axpy(f, c, &a.mul(&a.basis_vector(*i), &s_cols[*j]), &mut l_left);
            vector::axpy(f, c, &a.mul(&s_cols[*i], &a.basis_vector(*j)), &mut l_right);
        }
        let e = a.basis_vector(k);
        w_left = w_left.max(vector::dist(f, &l_left, &a.pi(&e, super::Side::Left)));
        w_right = w_right.max(vector::dist(f, &l_right, &a.pi(&e, super::Side::Right)));
    }
    (w_left, w_right)
}

fn antipode_sandwich<F: Field>(a: &Wha<F>) -> f64 {
    let f = a.field();
    let n = a.dim();
    let s_cols = a.antipode().columns();
    let mut worst: f64 = 0.0;
    for p in 0..n {
        let t = a.coproduct2(&a.basis_vector(p));
        let mut acc = a.zero_vector();
        // group by the last leg: Σ_c (Σ_ab t_abc S(b_a) b_b) S(b_c)
        for c in 0..n {
            let mut left = a.zero_vector();
            let mut any = false;
            for ai in 0..n {
                for b in 0..n {
                    let coef = &t[(ai * n + b) * n + c];
                    if f.is_exact_zero(coef) {
                        continue;
                    }
                    any = true;
                    vector::axpy(f, coef, &a.mul(&s_cols[ai], &a.basis_vector(b)), &mut left);
                }
            }
            if any {
                vector::axpy(f, &f.one(), &a.mul(&left, &s_cols[c]), &mut acc);
            }
        }
        worst = worst.max(vector::dist(f, &acc, &s_cols[p]));
    }
    worst
}
