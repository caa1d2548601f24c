//! One-sided modules, their invariants, the eight basic modules and the two
//! built-in weak Hopf modules.

use super::{combine, RightWHM};
use crate::check::CheckList;
use crate::field::Field;
use crate::linear::{Mat, Subspace};
use crate::wha::{Side, Wha};

/// A left (`Side::Left`, x·m) or right (`Side::Right`, m·x) A-module;
/// `action[x]` is the matrix of the action of b_x.
#[derive(Clone, Debug, PartialEq)]
pub struct Module<F: Field> {
    pub name: String,
    pub side: Side,
    pub dim: usize,
    pub action: Vec<Mat<F>>,
}

impl<F: Field> Module<F> {
    pub fn act(&self, f: &F, x: &[F::Elem]) -> Mat<F> {
        combine(f, self.dim, x, &self.action)
    }

    /// Associativity and unitality.
    pub fn check(&self, a: &Wha<F>) -> CheckList {
        let f = a.field();
        let tol = a.tol();
        let n = a.dim();
        let mut r: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let xy = self.act(f, &a.mul(&a.basis_vector(x), &a.basis_vector(y)));
                let composed = match self.side {
                    Side::Left => self.action[x].mul(&self.action[y]),
                    Side::Right => self.action[y].mul(&self.action[x]),
                };
                r = r.max(composed.dist(&xy));
            }
        }
        let mut checks = CheckList::new();
        checks.residual(format!("{}: associative", self.name), r, tol);
        checks.residual(format!("{}: unital", self.name), self.act(f, a.unit()).dist(&Mat::identity(f, self.dim)), tol);
        checks
    }
}

/// Inv M: x·m = Π^L(x)·m for left modules, m·x = m·Π^R(x) for right ones.
pub fn invariants<F: Field>(a: &Wha<F>, m: &Module<F>) -> Subspace<F> {
    let f = a.field();
    let pi = a.pi_matrix(m.side);
    let blocks: Vec<Mat<F>> = (0..a.dim()).map(|x| m.action[x].sub(&m.act(f, &pi.column(x)))).collect();
    if m.dim == 0 {
        return Subspace::zero(f, 0);
    }
    Subspace::span(f, m.dim, &Mat::vstack(f, &blocks).kernel())
}

pub fn is_submodule<F: Field>(m: &Module<F>, s: &Subspace<F>) -> bool {
    m.action.iter().all(|x| s.basis().iter().all(|v| s.contains(&x.mul_vec(v))))
}

/// The matching Â-coaction m ↦ Σ_i b_i·m ⊗ β^i maps s into s⊗Â, tested by
/// annihilating each slice with the functionals vanishing on s.
pub fn is_subcomodule<F: Field>(a: &Wha<F>, m: &Module<F>, s: &Subspace<F>) -> bool {
    let f = a.field();
    let n = a.dim();
    let d = m.dim;
    let ann = s.matrix().transpose().kernel();
    let ann = Mat::from_rows(f, ann);
    if ann.rows() == 0 {
        return true;
    }
    // coaction as a (d·n)×d matrix, row r·n + i
    let co = Mat::from_fn(f, d * n, d, |row, c| m.action[row % n][(row / n, c)].clone());
    s.basis().iter().all(|v| {
        let w = co.mul_vec(v);
        let slices = Mat::from_fn(f, d, n, |r, i| w[r * n + i].clone());
        ann.mul(&slices).is_zero()
    })
}

/// The eight basic modules with carrier A or Â.
pub fn basic_modules<F: Field>(a: &Wha<F>) -> Vec<Module<F>> {
    let f = a.field();
    let n = a.dim();
    let s = a.antipode();
    let per_basis = |op: &dyn Fn(&[F::Elem]) -> Mat<F>| (0..n).map(|x| op(&a.basis_vector(x))).collect::<Vec<_>>();
    let dual_map = |g: &dyn Fn(&[F::Elem]) -> Vec<F::Elem>| Mat::from_columns(f, n, &(0..n).map(|c| g(&a.basis_vector(c))).collect::<Vec<_>>());
    let module = |name: &str, side: Side, action: Vec<Mat<F>>| Module { name: name.into(), side, dim: n, action };
    vec![
        module("_AA", Side::Left, per_basis(&|x| a.left_mul_matrix(x))),
        module("A_A", Side::Right, per_basis(&|x| a.right_mul_matrix(x))),
        module("^AA", Side::Left, per_basis(&|x| a.right_mul_matrix(&s.mul_vec(x)))),
        module("A^A", Side::Right, per_basis(&|x| a.left_mul_matrix(&s.mul_vec(x)))),
        module("_AÂ", Side::Left, per_basis(&|x| dual_map(&|phi| a.hit(x, phi)))),
        module("Â_A", Side::Right, per_basis(&|x| dual_map(&|phi| a.hit_from_right(phi, x)))),
        module("^AÂ", Side::Left, per_basis(&|x| dual_map(&|phi| a.hit_from_right(phi, &s.mul_vec(x))))),
        module("Â^A", Side::Right, per_basis(&|x| dual_map(&|phi| a.hit(&s.mul_vec(x), phi)))),
    ]
}

/// A with right multiplication and coaction Δ.
pub fn regular_whm<F: Field>(a: &Wha<F>) -> RightWHM<F> {
    let f = a.field();
    let n = a.dim();
    let action = (0..n).map(|x| a.right_mul_matrix(&a.basis_vector(x))).collect();
    let mut coaction = vec![Mat::zeros(f, n, n); n];
    for (m, i, k, c) in a.comult().entries() {
        coaction[*k][(*i, *m)] = f.add(&coaction[*k][(*i, *m)], c);
    }
    RightWHM { dim: n, action, coaction }
}

/// Â with φ·x = S(x)⇀φ and coaction dual to left multiplication in Â.
pub fn dual_regular_whm<F: Field>(a: &Wha<F>) -> RightWHM<F> {
    let f = a.field();
    let n = a.dim();
    let s = a.antipode();
    let cols = |g: &dyn Fn(&[F::Elem]) -> Vec<F::Elem>| Mat::from_columns(f, n, &(0..n).map(|c| g(&a.basis_vector(c))).collect::<Vec<_>>());
    let action = (0..n).map(|x| cols(&|phi| a.hit(&s.column(x), phi))).collect();
    let coaction = (0..n).map(|i| cols(&|phi| a.dual_mul(&a.basis_vector(i), phi))).collect();
    RightWHM { dim: n, action, coaction }
}
