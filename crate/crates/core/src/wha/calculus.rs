//! Counital subalgebras, the κ isomorphisms, centers, the antipode and the
//! trivial representation.

use serde::Serialize;

use super::{Side, Wha};
use crate::check::CheckList;
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{solve_affine, vector, Mat, Subspace, Vector};

/// Column space of a matrix.
pub(crate) fn column_space<F: Field>(m: &Mat<F>) -> Subspace<F> {
    Subspace::span(m.field(), m.rows(), &m.columns())
}

/// Span closed under multiplication?
pub(crate) fn is_closed<F: Field>(a: &Wha<F>, s: &Subspace<F>) -> bool {
    s.basis().iter().all(|x| s.basis().iter().all(|y| s.contains(&a.mul(x, y))))
}

#[derive(Clone, Debug)]
pub struct CounitalSubalgebras<F: Field> {
    pub left: Subspace<F>,
    pub right: Subspace<F>,
}

impl<F: Field> CounitalSubalgebras<F> {
    pub fn side(&self, side: Side) -> &Subspace<F> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

/// A^L = Π^L(A) and A^R = Π^R(A), with closure and equal dimension re-verified.
pub fn counital_subalgebras<F: Field>(a: &Wha<F>) -> Result<CounitalSubalgebras<F>> {
    let left = column_space(a.pi_matrix(Side::Left));
    let right = column_space(a.pi_matrix(Side::Right));
    if left.dim() != right.dim() {
        return Err(WhaError::Inconsistent(format!("dim A^L = {} but dim A^R = {}", left.dim(), right.dim())));
    }
    for (name, s) in [("A^L", &left), ("A^R", &right)] {
        if !s.contains(a.unit()) || !is_closed(a, s) {
            return Err(WhaError::Inconsistent(format!("{name} is not a unital subalgebra")));
        }
    }
    Ok(CounitalSubalgebras { left, right })
}

/// Counital subalgebras of Â, as subspaces of functional coordinates.
pub fn dual_counital_subalgebras<F: Field>(a: &Wha<F>) -> Result<CounitalSubalgebras<F>> {
    counital_subalgebras(&a.dual())
}

#[derive(Clone, Debug)]
pub struct KappaMap<F: Field> {
    pub side: Side,
    /// A^L (left) or A^R (right).
    pub domain: Subspace<F>,
    /// Images of the domain basis, in order.
    pub images: Vec<Vector<F>>,
    /// Â^R (left) or Â^L (right).
    pub target: Subspace<F>,
    pub checks: CheckList,
}

impl<F: Field> KappaMap<F> {
    pub fn apply(&self, a: &Wha<F>, x: &[F::Elem]) -> Vector<F> {
        kappa_apply(a, self.side, x)
    }
}

/// κ^L(x) = x⇀1̂ or κ^R(x) = 1̂↼x.
pub fn kappa_apply<F: Field>(a: &Wha<F>, side: Side, x: &[F::Elem]) -> Vector<F> {
    match side {
        Side::Left => a.hit(x, a.counit()),
        Side::Right => a.hit_from_right(a.counit(), x),
    }
}

/// Inverse of κ: φ ↦ 1↼φ (left) or φ ↦ φ⇀1 (right).
pub fn kappa_inverse_apply<F: Field>(a: &Wha<F>, side: Side, phi: &[F::Elem]) -> Vector<F> {
    match side {
        Side::Left => a.dual_hit_from_right(a.unit(), phi),
        Side::Right => a.dual_hit(phi, a.unit()),
    }
}

pub fn kappa<F: Field>(a: &Wha<F>, side: Side) -> Result<KappaMap<F>> {
    let f = a.field();
    let tol = a.tol();
    let subs = counital_subalgebras(a)?;
    let dual_subs = dual_counital_subalgebras(a)?;
    let domain = subs.side(side).clone();
    let target = match side {
        Side::Left => dual_subs.right.clone(),
        Side::Right => dual_subs.left.clone(),
    };
    let images: Vec<Vector<F>> = domain.basis().iter().map(|x| kappa_apply(a, side, x)).collect();
    let mut checks = CheckList::new();
    let mut mult: f64 = 0.0;
    for x in domain.basis() {
        for y in domain.basis() {
            let lhs = kappa_apply(a, side, &a.mul(x, y));
            let rhs = a.dual_mul(&kappa_apply(a, side, x), &kappa_apply(a, side, y));
            mult = mult.max(vector::dist(f, &lhs, &rhs));
        }
    }
    checks.residual("multiplicative", mult, tol);
    let unit = vector::dist(f, &kappa_apply(a, side, a.unit()), a.counit());
    checks.residual("unital", unit, tol);
    let inv = domain
        .basis()
        .iter()
        .zip(&images)
        .map(|(x, k)| vector::dist(f, &kappa_inverse_apply(a, side, k), x))
        .fold(0.0, f64::max);
    checks.residual("inverse", inv, tol);
    let image = Subspace::span(f, a.dim(), &images);
    checks.flag("onto", image.same_as(&target));
    // pairing of the target with the domain is non-degenerate
    let gram = Mat::from_fn(f, target.dim(), domain.dim(), |i, j| a.pairing(&target.basis()[i], &domain.basis()[j]));
    checks.flag("pairing non-degenerate", gram.rank() == domain.dim() && gram.is_square());
    if !checks.all_pass() {
        let bad: Vec<_> = checks.failures().iter().map(|c| c.name.clone()).collect();
        return Err(WhaError::Inconsistent(format!("kappa certification failed: {}", bad.join(", "))));
    }
    Ok(KappaMap { side, domain, images, target, checks })
}

/// Kernel of x ↦ (bⱼx − xbⱼ)ⱼ.
pub fn center<F: Field>(a: &Wha<F>) -> Subspace<F> {
    let f = a.field();
    let n = a.dim();
    let blocks: Vec<Mat<F>> = (0..n)
        .map(|j| {
            let e = a.basis_vector(j);
            a.left_mul_matrix(&e).sub(&a.right_mul_matrix(&e))
        })
        .collect();
    let stacked = Mat::vstack(f, &blocks);
    Subspace::span(f, n, &stacked.kernel())
}

#[derive(Clone, Debug)]
pub struct Centers<F: Field> {
    pub center: Subspace<F>,
    /// A^L ∩ Center A
    pub left: Subspace<F>,
    /// A^R ∩ Center A
    pub right: Subspace<F>,
    /// A^L ∩ A^R
    pub both: Subspace<F>,
    pub hypercenter: Subspace<F>,
    pub checks: CheckList,
}

impl<F: Field> Centers<F> {
    pub fn is_pure(&self) -> bool {
        self.left.dim() == 1
    }
}

fn center_parts<F: Field>(a: &Wha<F>) -> Result<(Subspace<F>, Subspace<F>, Subspace<F>, Subspace<F>, Subspace<F>)> {
    let subs = counital_subalgebras(a)?;
    let c = center(a);
    let left = subs.left.intersect(&c);
    let right = subs.right.intersect(&c);
    let both = subs.left.intersect(&subs.right);
    let hyper = left.intersect(&right);
    Ok((c, left, right, both, hyper))
}

/// Z^L, Z^R, Z and the hypercenter, with the κ correspondences to Â certified.
pub fn centers<F: Field>(a: &Wha<F>) -> Result<Centers<F>> {
    let f = a.field();
    let n = a.dim();
    let (center, left, right, both, hypercenter) = center_parts(a)?;
    let (_, d_left, d_right, d_both, d_hyper) = center_parts(&a.dual())?;
    let image = |side: Side, s: &Subspace<F>| {
        let v: Vec<Vector<F>> = s.basis().iter().map(|x| kappa_apply(a, side, x)).collect();
        Subspace::span(f, n, &v)
    };
    let mut checks = CheckList::new();
    checks.flag("kappa_L(Z^L) = dual Z", image(Side::Left, &left).same_as(&d_both));
    checks.flag("kappa_R(Z^R) = dual Z", image(Side::Right, &right).same_as(&d_both));
    checks.flag("kappa_L(Z) = dual Z^R", image(Side::Left, &both).same_as(&d_right));
    checks.flag("kappa_R(Z) = dual Z^L", image(Side::Right, &both).same_as(&d_left));
    checks.flag("hypercenter dims agree", hypercenter.dim() == d_hyper.dim());
    checks.flag("kappa_L(hypercenter) = dual hypercenter", image(Side::Left, &hypercenter).same_as(&d_hyper));
    Ok(Centers { center, left, right, both, hypercenter, checks })
}

#[derive(Clone, Debug)]
pub struct AntipodeInverse<F: Field> {
    pub matrix: Mat<F>,
    /// ‖S‖_F‖S⁻¹‖_F
    pub condition: f64,
    pub checks: CheckList,
}

fn frob<F: Field>(m: &Mat<F>) -> f64 {
    m.entries().iter().map(|x| m.field().magnitude(x).powi(2)).sum::<f64>().sqrt()
}

/// S⁻¹ together with the structural properties of S.
pub fn antipode_inverse<F: Field>(a: &Wha<F>) -> Result<AntipodeInverse<F>> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let s = a.antipode();
    let inv = a.antipode_inverse_matrix().cloned().ok_or_else(|| WhaError::NotAWha("antipode is singular".into()))?;
    let mut checks = CheckList::new();
    checks.residual("S S^-1 = id", s.mul(&inv).dist(&Mat::identity(f, n)), tol);
    let subs = counital_subalgebras(a)?;
    checks.flag("S(A^L) = A^R", subs.left.image(s).same_as(&subs.right));
    checks.flag("S(A^R) = A^L", subs.right.image(s).same_as(&subs.left));
    checks.residual("S(1) = 1", vector::dist(f, &a.apply_antipode(a.unit()), a.unit()), tol);
    checks.residual("counit S-invariant", vector::dist(f, &s.vec_mul(a.counit()), a.counit()), tol);
    let s_cols = s.columns();
    let mut anti_mult: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let xy = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            anti_mult = anti_mult.max(vector::dist(f, &s.mul_vec(&xy), &a.mul(&s_cols[j], &s_cols[i])));
        }
    }
    checks.residual("antimultiplicative", anti_mult, tol);
    let mut anti_comult: f64 = 0.0;
    for k in 0..n {
        let lhs = a.coproduct(&s_cols[k]);
        // (S⊗S)Δ(b_k) flipped = S·Dᵀ·Sᵀ
        let d = a.coproduct(&a.basis_vector(k));
        let rhs = s.mul(&d.transpose()).mul(&s.transpose());
        anti_comult = anti_comult.max(lhs.dist(&rhs));
    }
    checks.residual("anticomultiplicative", anti_comult, tol);
    let s2 = s.mul(s);
    let d1 = a.unit_coproduct();
    checks.residual("S^2 fixes coproduct of 1", s2.mul(d1).mul(&s2.transpose()).dist(d1), tol);
    Ok(AntipodeInverse { condition: frob(s) * frob(&inv), matrix: inv, checks })
}

#[derive(Clone, Debug)]
pub struct TrivialRepresentation<F: Field> {
    /// Basis of Â^R, the carrier.
    pub carrier: Subspace<F>,
    /// D_ε(bᵢ) in carrier coordinates.
    pub action: Vec<Mat<F>>,
    /// Basis of End V_ε, flattened row-major.
    pub endomorphisms: Subspace<F>,
    pub is_pure: bool,
    pub checks: CheckList,
}

/// Carrier coordinates of x⇀φ for each carrier basis φ.
fn trivial_action<F: Field>(a: &Wha<F>, carrier: &Subspace<F>, x: &[F::Elem]) -> Result<Mat<F>> {
    let r = carrier.dim();
    let cols: Vec<Vector<F>> = carrier
        .basis()
        .iter()
        .map(|phi| {
            carrier
                .coordinates(&a.hit(x, phi))
                .ok_or_else(|| WhaError::Inconsistent("dual A^R not stable under the trivial action".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Mat::from_columns(a.field(), r, &cols))
}

fn flatten<F: Field>(m: &Mat<F>) -> Vector<F> {
    m.entries().to_vec()
}

pub fn trivial_representation<F: Field>(a: &Wha<F>) -> Result<TrivialRepresentation<F>> {
    let f = a.field();
    let n = a.dim();
    let carrier = dual_counital_subalgebras(a)?.right;
    let r = carrier.dim();
    let action: Vec<Mat<F>> = (0..n).map(|i| trivial_action(a, &carrier, &a.basis_vector(i))).collect::<Result<_>>()?;
    // commutant: T D − D T = 0, unknowns T row-major
    let mut blocks = Vec::with_capacity(n);
    for d in &action {
        let m = Mat::from_fn(f, r * r, r * r, |row, col| {
            let (i, j) = (row / r, row % r);
            let (p, q) = (col / r, col % r);
            // (TD)_{ij} = Σ_q T_{iq} D_{qj};  (DT)_{ij} = Σ_p D_{ip} T_{pj}
            let mut v = f.zero();
            if p == i {
                v = f.add(&v, &d[(q, j)]);
            }
            if q == j {
                v = f.sub(&v, &d[(i, p)]);
            }
            v
        });
        blocks.push(m);
    }
    let endomorphisms = if r == 0 {
        Subspace::zero(f, 0)
    } else {
        Subspace::span(f, r * r, &Mat::vstack(f, &blocks).kernel())
    };
    let cs = centers(a)?;
    let image_of = |s: &Subspace<F>| -> Result<Subspace<F>> {
        let v: Vec<Vector<F>> =
            s.basis().iter().map(|z| trivial_action(a, &carrier, z).map(|m| flatten(&m))).collect::<Result<_>>()?;
        Ok(Subspace::span(f, r * r, &v))
    };
    let mut checks = CheckList::new();
    checks.flag("End = D(Z^L)", endomorphisms.same_as(&image_of(&cs.left)?));
    checks.flag("End = D(Z^R)", endomorphisms.same_as(&image_of(&cs.right)?));
    checks.flag("dim End = dim Z^L", endomorphisms.dim() == cs.left.dim());
    let subs = counital_subalgebras(a)?;
    checks.flag("faithful on A^L", image_of(&subs.left)?.dim() == subs.left.dim());
    checks.flag("faithful on A^R", image_of(&subs.right)?.dim() == subs.right.dim());
    let id = Mat::identity(f, r);
    checks.residual("unital", action_of_unit(a, &carrier)?.dist(&id), a.tol());
    Ok(TrivialRepresentation { carrier, action, endomorphisms, is_pure: cs.is_pure(), checks })
}

fn action_of_unit<F: Field>(a: &Wha<F>, carrier: &Subspace<F>) -> Result<Mat<F>> {
    trivial_action(a, carrier, a.unit())
}

/// Δ(x) = (x⊗x)Δ(1) = Δ(1)(x⊗x) and S(x)x = 1.
pub fn is_grouplike<F: Field>(a: &Wha<F>, x: &[F::Elem]) -> bool {
    grouplike_residual(a, x) <= a.tol()
}

pub fn grouplike_residual<F: Field>(a: &Wha<F>, x: &[F::Elem]) -> f64 {
    let f = a.field();
    let dx = a.coproduct(x);
    let xx = a.tensor(x, x);
    let d1 = a.unit_coproduct();
    let r1 = dx.dist(&a.tensor_mul(&xx, d1));
    let r2 = dx.dist(&a.tensor_mul(d1, &xx));
    let r3 = vector::dist(f, &a.mul(&a.apply_antipode(x), x), a.unit());
    r1.max(r2).max(r3)
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfDegeneration {
    pub is_hopf: bool,
    pub unit_coproduct_trivial: bool,
    pub counit_multiplicative: bool,
    pub left_antipode_classical: bool,
    pub right_antipode_classical: bool,
}

impl HopfDegeneration {
    pub fn verdicts(&self) -> [bool; 5] {
        [
            self.is_hopf,
            self.unit_coproduct_trivial,
            self.counit_multiplicative,
            self.left_antipode_classical,
            self.right_antipode_classical,
        ]
    }
    pub fn all_equal(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|b| *b == v[0])
    }
}

/// The five equivalent characterizations of the Hopf case.
pub fn hopf_degeneration<F: Field>(a: &Wha<F>) -> Result<HopfDegeneration> {
    let f = a.field();
    let n = a.dim();
    let tol = a.tol();
    let unit_coproduct_trivial = a.unit_coproduct().dist(&a.unit_tensor()) <= tol;
    let e2 = a.counit_products();
    let eps = a.counit();
    let counit_multiplicative = (0..n)
        .all(|i| (0..n).all(|j| f.magnitude(&f.sub(&e2[(i, j)], &f.mul(&eps[i], &eps[j]))) <= tol));
    let s_cols = a.antipode().columns();
    let mut left: f64 = 0.0;
    let mut right: f64 = 0.0;
    for k in 0..n {
        let mut l = a.zero_vector();
        let mut r = a.zero_vector();
        for (i, j, c) in a.comult_of(k) {
            vector::axpy(f, c, &a.mul(&s_cols[*i], &a.basis_vector(*j)), &mut l);
            vector::axpy(f, c, &a.mul(&a.basis_vector(*i), &s_cols[*j]), &mut r);
        }
        let expected = vector::scale(f, &eps[k], a.unit());
        left = left.max(vector::dist(f, &l, &expected));
        right = right.max(vector::dist(f, &r, &expected));
    }
    let left_antipode_classical = left <= tol;
    let right_antipode_classical = right <= tol;
    let is_hopf = unit_coproduct_trivial && counit_multiplicative && left_antipode_classical && right_antipode_classical;
    let report = HopfDegeneration {
        is_hopf,
        unit_coproduct_trivial,
        counit_multiplicative,
        left_antipode_classical,
        right_antipode_classical,
    };
    if !report.all_equal() {
        return Err(WhaError::Inconsistent(format!("Hopf characterizations disagree: {:?}", report.verdicts())));
    }
    Ok(report)
}

/// Experimental: solve id⋄S = Π^L and S⋄id = Π^R for S, then check
/// S⋄id⋄S = S. Existence is not guaranteed for an arbitrary weak bialgebra.
pub fn solve_antipode<F: Field>(a: &Wha<F>) -> Result<Mat<F>> {
    let f = a.field();
    let n = a.dim();
    let pil = a.pi_matrix(Side::Left);
    let pir = a.pi_matrix(Side::Right);
    // unknown s[p][j] at index p·n + j; S(b_j) = Σ_p s[p][j] b_p
    let mut m = Mat::zeros(f, 2 * n * n, n * n);
    let mut rhs = vector::zeros(f, 2 * n * n);
    for k in 0..n {
        for q in 0..n {
            rhs[k * n + q] = pil[(q, k)].clone();
            rhs[n * n + k * n + q] = pir[(q, k)].clone();
        }
        for (i, j, c) in a.comult_of(k) {
            // b_i S(b_j) = Σ_p s[p][j] b_i b_p
            for p in 0..n {
                for (q, coef) in a.mult_pair(*i, p) {
                    let row = k * n + q;
                    let col = p * n + j;
                    m[(row, col)] = f.add(&m[(row, col)], &f.mul(c, coef));
                }
                // S(b_i) b_j = Σ_p s[p][i] b_p b_j
                for (q, coef) in a.mult_pair(p, *j) {
                    let row = n * n + k * n + q;
                    let col = p * n + i;
                    m[(row, col)] = f.add(&m[(row, col)], &f.mul(c, coef));
                }
            }
        }
    }
    let sol = solve_affine(&m, Some(&rhs)).map_err(|_| WhaError::NotAWha("convolution equations have no solution".into()))?;
    let x = sol.particular.expect("rhs supplied");
    let s = Mat::from_vec(f, n, n, x);
    let candidate = a.with_antipode(s.clone())?;
    let report = super::check_axioms(&candidate);
    if !report.passed(super::axioms::ANTIPODE_SANDWICH) {
        return Err(WhaError::NotAWha(format!(
            "solution of the convolution equations violates S*id*S = S (kernel dim {})",
            sol.kernel.len()
        )));
    }
    Ok(s)
}

impl<F: Field> Wha<F> {
    pub fn with_antipode(&self, antipode: Mat<F>) -> Result<Wha<F>> {
        Wha::new(
            self.field().clone(),
            self.labels().to_vec(),
            self.mult().clone(),
            self.unit().clone(),
            self.comult().clone(),
            self.counit().clone(),
            antipode,
            self.star().cloned(),
        )
    }
}
