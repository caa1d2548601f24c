//! The weak Hopf algebra data model and its basic calculus.
//!
//! Conventions: `mult` holds m[i,j,k] with bᵢbⱼ = Σₖ m[i,j,k]bₖ, `comult`
//! holds d[k,i,j] with Δ(bₖ) = Σ d[k,i,j] bᵢ⊗bⱼ (first leg is "(1)"), the
//! antipode matrix has S(bⱼ) as its j-th column. Functionals are coordinate
//! vectors against the dual basis. Elements of A⊗A are n×n matrices whose
//! (i,j) entry is the coefficient of bᵢ⊗bⱼ.

mod axioms;
mod calculus;
mod dual;
pub mod invariants;

use std::sync::OnceLock;

pub use axioms::{check_axioms, AxiomReport, AXIOMS};
pub use calculus::{
    antipode_inverse, centers, counital_subalgebras, grouplike_residual, hopf_degeneration, is_grouplike, kappa, solve_antipode,
    trivial_representation, AntipodeInverse, Centers, CounitalSubalgebras, HopfDegeneration, KappaMap,
    TrivialRepresentation,
};
pub use dual::{dual_label, Twist};

use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{vector, Mat, Tensor3, Vector};

/// Left or right variant of a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
struct Cache<F: Field> {
    unit_coproduct: OnceLock<Mat<F>>,
    pi_l: OnceLock<Mat<F>>,
    pi_r: OnceLock<Mat<F>>,
    antipode_inverse: OnceLock<Option<Mat<F>>>,
    counit_products: OnceLock<Mat<F>>,
}

impl<F: Field> Default for Cache<F> {
    fn default() -> Self {
        Cache {
            unit_coproduct: OnceLock::new(),
            pi_l: OnceLock::new(),
            pi_r: OnceLock::new(),
            antipode_inverse: OnceLock::new(),
            counit_products: OnceLock::new(),
        }
    }
}

/// A finite-dimensional weak Hopf algebra given by structure constants.
///
/// Construction only checks shapes; the axioms are certified by
/// [`check_axioms`].
#[derive(Clone, Debug)]
pub struct Wha<F: Field> {
    field: F,
    labels: Vec<String>,
    mult: Tensor3<F>,
    unit: Vector<F>,
    comult: Tensor3<F>,
    counit: Vector<F>,
    antipode: Mat<F>,
    star: Option<Mat<F>>,
    /// m[i,j,·] indexed by i·n + j
    mult_by_pair: Vec<Vec<(usize, F::Elem)>>,
    /// d[k,·,·] indexed by k
    comult_by_source: Vec<Vec<(usize, usize, F::Elem)>>,
    cache: Cache<F>,
}

impl<F: Field> PartialEq for Wha<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.labels == other.labels
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
            && self.star == other.star
    }
}

impl<F: Field> Wha<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: F,
        labels: Vec<String>,
        mult: Tensor3<F>,
        unit: Vector<F>,
        comult: Tensor3<F>,
        counit: Vector<F>,
        antipode: Mat<F>,
        star: Option<Mat<F>>,
    ) -> Result<Self> {
        let n = labels.len();
        let dims_ok = mult.dims() == [n, n, n]
            && comult.dims() == [n, n, n]
            && unit.len() == n
            && counit.len() == n
            && antipode.rows() == n
            && antipode.cols() == n
            && star.as_ref().is_none_or(|s| s.rows() == n && s.cols() == n);
        if !dims_ok {
            return Err(WhaError::Dimension(format!("structure tensors inconsistent with dimension {n}")));
        }
        let mut mult_by_pair = vec![Vec::new(); n * n];
        for (i, j, k, c) in mult.entries() {
            mult_by_pair[i * n + j].push((*k, c.clone()));
        }
        let mut comult_by_source = vec![Vec::new(); n];
        for (k, i, j, c) in comult.entries() {
            comult_by_source[*k].push((*i, *j, c.clone()));
        }
        let antipode = antipode.with_field(&field);
        let star = star.map(|s| s.with_field(&field));
        Ok(Wha {
            field,
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
            star,
            mult_by_pair,
            comult_by_source,
            cache: Cache::default(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn mult(&self) -> &Tensor3<F> {
        &self.mult
    }
    pub fn comult(&self) -> &Tensor3<F> {
        &self.comult
    }
    pub fn unit(&self) -> &Vector<F> {
        &self.unit
    }
    pub fn counit(&self) -> &Vector<F> {
        &self.counit
    }
    pub fn antipode(&self) -> &Mat<F> {
        &self.antipode
    }
    pub fn star(&self) -> Option<&Mat<F>> {
        self.star.as_ref()
    }

    /// Same structure with the star replaced.
    pub fn with_star(&self, star: Option<Mat<F>>) -> Self {
        Wha::new(
            self.field.clone(),
            self.labels.clone(),
            self.mult.clone(),
            self.unit.clone(),
            self.comult.clone(),
            self.counit.clone(),
            self.antipode.clone(),
            star,
        )
        .expect("shapes unchanged")
    }

    /// Same structure over a field value with a different tolerance.
    pub fn with_field(&self, field: F) -> Self {
        Wha::new(
            field,
            self.labels.clone(),
            self.mult.clone(),
            self.unit.clone(),
            self.comult.clone(),
            self.counit.clone(),
            self.antipode.clone(),
            self.star.clone(),
        )
        .expect("shapes unchanged")
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        Wha::new(
            self.field.clone(),
            labels,
            self.mult.clone(),
            self.unit.clone(),
            self.comult.clone(),
            self.counit.clone(),
            self.antipode.clone(),
            self.star.clone(),
        )
    }

    pub(crate) fn mult_pair(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.mult_by_pair[i * self.dim() + j]
    }

    pub(crate) fn comult_of(&self, k: usize) -> &[(usize, usize, F::Elem)] {
        &self.comult_by_source[k]
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        vector::unit(&self.field, self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vector<F> {
        vector::zeros(&self.field, self.dim())
    }

    /// Residual limit used for identities between elements of this algebra.
    pub fn tol(&self) -> f64 {
        self.field.tolerance()
    }

    // ----- algebra -----

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        let xs: Vec<usize> = (0..x.len()).filter(|&i| !f.is_exact_zero(&x[i])).collect();
        let ys: Vec<usize> = (0..y.len()).filter(|&j| !f.is_exact_zero(&y[j])).collect();
        if xs.len() * ys.len() <= self.mult.nnz() {
            for &i in &xs {
                for &j in &ys {
                    let pair = self.mult_pair(i, j);
                    if pair.is_empty() {
                        continue;
                    }
                    let xy = f.mul(&x[i], &y[j]);
                    for (k, c) in pair {
                        out[*k] = f.add(&out[*k], &f.mul(c, &xy));
                    }
                }
            }
            return out;
        }
        for (i, j, k, c) in self.mult.entries() {
            if f.is_exact_zero(&x[*i]) || f.is_exact_zero(&y[*j]) {
                continue;
            }
            let t = f.mul(c, &f.mul(&x[*i], &y[*j]));
            out[*k] = f.add(&out[*k], &t);
        }
        out
    }

    pub fn mul3(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vector<F> {
        self.mul(&self.mul(x, y), z)
    }

    /// Matrix of y ↦ xy.
    pub fn left_mul_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let f = &self.field;
        let n = self.dim();
        let mut m = Mat::zeros(f, n, n);
        for (i, j, k, c) in self.mult.entries() {
            if !f.is_exact_zero(&x[*i]) {
                m[(*k, *j)] = f.add(&m[(*k, *j)], &f.mul(c, &x[*i]));
            }
        }
        m
    }

    /// Matrix of y ↦ yx.
    pub fn right_mul_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let f = &self.field;
        let n = self.dim();
        let mut m = Mat::zeros(f, n, n);
        for (i, j, k, c) in self.mult.entries() {
            if !f.is_exact_zero(&x[*j]) {
                m[(*k, *i)] = f.add(&m[(*k, *i)], &f.mul(c, &x[*j]));
            }
        }
        m
    }

    /// Inverse of x in A, if it exists.
    pub fn inverse(&self, x: &[F::Elem]) -> Option<Vector<F>> {
        let inv = self.left_mul_matrix(x).inverse()?;
        let y = inv.mul_vec(&self.unit);
        let check = self.mul(&y, x);
        vector::approx_eq(&self.field, &check, &self.unit).then_some(y)
    }

    pub fn is_central(&self, x: &[F::Elem]) -> bool {
        let l = self.left_mul_matrix(x);
        let r = self.right_mul_matrix(x);
        l.approx_eq(&r)
    }

    // ----- coalgebra -----

    pub fn coproduct(&self, x: &[F::Elem]) -> Mat<F> {
        let f = &self.field;
        let n = self.dim();
        let mut d = Mat::zeros(f, n, n);
        for (k, i, j, c) in self.comult.entries() {
            if !f.is_exact_zero(&x[*k]) {
                d[(*i, *j)] = f.add(&d[(*i, *j)], &f.mul(c, &x[*k]));
            }
        }
        d
    }

    pub fn counit_of(&self, x: &[F::Elem]) -> F::Elem {
        vector::dot(&self.field, &self.counit, x)
    }

    /// Δ(1).
    pub fn unit_coproduct(&self) -> &Mat<F> {
        self.cache.unit_coproduct.get_or_init(|| self.coproduct(&self.unit))
    }

    /// The matrix ε(bᵢbⱼ).
    pub fn counit_products(&self) -> &Mat<F> {
        self.cache.counit_products.get_or_init(|| {
            let f = &self.field;
            let n = self.dim();
            let mut m = Mat::zeros(f, n, n);
            for (i, j, k, c) in self.mult.entries() {
                m[(*i, *j)] = f.add(&m[(*i, *j)], &f.mul(c, &self.counit[*k]));
            }
            m
        })
    }

    /// 1⊗1 as an element of A⊗A.
    pub fn unit_tensor(&self) -> Mat<F> {
        let n = self.dim();
        Mat::from_fn(&self.field, n, n, |i, j| self.field.mul(&self.unit[i], &self.unit[j]))
    }

    /// x⊗y as an element of A⊗A.
    pub fn tensor(&self, x: &[F::Elem], y: &[F::Elem]) -> Mat<F> {
        let n = self.dim();
        Mat::from_fn(&self.field, n, n, |i, j| self.field.mul(&x[i], &y[j]))
    }

    /// Product in A⊗A.
    pub fn tensor_mul(&self, t: &Mat<F>, u: &Mat<F>) -> Mat<F> {
        let f = &self.field;
        let n = self.dim();
        let rows_t: Vec<Option<Vector<F>>> =
            (0..n).map(|a| Some(t.row(a)).filter(|r| !r.iter().all(|x| f.is_exact_zero(x)))).collect();
        let rows_u: Vec<Option<Vector<F>>> =
            (0..n).map(|c| Some(u.row(c)).filter(|r| !r.iter().all(|x| f.is_exact_zero(x)))).collect();
        let mut out = Mat::zeros(f, n, n);
        for a in 0..n {
            let Some(ta) = &rows_t[a] else { continue };
            for c in 0..n {
                let Some(uc) = &rows_u[c] else { continue };
                let pair = self.mult_pair(a, c);
                if pair.is_empty() {
                    continue;
                }
                let second = self.mul(ta, uc);
                for (k, coef) in pair {
                    for (l, s) in second.iter().enumerate() {
                        if !f.is_exact_zero(s) {
                            out[(*k, l)] = f.add(&out[(*k, l)], &f.mul(coef, s));
                        }
                    }
                }
            }
        }
        out
    }

    /// μ(T) = Σ T[a][b] b_a b_b.
    pub fn mu(&self, t: &Mat<F>) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, j, k, c) in self.mult.entries() {
            let tij = &t[(*i, *j)];
            if !f.is_exact_zero(tij) {
                out[*k] = f.add(&out[*k], &f.mul(c, tij));
            }
        }
        out
    }

    /// (Δ⊗id)Δ(x) flattened with index (a·n + b)·n + c.
    pub fn coproduct2(&self, x: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vector::zeros(f, n * n * n);
        for (k, xk) in x.iter().enumerate() {
            if f.is_exact_zero(xk) {
                continue;
            }
            for (p, cidx, c1) in self.comult_of(k) {
                let c1x = f.mul(c1, xk);
                for (a, b, c2) in self.comult_of(*p) {
                    let idx = (a * n + b) * n + cidx;
                    out[idx] = f.add(&out[idx], &f.mul(&c1x, c2));
                }
            }
        }
        out
    }

    /// (id⊗Δ)Δ(x) flattened with index (a·n + b)·n + c.
    pub fn coproduct2_right(&self, x: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vector::zeros(f, n * n * n);
        for (k, xk) in x.iter().enumerate() {
            if f.is_exact_zero(xk) {
                continue;
            }
            for (a, p, c1) in self.comult_of(k) {
                let c1x = f.mul(c1, xk);
                for (b, c, c2) in self.comult_of(*p) {
                    let idx = (a * n + b) * n + c;
                    out[idx] = f.add(&out[idx], &f.mul(&c1x, c2));
                }
            }
        }
        out
    }

    // ----- antipode -----

    pub fn apply_antipode(&self, x: &[F::Elem]) -> Vector<F> {
        self.antipode.mul_vec(x)
    }

    pub fn antipode_inverse_matrix(&self) -> Option<&Mat<F>> {
        self.cache.antipode_inverse.get_or_init(|| self.antipode.inverse()).as_ref()
    }

    pub fn apply_antipode_inverse(&self, x: &[F::Elem]) -> Result<Vector<F>> {
        self.antipode_inverse_matrix()
            .map(|m| m.mul_vec(x))
            .ok_or_else(|| WhaError::NotAWha("antipode is singular".into()))
    }

    /// Matrix of Sᵉ for any integer e.
    pub fn antipode_power(&self, e: i32) -> Result<Mat<F>> {
        if e >= 0 {
            Ok(self.antipode.pow(e as u32))
        } else {
            let inv = self
                .antipode_inverse_matrix()
                .ok_or_else(|| WhaError::NotAWha("antipode is singular".into()))?;
            Ok(inv.pow((-e) as u32))
        }
    }

    /// x* = T·conj(x) for the stored star matrix T.
    pub fn apply_star(&self, x: &[F::Elem]) -> Option<Vector<F>> {
        self.star.as_ref().map(|t| t.mul_vec(&vector::conj(&self.field, x)))
    }

    // ----- counital projections -----

    pub fn pi_matrix(&self, side: Side) -> &Mat<F> {
        match side {
            Side::Left => self.cache.pi_l.get_or_init(|| {
                // Π^L(b_c) = Σ Δ1[i][j] ε(b_i b_c) b_j
                let f = &self.field;
                let n = self.dim();
                let d1 = self.unit_coproduct();
                let e2 = self.counit_products();
                Mat::from_fn(f, n, n, |j, c| {
                    (0..n).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&d1[(i, j)], &e2[(i, c)])))
                })
            }),
            Side::Right => self.cache.pi_r.get_or_init(|| {
                // Π^R(b_c) = Σ Δ1[i][j] ε(b_c b_j) b_i
                let f = &self.field;
                let n = self.dim();
                let d1 = self.unit_coproduct();
                let e2 = self.counit_products();
                Mat::from_fn(f, n, n, |i, c| {
                    (0..n).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&d1[(i, j)], &e2[(c, j)])))
                })
            }),
        }
    }

    /// Π^L(x) = ε(1₍₁₎x)1₍₂₎ or Π^R(x) = 1₍₁₎ε(x1₍₂₎).
    pub fn pi(&self, x: &[F::Elem], side: Side) -> Vector<F> {
        self.pi_matrix(side).mul_vec(x)
    }

    // ----- dual side, computed without building Â -----

    /// Product in Â: ⟨φψ, x⟩ = ⟨φ⊗ψ, Δx⟩.
    pub fn dual_mul(&self, phi: &[F::Elem], psi: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (k, i, j, c) in self.comult.entries() {
            if f.is_exact_zero(&phi[*i]) || f.is_exact_zero(&psi[*j]) {
                continue;
            }
            out[*k] = f.add(&out[*k], &f.mul(c, &f.mul(&phi[*i], &psi[*j])));
        }
        out
    }

    /// Unit of Â, which is ε.
    pub fn dual_unit(&self) -> Vector<F> {
        self.counit.clone()
    }

    /// Coproduct in Â: Δ̂(φ)[i][j] = φ(bᵢbⱼ).
    pub fn dual_coproduct(&self, phi: &[F::Elem]) -> Mat<F> {
        let f = &self.field;
        let n = self.dim();
        let mut d = Mat::zeros(f, n, n);
        for (i, j, k, c) in self.mult.entries() {
            if !f.is_exact_zero(&phi[*k]) {
                d[(*i, *j)] = f.add(&d[(*i, *j)], &f.mul(c, &phi[*k]));
            }
        }
        d
    }

    /// Ŝ(φ) = φ∘S.
    pub fn dual_antipode(&self, phi: &[F::Elem]) -> Vector<F> {
        self.antipode.vec_mul(phi)
    }

    pub fn pairing(&self, phi: &[F::Elem], x: &[F::Elem]) -> F::Elem {
        vector::dot(&self.field, phi, x)
    }

    // ----- Sweedler arrows -----

    /// x⇀φ, with ⟨x⇀φ, y⟩ = φ(yx).
    pub fn hit(&self, x: &[F::Elem], phi: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (j, i, k, c) in self.mult.entries() {
            if f.is_exact_zero(&x[*i]) || f.is_exact_zero(&phi[*k]) {
                continue;
            }
            out[*j] = f.add(&out[*j], &f.mul(c, &f.mul(&x[*i], &phi[*k])));
        }
        out
    }

    /// φ↼x, with ⟨φ↼x, y⟩ = φ(xy).
    pub fn hit_from_right(&self, phi: &[F::Elem], x: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, j, k, c) in self.mult.entries() {
            if f.is_exact_zero(&x[*i]) || f.is_exact_zero(&phi[*k]) {
                continue;
            }
            out[*j] = f.add(&out[*j], &f.mul(c, &f.mul(&x[*i], &phi[*k])));
        }
        out
    }

    /// φ⇀x = x₍₁₎⟨φ, x₍₂₎⟩.
    pub fn dual_hit(&self, phi: &[F::Elem], x: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (k, i, j, c) in self.comult.entries() {
            if f.is_exact_zero(&x[*k]) || f.is_exact_zero(&phi[*j]) {
                continue;
            }
            out[*i] = f.add(&out[*i], &f.mul(c, &f.mul(&x[*k], &phi[*j])));
        }
        out
    }

    /// x↼φ = ⟨φ, x₍₁₎⟩x₍₂₎.
    pub fn dual_hit_from_right(&self, x: &[F::Elem], phi: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (k, i, j, c) in self.comult.entries() {
            if f.is_exact_zero(&x[*k]) || f.is_exact_zero(&phi[*i]) {
                continue;
            }
            out[*j] = f.add(&out[*j], &f.mul(c, &f.mul(&x[*k], &phi[*i])));
        }
        out
    }

    /// Dispatch over the four arrows.
    pub fn arrow(&self, arrow: Arrow, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
        match arrow {
            Arrow::ElementHitsFunctional => self.hit(a, b),
            Arrow::FunctionalHitByElement => self.hit_from_right(a, b),
            Arrow::FunctionalHitsElement => self.dual_hit(a, b),
            Arrow::ElementHitByFunctional => self.dual_hit_from_right(a, b),
        }
    }
}

/// The four Sweedler arrows, named by argument order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrow {
    /// x⇀φ (element, functional) → functional
    ElementHitsFunctional,
    /// φ↼x (functional, element) → functional
    FunctionalHitByElement,
    /// φ⇀x (functional, element) → element
    FunctionalHitsElement,
    /// x↼φ (element, functional) → element
    ElementHitByFunctional,
}
