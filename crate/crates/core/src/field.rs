//! Scalar fields: exact rationals, complex floats with a tolerance, and GF(p).
//!
//! A field is a small context value; its elements are plain data. All
//! arithmetic goes through the context so that GF(p) elements can be bare
//! residues and the complex zero test can consult the tolerance.

use std::fmt::Debug;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Default absolute tolerance of the complex field.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Complex { tolerance: f64 },
    Prime { p: u64 },
}

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for (numerically) zero input.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The involutive automorphism: identity except over the complex field.
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    /// Zero test honouring the tolerance.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Exact zero test, used to keep sparse storage free of zeros.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool;
    /// A nonnegative size used for residual reporting.
    fn magnitude(&self, a: &Self::Elem) -> f64;
    fn tolerance(&self) -> f64;
    fn is_exact(&self) -> bool;
    /// Number of elements for finite fields.
    fn order(&self) -> Option<u64>;
    fn characteristic(&self) -> u64;
    /// The element with the given index in a fixed enumeration (finite fields only).
    fn nth(&self, index: u64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem, String>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Same field up to tolerance settings.
    fn with_tolerance(&self, tol: f64) -> Self;

    fn eq_tol(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.eq_tol(a, &self.one())
    }
}

/// The field of rational numbers with exact big-integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn conj(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_exact_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn magnitude(&self, a: &BigRational) -> f64 {
        a.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn nth(&self, index: u64) -> BigRational {
        self.from_i64(index as i64)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn parse(&self, s: &str) -> Result<BigRational, String> {
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| format!("bad rational {s:?}"))?;
        let d: BigInt = den.parse().map_err(|_| format!("bad rational {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(BigRational::new(n, d))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn with_tolerance(&self, _tol: f64) -> Self {
        *self
    }
}

/// Complex numbers in double precision; zero tests use an absolute tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Complexes {
    pub tol: f64,
}

impl Default for Complexes {
    fn default() -> Self {
        Complexes { tol: DEFAULT_TOLERANCE }
    }
}

impl Complexes {
    pub fn new(tol: f64) -> Self {
        Complexes { tol }
    }
}

impl Field for Complexes {
    type Elem = Complex64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Complex { tolerance: self.tol }
    }
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(&self, v: i64) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn inv(&self, a: &Complex64) -> Option<Complex64> {
        if self.is_zero(a) {
            None
        } else {
            Some(a.inv())
        }
    }
    fn conj(&self, a: &Complex64) -> Complex64 {
        a.conj()
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.norm() <= self.tol
    }
    fn is_exact_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn magnitude(&self, a: &Complex64) -> f64 {
        a.norm()
    }
    fn tolerance(&self) -> f64 {
        self.tol
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn nth(&self, index: u64) -> Complex64 {
        self.from_i64(index as i64)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }
    fn parse(&self, s: &str) -> Result<Complex64, String> {
        parse_complex(s).ok_or_else(|| format!("bad complex number {s:?}"))
    }
    fn format(&self, a: &Complex64) -> String {
        format_complex(*a)
    }
    fn with_tolerance(&self, tol: f64) -> Self {
        Complexes { tol }
    }
}

/// Shortest round-trip rendering of a real number.
fn format_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return format_real(z.re);
    }
    let im = if z.im == 1.0 {
        String::new()
    } else if z.im == -1.0 {
        "-".to_string()
    } else {
        format_real(z.im)
    };
    if z.re == 0.0 {
        format!("{im}i")
    } else if z.im < 0.0 || im.starts_with('-') {
        format!("{}{im}i", format_real(z.re))
    } else {
        format!("{}+{im}i", format_real(z.re))
    }
}

fn parse_imag(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => s.parse().ok(),
    }
}

fn parse_complex(s: &str) -> Option<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx];
            if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().ok()?;
                let im = parse_imag(&body[idx..])?;
                Some(Complex64::new(re, im))
            }
            None => Some(Complex64::new(0.0, parse_imag(body)?)),
        }
    } else {
        Some(Complex64::new(t.parse().ok()?, 0.0))
    }
}

/// The prime field GF(p); elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, String> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(format!("{p} is not a supported prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (*a as u128 * *b as u128 % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn conj(&self, a: &u64) -> u64 {
        *a
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_exact_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn magnitude(&self, a: &u64) -> f64 {
        if *a == 0 {
            0.0
        } else {
            1.0
        }
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn nth(&self, index: u64) -> u64 {
        index % self.p
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn parse(&self, s: &str) -> Result<u64, String> {
        let t = s.trim();
        let (v, modulus) = match t.split_once("mod") {
            Some((v, m)) => (v.trim(), Some(m.trim())),
            None => (t, None),
        };
        if let Some(m) = modulus {
            let m: u64 = m.parse().map_err(|_| format!("bad modulus in {s:?}"))?;
            if m != self.p {
                return Err(format!("{s:?} is not over GF({})", self.p));
            }
        }
        let v: i64 = v.parse().map_err(|_| format!("bad GF({}) element {s:?}", self.p))?;
        Ok(self.from_i64(v))
    }
    fn format(&self, a: &u64) -> String {
        format!("{a} mod {}", self.p)
    }
    fn with_tolerance(&self, _tol: f64) -> Self {
        *self
    }
}
