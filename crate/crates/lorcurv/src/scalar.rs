//! Field elements: exact rationals, binary floats, and complex pairs over either.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Q = BigRational;

pub const DEFAULT_TOL: f64 = 1e-9;

static TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// Relative tolerance used by the float backend. Read once from `LORCURV_TOL`
/// unless overridden with [`set_tolerance`].
pub fn tolerance() -> f64 {
    let bits = TOL_BITS.load(Ordering::Relaxed);
    if bits != 0 {
        return f64::from_bits(bits);
    }
    let t = std::env::var("LORCURV_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL);
    TOL_BITS.store(t.to_bits(), Ordering::Relaxed);
    t
}

pub fn set_tolerance(t: f64) {
    assert!(t.is_finite() && t > 0.0, "tolerance must be positive");
    TOL_BITS.store(t.to_bits(), Ordering::Relaxed);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Minimal field interface shared by real scalars and their complexifications.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Absolute value as a float, used only for pivoting and tolerance scales.
    fn magnitude(&self) -> f64;
    /// Exact zero test for rationals; `|x| <= tol * max(1, scale)` for floats.
    fn negligible(&self, scale: f64) -> bool;
    fn to_c64(&self) -> (f64, f64);

    fn is_zero(&self) -> bool {
        self.negligible(1.0)
    }
}

/// Real scalar backend.
pub trait Scalar: Field + PartialOrd + fmt::Display {
    const MODE: Mode;
    fn from_rational(q: &Q) -> Self;
    fn to_f64(&self) -> f64;
    /// The exact value, when the backend has one.
    fn to_rational(&self) -> Option<Q>;
    /// Square root inside the backend: exact mode only succeeds on rational squares.
    fn sqrt(&self) -> Option<Self>;
    fn abs(&self) -> Self;
    /// Sign with float tolerance applied against `scale`.
    fn sign(&self, scale: f64) -> i32;
    /// Lift a float approximation back into the backend. Exact mode tries the
    /// continued-fraction convergents and keeps the first one `accept`s.
    fn lift(x: f64, accept: &dyn Fn(&Self) -> bool) -> Option<Self>;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Q::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl Field for Q {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn magnitude(&self) -> f64 {
        q_to_f64(self).abs()
    }
    fn negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }
    fn to_c64(&self) -> (f64, f64) {
        (q_to_f64(self), 0.0)
    }
}

impl Scalar for Q {
    const MODE: Mode = Mode::Exact;
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        q_to_f64(self)
    }
    fn to_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn sqrt(&self) -> Option<Self> {
        q_sqrt(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sign(&self, _scale: f64) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_positive(self) {
            1
        } else {
            -1
        }
    }
    fn lift(x: f64, accept: &dyn Fn(&Self) -> bool) -> Option<Self> {
        // early convergents can be a different root of the same polynomial
        let near = |q: &Q| (q_to_f64(q) - x).abs() <= 1e-7 * x.abs().max(1.0);
        convergents(x, 40).into_iter().find(|q| near(q) && accept(q))
    }
}

impl Field for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
    fn negligible(&self, scale: f64) -> bool {
        f64::abs(*self) <= tolerance() * scale.abs().max(1.0)
    }
    fn to_c64(&self) -> (f64, f64) {
        (*self, 0.0)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;
    fn from_rational(q: &Q) -> Self {
        q_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<Q> {
        None
    }
    fn sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(f64::sqrt(*self))
        } else if self.negligible(1.0) {
            Some(0.0)
        } else {
            None
        }
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sign(&self, scale: f64) -> i32 {
        if self.negligible(scale) {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn lift(x: f64, accept: &dyn Fn(&Self) -> bool) -> Option<Self> {
        accept(&x).then_some(x)
    }
}

pub fn q_to_f64(q: &Q) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or_else(|| {
        // huge numerators/denominators: fall back to a ratio of logs
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn q_sqrt(q: &Q) -> Option<Q> {
    if Signed::is_negative(q) {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Q::new(sn, sd))
}

/// Continued-fraction convergents of `x`, stopping once the float value is matched.
pub fn convergents(x: f64, max_terms: usize) -> Vec<Q> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::one(), BigInt::zero());
    let (mut k0, mut k1) = (BigInt::zero(), BigInt::one());
    let mut r = x;
    for _ in 0..max_terms {
        let a = r.floor();
        if !a.is_finite() || a.abs() > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h = &ai * &h0 + &h1;
        let k = &ai * &k0 + &k1;
        h1 = std::mem::replace(&mut h0, h);
        k1 = std::mem::replace(&mut k0, k);
        let q = Q::new(h0.clone(), k0.clone());
        let done = (q_to_f64(&q) - x).abs() <= 1e-15 * x.abs().max(1.0);
        out.push(q);
        let frac = r - a;
        if done || frac.abs() < 1e-12 || k0.bits() > 60 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Q::from_integer(n));
    }
    // finite decimals are exact rationals too
    let (int, frac) = s.split_once('.')?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let neg = int.starts_with('-');
    let int_digits = int.trim_start_matches(['-', '+']);
    let digits: BigInt = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac)
        .parse()
        .ok()?;
    let q = Q::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -q } else { q })
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Complex numbers as pairs of real scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct Cplx<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> Cplx<S> {
    pub fn new(re: S, im: S) -> Self {
        Cplx { re, im }
    }
    pub fn real(re: S) -> Self {
        Cplx { re, im: S::zero() }
    }
    pub fn i() -> Self {
        Cplx { re: S::zero(), im: S::one() }
    }
    pub fn conj(&self) -> Self {
        Cplx { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn norm_sqr(&self) -> S {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl<S: Scalar> fmt::Display for Cplx<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<S: Scalar> Add for Cplx<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cplx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<S: Scalar> Sub for Cplx<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cplx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<S: Scalar> Mul for Cplx<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cplx {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<S: Scalar> Div for Cplx<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        let n = self * o.conj();
        Cplx { re: n.re / d.clone(), im: n.im / d }
    }
}

impl<S: Scalar> Neg for Cplx<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Cplx { re: -self.re, im: -self.im }
    }
}

impl<S: Scalar> Field for Cplx<S> {
    const EXACT: bool = S::EXACT;
    fn zero() -> Self {
        Cplx::real(S::zero())
    }
    fn one() -> Self {
        Cplx::real(S::one())
    }
    fn from_i64(v: i64) -> Self {
        Cplx::real(S::from_i64(v))
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude().hypot(self.im.magnitude())
    }
    fn negligible(&self, scale: f64) -> bool {
        self.re.negligible(scale) && self.im.negligible(scale)
    }
    fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_on_squares() {
        assert_eq!(q_sqrt(&q(16, 9)), Some(q(4, 3)));
        assert_eq!(q_sqrt(&q(2, 1)), None);
        assert_eq!(q_sqrt(&q(-4, 1)), None);
    }

    #[test]
    fn convergents_recover_simple_fractions() {
        let cs = convergents(-256.0 / 9.0, 40);
        assert!(cs.contains(&q(-256, 9)));
        assert!(convergents(0.75, 40).contains(&q(3, 4)));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_q("7"), Some(qi(7)));
        assert_eq!(parse_q("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("abc"), None);
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = Cplx::new(q(1, 2), qi(3));
        let b = Cplx::new(qi(-2), q(1, 3));
        assert_eq!((a.clone() / b.clone()) * b, a);
    }
}
