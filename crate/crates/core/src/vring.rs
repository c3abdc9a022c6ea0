//! The commutative ring `V = Z + Zw` spanned by `1` and
//! `w = 2^-r (1 + e_1 + ... + e_{2^t - 1})` inside the Cayley-Dickson
//! algebra `A_t`, handled symbolically through `w^2 = 2 alpha w - 2^t alpha^2`.
//!
//! Integral elements ([`VElement`]) are products-checked: a product that
//! leaves `Z + Zw` is reported as [`VError::NonIntegralResult`]. The dyadic
//! span `V'` ([`VPrimeElement`]) is closed under every operation.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cd_algebra::{self, CDElement};
use crate::numeric::DyadicRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VError {
    #[error("unsupported context t = {t}, r = {r}")]
    BadParams { t: u32, r: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero elements")]
    BothZero,
    #[error("result leaves V (non-integral coordinates)")]
    NonIntegralResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VContext {
    t: u32,
    r: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VElement {
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPrimeElement {
    pub a: DyadicRational,
    pub b: DyadicRational,
}

/// `delta = gamma * x + tau * y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdResult {
    pub delta: VElement,
    pub gamma: VElement,
    pub tau: VElement,
}

impl VElement {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        VElement {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        VElement::new(0, 0)
    }

    pub fn one() -> Self {
        VElement::new(1, 0)
    }

    pub fn w() -> Self {
        VElement::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_prime(&self) -> VPrimeElement {
        VPrimeElement {
            a: DyadicRational::from(&self.a),
            b: DyadicRational::from(&self.b),
        }
    }
}

impl VPrimeElement {
    pub fn new(a: DyadicRational, b: DyadicRational) -> Self {
        VPrimeElement { a, b }
    }

    pub fn zero() -> Self {
        VPrimeElement::new(DyadicRational::zero(), DyadicRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The same value as a [`VElement`], if both coordinates are integers.
    pub fn to_integral(&self) -> Option<VElement> {
        Some(VElement {
            a: self.a.to_integer()?,
            b: self.b.to_integer()?,
        })
    }

    pub fn scale(&self, k: &DyadicRational) -> Self {
        VPrimeElement::new(&self.a * k, &self.b * k)
    }
}

impl From<&VElement> for VPrimeElement {
    fn from(x: &VElement) -> Self {
        x.to_prime()
    }
}

macro_rules! componentwise {
    ($ty:ident) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty {
                    a: &self.a + &rhs.a,
                    b: &self.b + &rhs.b,
                }
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty {
                    a: &self.a - &rhs.a,
                    b: &self.b - &rhs.b,
                }
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    a: -&self.a,
                    b: -&self.b,
                }
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}
componentwise!(VElement);
componentwise!(VPrimeElement);

fn write_pair(
    f: &mut fmt::Formatter<'_>,
    a: &dyn fmt::Display,
    b: &dyn fmt::Display,
    neg_b: bool,
) -> fmt::Result {
    if neg_b {
        write!(f, "{a}-{b}w")
    } else {
        write!(f, "{a}+{b}w")
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.a, &self.b.abs(), self.b.is_negative())
    }
}

impl fmt::Display for VPrimeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.a, &self.b.abs(), self.b.signum() < 0)
    }
}

fn ratio(d: &DyadicRational) -> BigRational {
    let (num, k) = d.as_fraction();
    BigRational::new(num, BigInt::one() << k)
}

/// Nearest integer, ties toward zero.
fn round_half_toward_zero(x: &BigRational) -> BigInt {
    let fl = x.floor();
    let frac = x - &fl;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let fl = fl.to_integer();
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => fl,
        std::cmp::Ordering::Greater => fl + 1,
        std::cmp::Ordering::Equal if x.is_positive() => fl,
        std::cmp::Ordering::Equal => fl + 1,
    }
}

impl VContext {
    pub fn new(t: u32, r: u32) -> Result<Self, VError> {
        if !cd_algebra::admissible(t, r) {
            return Err(VError::BadParams { t, r });
        }
        Ok(VContext { t, r })
    }

    pub fn t(self) -> u32 {
        self.t
    }

    pub fn r(self) -> u32 {
        self.r
    }

    /// `q = 2^t - 1`.
    pub fn q(self) -> BigInt {
        (BigInt::one() << self.t) - 1
    }

    pub fn alpha(self) -> DyadicRational {
        DyadicRational::pow2(-(self.r as i64))
    }

    pub fn trace_w(self) -> DyadicRational {
        DyadicRational::pow2(1 - self.r as i64)
    }

    pub fn norm_w(self) -> DyadicRational {
        DyadicRational::pow2(self.t as i64 - 2 * self.r as i64)
    }

    pub fn mul_prime(self, x: &VPrimeElement, y: &VPrimeElement) -> VPrimeElement {
        let bd = &x.b * &y.b;
        VPrimeElement {
            a: &(&x.a * &y.a) - &(&bd * &self.norm_w()),
            b: &(&(&x.a * &y.b) + &(&x.b * &y.a)) + &(&bd * &self.trace_w()),
        }
    }

    pub fn mul(self, x: &VElement, y: &VElement) -> Result<VElement, VError> {
        self.mul_prime(&x.to_prime(), &y.to_prime())
            .to_integral()
            .ok_or(VError::NonIntegralResult)
    }

    pub fn pow(self, x: &VElement, e: u32) -> Result<VElement, VError> {
        let mut acc = VElement::one();
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `n(a + bw) = (a + b alpha)^2 + q (b alpha)^2`.
    pub fn norm_prime(self, x: &VPrimeElement) -> DyadicRational {
        let ba = &x.b * &self.alpha();
        let u = &x.a + &ba;
        let q = DyadicRational::from(self.q());
        &(&u * &u) + &(&q * &(&ba * &ba))
    }

    pub fn norm(self, x: &VElement) -> DyadicRational {
        self.norm_prime(&x.to_prime())
    }

    /// `4^r n(x) = (2^r a + b)^2 + q b^2`, always an integer.
    pub fn scaled_norm(self, x: &VElement) -> BigInt {
        let u = (&x.a << self.r) + &x.b;
        &u * &u + self.q() * &x.b * &x.b
    }

    /// `conj(a + bw) = (a + 2 alpha b) - bw`.
    pub fn conj_prime(self, x: &VPrimeElement) -> VPrimeElement {
        VPrimeElement {
            a: &x.a + &(&x.b * &self.trace_w()),
            b: -&x.b,
        }
    }

    pub fn conj(self, x: &VElement) -> VPrimeElement {
        self.conj_prime(&x.to_prime())
    }

    pub fn embed(self, x: &VElement) -> CDElement {
        self.embed_prime(&x.to_prime())
    }

    pub fn embed_prime(self, x: &VPrimeElement) -> CDElement {
        cd_algebra::embed_dyadic(&x.a, &x.b, self.t, self.r).expect("context is admissible")
    }

    /// `x / y = x conj(y) / n(y)` as exact rational coordinates.
    fn quotient(self, x: &VElement, y: &VElement) -> Result<(BigRational, BigRational), VError> {
        if y.is_zero() {
            return Err(VError::DivisionByZero);
        }
        let num = self.mul_prime(&x.to_prime(), &self.conj(y));
        let n = ratio(&self.norm(y));
        Ok((ratio(&num.a) / &n, ratio(&num.b) / &n))
    }

    /// Exact quotient `x / y` when it lies in `V`.
    pub fn exact_div(self, x: &VElement, y: &VElement) -> Result<Option<VElement>, VError> {
        let (qa, qb) = self.quotient(x, y)?;
        if qa.is_integer() && qb.is_integer() {
            Ok(Some(VElement::new(qa.to_integer(), qb.to_integer())))
        } else {
            Ok(None)
        }
    }

    pub fn divides(self, d: &VElement, x: &VElement) -> Result<bool, VError> {
        Ok(self.exact_div(x, d)?.is_some())
    }

    /// Division with remainder: `x = z y + v` with `n(v) < n(y)`.
    ///
    /// The quotient coordinates are rounded to the nearest integers (ties
    /// toward zero). If that remainder is not strictly smaller, or `z y`
    /// leaves `V`, the other floor/ceil neighbours are tried and the one with
    /// the smallest remainder norm is used.
    pub fn divmod(self, x: &VElement, y: &VElement) -> Result<(VElement, VElement), VError> {
        let (qa, qb) = self.quotient(x, y)?;
        let ny = self.scaled_norm(y);
        let nearest = VElement::new(round_half_toward_zero(&qa), round_half_toward_zero(&qb));
        let attempt = |z: &VElement| -> Option<(VElement, BigInt)> {
            let v = x - &self.mul(z, y).ok()?;
            let nv = self.scaled_norm(&v);
            Some((v, nv))
        };
        if let Some((v, nv)) = attempt(&nearest) {
            if nv < ny {
                return Ok((nearest, v));
            }
        }
        let (fa, fb) = (qa.floor().to_integer(), qb.floor().to_integer());
        let mut best: Option<(BigInt, VElement, VElement)> = None;
        for (da, db) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let z = VElement::new(&fa + da, &fb + db);
            if let Some((v, nv)) = attempt(&z) {
                if best.as_ref().is_none_or(|(bn, _, _)| nv < *bn) {
                    best = Some((nv, z, v));
                }
            }
        }
        match best {
            Some((_, z, v)) => Ok((z, v)),
            None => Err(VError::NonIntegralResult),
        }
    }

    /// Extended Euclid: `delta` divides `x` and `y`, and
    /// `delta = gamma x + tau y`.
    pub fn gcd_bezout(self, x: &VElement, y: &VElement) -> Result<GcdResult, VError> {
        if x.is_zero() && y.is_zero() {
            return Err(VError::BothZero);
        }
        let (mut r0, mut r1) = (x.clone(), y.clone());
        let (mut g0, mut g1) = (VElement::one(), VElement::zero());
        let (mut t0, mut t1) = (VElement::zero(), VElement::one());
        while !r1.is_zero() {
            let (z, rem) = self.divmod(&r0, &r1)?;
            if self.scaled_norm(&rem) >= self.scaled_norm(&r1) {
                return Err(VError::NonIntegralResult);
            }
            let g2 = &g0 - &self.mul(&z, &g1)?;
            let t2 = &t0 - &self.mul(&z, &t1)?;
            (r0, r1) = (r1, rem);
            (g0, g1) = (g1, g2);
            (t0, t1) = (t1, t2);
        }
        Ok(GcdResult {
            delta: r0,
            gamma: g0,
            tau: t0,
        })
    }

    /// `x == y (mod pi)`: `pi` divides `x - y` exactly.
    pub fn congruent(self, x: &VElement, y: &VElement, pi: &VElement) -> Result<bool, VError> {
        self.divides(pi, &(x - y))
    }
}
