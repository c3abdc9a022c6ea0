use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::{mod_inverse, mod_pow, Modulus};
use super::NumericError;

/// An exact number `mantissa * 2^exponent`.
///
/// Always canonical: the mantissa is odd, or the value is zero with
/// exponent 0. Canonical form makes the derived equality and hashing exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    mantissa: BigInt,
    exponent: i64,
}

impl DyadicRational {
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Self {
        let mut mantissa = mantissa.into();
        let mut exponent = exponent;
        match mantissa.trailing_zeros() {
            None => exponent = 0,
            Some(tz) if tz > 0 => {
                mantissa >>= tz;
                exponent += tz as i64;
            }
            Some(_) => {}
        }
        DyadicRational { mantissa, exponent }
    }

    pub fn zero() -> Self {
        DyadicRational {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        DyadicRational {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        DyadicRational::new(n, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        DyadicRational {
            mantissa: BigInt::one(),
            exponent: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        if self.exponent < 0 {
            None
        } else {
            Some(&self.mantissa << self.exponent as u64)
        }
    }

    pub fn signum(&self) -> i32 {
        if self.mantissa.is_zero() {
            0
        } else if self.mantissa.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        DyadicRational {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        DyadicRational {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Write the value as `num / 2^k` with `k >= 0` and integer `num`.
    pub fn as_fraction(&self) -> (BigInt, u64) {
        if self.exponent >= 0 {
            (&self.mantissa << self.exponent as u64, 0)
        } else {
            (self.mantissa.clone(), (-self.exponent) as u64)
        }
    }

    /// Image in `Z/pZ`; needs `p` odd when the value is not an integer.
    pub fn reduce_mod(&self, m: Modulus) -> Result<u64, NumericError> {
        let p = BigInt::from(m.get());
        let base = self
            .mantissa
            .mod_floor(&p)
            .to_u64()
            .expect("residue fits u64");
        if self.exponent >= 0 {
            let scale = mod_pow(2, self.exponent as u64, m);
            Ok(m.mul(base, scale))
        } else {
            let inv2 = mod_inverse(2, m)?;
            let scale = mod_pow(inv2 as i128, (-self.exponent) as u64, m);
            Ok(m.mul(base, scale))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa.to_f64().unwrap_or(f64::NAN) * (self.exponent as f64).exp2()
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        (a, b, e)
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        DyadicRational::zero()
    }
}

impl From<i64> for DyadicRational {
    fn from(n: i64) -> Self {
        DyadicRational::from_integer(n)
    }
}

impl From<BigInt> for DyadicRational {
    fn from(n: BigInt) -> Self {
        DyadicRational::from_integer(n)
    }
}

impl From<&BigInt> for DyadicRational {
    fn from(n: &BigInt) -> Self {
        DyadicRational::from_integer(n.clone())
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a + b, e)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a - b, e)
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: &DyadicRational) -> DyadicRational {
        // Odd times odd is odd, so the product is already canonical.
        if self.is_zero() || rhs.is_zero() {
            return DyadicRational::zero();
        }
        DyadicRational {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Neg for &DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        DyadicRational {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for DyadicRational {
            type Output = DyadicRational;
            fn $f(self, rhs: DyadicRational) -> DyadicRational { (&self).$f(&rhs) }
        }
        impl $tr<&DyadicRational> for DyadicRational {
            type Output = DyadicRational;
            fn $f(self, rhs: &DyadicRational) -> DyadicRational { (&self).$f(rhs) }
        }
        impl $tr<DyadicRational> for &DyadicRational {
            type Output = DyadicRational;
            fn $f(self, rhs: DyadicRational) -> DyadicRational { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        -&self
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, k) = self.as_fraction();
        if k == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", BigInt::one() << k)
        }
    }
}
