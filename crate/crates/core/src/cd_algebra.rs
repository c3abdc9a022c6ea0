//! Exact arithmetic in the real Cayley-Dickson algebras `A_t` of dimension
//! `2^t`, with every doubling constant equal to `-1` (quaternions at `t = 2`,
//! octonions at `t = 3`, sedenions at `t = 4`, ...).
//!
//! Elements are coefficient vectors over the basis `e_0 = 1, e_1, ...,
//! e_{2^t - 1}`, where the upper half of the basis of `A_t` is `(0, e_i)` for
//! the basis `e_i` of `A_{t-1}`. Products are computed by unrolling the
//! doubling formula
//!
//! ```text
//! (a1, a2)(b1, b2) = (a1 b1 - b2 conj(a2), conj(a1) b2 + b1 a2)
//! ```
//!
//! recursively; no multiplication table is stored. This module is the
//! ground truth that the two-coordinate ring in [`crate::vring`] is checked
//! against.

use thiserror::Error;

use crate::numeric::DyadicRational;

/// Largest doubling depth accepted. `2^12` coefficients is far past anything
/// the codes need.
pub const MAX_DEPTH: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error("elements live in different algebras (t = {left} and t = {right})")]
    ParamsMismatch { left: u32, right: u32 },
    #[error("unsupported parameters t = {t}, r = {r}")]
    BadParams { t: u32, r: u32 },
}

/// Smallest admissible `r` (with `alpha = 2^-r`) for depth `t`.
///
/// For `r < t - 2` the two-coordinate ring loses division with remainder;
/// `r = 1` is the floor so that `alpha <= 1/2`.
pub fn minimal_r(t: u32) -> u32 {
    t.saturating_sub(2).max(1)
}

/// Whether `(t, r)` describes a supported element `w = 2^-r (1 + sum e_i)`.
pub fn admissible(t: u32, r: u32) -> bool {
    (2..=MAX_DEPTH).contains(&t) && r >= minimal_r(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    t: u32,
}

impl AlgebraParams {
    pub fn new(t: u32) -> Result<Self, CdError> {
        if !(1..=MAX_DEPTH).contains(&t) {
            return Err(CdError::BadParams { t, r: 0 });
        }
        Ok(AlgebraParams { t })
    }

    pub fn depth(self) -> u32 {
        self.t
    }

    pub fn dimension(self) -> usize {
        1usize << self.t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CDElement {
    params: AlgebraParams,
    coeffs: Vec<DyadicRational>,
}

impl CDElement {
    pub fn zero(params: AlgebraParams) -> Self {
        CDElement {
            params,
            coeffs: vec![DyadicRational::zero(); params.dimension()],
        }
    }

    pub fn scalar(params: AlgebraParams, x: DyadicRational) -> Self {
        let mut e = CDElement::zero(params);
        e.coeffs[0] = x;
        e
    }

    pub fn one(params: AlgebraParams) -> Self {
        CDElement::scalar(params, DyadicRational::one())
    }

    /// Basis element `e_i`.
    pub fn basis(params: AlgebraParams, i: usize) -> Self {
        let mut e = CDElement::zero(params);
        e.coeffs[i] = DyadicRational::one();
        e
    }

    pub fn from_coeffs(
        params: AlgebraParams,
        coeffs: Vec<DyadicRational>,
    ) -> Result<Self, CdError> {
        if coeffs.len() != params.dimension() {
            return Err(CdError::BadParams {
                t: params.depth(),
                r: 0,
            });
        }
        Ok(CDElement { params, coeffs })
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn coeffs(&self) -> &[DyadicRational] {
        &self.coeffs
    }

    pub fn real_part(&self) -> &DyadicRational {
        &self.coeffs[0]
    }

    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(DyadicRational::is_zero)
    }

    fn check(&self, other: &CDElement) -> Result<(), CdError> {
        if self.params != other.params {
            return Err(CdError::ParamsMismatch {
                left: self.params.depth(),
                right: other.params.depth(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CDElement) -> Result<CDElement, CdError> {
        self.check(other)?;
        Ok(CDElement {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CDElement) -> Result<CDElement, CdError> {
        self.check(other)?;
        Ok(CDElement {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &DyadicRational) -> CDElement {
        CDElement {
            params: self.params,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }
}

fn conj_slice(a: &[DyadicRational]) -> Vec<DyadicRational> {
    let mut out: Vec<DyadicRational> = a.iter().map(|x| -x).collect();
    out[0] = a[0].clone();
    out
}

fn mul_slice(a: &[DyadicRational], b: &[DyadicRational]) -> Vec<DyadicRational> {
    let n = a.len();
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    let h = n / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    let left = mul_slice(a1, b1);
    let right = mul_slice(b2, &conj_slice(a2));
    let top = mul_slice(&conj_slice(a1), b2);
    let bottom = mul_slice(b1, a2);
    let mut out = Vec::with_capacity(n);
    out.extend(left.iter().zip(&right).map(|(x, y)| x - y));
    out.extend(top.iter().zip(&bottom).map(|(x, y)| x + y));
    out
}

pub fn cd_mul(x: &CDElement, y: &CDElement) -> Result<CDElement, CdError> {
    x.check(y)?;
    Ok(CDElement {
        params: x.params,
        coeffs: mul_slice(&x.coeffs, &y.coeffs),
    })
}

pub fn cd_conj(x: &CDElement) -> CDElement {
    CDElement {
        params: x.params,
        coeffs: conj_slice(&x.coeffs),
    }
}

pub fn cd_trace(x: &CDElement) -> DyadicRational {
    x.coeffs[0].shl(1)
}

/// Sum of squared coefficients; equals `x conj(x)` because all doubling
/// constants are `-1`.
pub fn cd_norm(x: &CDElement) -> DyadicRational {
    x.coeffs
        .iter()
        .fold(DyadicRational::zero(), |acc, c| &acc + &(c * c))
}

/// `w = 2^-r (1 + e_1 + ... + e_{2^t - 1})`.
pub fn build_w(t: u32, r: u32) -> Result<CDElement, CdError> {
    if !admissible(t, r) {
        return Err(CdError::BadParams { t, r });
    }
    let params = AlgebraParams::new(t)?;
    Ok(CDElement {
        params,
        coeffs: vec![DyadicRational::pow2(-(r as i64)); params.dimension()],
    })
}

/// `a + b w` as an element of `A_t`.
pub fn embed_v(a: i64, b: i64, t: u32, r: u32) -> Result<CDElement, CdError> {
    embed_dyadic(&DyadicRational::from(a), &DyadicRational::from(b), t, r)
}

pub fn embed_dyadic(
    a: &DyadicRational,
    b: &DyadicRational,
    t: u32,
    r: u32,
) -> Result<CDElement, CdError> {
    let w = build_w(t, r)?;
    let mut out = w.scale(b);
    out.coeffs[0] = &out.coeffs[0] + a;
    Ok(out)
}
