//! The residue field `V_pi = V / (pi)`, isomorphic to `Z_p` when `n(pi) = p`
//! is prime. Classes are identified with their labels in `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::numeric::{is_prime, mod_inverse, mod_pow, multiplicative_order, Modulus, NumericError};
use crate::vring::{VContext, VElement, VPrimeElement};

/// A residue class, reduced into `[0, p)`.
pub type Label = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("n(pi) = {0} is not an integer")]
    NormNotIntegral(String),
    #[error("n(pi) = {0} is not prime")]
    NormNotPrime(BigInt),
    #[error("pi.b is not invertible modulo {0}")]
    BNotInvertible(u64),
    #[error("no representative of norm below p for label {0}")]
    NoRepresentative(Label),
    #[error("{n} does not divide p - 1 = {p_minus_1}")]
    NotDivisor { n: u64, p_minus_1: u64 },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    ctx: VContext,
    pi: VElement,
    p: u64,
    s: Label,
    modulus: Modulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum BetaPolicy {
    /// Smallest primitive candidate, else smallest candidate.
    #[default]
    PrimitivePreferred,
    /// Smallest candidate, primitive or not.
    Paper,
    /// Smallest primitive candidate, or none.
    PrimitiveOnly,
}

/// A label `beta` with `beta^n = sign * s` in `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaWitness {
    pub label: Label,
    pub representative: VElement,
    pub sign: i8,
    pub order: u64,
    pub primitive: bool,
}

pub fn build_field(pi: &VElement, ctx: VContext) -> Result<ResidueField, ResidueError> {
    let norm = ctx.norm(pi);
    let norm = norm
        .to_integer()
        .ok_or_else(|| ResidueError::NormNotIntegral(norm.to_string()))?;
    let p = match norm.to_u64() {
        Some(p) if p < (1 << 62) && is_prime(p) => p,
        _ => return Err(ResidueError::NormNotPrime(norm)),
    };
    let modulus = Modulus::prime(p)?;
    let b = reduce_big(&pi.b, p);
    let b_inv = mod_inverse(b as i128, modulus).map_err(|_| ResidueError::BNotInvertible(p))?;
    let a = reduce_big(&pi.a, p);
    let s = modulus.mul(modulus.neg(a), b_inv);
    Ok(ResidueField {
        ctx,
        pi: pi.clone(),
        p,
        s,
        modulus,
    })
}

fn reduce_big(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits u64")
}

impl ResidueField {
    pub fn ctx(&self) -> VContext {
        self.ctx
    }

    pub fn pi(&self) -> &VElement {
        &self.pi
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The label of `w`.
    pub fn s(&self) -> Label {
        self.s
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `R = floor((p - 1) / 2)`; representatives are searched in `[-R-1, R]`.
    pub fn window(&self) -> i64 {
        ((self.p - 1) / 2) as i64
    }

    pub fn label_of(&self, x: &VElement) -> Label {
        let v = &x.a + &x.b * BigInt::from(self.s);
        reduce_big(&v, self.p)
    }

    pub fn label_of_small(&self, a: i64, b: i64) -> Label {
        self.modulus.reduce(a as i128 + b as i128 * self.s as i128)
    }

    /// Label of a dyadic element; needs `p` odd.
    pub fn label_of_prime(&self, x: &VPrimeElement) -> Result<Label, ResidueError> {
        let a = x.a.reduce_mod(self.modulus)?;
        let b = x.b.reduce_mod(self.modulus)?;
        Ok(self.modulus.add(a, self.modulus.mul(b, self.s)))
    }

    /// All `(sigma, tau)` in the window with label `k`.
    fn window_pairs(&self, k: Label) -> impl Iterator<Item = (i64, i64)> + '_ {
        let r = self.window();
        let p = self.p as i64;
        (-r - 1..=r).flat_map(move |tau| {
            let x = self
                .modulus
                .reduce(k as i128 - tau as i128 * self.s as i128) as i64;
            let lo = (x <= r).then_some((x, tau));
            let hi = (x - p >= -r - 1).then_some((x - p, tau));
            lo.into_iter().chain(hi)
        })
    }

    /// `4^r n(sigma + tau w)`.
    fn scaled_norm_small(&self, sigma: i64, tau: i64) -> i128 {
        let u = ((sigma as i128) << self.ctx.r()) + tau as i128;
        let q = (1i128 << self.ctx.t()) - 1;
        u * u + q * (tau as i128) * (tau as i128)
    }

    /// Representative of `k` of minimal norm, among window pairs of norm
    /// below `p`. Ties prefer `|sigma| + |tau| <= |pi.a| + |pi.b|`, then the
    /// lexicographically smallest pair.
    pub fn unlabel_min_norm(&self, k: Label) -> Result<VElement, ResidueError> {
        let k = k % self.p;
        let limit = (self.p as i128) << (2 * self.ctx.r());
        let pi_size = self.pi.a.magnitude() + self.pi.b.magnitude();
        self.window_pairs(k)
            .filter_map(|(sigma, tau)| {
                let n = self.scaled_norm_small(sigma, tau);
                (n < limit).then(|| {
                    let size = num_bigint::BigUint::from(sigma.unsigned_abs() + tau.unsigned_abs());
                    (n, size > pi_size, sigma, tau)
                })
            })
            .min()
            .map(|(_, _, sigma, tau)| VElement::new(sigma, tau))
            .ok_or(ResidueError::NoRepresentative(k))
    }

    /// Window pairs with label `k` and norm below `p`, sorted.
    pub fn label_pairs(&self, k: Label) -> Vec<(i64, i64)> {
        let limit = (self.p as i128) << (2 * self.ctx.r());
        let mut out: Vec<(i64, i64)> = self
            .window_pairs(k % self.p)
            .filter(|&(sigma, tau)| self.scaled_norm_small(sigma, tau) < limit)
            .collect();
        out.sort_unstable();
        out
    }

    /// Every `x` in `[1, p)` with `x^n = y`.
    pub fn roots_of(&self, n: u64, y: Label) -> Vec<Label> {
        (1..self.p)
            .filter(|&x| mod_pow(x as i128, n, self.modulus) == y % self.p)
            .collect()
    }

    /// Generalized weight: minimal `|sigma| + |tau|` over window
    /// representatives of `k`.
    pub fn weight_g(&self, k: Label) -> u64 {
        self.window_pairs(k % self.p)
            .map(|(sigma, tau)| sigma.unsigned_abs() + tau.unsigned_abs())
            .min()
            .expect("every class meets the window")
    }

    pub fn weight_table(&self) -> Vec<u64> {
        (0..self.p).map(|k| self.weight_g(k)).collect()
    }

    pub fn distance_g(&self, x: Label, y: Label) -> u64 {
        self.weight_g(self.modulus.sub(x % self.p, y % self.p))
    }

    /// Every label `x` in `[1, p)` with `x^n = +-s`.
    pub fn beta_candidates(&self, n: u64) -> Result<Vec<Label>, ResidueError> {
        let pm1 = self.p - 1;
        if n == 0 || !pm1.is_multiple_of(n) {
            return Err(ResidueError::NotDivisor { n, p_minus_1: pm1 });
        }
        let neg_s = self.modulus.neg(self.s);
        Ok((1..self.p)
            .filter(|&x| {
                let y = mod_pow(x as i128, n, self.modulus);
                y == self.s || y == neg_s
            })
            .collect())
    }

    pub fn witness(&self, label: Label, n: u64) -> Result<BetaWitness, ResidueError> {
        let y = mod_pow(label as i128, n, self.modulus);
        let sign = if y == self.s { 1 } else { -1 };
        let order = multiplicative_order(label as i128, self.modulus)?;
        Ok(BetaWitness {
            label,
            representative: self.unlabel_min_norm(label)?,
            sign,
            order,
            primitive: order == self.p - 1,
        })
    }

    pub fn find_beta(
        &self,
        n: u64,
        policy: BetaPolicy,
    ) -> Result<Option<BetaWitness>, ResidueError> {
        let candidates = self.beta_candidates(n)?;
        let is_primitive = |&x: &Label| -> bool {
            multiplicative_order(x as i128, self.modulus).is_ok_and(|o| o == self.p - 1)
        };
        let choice = match policy {
            BetaPolicy::Paper => candidates.first().copied(),
            BetaPolicy::PrimitiveOnly => candidates.iter().copied().find(is_primitive),
            BetaPolicy::PrimitivePreferred => candidates
                .iter()
                .copied()
                .find(is_primitive)
                .or(candidates.first().copied()),
        };
        choice.map(|label| self.witness(label, n)).transpose()
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi={} s={}", self.pi, self.s)
    }
}
