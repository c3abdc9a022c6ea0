//! Exact arithmetic shared by every other module: dyadic rationals and
//! modular arithmetic over prime moduli.

mod dyadic;
mod modular;

pub use dyadic::DyadicRational;
pub use modular::{
    discrete_log, divisors, factorize, gcd_u64, is_prime, mod_inverse, mod_pow, mod_sqrt,
    multiplicative_order, Modulus, BRUTE_FORCE_DLOG_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{x} is not invertible modulo {p}")]
    NotInvertible { x: i128, p: u64 },
    #[error("{x} is not a power of {base} modulo {p}")]
    NotInGroup { x: u64, base: u64, p: u64 },
}
