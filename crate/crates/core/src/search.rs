//! Parameter search: write `p = A^2 + (2^t - 1) B^2`, build the field of
//! `pi = (A - B) + B 2^r w` for a range of `r`, and look for `beta` with
//! `beta^n = +-w` for every factorization `p - 1 = n M`. Feasible codes are
//! ranked by rate `k / n` at a fixed number of parity rows.

use num_integer::Roots;
use rayon::prelude::*;
use thiserror::Error;

use crate::cd_algebra::minimal_r;
use crate::codes::{CodeConfig, CodeError, MAX_ROWS};
use crate::numeric::is_prime;
use crate::residue::{build_field, BetaPolicy, BetaWitness, ResidueError, ResidueField};
use crate::vring::{VContext, VElement, VError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is too small (need p >= 5)")]
    TooSmall(u64),
    #[error("q = {0} is not one of 3, 7, 15")]
    UnsupportedQ(u64),
    #[error("rows must be in 1..=4, got {0}")]
    BadRows(usize),
    #[error("{p} has no representation a^2 + {q} b^2")]
    NoRepresentation { p: u64, q: u64 },
    #[error("norm of derived pi is {got}, expected {expected}")]
    NormMismatch { expected: u64, got: String },
    #[error(transparent)]
    Ring(#[from] VError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

/// `p = a^2 + (2^t - 1) b^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    pub a: u64,
    pub b: u64,
    pub t: u32,
}

/// `n M = p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorPair {
    pub n: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeCandidate {
    pub repr: Representation,
    pub r: u32,
    pub field: ResidueField,
    pub pair: FactorPair,
    pub beta: Option<BetaWitness>,
    pub rate_denominator: u64,
    pub feasible: bool,
}

impl CodeCandidate {
    pub fn to_config(&self, rows: usize) -> Result<CodeConfig, CodeError> {
        let beta = self
            .beta
            .as_ref()
            .ok_or(CodeError::NoBeta { n: self.pair.n })?;
        CodeConfig::new(self.field.clone(), self.pair.n, beta.label, rows)
    }

    fn rank_key(&self) -> (bool, u64, u32, u32, u64) {
        (
            !self.feasible,
            self.pair.n,
            self.repr.t,
            self.r,
            self.repr.b,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub t_max: u32,
    pub r_extra: u32,
    pub rows: usize,
    pub policy: BetaPolicy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            t_max: 6,
            r_extra: 4,
            rows: 2,
            policy: BetaPolicy::PrimitiveOnly,
        }
    }
}

pub fn representations(p: u64, t_max: u32) -> Vec<Representation> {
    let mut out = Vec::new();
    for t in 2..=t_max.min(62) {
        let q = (1u64 << t) - 1;
        let mut b = 1u64;
        while q.saturating_mul(b * b) <= p {
            let rest = p - q * b * b;
            let a = rest.sqrt();
            if a * a == rest {
                out.push(Representation { a, b, t });
            }
            b += 1;
        }
    }
    out
}

/// Congruence criteria for `p = a^2 + q b^2` with `b >= 1`.
pub fn prime_form_check(p: u64, q: u64) -> Result<bool, SearchError> {
    Ok(match q {
        3 => p == 3 || p % 3 == 1,
        7 => p == 7 || (p != 2 && [1, 2, 4].contains(&(p % 7))),
        15 => [1, 19, 31, 49].contains(&(p % 60)),
        _ => return Err(SearchError::UnsupportedQ(q)),
    })
}

pub fn derive_pi(repr: Representation, r: u32) -> Result<VElement, SearchError> {
    let ctx = VContext::new(repr.t, r)?;
    let pi = VElement::new(repr.a as i128 - repr.b as i128, (repr.b as i128) << r);
    let p = repr.a as u128 * repr.a as u128 + ((1u128 << repr.t) - 1) * (repr.b as u128).pow(2);
    let norm = ctx.norm(&pi);
    if norm != crate::numeric::DyadicRational::from(num_bigint::BigInt::from(p)) {
        return Err(SearchError::NormMismatch {
            expected: p as u64,
            got: norm.to_string(),
        });
    }
    Ok(pi)
}

/// The residue field for `p` in depth `t` at `r` (default `max(1, t - 2)`).
pub fn field_for(p: u64, t: u32, r: Option<u32>) -> Result<ResidueField, SearchError> {
    if !is_prime(p) {
        return Err(SearchError::NotPrime(p));
    }
    let r = r.unwrap_or_else(|| minimal_r(t));
    let ctx = VContext::new(t, r)?;
    let repr = representations(p, t)
        .into_iter()
        .find(|x| x.t == t)
        .ok_or(SearchError::NoRepresentation { p, q: (1 << t) - 1 })?;
    Ok(build_field(&derive_pi(repr, r)?, ctx)?)
}

pub fn factor_pairs(p: u64) -> Vec<FactorPair> {
    crate::numeric::divisors(p - 1)
        .into_iter()
        .filter(|&n| n >= 2)
        .map(|n| FactorPair { n, m: (p - 1) / n })
        .collect()
}

/// Every `(representation, r, n)` combination, feasible candidates first in
/// rank order (ascending `n`, then `t`, `r`, `B`), infeasible ones after.
pub fn main_algorithm(p: u64, opts: &SearchOptions) -> Result<Vec<CodeCandidate>, SearchError> {
    if !is_prime(p) {
        return Err(SearchError::NotPrime(p));
    }
    if p < 5 {
        return Err(SearchError::TooSmall(p));
    }
    if !(1..=MAX_ROWS).contains(&opts.rows) {
        return Err(SearchError::BadRows(opts.rows));
    }
    let pairs: Vec<FactorPair> = factor_pairs(p)
        .into_iter()
        .filter(|pair| pair.n > opts.rows as u64)
        .collect();
    let grid: Vec<(Representation, u32)> = representations(p, opts.t_max)
        .into_iter()
        .flat_map(|repr| {
            let lo = minimal_r(repr.t);
            (lo..=lo + opts.r_extra).map(move |r| (repr, r))
        })
        .collect();
    let nested: Result<Vec<Vec<CodeCandidate>>, SearchError> = grid
        .par_iter()
        .map(|&(repr, r)| {
            let pi = derive_pi(repr, r)?;
            let field = build_field(&pi, VContext::new(repr.t, r)?)?;
            pairs
                .iter()
                .map(|&pair| {
                    let beta = field.find_beta(pair.n, opts.policy)?;
                    Ok(CodeCandidate {
                        repr,
                        r,
                        field: field.clone(),
                        pair,
                        feasible: beta.is_some(),
                        beta,
                        rate_denominator: pair.n,
                    })
                })
                .collect()
        })
        .collect();
    let mut out: Vec<CodeCandidate> = nested?.into_iter().flatten().collect();
    out.sort_by_key(CodeCandidate::rank_key);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::DecodeStatus;

    fn rep(a: u64, b: u64, t: u32) -> Representation {
        Representation { a, b, t }
    }

    fn primes_below(n: u64) -> impl Iterator<Item = u64> {
        (2..n).filter(|&p| is_prime(p))
    }

    fn search(p: u64, t_max: u32, r_extra: u32) -> Vec<CodeCandidate> {
        let opts = SearchOptions {
            t_max,
            r_extra,
            ..SearchOptions::default()
        };
        main_algorithm(p, &opts).unwrap()
    }

    fn summary(c: &CodeCandidate) -> (u64, u32, u32, u64) {
        (
            c.pair.n,
            c.repr.t,
            c.r,
            c.beta.as_ref().map_or(0, |b| b.label),
        )
    }

    #[test]
    fn representation_examples() {
        assert_eq!(representations(29, 5), vec![rep(1, 2, 3)]);
        assert_eq!(representations(61, 5), vec![rep(7, 2, 2), rep(1, 2, 4)]);
        assert_eq!(representations(149, 6), vec![rep(11, 2, 3), rep(5, 2, 5)]);
        assert_eq!(
            representations(31, 5),
            vec![rep(2, 3, 2), rep(4, 1, 4), rep(0, 1, 5)]
        );
    }

    #[test]
    fn representations_match_brute_force() {
        for p in primes_below(10_000) {
            let mut brute = Vec::new();
            for t in 2..=6u32 {
                let q = (1u64 << t) - 1;
                for b in 1..=100u64 {
                    for a in 0..=100u64 {
                        if a * a + q * b * b == p {
                            brute.push(rep(a, b, t));
                        }
                    }
                }
            }
            assert_eq!(representations(p, 6), brute, "p={p}");
        }
    }

    #[test]
    fn prime_forms_match_representability() {
        assert!(prime_form_check(29, 7).unwrap());
        assert!(prime_form_check(31, 15).unwrap());
        assert!(!prime_form_check(5, 3).unwrap());
        assert_eq!(prime_form_check(29, 5), Err(SearchError::UnsupportedQ(5)));
        for p in primes_below(10_000) {
            for (q, t) in [(3u64, 2u32), (7, 3), (15, 4)] {
                let representable = representations(p, t).iter().any(|r| r.t == t);
                assert_eq!(
                    prime_form_check(p, q).unwrap(),
                    representable,
                    "p={p} q={q}"
                );
            }
        }
    }

    #[test]
    fn pi_examples() {
        assert_eq!(derive_pi(rep(1, 2, 3), 1).unwrap(), VElement::new(-1, 4));
        assert_eq!(derive_pi(rep(8, 1, 3), 1).unwrap(), VElement::new(7, 2));
        assert_eq!(derive_pi(rep(11, 2, 3), 3).unwrap(), VElement::new(9, 16));
        let pi = derive_pi(rep(2, 7, 2), 1).unwrap();
        assert_eq!(pi, VElement::new(-5, 14));
        let ctx = VContext::new(2, 1).unwrap();
        assert_eq!(ctx.norm(&pi), crate::numeric::DyadicRational::from(151));
        assert_eq!(
            ctx.norm(&VElement::new(-3, 14)),
            crate::numeric::DyadicRational::from(163)
        );
        assert!(derive_pi(rep(1, 2, 4), 1).is_err());
    }

    #[test]
    fn derive_pi_always_has_norm_p() {
        for p in primes_below(3000) {
            for repr in representations(p, 6) {
                for r in minimal_r(repr.t)..minimal_r(repr.t) + 5 {
                    derive_pi(repr, r).unwrap();
                }
            }
        }
    }

    #[test]
    fn factor_pair_examples() {
        assert!(factor_pairs(29).contains(&FactorPair { n: 4, m: 7 }));
        let f61 = factor_pairs(61);
        assert!(f61.contains(&FactorPair { n: 4, m: 15 }));
        assert!(f61.contains(&FactorPair { n: 10, m: 6 }));
        assert_eq!(factor_pairs(3), vec![FactorPair { n: 2, m: 1 }]);
        assert!(f61.windows(2).all(|w| w[0].n < w[1].n));
    }

    #[test]
    fn search_61() {
        let out = search(61, 6, 4);
        let feasible: Vec<_> = out.iter().filter(|c| c.feasible).map(summary).collect();
        assert_eq!(feasible[0], (3, 4, 2, 7));
        let sedenion = feasible
            .iter()
            .position(|&(n, t, r, _)| (n, t, r) == (4, 4, 3))
            .unwrap();
        let quaternion = feasible
            .iter()
            .position(|&(n, t, r, _)| (n, t, r) == (10, 2, 1))
            .unwrap();
        assert!(sedenion < quaternion);
        assert_eq!(feasible[sedenion].3, 30);
        let top = search(61, 5, 2);
        assert_eq!(summary(&top[0]), (3, 4, 2, 7));
    }

    #[test]
    fn search_71_and_29() {
        let out = search(71, 6, 0);
        let octonion: Vec<_> = out
            .iter()
            .filter(|c| c.feasible && c.repr.t == 3)
            .map(summary)
            .collect();
        assert!(octonion.contains(&(10, 3, 1, 11)));
        assert_eq!(octonion[0], (5, 3, 1, 21));
        let at_r2 = search(71, 3, 1);
        assert!(at_r2
            .iter()
            .any(|c| c.repr.t == 3 && c.r == 2 && c.pair.n == 10 && !c.feasible));

        let out = search(29, 6, 4);
        assert_eq!(summary(&out[0]), (4, 3, 1, 8));
    }

    #[test]
    fn search_31_has_sedenion_codes() {
        let out = search(31, 6, 4);
        let t4: Vec<_> = out.iter().filter(|c| c.feasible && c.repr.t == 4).collect();
        assert!(t4
            .iter()
            .any(|c| c.r == 4 && c.pair.n == 5 && c.field.s() == 25));
    }

    #[test]
    fn ranking_is_deterministic() {
        let a = search(149, 6, 3);
        let b = search(149, 6, 3);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = pool.install(|| search(149, 6, 3));
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn errors() {
        let opts = SearchOptions::default();
        assert_eq!(main_algorithm(60, &opts), Err(SearchError::NotPrime(60)));
        assert_eq!(main_algorithm(3, &opts), Err(SearchError::TooSmall(3)));
        let bad = SearchOptions { rows: 5, ..opts };
        assert_eq!(main_algorithm(29, &bad), Err(SearchError::BadRows(5)));
        assert!(search(5, 6, 0).iter().all(|c| !c.feasible));
    }

    #[test]
    fn feasible_candidates_decode() {
        for p in [29u64, 31, 61, 71, 149, 151] {
            for cand in search(p, 6, 4).into_iter().filter(|c| c.feasible) {
                let cfg = cand.to_config(2).unwrap();
                let c = cfg.encode(&vec![1; cfg.dimension()]).unwrap();
                let m = cfg.modulus();
                let values: Vec<u64> = if p <= 71 {
                    (1..p).collect()
                } else {
                    (1..p).step_by(7).collect()
                };
                for i in 0..cfg.len() {
                    for &e in &values {
                        let mut r = c.clone();
                        r[i] = m.add(r[i], e);
                        let res = cfg.decode(&r).unwrap();
                        assert_eq!(
                            res.status,
                            DecodeStatus::Corrected,
                            "p={p} {:?}",
                            summary(&cand)
                        );
                        assert_eq!(res.corrected.as_deref(), Some(&c[..]));
                    }
                }
            }
        }
    }
}
