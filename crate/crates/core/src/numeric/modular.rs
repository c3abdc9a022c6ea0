//! Modular arithmetic over `u64` moduli.
//!
//! Every function here is pure. Products go through `u128`, so any modulus
//! below 2^64 is safe.

use std::collections::HashMap;

use super::NumericError;

/// Discrete logs below this modulus are found by walking the powers of the
/// base; above it baby-step giant-step is used.
pub const BRUTE_FORCE_DLOG_LIMIT: u64 = 1 << 20;

/// A modulus `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, NumericError> {
        if p < 2 {
            return Err(NumericError::InvalidModulus(p));
        }
        Ok(Modulus(p))
    }

    /// A modulus that is checked to be prime.
    pub fn prime(p: u64) -> Result<Self, NumericError> {
        let m = Modulus::new(p)?;
        if !is_prime(p) {
            return Err(NumericError::NotPrime(p));
        }
        Ok(m)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical residue of a signed integer in `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        let p = self.0 as u128;
        ((a as u128 + p - (b as u128 % p)) % p) as u64
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn require_prime(self) -> Result<(), NumericError> {
        if is_prime(self.0) {
            Ok(())
        } else {
            Err(NumericError::NotPrime(self.0))
        }
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Inverse of `x` modulo `m`, in `[0, p)`.
pub fn mod_inverse(x: i128, m: Modulus) -> Result<u64, NumericError> {
    let p = m.get() as i128;
    let (mut old_r, mut r) = (x.rem_euclid(p), p);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(NumericError::NotInvertible { x, p: m.get() });
    }
    Ok(m.reduce(old_s))
}

/// `base^exp mod p` by square-and-multiply.
pub fn mod_pow(base: i128, mut exp: u64, m: Modulus) -> u64 {
    let mut acc = 1 % m.get();
    let mut b = m.reduce(base);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = m.mul(acc, b);
        }
        b = m.mul(b, b);
        exp >>= 1;
    }
    acc
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (q, e) in factorize(n) {
        let len = divs.len();
        let mut pow = 1u64;
        for _ in 0..e {
            pow *= q;
            for i in 0..len {
                divs.push(divs[i] * pow);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Least `d >= 1` with `x^d = 1 (mod p)`, for prime `p`.
pub fn multiplicative_order(x: i128, m: Modulus) -> Result<u64, NumericError> {
    m.require_prime()?;
    let x = m.reduce(x);
    if x == 0 {
        return Err(NumericError::NotInvertible { x: 0, p: m.get() });
    }
    let mut order = m.get() - 1;
    for (q, _) in factorize(order) {
        while order.is_multiple_of(q) && mod_pow(x as i128, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Least `j >= 0` with `base^j = x (mod p)`.
pub fn discrete_log(x: i128, base: i128, m: Modulus) -> Result<u64, NumericError> {
    m.require_prime()?;
    let p = m.get();
    let x = m.reduce(x);
    let base = m.reduce(base);
    if x == 1 {
        return Ok(0);
    }
    if x == 0 || base == 0 {
        return Err(NumericError::NotInGroup { x, base, p });
    }
    if p < BRUTE_FORCE_DLOG_LIMIT {
        let mut cur = base;
        let mut j = 1u64;
        while cur != 1 {
            if cur == x {
                return Ok(j);
            }
            cur = m.mul(cur, base);
            j += 1;
        }
        return Err(NumericError::NotInGroup { x, base, p });
    }
    baby_step_giant_step(x, base, m)
}

fn baby_step_giant_step(x: u64, base: u64, m: Modulus) -> Result<u64, NumericError> {
    let order = multiplicative_order(base as i128, m)?;
    let steps = (order as f64).sqrt().ceil() as u64 + 1;
    let mut table: HashMap<u64, u64> = HashMap::with_capacity(steps as usize);
    let mut cur = 1u64;
    for j in 0..steps {
        table.entry(cur).or_insert(j);
        cur = m.mul(cur, base);
    }
    let giant = mod_inverse(mod_pow(base as i128, steps, m) as i128, m)?;
    let mut gamma = x;
    for i in 0..=steps {
        if let Some(&j) = table.get(&gamma) {
            let e = i * steps + j;
            if e < order {
                return Ok(e);
            }
        }
        gamma = m.mul(gamma, giant);
    }
    Err(NumericError::NotInGroup {
        x,
        base,
        p: m.get(),
    })
}

/// Both square roots `(y, p - y)` of `x` modulo an odd prime, smaller first,
/// or `None` for a non-residue.
pub fn mod_sqrt(x: i128, m: Modulus) -> Option<(u64, u64)> {
    let p = m.get();
    let x = m.reduce(x);
    if x == 0 {
        return Some((0, 0));
    }
    if p == 2 {
        return Some((x, x));
    }
    if mod_pow(x as i128, (p - 1) / 2, m) != 1 {
        return None;
    }
    // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while mod_pow(z as i128, (p - 1) / 2, m) != p - 1 {
        z += 1;
    }
    let mut c = mod_pow(z as i128, q, m);
    let mut r = mod_pow(x as i128, q.div_ceil(2), m);
    let mut t = mod_pow(x as i128, q, m);
    let mut k = s;
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = m.mul(tt, tt);
            i += 1;
        }
        let b = mod_pow(c as i128, 1u64 << (k - i - 1), m);
        r = m.mul(r, b);
        c = m.mul(b, b);
        t = m.mul(t, c);
        k = i;
    }
    let other = p - r;
    Some((r.min(other), r.max(other)))
}

/// Deterministic Miller-Rabin for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let m = Modulus(n);
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = mod_pow(a as i128, d, m);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = m.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
