//! Dense polynomials over `Z_p`, coefficients lowest degree first.

use crate::numeric::Modulus;

pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn mul(f: &[u64], g: &[u64], m: Modulus) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = m.add(out[i + j], m.mul(a, b));
        }
    }
    trim(out)
}

/// Remainder of `f` by a monic `g`.
pub fn rem_monic(f: &[u64], g: &[u64], m: Modulus) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r = trim(f.to_vec());
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &c) in g.iter().enumerate() {
            r[shift + i] = m.sub(r[shift + i], m.mul(lead, c));
        }
        r = trim(r);
    }
    r
}

/// Reduce modulo `x^n - c`, returning exactly `n` coefficients.
pub fn reduce_constacyclic(f: &[u64], n: usize, c: u64, m: Modulus) -> Vec<u64> {
    let mut out = vec![0; n];
    for (d, &a) in f.iter().enumerate() {
        let k = (d / n) as u64;
        let scale = crate::numeric::mod_pow(c as i128, k, m);
        out[d % n] = m.add(out[d % n], m.mul(a, scale));
    }
    out
}

pub fn eval(f: &[u64], x: u64, m: Modulus) -> u64 {
    f.iter().rev().fold(0, |acc, &c| m.add(m.mul(acc, x), c))
}
