use std::fmt;

use crate::numeric::mod_sqrt;
use crate::residue::Label;

use super::CodeConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Clean,
    Corrected,
    DetectedUncorrectable,
}

impl fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecodeStatus::Clean => "clean",
            DecodeStatus::Corrected => "corrected",
            DecodeStatus::DetectedUncorrectable => "detected-uncorrectable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// `(position, error value)`, positions ascending.
    pub errors: Vec<(usize, Label)>,
    pub corrected: Option<Vec<Label>>,
}

impl DecodeResult {
    fn clean(word: &[Label]) -> Self {
        DecodeResult {
            status: DecodeStatus::Clean,
            errors: Vec::new(),
            corrected: Some(word.to_vec()),
        }
    }

    fn detected() -> Self {
        DecodeResult {
            status: DecodeStatus::DetectedUncorrectable,
            errors: Vec::new(),
            corrected: None,
        }
    }
}

impl CodeConfig {
    /// Subtract the located errors; accept only if every row is then zero.
    fn finish(&self, word: &[Label], mut errors: Vec<(usize, Label)>) -> DecodeResult {
        let m = self.modulus();
        let mut fixed = word.to_vec();
        for &(i, e) in &errors {
            fixed[i] = m.sub(fixed[i], e);
        }
        if !self.is_codeword(&fixed) {
            return DecodeResult::detected();
        }
        errors.sort_unstable();
        DecodeResult {
            status: DecodeStatus::Corrected,
            errors,
            corrected: Some(fixed),
        }
    }

    fn prepare(&self, word: &[Label], needed: usize) -> Result<Vec<Label>, DecodeResult> {
        if word.len() != self.len() || self.rows() < needed {
            return Err(DecodeResult::detected());
        }
        let s = self.syndrome_unchecked(word);
        if s.iter().all(|&x| x == 0) {
            return Err(DecodeResult::clean(word));
        }
        Ok(s)
    }

    /// `s1 = e beta^i`, `s2 = e beta^((M+1) i)`: position `i` and value `e`.
    fn locate_single(&self, s1: Label, s2: Label) -> Option<(usize, Label)> {
        let order = self.p() - 1;
        let m1 = self.dlog(s1)?;
        let m2 = self.dlog(s2)?;
        let diff = (m2 + order - m1) % order;
        if !diff.is_multiple_of(self.M()) {
            return None;
        }
        let i = diff / self.M();
        let j = (m1 + order - i) % order;
        Some((i as usize, self.beta_pow(j)))
    }

    /// One row: corrects `beta^(n l) x^i`, i.e. powers of `+-w` at one position.
    pub fn decode_single_restricted(&self, word: &[Label]) -> DecodeResult {
        let s = match self.prepare(word, 1) {
            Ok(s) => s,
            Err(done) => return done,
        };
        let Some(log) = self.dlog(s[0]) else {
            return DecodeResult::detected();
        };
        let i = log % self.n();
        let e = self.beta_pow(log - i);
        self.finish(word, vec![(i as usize, e)])
    }

    /// Two rows: any single error.
    pub fn decode_single(&self, word: &[Label]) -> DecodeResult {
        let s = match self.prepare(word, 2) {
            Ok(s) => s,
            Err(done) => return done,
        };
        match self.locate_single(s[0], s[1]) {
            Some(err) => self.finish(word, vec![err]),
            None => DecodeResult::detected(),
        }
    }

    /// Three rows: a single error, with the third row as a consistency check.
    pub fn decode_single_checked(&self, word: &[Label]) -> DecodeResult {
        let s = match self.prepare(word, 3) {
            Ok(s) => s,
            Err(done) => return done,
        };
        let order = self.p() - 1;
        let logs: Option<Vec<u64>> = s[..3].iter().map(|&x| self.dlog(x)).collect();
        let Some(logs) = logs else {
            return DecodeResult::detected();
        };
        let d1 = (logs[1] + order - logs[0]) % order;
        let d2 = (logs[2] + order - logs[1]) % order;
        if d1 != d2 {
            return DecodeResult::detected();
        }
        match self.locate_single(s[0], s[1]) {
            Some(err) => self.finish(word, vec![err]),
            None => DecodeResult::detected(),
        }
    }

    /// Four rows: up to two errors.
    pub fn decode_double(&self, word: &[Label]) -> DecodeResult {
        let s = match self.prepare(word, 4) {
            Ok(s) => s,
            Err(done) => return done,
        };
        let m = self.modulus();
        let (s0, s1, s2, s3) = (s[0], s[1], s[2], s[3]);
        let det = m.sub(m.mul(s0, s2), m.mul(s1, s1));
        if det == 0 {
            return match self.locate_single(s0, s1) {
                Some(err) => self.finish(word, vec![err]),
                None => DecodeResult::detected(),
            };
        }
        let inv = self.inverse(det).expect("p is prime");
        let sum = m.mul(m.sub(m.mul(s0, s3), m.mul(s1, s2)), inv);
        let prod = m.mul(m.sub(m.mul(s1, s3), m.mul(s2, s2)), inv);
        let disc = m.sub(m.mul(sum, sum), m.mul(4, prod));
        let Some((root, _)) = mod_sqrt(disc as i128, m).filter(|_| disc != 0) else {
            return DecodeResult::detected();
        };
        let half = self.inverse(2).expect("p is odd");
        let x = m.mul(m.add(sum, root), half);
        let y = m.mul(m.sub(sum, root), half);
        let position = |z: Label| -> Option<u64> {
            let log = self.dlog(z)?;
            (log % self.M() == 0).then(|| log / self.M())
        };
        let (Some(i), Some(j)) = (position(x), position(y)) else {
            return DecodeResult::detected();
        };
        let a = m.mul(
            m.sub(s1, m.mul(s0, y)),
            self.inverse(m.sub(x, y)).expect("x != y"),
        );
        let b = m.sub(s0, a);
        if a == 0 || b == 0 {
            return DecodeResult::detected();
        }
        let unshift = |v: Label, k: u64| m.mul(v, self.inverse(self.beta_pow(k)).expect("nonzero"));
        self.finish(
            word,
            vec![(i as usize, unshift(a, i)), (j as usize, unshift(b, j))],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{octonion29, quaternion61};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inject(word: &[Label], errs: &[(usize, Label)], cfg: &CodeConfig) -> Vec<Label> {
        let m = cfg.modulus();
        let mut r = word.to_vec();
        for &(i, e) in errs {
            r[i] = m.add(r[i], e);
        }
        r
    }

    #[test]
    fn clean_words() {
        for cfg in [
            octonion29(1),
            quaternion61(2),
            quaternion61(3),
            quaternion61(4),
        ] {
            let c = cfg.encode(&vec![1; cfg.dimension()]).unwrap();
            let res = cfg.decode(&c).unwrap();
            assert_eq!(res.status, DecodeStatus::Clean);
            assert_eq!(res.corrected, Some(c));
        }
    }

    #[test]
    fn restricted_exhaustive_p29() {
        let cfg = octonion29(1);
        let c = cfg.encode(&[3, 1, 4]).unwrap();
        let mut count = 0;
        for i in 0..4 {
            for l in 0..cfg.M() {
                let e = cfg.beta_pow(cfg.n() * l);
                let res = cfg.decode(&inject(&c, &[(i, e)], &cfg)).unwrap();
                assert_eq!(res.status, DecodeStatus::Corrected);
                assert_eq!(res.errors, vec![(i, e)]);
                assert_eq!(res.corrected.as_deref(), Some(&c[..]));
                count += 1;
            }
        }
        assert_eq!(count, 28);
        // -w = 7 at position 2.
        let res = cfg.decode(&inject(&c, &[(2, 7)], &cfg)).unwrap();
        assert_eq!(res.errors, vec![(2, 7)]);
    }

    #[test]
    fn single_exhaustive_p61() {
        for rows in [2, 3, 4] {
            let cfg = quaternion61(rows);
            let c = cfg.encode(&vec![7; cfg.dimension()]).unwrap();
            for i in 0..10 {
                for e in 1..61 {
                    let res = cfg.decode(&inject(&c, &[(i, e)], &cfg)).unwrap();
                    assert_eq!(
                        res.status,
                        DecodeStatus::Corrected,
                        "rows={rows} i={i} e={e}"
                    );
                    assert_eq!(res.errors, vec![(i, e)]);
                    assert_eq!(res.corrected.as_deref(), Some(&c[..]));
                }
            }
        }
    }

    #[test]
    fn position_zero() {
        let cfg = quaternion61(2);
        let j = 13;
        let mut word = vec![0; 10];
        word[0] = cfg.beta_pow(j);
        let s = cfg.syndrome(&word).unwrap();
        assert_eq!((cfg.dlog(s[0]), cfg.dlog(s[1])), (Some(j), Some(j)));
        assert_eq!(
            cfg.decode(&word).unwrap().errors,
            vec![(0, cfg.beta_pow(j))]
        );
    }

    #[test]
    fn checked_never_miscorrects_two_errors() {
        let cfg = quaternion61(3);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..1000 {
            let msg: Vec<u64> = (0..cfg.dimension())
                .map(|_| rng.random_range(0..61))
                .collect();
            let c = cfg.encode(&msg).unwrap();
            let i = rng.random_range(0..10);
            let j = (i + rng.random_range(1..10)) % 10;
            let errs = [(i, rng.random_range(1..61)), (j, rng.random_range(1..61))];
            let res = cfg.decode(&inject(&c, &errs, &cfg)).unwrap();
            if res.status != DecodeStatus::DetectedUncorrectable {
                assert_eq!(res.corrected.as_deref(), Some(&c[..]));
            }
        }
    }

    #[test]
    fn double_errors_random() {
        let cfg = quaternion61(4);
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..10_000 {
            let msg: Vec<u64> = (0..cfg.dimension())
                .map(|_| rng.random_range(0..61))
                .collect();
            let c = cfg.encode(&msg).unwrap();
            let i = rng.random_range(0..10);
            let j = (i + rng.random_range(1..10)) % 10;
            let mut errs = vec![(i, rng.random_range(1..61)), (j, rng.random_range(1..61))];
            errs.sort();
            let r = inject(&c, &errs, &cfg);
            let s = cfg.syndrome(&r).unwrap();
            let m = cfg.modulus();
            assert_ne!(m.mul(s[0], s[2]), m.mul(s[1], s[1]));
            let res = cfg.decode(&r).unwrap();
            assert_eq!(res.status, DecodeStatus::Corrected);
            assert_eq!(res.errors, errs);
            assert_eq!(res.corrected.as_deref(), Some(&c[..]));
        }
    }

    #[test]
    fn lemma_fires_on_single_errors() {
        let cfg = quaternion61(4);
        let m = cfg.modulus();
        for i in 0..10 {
            for e in 1..61 {
                let mut word = vec![0; 10];
                word[i] = e;
                let s = cfg.syndrome(&word).unwrap();
                assert_eq!(m.mul(s[0], s[2]), m.mul(s[1], s[1]));
            }
        }
    }

    #[test]
    fn garbage_is_detected_or_valid() {
        let cfg = quaternion61(4);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..2000 {
            let word: Vec<u64> = (0..10).map(|_| rng.random_range(0..61)).collect();
            let res = cfg.decode(&word).unwrap();
            if let Some(c) = res.corrected {
                assert!(cfg.is_codeword(&c));
                assert!(res.errors.len() <= 2);
            }
        }
    }
}
