//! Constacyclic codes over `V_pi ~ Z_p` of length `n = (p - 1) / M`, with
//! parity rows `beta^(c (M l + 1))` and the syndrome decoders for one to four
//! rows. Symbols are labels.

mod decode;
pub mod poly;

use std::sync::Arc;

use thiserror::Error;

use crate::numeric::{discrete_log, mod_inverse, mod_pow, Modulus, BRUTE_FORCE_DLOG_LIMIT};
use crate::residue::{BetaPolicy, BetaWitness, Label, ResidueError, ResidueField};

pub use decode::{DecodeResult, DecodeStatus};

pub const MAX_ROWS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid code configuration: {0}")]
    InvalidConfig(String),
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("symbol {value} is not a label modulo {p}")]
    SymbolOutOfRange { value: u64, p: u64 },
    #[error("no beta with beta^{n} = +-w in this field")]
    NoBeta { n: u64 },
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

#[derive(Debug, Clone)]
pub struct CodeConfig {
    field: ResidueField,
    m: u64,
    n: u64,
    beta: BetaWitness,
    rows: usize,
    logs: Option<Arc<Vec<u32>>>,
}

impl PartialEq for CodeConfig {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.beta == other.beta
            && self.rows == other.rows
    }
}

impl Eq for CodeConfig {}

/// Values around the determinant of the first three columns of the
/// three-row parity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantReport {
    pub computed: u64,
    /// `beta^3 beta^M (beta^M - 1)^3 (beta^M + 1)`.
    pub vandermonde_form: u64,
    /// `beta^3 beta^M (beta^(2M) - 1)^3`.
    pub paper_form: u64,
    pub nonzero: bool,
    pub paper_form_agrees: bool,
}

impl CodeConfig {
    pub fn new(
        field: ResidueField,
        n: u64,
        beta_label: Label,
        rows: usize,
    ) -> Result<Self, CodeError> {
        let p = field.p();
        if n == 0 || !(p - 1).is_multiple_of(n) {
            return Err(CodeError::InvalidConfig(format!(
                "n = {n} does not divide p - 1 = {}",
                p - 1
            )));
        }
        if !(1..=MAX_ROWS).contains(&rows) {
            return Err(CodeError::InvalidConfig(format!(
                "rows = {rows} outside 1..=4"
            )));
        }
        if n < rows as u64 + 1 {
            return Err(CodeError::InvalidConfig(format!(
                "n = {n} leaves no message symbols with {rows} rows"
            )));
        }
        if p == 2 {
            return Err(CodeError::InvalidConfig("p = 2 admits no code".into()));
        }
        let m = field.modulus();
        let y = mod_pow(beta_label as i128, n, m);
        if beta_label == 0 || beta_label >= p || (y != field.s() && y != m.neg(field.s())) {
            return Err(CodeError::InvalidConfig(format!(
                "beta = {beta_label} does not satisfy beta^{n} = +-{}",
                field.s()
            )));
        }
        let beta = field.witness(beta_label, n)?;
        let logs = (p < BRUTE_FORCE_DLOG_LIMIT).then(|| {
            let mut table = vec![u32::MAX; p as usize];
            let mut cur = 1u64;
            for j in 0..beta.order {
                table[cur as usize] = j as u32;
                cur = m.mul(cur, beta_label);
            }
            Arc::new(table)
        });
        Ok(CodeConfig {
            m: (p - 1) / n,
            field,
            n,
            beta,
            rows,
            logs,
        })
    }

    /// Pick beta with `policy`.
    pub fn with_policy(
        field: ResidueField,
        n: u64,
        rows: usize,
        policy: BetaPolicy,
    ) -> Result<Self, CodeError> {
        let beta = field.find_beta(n, policy)?.ok_or(CodeError::NoBeta { n })?;
        CodeConfig::new(field, n, beta.label, rows)
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn modulus(&self) -> Modulus {
        self.field.modulus()
    }

    #[allow(non_snake_case)]
    pub fn M(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.len() - self.rows
    }

    pub fn beta(&self) -> &BetaWitness {
        &self.beta
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn sign(&self) -> i8 {
        self.beta.sign
    }

    /// `beta^n = epsilon * s`.
    pub fn twist(&self) -> u64 {
        let m = self.modulus();
        if self.sign() == 1 {
            self.field.s()
        } else {
            m.neg(self.field.s())
        }
    }

    /// `M l + 1`.
    pub fn row_exponent(&self, l: usize) -> u64 {
        self.m * l as u64 + 1
    }

    pub fn beta_pow(&self, e: u64) -> u64 {
        mod_pow(self.beta.label as i128, e, self.modulus())
    }

    /// Least `j` with `beta^j = x`, or `None` outside the group of beta.
    pub fn dlog(&self, x: u64) -> Option<u64> {
        match &self.logs {
            Some(table) => table
                .get(x as usize)
                .copied()
                .filter(|&j| j != u32::MAX)
                .map(u64::from),
            None => discrete_log(x as i128, self.beta.label as i128, self.modulus()).ok(),
        }
    }

    pub fn parity_matrix(&self) -> Vec<Vec<Label>> {
        (0..self.rows)
            .map(|l| {
                let step = self.beta_pow(self.row_exponent(l));
                let m = self.modulus();
                std::iter::successors(Some(1u64), |&x| Some(m.mul(x, step)))
                    .take(self.len())
                    .collect()
            })
            .collect()
    }

    /// `g(x) = prod_l (x - beta^(M l + 1))`, lowest degree first, monic.
    pub fn generator_polynomial(&self) -> Vec<Label> {
        let m = self.modulus();
        (0..self.rows).fold(vec![1], |g, l| {
            let root = self.beta_pow(self.row_exponent(l));
            poly::mul(&g, &[m.neg(root), 1], m)
        })
    }

    /// `x^n - epsilon s`.
    pub fn modulus_polynomial(&self) -> Vec<Label> {
        let mut f = vec![0; self.len() + 1];
        f[0] = self.modulus().neg(self.twist());
        f[self.len()] = 1;
        f
    }

    fn check_symbols(&self, symbols: &[Label], expected: usize) -> Result<(), CodeError> {
        if symbols.len() != expected {
            return Err(CodeError::LengthMismatch {
                expected,
                got: symbols.len(),
            });
        }
        match symbols.iter().find(|&&x| x >= self.p()) {
            Some(&value) => Err(CodeError::SymbolOutOfRange { value, p: self.p() }),
            None => Ok(()),
        }
    }

    /// `c(x) = m(x) g(x)` reduced modulo `x^n - epsilon s`.
    pub fn encode(&self, message: &[Label]) -> Result<Vec<Label>, CodeError> {
        self.check_symbols(message, self.dimension())?;
        let product = poly::mul(message, &self.generator_polynomial(), self.modulus());
        Ok(poly::reduce_constacyclic(
            &product,
            self.len(),
            self.twist(),
            self.modulus(),
        ))
    }

    /// `x c(x)` modulo `x^n - epsilon s`.
    pub fn shift(&self, word: &[Label]) -> Vec<Label> {
        let mut shifted = vec![0];
        shifted.extend_from_slice(word);
        poly::reduce_constacyclic(&shifted, self.len(), self.twist(), self.modulus())
    }

    pub fn syndrome(&self, word: &[Label]) -> Result<Vec<Label>, CodeError> {
        self.check_symbols(word, self.len())?;
        Ok(self.syndrome_unchecked(word))
    }

    fn syndrome_unchecked(&self, word: &[Label]) -> Vec<Label> {
        let m = self.modulus();
        (0..self.rows)
            .map(|l| poly::eval(word, self.beta_pow(self.row_exponent(l)), m))
            .collect()
    }

    pub fn is_codeword(&self, word: &[Label]) -> bool {
        word.len() == self.len() && self.syndrome_unchecked(word).iter().all(|&x| x == 0)
    }

    pub fn determinant_check(&self) -> DeterminantReport {
        let m = self.modulus();
        let h: Vec<Vec<u64>> = (0..3)
            .map(|l| {
                (0..3)
                    .map(|c| self.beta_pow(c * self.row_exponent(l)))
                    .collect()
            })
            .collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            m.sub(m.mul(h[1][a], h[2][b]), m.mul(h[1][c], h[2][d]))
        };
        let computed = m.add(
            m.sub(
                m.mul(h[0][0], minor(1, 2, 2, 1)),
                m.mul(h[0][1], minor(0, 2, 2, 0)),
            ),
            m.mul(h[0][2], minor(0, 1, 1, 0)),
        );
        let b3 = self.beta_pow(3);
        let x = self.beta_pow(self.m);
        let cube = |y: u64| m.mul(y, m.mul(y, y));
        let vandermonde_form = m.mul(m.mul(b3, x), m.mul(cube(m.sub(x, 1)), m.add(x, 1)));
        let paper_form = m.mul(m.mul(b3, x), cube(m.sub(m.mul(x, x), 1)));
        DeterminantReport {
            computed,
            vandermonde_form,
            paper_form,
            nonzero: computed != 0,
            paper_form_agrees: paper_form == computed,
        }
    }

    pub fn inverse(&self, x: u64) -> Option<u64> {
        mod_inverse(x as i128, self.modulus()).ok()
    }

    pub fn decode(&self, word: &[Label]) -> Result<DecodeResult, CodeError> {
        self.check_symbols(word, self.len())?;
        Ok(match self.rows {
            1 => self.decode_single_restricted(word),
            2 => self.decode_single(word),
            3 => self.decode_single_checked(word),
            _ => self.decode_double(word),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::build_field;
    use crate::vring::{VContext, VElement};
    use proptest::prelude::*;

    pub(crate) fn field(t: u32, r: u32, a: i64, b: i64) -> ResidueField {
        build_field(&VElement::new(a, b), VContext::new(t, r).unwrap()).unwrap()
    }

    pub(crate) fn octonion29(rows: usize) -> CodeConfig {
        CodeConfig::new(field(3, 1, -1, 4), 4, 8, rows).unwrap()
    }

    pub(crate) fn quaternion61(rows: usize) -> CodeConfig {
        CodeConfig::new(field(2, 1, 5, 4), 10, 10, rows).unwrap()
    }

    #[test]
    fn config_validation() {
        let f = field(3, 1, -1, 4);
        assert!(CodeConfig::new(f.clone(), 5, 8, 1).is_err());
        assert!(CodeConfig::new(f.clone(), 4, 9, 1).is_ok());
        assert!(CodeConfig::new(f.clone(), 4, 2, 1).is_err());
        assert!(CodeConfig::new(f.clone(), 4, 8, 4).is_err());
        assert!(CodeConfig::new(f.clone(), 4, 8, 0).is_err());
        let c = octonion29(1);
        assert_eq!((c.M(), c.n(), c.sign(), c.twist()), (7, 4, -1, 7));
        assert!(matches!(
            CodeConfig::with_policy(field(4, 3, 3, 8), 5, 1, BetaPolicy::PrimitivePreferred),
            Err(CodeError::NoBeta { n: 5 })
        ));
    }

    #[test]
    fn parity_matrices() {
        assert_eq!(octonion29(1).parity_matrix(), vec![vec![1, 8, 6, 19]]);
        let q = quaternion61(2);
        let h = q.parity_matrix();
        assert_eq!((h[0][0], h[1][0]), (1, 1));
        assert_eq!(h[1][1], 26);
        assert_eq!(q.M(), 6);
    }

    #[test]
    fn generator() {
        assert_eq!(octonion29(1).generator_polynomial(), vec![21, 1]);
        let q = quaternion61(2);
        assert_eq!(q.generator_polynomial(), vec![16, 25, 1]);
        for rows in 1..=4 {
            for c in [octonion29(rows.min(3)), quaternion61(rows)] {
                let r = poly::rem_monic(
                    &c.modulus_polynomial(),
                    &c.generator_polynomial(),
                    c.modulus(),
                );
                assert!(r.is_empty());
            }
        }
    }

    #[test]
    fn encoding() {
        let q = quaternion61(2);
        assert_eq!(q.encode(&[0; 8]).unwrap(), vec![0; 10]);
        let mut one = vec![0; 8];
        one[0] = 1;
        assert_eq!(
            q.encode(&one).unwrap(),
            vec![16, 25, 1, 0, 0, 0, 0, 0, 0, 0]
        );
        assert_eq!(
            q.encode(&[1, 2]),
            Err(CodeError::LengthMismatch {
                expected: 8,
                got: 2
            })
        );
        assert_eq!(
            q.encode(&[61; 8]),
            Err(CodeError::SymbolOutOfRange { value: 61, p: 61 })
        );
    }

    #[test]
    fn encode_exhaustive_p29() {
        let c = octonion29(1);
        for a in 0..29 {
            for b in 0..29 {
                for d in 0..29 {
                    let word = c.encode(&[a, b, d]).unwrap();
                    assert!(c.syndrome(&word).unwrap().iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn syndrome_linearity() {
        let c = octonion29(1);
        let mut word = vec![0; 4];
        word[2] = 5;
        assert_eq!(
            c.syndrome(&word).unwrap(),
            vec![c.modulus().mul(5, c.beta_pow(2))]
        );

        let q = quaternion61(2);
        let (i, j) = (3u64, 17u64);
        let mut word = q.encode(&[4, 0, 9, 1, 1, 0, 0, 60]).unwrap();
        word[i as usize] = q.modulus().add(word[i as usize], q.beta_pow(j));
        assert_eq!(
            q.syndrome(&word).unwrap(),
            vec![q.beta_pow(i + j), q.beta_pow((q.M() + 1) * i + j)]
        );
    }

    #[test]
    fn dlog_table_matches_numeric() {
        let q = quaternion61(2);
        for x in 1..61 {
            assert_eq!(q.dlog(x), discrete_log(x as i128, 10, q.modulus()).ok());
        }
        assert_eq!(q.dlog(0), None);
    }

    #[test]
    fn determinants() {
        for c in [quaternion61(3), octonion29(3)] {
            let d = c.determinant_check();
            assert!(d.nonzero);
            assert_eq!(d.computed, d.vandermonde_form);
        }
        // The paper's closed form carries an extra (beta^M + 1)^2.
        let d = quaternion61(3).determinant_check();
        let m = quaternion61(3).modulus();
        let x = quaternion61(3).beta_pow(6);
        let extra = m.mul(m.add(x, 1), m.add(x, 1));
        assert_eq!(d.paper_form, m.mul(d.vandermonde_form, extra));
        assert!(!d.paper_form_agrees);
    }

    proptest! {
        #[test]
        fn codewords_constacyclic(msg in proptest::collection::vec(0u64..61, 6), rows in 1usize..=4) {
            let q = quaternion61(rows);
            let msg = &msg[..q.dimension().min(msg.len())];
            let mut full = msg.to_vec();
            full.resize(q.dimension(), 3);
            let c = q.encode(&full).unwrap();
            prop_assert!(q.is_codeword(&c));
            let s = q.shift(&c);
            prop_assert!(q.is_codeword(&s));
        }

        #[test]
        fn encode_linear(a in proptest::collection::vec(0u64..61, 8), b in proptest::collection::vec(0u64..61, 8)) {
            let q = quaternion61(2);
            let m = q.modulus();
            let sum: Vec<u64> = a.iter().zip(&b).map(|(&x, &y)| m.add(x, y)).collect();
            let lhs = q.encode(&sum).unwrap();
            let rhs: Vec<u64> = q.encode(&a).unwrap().iter().zip(q.encode(&b).unwrap()).map(|(&x, y)| m.add(x, y)).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
