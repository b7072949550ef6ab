//! Eventually periodic integer words `u v^∞`.
//!
//! Text format: space-separated decimal digits with the period in
//! parentheses, e.g. `1 0 0 0 0 0 2 0 (1)`; a finite word is written
//! without parentheses and the zero word as `0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse word `{0}`")]
    Parse(String),
    #[error("digit {digit} outside alphabet [0, {bound}]")]
    DigitOutOfRange { digit: i64, bound: i64 },
}

/// Eventually periodic word with unrestricted integer digits, kept in
/// canonical form: an all-zero period is dropped (finite word, trailing
/// zeros trimmed), the period is primitive and the preperiod is minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord {
    preperiod: Vec<i64>,
    period: Vec<i64>,
}

impl SignedWord {
    pub fn new(preperiod: Vec<i64>, period: Vec<i64>) -> Self {
        let mut w = SignedWord { preperiod, period };
        w.canonicalize();
        w
    }

    pub fn finite(digits: Vec<i64>) -> Self {
        Self::new(digits, Vec::new())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), Vec::new())
    }

    fn canonicalize(&mut self) {
        if self.period.iter().all(|&c| c == 0) {
            self.period.clear();
        }
        if self.period.is_empty() {
            while self.preperiod.last() == Some(&0) {
                self.preperiod.pop();
            }
            return;
        }
        let n = self.period.len();
        let prim = (1..=n)
            .find(|&p| n % p == 0 && (0..n).all(|i| self.period[i] == self.period[i % p]))
            .unwrap_or(n);
        self.period.truncate(prim);
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("nonempty period") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[i64] {
        &self.preperiod
    }

    /// Empty for finite words (implicit `0^∞`).
    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.period.is_empty() && self.preperiod.is_empty()
    }

    /// Period length used for positional arithmetic (`0^∞` has length 1).
    pub fn cycle_len(&self) -> usize {
        self.period.len().max(1)
    }

    /// Digit at 0-based position `i`.
    pub fn at(&self, i: usize) -> i64 {
        if i < self.preperiod.len() {
            return self.preperiod[i];
        }
        if self.period.is_empty() {
            return 0;
        }
        self.period[(i - self.preperiod.len()) % self.period.len()]
    }

    /// First `n` digits.
    pub fn prefix(&self, n: usize) -> Vec<i64> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// `σ^n`.
    pub fn shift(&self, n: usize) -> SignedWord {
        if n <= self.preperiod.len() {
            return SignedWord {
                preperiod: self.preperiod[n..].to_vec(),
                period: self.period.clone(),
            };
        }
        if self.period.is_empty() {
            return SignedWord::zero();
        }
        let mut period = self.period.clone();
        let k = (n - self.preperiod.len()) % period.len();
        period.rotate_left(k);
        SignedWord::new(Vec::new(), period)
    }

    /// `prefix · self`.
    pub fn prepend(&self, prefix: &[i64]) -> SignedWord {
        let mut pre = prefix.to_vec();
        pre.extend_from_slice(&self.preperiod);
        SignedWord::new(pre, self.period.clone())
    }

    /// Termwise difference `self ⊖ other`.
    pub fn sub(&self, other: &SignedWord) -> SignedWord {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &SignedWord) -> SignedWord {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(&self, other: &SignedWord, f: impl Fn(i64, i64) -> i64) -> SignedWord {
        let pre = self.preperiod.len().max(other.preperiod.len());
        let per = self.cycle_len().lcm(&other.cycle_len());
        let preperiod = (0..pre).map(|i| f(self.at(i), other.at(i))).collect();
        let period = (pre..pre + per)
            .map(|i| f(self.at(i), other.at(i)))
            .collect();
        SignedWord::new(preperiod, period)
    }

    /// Positions after which `self` and `other` repeat in lockstep.
    pub fn joint_window(&self, other: &SignedWord) -> usize {
        self.preperiod.len().max(other.preperiod.len()) + self.cycle_len().lcm(&other.cycle_len())
    }

    /// Exact lexicographic comparison of the infinite words.
    pub fn cmp_lex(&self, other: &SignedWord) -> Ordering {
        (0..self.joint_window(other))
            .map(|i| self.at(i).cmp(&other.at(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Number of distinct shifts `σ^n` (n ≥ 0).
    pub fn distinct_shift_bound(&self) -> usize {
        self.preperiod.len() + self.cycle_len()
    }

    pub fn digits(&self) -> impl Iterator<Item = i64> + '_ {
        (0..).map(|i| self.at(i))
    }

    pub fn max_digit(&self) -> i64 {
        self.preperiod
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap_or(0)
            .max(0)
    }

    pub fn min_digit(&self) -> i64 {
        let m = self
            .preperiod
            .iter()
            .chain(&self.period)
            .copied()
            .min()
            .unwrap_or(0);
        if self.is_finite() {
            m.min(0)
        } else {
            m
        }
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let pre: Vec<String> = self.preperiod.iter().map(i64::to_string).collect();
        f.write_str(&pre.join(" "))?;
        if !self.period.is_empty() {
            if !pre.is_empty() {
                f.write_str(" ")?;
            }
            let per: Vec<String> = self.period.iter().map(i64::to_string).collect();
            write!(f, "({})", per.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SignedWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::Parse(s.to_string());
        let s = s.trim();
        let (pre, per) = match s.find('(') {
            Some(open) => {
                let rest = &s[open + 1..];
                let close = rest.find(')').ok_or_else(bad)?;
                if !rest[close + 1..].trim().is_empty() {
                    return Err(bad());
                }
                (&s[..open], Some(&rest[..close]))
            }
            None => (s, None),
        };
        let parse = |t: &str| -> Result<Vec<i64>, WordError> {
            t.split_whitespace()
                .map(|d| d.parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        let preperiod = parse(pre)?;
        let period = match per {
            Some(p) => {
                let v = parse(p)?;
                if v.is_empty() {
                    return Err(bad());
                }
                v
            }
            None => Vec::new(),
        };
        if preperiod.is_empty() && period.is_empty() {
            return Err(bad());
        }
        Ok(SignedWord::new(preperiod, period))
    }
}

/// A [`SignedWord`] over the digit alphabet `[0, alphabet_bound]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    word: SignedWord,
    alphabet_bound: i64,
}

impl DigitWord {
    pub fn new(word: SignedWord, alphabet_bound: i64) -> Result<Self, WordError> {
        for &digit in word.preperiod.iter().chain(&word.period) {
            if digit < 0 || digit > alphabet_bound {
                return Err(WordError::DigitOutOfRange {
                    digit,
                    bound: alphabet_bound,
                });
            }
        }
        Ok(DigitWord {
            word,
            alphabet_bound,
        })
    }

    pub fn parse(s: &str, alphabet_bound: i64) -> Result<Self, WordError> {
        Self::new(s.parse()?, alphabet_bound)
    }

    pub fn preperiod(&self) -> &[i64] {
        self.word.preperiod()
    }

    pub fn period(&self) -> &[i64] {
        self.word.period()
    }

    pub fn alphabet_bound(&self) -> i64 {
        self.alphabet_bound
    }

    pub fn is_finite(&self) -> bool {
        self.word.is_finite()
    }

    pub fn as_signed(&self) -> &SignedWord {
        &self.word
    }

    pub fn into_signed(self) -> SignedWord {
        self.word
    }

    pub fn at(&self, i: usize) -> i64 {
        self.word.at(i)
    }

    pub fn shift(&self, n: usize) -> DigitWord {
        DigitWord {
            word: self.word.shift(n),
            alphabet_bound: self.alphabet_bound,
        }
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> SignedWord {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(w("1 1 0 (1 1 0)"), w("(1 1 0)"));
        assert_eq!(w("(1 1 0 1 1 0)").period(), &[1, 1, 0]);
        assert_eq!(w("2 2 1 0 0 2 (0)"), w("2 2 1 0 0 2 0 0"));
        assert!(w("2 2 1 0 0 2").is_finite());
        assert_eq!(w("1 0 (0 1)").preperiod(), &[1, 0]);
        assert_eq!(w("2 0 1 (0 1)").preperiod(), &[2]);
        assert_eq!(w("2 0 1 (0 1)").period(), &[0, 1]);
        assert!(w("0 0 (0)").is_zero());
    }

    #[test]
    fn text_roundtrip_is_bit_exact() {
        for s in ["2 2 1 0 0 2", "1 0 0 0 0 0 2 0 (1)", "(1 1 0)", "0", "-1 3 (-2 0 5)"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("".parse::<SignedWord>().is_err());
        assert!("1 (".parse::<SignedWord>().is_err());
        assert!("1 () ".parse::<SignedWord>().is_err());
        assert!("1 (2) 3".parse::<SignedWord>().is_err());
    }

    #[test]
    fn lex_order_on_infinite_words() {
        assert_eq!(w("1 1 1").cmp_lex(&w("(1 1 0)")), Ordering::Greater);
        assert_eq!(w("(1 1 0)").cmp_lex(&w("1 1 0 (1 1 0)")), Ordering::Equal);
        assert_eq!(w("(1 0)").cmp_lex(&w("(1 0 0)")), Ordering::Greater);
        assert_eq!(w("0").cmp_lex(&w("(0 0 1)")), Ordering::Less);
    }

    #[test]
    fn shifts_and_subtraction() {
        let d = w("(1 0 0 0 0)");
        assert_eq!(d.shift(2), w("(0 0 0 1 0)"));
        assert_eq!(w("1 2 3").shift(5), SignedWord::zero());
        let diff = SignedWord::zero().sub(&d.shift(2));
        assert_eq!(diff, w("(0 0 0 -1 0)"));
        assert_eq!(diff.add(&d.shift(2)), SignedWord::zero());
    }

    #[test]
    fn digit_word_bounds() {
        assert!(DigitWord::parse("1 2 (3)", 2).is_err());
        assert!(DigitWord::parse("1 -1", 2).is_err());
        let dw = DigitWord::parse("2 2 1 0 0 2", 2).unwrap();
        assert_eq!(dw.to_string(), "2 2 1 0 0 2");
    }

    fn arb_word() -> impl Strategy<Value = SignedWord> {
        (
            proptest::collection::vec(-3i64..4, 0..6),
            proptest::collection::vec(-3i64..4, 0..5),
        )
            .prop_map(|(a, b)| SignedWord::new(a, b))
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(x in arb_word()) {
            let s = x.to_string();
            prop_assert_eq!(s.parse::<SignedWord>().unwrap(), x.clone());
            prop_assert_eq!(s.parse::<SignedWord>().unwrap().to_string(), s);
        }

        #[test]
        fn canonicalization_preserves_digits(pre in proptest::collection::vec(0i64..3, 0..6),
                                             per in proptest::collection::vec(0i64..3, 0..5)) {
            let raw_at = |i: usize| if i < pre.len() { pre[i] } else if per.is_empty() { 0 } else { per[(i - pre.len()) % per.len()] };
            let c = SignedWord::new(pre.clone(), per.clone());
            for i in 0..40 {
                prop_assert_eq!(c.at(i), raw_at(i));
            }
        }

        #[test]
        fn lex_matches_long_prefix(x in arb_word(), y in arb_word()) {
            let a = x.prefix(200);
            let b = y.prefix(200);
            prop_assert_eq!(x.cmp_lex(&y), a.cmp(&b));
        }
    }
}
