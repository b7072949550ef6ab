//! Univariate integer polynomials: parsing, exact evaluation, Sturm
//! sequences and the small-degree irreducibility test used when a base
//! field is constructed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("empty polynomial")]
    Empty,
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),
    #[error("bad term `{0}`")]
    BadTerm(String),
    #[error("variable must be `x`, found `{0}`")]
    BadVariable(char),
}

/// Integer polynomial with coefficients stored low-to-high.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// `2^(bits*deg) * p(num / 2^bits)`, an integer with the sign of `p` at the dyadic point.
    pub fn eval_dyadic_scaled(&self, num: &BigInt, bits: u64) -> BigInt {
        let d = self.degree() as u64;
        let mut acc = BigInt::zero();
        let mut pow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &pow << (bits * (d - i as u64));
            pow *= num;
        }
        acc
    }

    /// Renders in the symbolic input syntax, e.g. `x^3-4x^2+4x-2`.
    pub fn to_symbolic(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => {
                    out.push_str("x^");
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }

    fn to_rational(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    fn derivative(&self) -> IntPoly {
        if self.degree() == 0 {
            return IntPoly::new(vec![BigInt::zero()]);
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Integer roots of a monic polynomial (they divide the constant term).
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            let mut roots = vec![BigInt::zero()];
            let reduced = IntPoly::new(self.coeffs[1..].to_vec());
            roots.extend(reduced.integer_roots().into_iter().filter(|r| !r.is_zero()));
            return roots;
        }
        divisors(c0)
            .into_iter()
            .flat_map(|d| [d.clone(), -d])
            .filter(|r| self.eval_int(r).is_zero())
            .collect()
    }

    /// Monic integer factor `x^2 + u x + v` of a monic quartic, if one exists.
    pub fn quadratic_factor_of_quartic(&self) -> Option<(BigInt, BigInt)> {
        if self.degree() != 4 || !self.is_monic() {
            return None;
        }
        let [c0, c1, c2, c3, _] = &self.coeffs[..] else {
            return None;
        };
        if c0.is_zero() {
            return None;
        }
        // (x^2 + u x + v)(x^2 + w x + z): u+w = c3, v+z+uw = c2, uz+vw = c1, vz = c0.
        for d in divisors(c0) {
            for v in [d.clone(), -d] {
                let z = c0 / &v;
                let uw = c2 - &v - &z;
                let disc = c3 * c3 - BigInt::from(4) * &uw;
                if disc.is_negative() {
                    continue;
                }
                let s = disc.sqrt();
                if &s * &s != disc {
                    continue;
                }
                for root in [c3 + &s, c3 - &s] {
                    if root.is_odd() {
                        continue;
                    }
                    let u = root / 2;
                    let w = c3 - &u;
                    if &u * &z + &v * &w == *c1 {
                        return Some((u, v));
                    }
                }
            }
        }
        None
    }

    pub fn sturm(&self) -> SturmSequence {
        SturmSequence::new(self)
    }

    /// Reciprocal polynomial `x^d p(1/x)`.
    pub fn reversed(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// For a palindromic polynomial of even degree `2m`, the degree-`m`
    /// polynomial `h` with `p(x) = x^m h(x + 1/x)`.
    pub fn palindromic_trace_poly(&self) -> Option<IntPoly> {
        let d = self.degree();
        if d % 2 != 0 || self.reversed() != *self {
            return None;
        }
        let m = d / 2;
        // Peel off (x + 1/x)^k terms from the top; work on the coefficients of
        // x^{m}..x^{2m} after dividing by x^m (symmetric Laurent polynomial).
        let mut sym: Vec<BigInt> = self.coeffs[m..].to_vec();
        let mut h = vec![BigInt::zero(); m + 1];
        for k in (0..=m).rev() {
            let coef = sym[k].clone();
            h[k] = coef.clone();
            if coef.is_zero() {
                continue;
            }
            // (x + 1/x)^k = sum_j C(k,j) x^{k-2j}
            let mut binom = BigInt::one();
            for j in 0..=k {
                let e = k as i64 - 2 * j as i64;
                if e >= 0 {
                    sym[e as usize] -= &coef * &binom;
                }
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        Some(IntPoly::new(h))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_symbolic())
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Parses either the comma-separated low-to-high coefficient list
/// (`-2,4,-4,1`) or the symbolic form (`x^3-4x^2+4x-2`).
pub fn parse_poly(input: &str) -> Result<IntPoly, PolyParseError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PolyParseError::Empty);
    }
    if s.contains(',') || !s.chars().any(|c| c.is_ascii_alphabetic()) {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| PolyParseError::BadCoefficient(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(IntPoly::new(coeffs));
    }
    if let Some(bad) = s.chars().find(|c| c.is_ascii_alphabetic() && *c != 'x') {
        return Err(PolyParseError::BadVariable(bad));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut coeffs: Vec<BigInt> = Vec::new();
    for term in terms {
        let (coef, exp) = parse_term(term)?;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coef;
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_term(term: &str) -> Result<(BigInt, usize), PolyParseError> {
    let bad = || PolyParseError::BadTerm(term.to_string());
    let (sign, body) = match term.as_bytes().first() {
        Some(b'+') => (BigInt::one(), &term[1..]),
        Some(b'-') => (-BigInt::one(), &term[1..]),
        _ => (BigInt::one(), term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    match body.find('x') {
        None => {
            let c: BigInt = body.parse().map_err(|_| bad())?;
            Ok((sign * c, 0))
        }
        Some(pos) => {
            let coef_str = body[..pos].trim_end_matches('*');
            let coef = if coef_str.is_empty() {
                BigInt::one()
            } else {
                coef_str.parse().map_err(|_| bad())?
            };
            let rest = &body[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<usize>()
                    .map_err(|_| bad())?
            };
            Ok((sign * coef, exp))
        }
    }
}

/// Polynomial over the rationals; only what the Sturm sequence needs.
#[derive(Debug, Clone, PartialEq)]
struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn rem(&self, divisor: &RatPoly) -> RatPoly {
        let mut r = self.coeffs.clone();
        let dl = divisor.coeffs.len();
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        while r.len() >= dl {
            let q = r.last().expect("nonempty") / lead;
            let shift = r.len() - dl;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RatPoly::new(r)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Sturm sequence of a polynomial; counts distinct real roots in half-open intervals.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<RatPoly>,
}

impl SturmSequence {
    fn new(p: &IntPoly) -> Self {
        let p0 = p.to_rational();
        let p1 = p.derivative().to_rational();
        let mut chain = vec![p0];
        if !p1.is_zero() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmSequence { chain }
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let mut changes = 0;
        let mut prev: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if prev.is_some_and(|s| s != pos) {
                changes += 1;
            }
            prev = Some(pos);
        }
        changes
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn parses_both_syntaxes() {
        let a = parse_poly("x^3-4x^2+4x-2").unwrap();
        let b = parse_poly("-2,4,-4,1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_symbolic(), "x^3-4x^2+4x-2");
        assert_eq!(parse_poly("x^2 - 3x + 1").unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        assert_eq!(parse_poly("x^3-x-1").unwrap(), IntPoly::from_i64(&[-1, -1, 0, 1]));
        assert_eq!(parse_poly("-x+x^2").unwrap(), IntPoly::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_poly(""), Err(PolyParseError::Empty)));
        assert!(matches!(parse_poly("y^2+1"), Err(PolyParseError::BadVariable('y'))));
        assert!(parse_poly("1,,2").is_err());
        assert!(parse_poly("x^^2").is_err());
    }

    #[test]
    fn integer_roots_and_quartic_factors() {
        let p = IntPoly::from_i64(&[-6, 11, -6, 1]);
        let mut roots = p.integer_roots();
        roots.sort();
        assert_eq!(roots, vec![1.into(), 2.into(), 3.into()]);
        // (x^2 - x - 1)(x^2 + 2x + 3)
        let p = IntPoly::from_i64(&[-3, -5, 0, 1, 1]);
        assert!(p.quadratic_factor_of_quartic().is_some());
        // x^4 - x - 1 is irreducible
        assert!(IntPoly::from_i64(&[-1, -1, 0, 0, 1])
            .quadratic_factor_of_quartic()
            .is_none());
    }

    #[test]
    fn sturm_counts() {
        let p = IntPoly::from_i64(&[-6, 11, -6, 1]);
        let s = p.sturm();
        assert_eq!(s.count_roots(&q(0), &q(10)), 3);
        assert_eq!(s.count_roots(&q(1), &q(10)), 2);
        let tri = IntPoly::from_i64(&[-1, -1, -1, 1]);
        assert_eq!(tri.sturm().count_roots(&q(-10), &q(10)), 1);
    }

    #[test]
    fn trace_poly_of_palindrome() {
        // x^4 - x^3 - x^2 - x + 1 = x^2 h(x + 1/x), h(w) = w^2 - w - 3
        let p = IntPoly::from_i64(&[1, -1, -1, -1, 1]);
        assert_eq!(p.palindromic_trace_poly().unwrap(), IntPoly::from_i64(&[-3, -1, 1]));
        assert!(IntPoly::from_i64(&[-1, -1, -1, 1]).palindromic_trace_poly().is_none());
    }

    #[test]
    fn dyadic_eval_sign() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        // p(3/2) = 1/4 > 0, p(5/4) < 0
        assert!(p.eval_dyadic_scaled(&3.into(), 1).is_positive());
        assert!(p.eval_dyadic_scaled(&5.into(), 2).is_negative());
    }
}
