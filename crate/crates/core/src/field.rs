//! The base `β`: a real algebraic integer `β > 1` given by its monic
//! integer polynomial `p(x) = x^d - a_{d-1}x^{d-1} - ... - a_1 x - a_0`,
//! together with a certified isolating interval that only ever shrinks.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{IntPoly, PolyParseError};

/// Hard stop for interval refinement; reaching it means a bug, not bad input.
pub const MAX_BISECTIONS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("polynomial must be monic of degree >= 2")]
    NotMonic,
    #[error("constant term a_0 must be nonzero")]
    ZeroConstant,
    #[error("polynomial has no real root above 1")]
    NoRootAboveOne,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("root of modulus exactly 1 detected")]
    BoundaryRoot,
    #[error("floor does not fit in a machine integer")]
    Overflow,
    #[error(transparent)]
    Parse(#[from] PolyParseError),
}

/// How much of irreducibility was actually verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Exact factor search (degree <= 4).
    Verified,
    /// Only the rational-root test was run (degree >= 5).
    RationalRootsOnly,
}

/// Dyadic isolating interval `[lo / 2^bits, hi / 2^bits]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    lo: BigInt,
    hi: BigInt,
    bits: u64,
}

impl IsolatingInterval {
    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Halves the interval, keeping the root of `p` inside.
    pub fn bisect(&self, p: &IntPoly) -> IsolatingInterval {
        let lo = &self.lo << 1;
        let hi = &self.hi << 1;
        let mid = &self.lo + &self.hi;
        let bits = self.bits + 1;
        let s_lo = p.eval_dyadic_scaled(&lo, bits).signum();
        let s_mid = p.eval_dyadic_scaled(&mid, bits).signum();
        assert!(!s_mid.is_zero(), "rational root inside isolating interval");
        if s_mid == s_lo {
            IsolatingInterval { lo: mid, hi, bits }
        } else {
            IsolatingInterval { lo, hi: mid, bits }
        }
    }
}

/// Interval plus the scaled endpoint powers used for evaluating elements.
#[derive(Debug, Clone)]
pub(crate) struct Bounds {
    pub(crate) interval: IsolatingInterval,
    /// `lo^i * 2^(bits*(d-1-i))` for `i < d`.
    pub(crate) lo_pows: Vec<BigInt>,
    pub(crate) hi_pows: Vec<BigInt>,
}

impl Bounds {
    fn new(interval: IsolatingInterval, degree: usize) -> Self {
        let pows = |base: &BigInt| {
            let mut out = Vec::with_capacity(degree);
            let mut acc = BigInt::one();
            for i in 0..degree {
                out.push(&acc << (interval.bits * (degree - 1 - i) as u64));
                acc *= base;
            }
            out
        };
        let lo_pows = pows(&interval.lo);
        let hi_pows = pows(&interval.hi);
        Bounds {
            interval,
            lo_pows,
            hi_pows,
        }
    }

    /// Denominator exponent shared by `lo_pows` / `hi_pows`.
    pub(crate) fn scale_bits(&self) -> u64 {
        self.interval.bits * (self.lo_pows.len() as u64 - 1)
    }
}

pub struct BetaField {
    poly: IntPoly,
    /// `a_0, ..., a_{d-1}`.
    coeffs: Vec<BigInt>,
    irreducibility: Irreducibility,
    bounds: RwLock<Bounds>,
}

impl fmt::Debug for BetaField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BetaField")
            .field("poly", &self.poly.to_symbolic())
            .field("interval", &self.interval())
            .finish()
    }
}

impl PartialEq for BetaField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for BetaField {}

impl BetaField {
    /// Builds `β` from `a_0, ..., a_{d-1}` with `p(x) = x^d - Σ a_i x^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Result<Arc<Self>, FieldError> {
        let mut p: Vec<BigInt> = coeffs.iter().map(|&a| -BigInt::from(a)).collect();
        p.push(BigInt::one());
        Self::from_poly(IntPoly::new(p))
    }

    /// Parses either polynomial syntax accepted by [`crate::poly::parse_poly`].
    pub fn parse(spec: &str) -> Result<Arc<Self>, FieldError> {
        Self::from_poly(crate::poly::parse_poly(spec)?)
    }

    /// The cubic `x^3 - a x^2 - b x - c`.
    pub fn cubic(a: i64, b: i64, c: i64) -> Result<Arc<Self>, FieldError> {
        Self::from_coeffs(&[c, b, a])
    }

    pub fn from_poly(poly: IntPoly) -> Result<Arc<Self>, FieldError> {
        if poly.degree() < 2 || !poly.is_monic() {
            return Err(FieldError::NotMonic);
        }
        if poly.coeffs()[0].is_zero() {
            return Err(FieldError::ZeroConstant);
        }
        let irreducibility = check_irreducible(&poly)?;
        let interval = isolate_largest_root(&poly)?;
        let d = poly.degree();
        let coeffs = poly.coeffs()[..d].iter().map(|c| -c).collect();
        Ok(Arc::new(BetaField {
            bounds: RwLock::new(Bounds::new(interval, d)),
            poly,
            coeffs,
            irreducibility,
        }))
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// `a_0, ..., a_{d-1}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// `a_i` as a machine integer; panics if it does not fit.
    pub fn coeff_i64(&self, i: usize) -> i64 {
        self.coeffs[i].to_i64().expect("coefficient fits in i64")
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn interval(&self) -> IsolatingInterval {
        self.bounds.read().expect("bounds lock").interval.clone()
    }

    pub(crate) fn bounds(&self) -> Bounds {
        self.bounds.read().expect("bounds lock").clone()
    }

    /// Refines until the interval has at least `bits` bits of precision.
    pub(crate) fn refine_to(&self, bits: u64) {
        let mut guard = self.bounds.write().expect("bounds lock");
        if guard.interval.bits >= bits {
            return;
        }
        assert!(
            bits <= MAX_BISECTIONS,
            "isolating interval refinement exceeded {MAX_BISECTIONS} bisections"
        );
        let mut iv = guard.interval.clone();
        while iv.bits < bits {
            iv = iv.bisect(&self.poly);
        }
        *guard = Bounds::new(iv, self.degree());
    }

    /// Rational approximation of `β` (midpoint of the current interval).
    pub fn approx(&self) -> f64 {
        let iv = self.interval();
        let mid = (iv.lo() + iv.hi()) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub(crate) fn same(a: &Arc<BetaField>, b: &Arc<BetaField>) -> bool {
        Arc::ptr_eq(a, b) || a.poly == b.poly
    }
}

fn check_irreducible(p: &IntPoly) -> Result<Irreducibility, FieldError> {
    if let Some(r) = p.integer_roots().into_iter().next() {
        return Err(FieldError::Reducible(format!("integer root {r}")));
    }
    match p.degree() {
        2 | 3 => Ok(Irreducibility::Verified),
        4 => match p.quadratic_factor_of_quartic() {
            Some((u, v)) => Err(FieldError::Reducible(format!(
                "quadratic factor {}",
                IntPoly::new(vec![v, u, BigInt::one()])
            ))),
            None => Ok(Irreducibility::Verified),
        },
        _ => Ok(Irreducibility::RationalRootsOnly),
    }
}

/// Isolates the largest real root of `p` above 1 by Sturm bisection on
/// `(1, 1 + max(1, Σ|a_i|)]`.
fn isolate_largest_root(p: &IntPoly) -> Result<IsolatingInterval, FieldError> {
    let sturm = p.sturm();
    let bound: BigInt = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .sum::<BigInt>()
        .max(BigInt::one())
        + 1;
    let to_q = |n: &BigInt, bits: u64| BigRational::new(n.clone(), BigInt::one() << bits);
    let mut iv = IsolatingInterval {
        lo: BigInt::one(),
        hi: bound,
        bits: 0,
    };
    if sturm.count_roots(&iv.lo(), &iv.hi()) == 0 {
        return Err(FieldError::NoRootAboveOne);
    }
    while sturm.count_roots(&iv.lo(), &iv.hi()) > 1 {
        let lo = &iv.lo << 1;
        let hi = &iv.hi << 1;
        let mid = &iv.lo + &iv.hi;
        let bits = iv.bits + 1;
        iv = if sturm.count_roots(&to_q(&mid, bits), &to_q(&hi, bits)) >= 1 {
            IsolatingInterval { lo: mid, hi, bits }
        } else {
            IsolatingInterval { lo, hi: mid, bits }
        };
    }
    let s_lo = p.eval_dyadic_scaled(&iv.lo, iv.bits).signum();
    let s_hi = p.eval_dyadic_scaled(&iv.hi, iv.bits).signum();
    if s_lo.is_zero() || s_hi.is_zero() || s_lo == s_hi {
        // Only possible for a repeated root, i.e. a reducible polynomial.
        return Err(FieldError::Reducible("repeated real root".into()));
    }
    while iv.lo() <= BigRational::one() {
        iv = iv.bisect(p);
    }
    Ok(iv)
}
