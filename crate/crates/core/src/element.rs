//! Elements of `Q(β)` in the power basis `1, β, ..., β^{d-1}` with exact
//! sign and floor via interval evaluation on the isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{BetaField, FieldError};

/// Bits of precision added per refinement round when a sign is undecided.
const REFINE_STEP: u64 = 64;

#[derive(Clone)]
pub struct FieldElement {
    coords: Vec<BigRational>,
    field: Arc<BetaField>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && BetaField::same(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("b")?;
                    } else {
                        write!(f, "b^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FieldElement {
    pub fn new(field: &Arc<BetaField>, mut coords: Vec<BigRational>) -> Self {
        let d = field.degree();
        assert!(coords.len() <= d, "too many coordinates for degree {d}");
        coords.resize(d, BigRational::zero());
        FieldElement {
            coords,
            field: Arc::clone(field),
        }
    }

    pub fn from_ints(field: &Arc<BetaField>, coords: &[i64]) -> Self {
        Self::new(
            field,
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(field: &Arc<BetaField>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<BetaField>) -> Self {
        Self::from_int(field, BigInt::one())
    }

    pub fn from_int(field: &Arc<BetaField>, n: impl Into<BigInt>) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(field: &Arc<BetaField>, q: BigRational) -> Self {
        Self::new(field, vec![q])
    }

    pub fn beta(field: &Arc<BetaField>) -> Self {
        let mut c = vec![BigRational::zero(); field.degree()];
        c[1] = BigRational::one();
        Self::new(field, c)
    }

    /// `β^{-1} = (β^{d-1} - a_{d-1}β^{d-2} - ... - a_1) / a_0`.
    pub fn beta_inv(field: &Arc<BetaField>) -> Self {
        let d = field.degree();
        let a0 = BigRational::from_integer(field.coeff(0).clone());
        let mut c = vec![BigRational::zero(); d];
        c[d - 1] = BigRational::one() / &a0;
        for (j, cj) in c.iter_mut().enumerate().take(d - 1) {
            *cj = -BigRational::from_integer(field.coeff(j + 1).clone()) / &a0;
        }
        Self::new(field, c)
    }

    /// `β^k` for any integer `k`.
    pub fn beta_pow(field: &Arc<BetaField>, k: i64) -> Self {
        let base = if k >= 0 {
            Self::beta(field)
        } else {
            Self::beta_inv(field)
        };
        base.pow(k.unsigned_abs())
    }

    pub fn field(&self) -> &Arc<BetaField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coords[0])
    }

    /// True if the element is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_integer())
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if BetaField::same(&self.field, &other.field) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let d = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // x^d = a_{d-1}x^{d-1} + ... + a_0
        for k in (d..2 * d - 1).rev() {
            let top = std::mem::replace(&mut prod[k], BigRational::zero());
            if top.is_zero() {
                continue;
            }
            for i in 0..d {
                let a = self.field.coeff(i);
                if !a.is_zero() {
                    prod[k - d + i] += &top * BigRational::from_integer(a.clone());
                }
            }
        }
        prod.truncate(d);
        Ok(Self::new(&self.field, prod))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        FieldElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            coords: self.coords.iter().map(|c| c * q).collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(n.into()))
    }

    pub fn add_int(&self, n: i64) -> Self {
        let mut out = self.clone();
        out.coords[0] += BigRational::from_integer(n.into());
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by solving the multiplication-matrix system.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        let d = self.field.degree();
        // Column j is self * β^j.
        let mut cols = Vec::with_capacity(d);
        let beta = Self::beta(&self.field);
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = &cur * &beta;
        }
        // Augmented matrix rows: m[i][j] = cols[j][i], rhs e_0.
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(FieldError::DivisionByZero)?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let (src, dst) = if r < col {
                        let (a, b) = m.split_at_mut(col);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = m.split_at_mut(r);
                        (&a[col], &mut b[0])
                    };
                    for (x, y) in dst.iter_mut().zip(src.iter()) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(Self::new(&self.field, m.into_iter().map(|row| row[d].clone()).collect()))
    }

    /// Common denominator and integer numerators of the coordinates.
    fn integer_coords(&self) -> (BigInt, Vec<BigInt>) {
        let den = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, nums)
    }

    /// Integer bounds `[lower, upper]` on `value * den * 2^scale` at the current precision.
    fn scaled_bounds(nums: &[BigInt], field: &BetaField) -> (BigInt, BigInt, u64, u64) {
        let b = field.bounds();
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (i, n) in nums.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            if n.is_positive() {
                lower += n * &b.lo_pows[i];
                upper += n * &b.hi_pows[i];
            } else {
                lower += n * &b.hi_pows[i];
                upper += n * &b.lo_pows[i];
            }
        }
        (lower, upper, b.scale_bits(), b.interval.bits())
    }

    /// Exact sign in `{-1, 0, 1}`.
    pub fn sign(&self) -> i8 {
        if let Some(q) = self.as_rational() {
            return q.signum().to_i8().expect("signum");
        }
        let (_, nums) = self.integer_coords();
        loop {
            let (lower, upper, _, bits) = Self::scaled_bounds(&nums, &self.field);
            if lower.is_positive() {
                return 1;
            }
            if upper.is_negative() {
                return -1;
            }
            self.field.refine_to(bits + REFINE_STEP);
        }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering, FieldError> {
        Ok(self.try_sub(other)?.sign().cmp(&0))
    }

    /// Exact `⌊self⌋`.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer();
        }
        let (den, nums) = self.integer_coords();
        loop {
            let (lower, upper, scale, bits) = Self::scaled_bounds(&nums, &self.field);
            let unit = &den << scale;
            let k = lower.div_floor(&unit);
            // The element is irrational, so it never equals k + 1.
            if upper <= (&k + 1) * &unit {
                return k;
            }
            self.field.refine_to(bits + REFINE_STEP);
        }
    }

    pub fn floor_i64(&self) -> Result<i64, FieldError> {
        self.floor().to_i64().ok_or(FieldError::Overflow)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `self - ⌊self⌋`.
    pub fn fract(&self) -> Self {
        let f = self.floor();
        let mut out = self.clone();
        out.coords[0] -= BigRational::from_integer(f);
        out
    }

    /// Floating approximation for display only.
    pub fn approx(&self) -> f64 {
        let beta = self.field.approx();
        self.coords
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * beta + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Coordinates rendered as `p/q` strings (JSON interchange).
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            coords: self.coords.iter().map(|c| -c).collect(),
            field: Arc::clone(&self.field),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// Operator forms panic on mixed fields; the `try_*` methods report it instead.
macro_rules! binop {
    ($tr:ident, $m:ident, $tm:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$tm(rhs).expect("operands from the same field")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$tm(&rhs).expect("operands from the same field")
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$tm(rhs).expect("operands from the same field")
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$tm(&rhs).expect("operands from the same field")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
