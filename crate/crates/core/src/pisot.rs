//! Pisot test.
//!
//! `p(z) = (z - β) q(z)` with `q` having coefficients in `Q(β)`; `β` is a
//! Pisot number iff `q` is Schur stable (every root strictly inside the
//! unit disk). Stability is decided by the Schur–Cohn recursion
//! `f ↦ (f_n f(z) - f_0 f*(z)) / z`, which needs only exact sign
//! comparisons in `Q(β)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::element::FieldElement;
use crate::field::BetaField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PisotTest {
    Pisot,
    NotPisot,
    /// Some conjugate lies on the unit circle; `β` is not Pisot.
    BoundaryRoot,
}

pub fn pisot_test(field: &Arc<BetaField>) -> PisotTest {
    if schur_stable(&deflate(field)) {
        return PisotTest::Pisot;
    }
    if has_unit_circle_root(field) {
        PisotTest::BoundaryRoot
    } else {
        PisotTest::NotPisot
    }
}

pub fn is_pisot(field: &Arc<BetaField>) -> bool {
    pisot_test(field) == PisotTest::Pisot
}

/// Coefficients (low-to-high) of `p(z) / (z - β)`.
fn deflate(field: &Arc<BetaField>) -> Vec<FieldElement> {
    let p = field.poly().coeffs();
    let d = field.degree();
    let beta = FieldElement::beta(field);
    let mut q = vec![FieldElement::zero(field); d];
    q[d - 1] = FieldElement::one(field);
    for k in (1..d).rev() {
        q[k - 1] = &beta * &q[k] + FieldElement::from_int(field, p[k].clone());
    }
    q
}

/// All roots strictly inside the open unit disk.
pub(crate) fn schur_stable(f: &[FieldElement]) -> bool {
    let mut f = f.to_vec();
    while f.len() > 1 {
        let n = f.len() - 1;
        let (f0, fnn) = (f[0].clone(), f[n].clone());
        if (&fnn * &fnn - &f0 * &f0).sign() <= 0 {
            return false;
        }
        f = (0..n)
            .map(|k| &fnn * &f[k + 1] - &f0 * &f[n - k - 1])
            .collect();
    }
    true
}

/// For irreducible `p` a unit-circle root forces `p` to be palindromic of
/// even degree; then `p(z) = z^m h(z + 1/z)` and circle roots correspond to
/// real roots of `h` in `(-2, 2)`.
fn has_unit_circle_root(field: &BetaField) -> bool {
    match field.poly().palindromic_trace_poly() {
        Some(h) => {
            let two = BigRational::from_integer(BigInt::from(2));
            h.sturm().count_roots(&-two.clone(), &two) > 0
        }
        None => false,
    }
}

/// Closed-form Pisot criterion for the cubic `x^3 - a x^2 - b x - c`:
/// `|b - 1| < a + c` and `c^2 - b < sgn(c)(1 + ac)`.
pub fn cubic_pisot_criterion(a: i64, b: i64, c: i64) -> bool {
    (b - 1).abs() < a + c && c * c - b < c.signum() * (1 + a * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test(spec: &str) -> PisotTest {
        pisot_test(&BetaField::parse(spec).unwrap())
    }

    #[test]
    fn known_pisot_numbers() {
        assert_eq!(test("x^3-4x^2+4x-2"), PisotTest::Pisot);
        assert_eq!(test("x^3-x-1"), PisotTest::Pisot);
        assert_eq!(test("x^2-3x+1"), PisotTest::Pisot);
        assert_eq!(test("x^3-x^2-x-1"), PisotTest::Pisot);
        assert_eq!(test("x^2-x-1"), PisotTest::Pisot);
    }

    #[test]
    fn non_pisot_and_salem() {
        // conjugates -1.6.., 0.6..: not Pisot
        assert_eq!(test("x^3-x^2-4x+2"), PisotTest::NotPisot);
        // Lehmer's number is Salem: conjugates on the unit circle.
        assert_eq!(
            test("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"),
            PisotTest::BoundaryRoot
        );
        // smallest quartic Salem number
        assert_eq!(test("x^4-x^3-x^2-x+1"), PisotTest::BoundaryRoot);
    }

    #[test]
    fn cubic_criterion_spot_checks() {
        assert!(cubic_pisot_criterion(1, 1, 1));
        assert!(cubic_pisot_criterion(0, 1, 1));
        assert!(cubic_pisot_criterion(4, -4, 2));
        assert!(!cubic_pisot_criterion(3, -1, -1));
    }
}
