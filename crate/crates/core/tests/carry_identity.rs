use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use betafin::family::family_field;
use betafin::normalize::{add_one, frac_part, omega_sum};
use betafin::{BetaField, BetaSystem, FieldElement};

fn bases() -> Vec<Arc<BetaField>> {
    vec![
        BetaField::cubic(1, 1, 1).unwrap(),
        BetaField::cubic(0, 1, 1).unwrap(),
        family_field(2).unwrap(),
        family_field(3).unwrap(),
        BetaField::cubic(2, 1, -1).unwrap(),
        BetaField::parse("x^2-3x+1").unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `{x+1} - {x} = θ - Σ ω_j T^j(1)` for nonnegative `x ∈ Q(β)`, and the
    /// carried expansion is the greedy one.
    #[test]
    fn add_one_on_field_elements(
        idx in 0usize..6,
        coords in proptest::collection::vec(-9i64..=9, 3),
        den in 1i64..=6,
    ) {
        let f = bases()[idx].clone();
        let sys = BetaSystem::new(f.clone()).unwrap();
        let q: Vec<BigRational> = coords[..f.degree()]
            .iter()
            .map(|&n| BigRational::new(BigInt::from(n), BigInt::from(den)))
            .collect();
        let x = FieldElement::new(&f, q);
        prop_assume!(x.sign() >= 0);
        let (e, w) = add_one(&sys, &x).unwrap();
        let x1 = x.add_int(1);
        prop_assert!(w.verified);
        let lhs = frac_part(&sys, &x1).unwrap() - frac_part(&sys, &x).unwrap();
        let rhs = sys.int(w.theta as i64) - omega_sum(&sys, &w.omegas).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(sys.reconstruct(&e), x1.clone());
        prop_assert_eq!(e, sys.beta_expand(&x1).unwrap());
    }
}
