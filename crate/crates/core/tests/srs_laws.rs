use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use betafin::family::family_field;
use betafin::srs::{Srs, SrsVector};
use betafin::{BetaField, BetaSystem, Budgets};

fn bases() -> Vec<Arc<BetaField>> {
    vec![
        BetaField::cubic(1, 1, 1).unwrap(),
        BetaField::cubic(0, 1, 1).unwrap(),
        family_field(2).unwrap(),
        family_field(3).unwrap(),
        BetaField::cubic(5, -5, 3).unwrap(),
        BetaField::cubic(2, 1, -1).unwrap(),
        BetaField::cubic(3, -2, 1).unwrap(),
        BetaField::parse("x^4-x^3-x^2-x-1").unwrap(),
    ]
}

fn arb_vec(dim: usize) -> impl Strategy<Value = SrsVector> {
    proptest::collection::vec(-40i64..=40, dim).prop_map(SrsVector)
}

#[test]
fn t_orbit_of_one_is_the_tau_orbit_of_l_i() {
    for f in bases() {
        let sys = BetaSystem::new(f).unwrap();
        let srs = Srs::new(&sys);
        let n_max = sys.one_orbit_points().unwrap().len() + 2;
        let mut l = srs.l_i();
        for n in 1..=n_max {
            assert_eq!(sys.t_power_one(n).unwrap(), srs.frac_lambda(&l), "n = {n}");
            l = srs.tau(&l);
        }
    }
}

#[test]
fn q_set_structure() {
    for f in bases() {
        let srs = Srs::from_field(f.clone(), Budgets::default());
        let g = srs.q_set().unwrap();
        let nodes = g.node_set();
        assert_eq!(nodes.len(), g.len());
        // functional graph closed under τ
        assert_eq!(g.edges().len(), g.len());
        for (l, m) in g.edges() {
            assert_eq!(srs.tau(&l), m);
            assert!(nodes.contains(&m));
        }
        // {λ} is injective
        let images: Vec<_> = g.nodes().iter().map(|l| srs.frac_lambda(l)).collect();
        for i in 0..images.len() {
            for j in 0..i {
                assert!(images[i] != images[j], "{} and {}", g.nodes()[i], g.nodes()[j]);
            }
        }
        // with τ^{-1}(P) ⊂ P: Q = -Q and Q ∖ F ⊂ P
        let cert = srs.f1_certificate();
        if cert.preimage_closure_ok {
            let neg: BTreeSet<_> = nodes.iter().map(SrsVector::neg).collect();
            assert_eq!(neg, nodes, "{}", f.poly().to_symbolic());
            assert!(g.outside_f().is_subset(&g.p_set()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugacy_and_additivity(
        idx in 0usize..8,
        seed_l in arb_vec(3),
        seed_m in arb_vec(3),
    ) {
        let f = bases()[idx].clone();
        let sys = BetaSystem::new(f).unwrap();
        let srs = Srs::new(&sys);
        let dim = srs.dim();
        let l = SrsVector(seed_l.0[..dim].to_vec());
        let m = SrsVector(seed_m.0[..dim].to_vec());

        let (_, image) = sys.t_map(&srs.frac_lambda(&l)).unwrap();
        prop_assert_eq!(image, srs.frac_lambda(&srs.tau(&l)));
        if !l.is_zero() {
            prop_assert_eq!(srs.tau_star(&l), srs.tau(&l).sub(&srs.l_i()));
        }

        let (tl, tm, tsm) = (srs.tau(&l), srs.tau(&m), srs.tau_star(&m));
        let sum = srs.tau(&l.add(&m));
        prop_assert!(sum == tl.add(&tm) || sum == tl.add(&tsm));
        let diff = srs.tau(&l.sub(&m));
        prop_assert!(diff == tl.sub(&tm) || diff == tl.sub(&tsm));
    }

    #[test]
    fn preimages_are_exact(idx in 0usize..8, seed in arb_vec(3)) {
        let srs = Srs::from_field(bases()[idx].clone(), Budgets::default());
        let m = SrsVector(seed.0[..srs.dim()].to_vec());
        for l in srs.tau_preimages(&m).unwrap() {
            prop_assert_eq!(srs.tau(&l), m.clone());
        }
        // every l with τ(l) = m shares m's shifted tail; scan a window of heads
        let mut found = BTreeSet::new();
        for x in -200i64..=200 {
            let mut v = vec![x];
            v.extend_from_slice(&m.0[..m.dim() - 1]);
            let l = SrsVector(v);
            if srs.tau(&l) == m {
                found.insert(l);
            }
        }
        prop_assert!(found.is_subset(&srs.tau_preimages(&m).unwrap()));
    }
}
