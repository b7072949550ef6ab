//! The family `x^3 - 2t x^2 + 2t x - t` (`t ≥ 2`): (F1) holds, (PF) fails.
//!
//! Its shift radix system does not depend on `t`: `Q_β` is a fixed 27-point
//! set whose only nonzero periodic point is the fixed point `(1, 1)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{self, chain_holds, family_lambda_chains, Verdict};
use crate::expansion::{BetaSystem, Budgets};
use crate::field::{BetaField, FieldError};
use crate::srs::{CertVerdict, Srs, SrsVector};
use crate::word::SignedWord;

pub fn family_field(t: i64) -> Result<Arc<BetaField>, FieldError> {
    BetaField::cubic(2 * t, -2 * t, t)
}

fn v(a: i64, b: i64) -> SrsVector {
    SrsVector(vec![a, b])
}

/// `Q_β`: `(0, 0)` and `±` thirteen vectors.
pub fn expected_q_set() -> BTreeSet<SrsVector> {
    let half = [
        (3, 2), (1, 1), (2, 2), (2, 1), (1, 0), (3, 1), (0, 1),
        (2, 0), (1, -1), (3, 3), (1, 2), (2, 3), (0, 2),
    ];
    let mut out: BTreeSet<SrsVector> = half.iter().map(|&(a, b)| v(a, b)).collect();
    out.extend(half.iter().map(|&(a, b)| v(-a, -b)));
    out.insert(v(0, 0));
    out
}

/// `l → τ(l)` on `Q_β`, self-loops at `(1, 1)` and `(0, 0)` included.
pub fn expected_edges() -> BTreeSet<(SrsVector, SrsVector)> {
    let edges = [
        ((1, 0), (0, 0)), ((2, 1), (1, 0)), ((2, 2), (2, 1)), ((1, 2), (2, 2)),
        ((0, 1), (1, 2)), ((-1, 0), (0, 1)), ((-1, -1), (-1, 0)), ((0, -1), (-1, -1)),
        ((2, 0), (0, -1)), ((3, 1), (1, 0)), ((3, 2), (2, 1)), ((3, 3), (3, 2)),
        ((2, 3), (3, 3)), ((0, 2), (2, 3)), ((-2, 0), (0, 2)), ((-3, -2), (-2, 0)),
        ((-2, -3), (-3, -2)), ((-1, 1), (1, 2)), ((-2, -1), (-1, 1)), ((-1, -2), (-2, -1)),
        ((-3, -1), (-1, 1)), ((-3, -3), (-3, -1)), ((-2, -2), (-2, 0)), ((0, -2), (-2, -2)),
        ((1, -1), (-1, -1)), ((1, 1), (1, 1)), ((0, 0), (0, 0)),
    ];
    edges
        .iter()
        .map(|&((a, b), (c, d))| (v(a, b), v(c, d)))
        .collect()
}

/// `d_β(1) = (2t-2)(2t-2)(t-1)00t`.
pub fn expected_d_beta_one(t: i64) -> SignedWord {
    SignedWord::finite(vec![2 * t - 2, 2 * t - 2, t - 1, 0, 0, t])
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCheck {
    pub t: i64,
    pub checks: Vec<(String, bool)>,
    pub error: Option<String>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub const CHECK_NAMES: [&str; 12] = [
    "pisot", "q_set", "p_set", "edges", "closure", "r0_in_f", "f1_cert", "pf_refuted",
    "d_beta_1", "floor", "lambda", "conjugacy",
];

/// Every structural claim for one member; `seed` drives the random
/// conjugacy sample.
pub fn verify_member(t: i64, budgets: Budgets, seed: u64) -> FamilyCheck {
    let mut out = FamilyCheck {
        t,
        checks: Vec::new(),
        error: None,
    };
    if let Err(e) = run_checks(t, budgets, seed, &mut out.checks) {
        out.error = Some(e);
    }
    out
}

fn run_checks(t: i64, budgets: Budgets, seed: u64, checks: &mut Vec<(String, bool)>) -> Result<(), String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let field = family_field(t).map_err(|e| err(&e))?;
    let sys = BetaSystem::with_budgets(field.clone(), budgets).map_err(|e| err(&e))?;
    let srs = Srs::new(&sys);
    let mut push = |name: &str, ok: bool| checks.push((name.to_string(), ok));

    push("pisot", crate::pisot::is_pisot(&field));
    let graph = srs.q_set().map_err(|e| err(&e))?;
    push("q_set", graph.node_set() == expected_q_set());
    push("p_set", graph.p_set() == BTreeSet::from([v(1, 1)]));
    push("edges", graph.edges().into_iter().collect::<BTreeSet<_>>() == expected_edges());
    let cert = srs.f1_certificate();
    push("closure", cert.preimage_closure_ok);
    push("r0_in_f", cert.r0_in_f && cert.r0_complete);
    push("f1_cert", cert.verdict == CertVerdict::Proven);
    let report = classify::classify(field, budgets).map_err(|e| err(&e))?;
    push("pf_refuted", report.pf == Verdict::Refuted);
    let d1 = sys.d_beta_one().map_err(|e| err(&e))?;
    push("d_beta_1", *d1.as_signed() == expected_d_beta_one(t));
    push("floor", sys.floor_beta() == 2 * t - 2);
    push("lambda", family_lambda_chains().iter().all(|c| chain_holds(&srs, c)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t as u64);
    let mut conj = true;
    for _ in 0..32 {
        let l = v(rng.gen_range(-12..=12), rng.gen_range(-12..=12));
        let (_, image) = sys.t_map(&srs.frac_lambda(&l)).map_err(|e| err(&e))?;
        conj &= image == srs.frac_lambda(&srs.tau(&l));
    }
    push("conjugacy", conj);
    Ok(())
}
