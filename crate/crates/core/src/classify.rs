//! Three-valued classification of the finiteness properties
//! (F) ⊂ (PF) ⊂ (F1) ⊂ Pisot.
//!
//! * (F1): every natural number has a finite expansion.
//! * (PF): every element of `N[1/β]` does.
//! * (F): every element of `Z[1/β] ∩ [0, ∞)` does.
//!
//! Most known criteria are one-sided, so each verdict is `proven`, `refuted`
//! or `unknown`, and carries the rules that produced it.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::expansion::{BetaSystem, Budgets, ExpansionError};
use crate::field::{BetaField, FieldError, Irreducibility};
use crate::pisot::{self, PisotTest};
use crate::srs::{CertVerdict, F1Certificate, Srs, SrsError, SrsVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("({0}, {1}, {2}) does not define a cubic Pisot number")]
    NotCubicPisot(i64, i64, i64),
    #[error("constant term {0} is not ±1")]
    NotUnit(i64),
    #[error("d_β(1) is finite; use the exact floor instead")]
    NotApplicable,
    #[error("the (F1) certificate is inconclusive")]
    F1Unknown,
    #[error("contradictory verdicts: {0}")]
    Contradiction(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Srs(#[from] SrsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Proven,
    Refuted,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proven => "proven",
            Verdict::Refuted => "refuted",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    Pisot,
    F,
    PF,
    F1,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Pisot => "pisot",
            Property::F => "F",
            Property::PF => "PF",
            Property::F1 => "F1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub claim: String,
    pub rule: String,
    pub cite: String,
    #[serde(skip)]
    pub data: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub poly: String,
    pub pisot: Verdict,
    #[serde(rename = "F")]
    pub f: Verdict,
    #[serde(rename = "PF")]
    pub pf: Verdict,
    #[serde(rename = "F1")]
    pub f1: Verdict,
    pub d_beta_1: Option<String>,
    pub evidence: Vec<Evidence>,
    #[serde(skip)]
    pub irreducibility: Irreducibility,
}

impl PropertyReport {
    pub fn get(&self, p: Property) -> Verdict {
        match p {
            Property::Pisot => self.pisot,
            Property::F => self.f,
            Property::PF => self.pf,
            Property::F1 => self.f1,
        }
    }

    fn slot(&mut self, p: Property) -> &mut Verdict {
        match p {
            Property::Pisot => &mut self.pisot,
            Property::F => &mut self.f,
            Property::PF => &mut self.pf,
            Property::F1 => &mut self.f1,
        }
    }

    /// Record `p = v`; a clash with an earlier decided verdict is an error.
    fn set(
        &mut self,
        p: Property,
        v: Verdict,
        rule: &str,
        cite: &str,
        data: Option<String>,
    ) -> Result<bool, ClassifyError> {
        let cur = self.get(p);
        if cur == v {
            return Ok(false);
        }
        if cur != Verdict::Unknown {
            return Err(ClassifyError::Contradiction(format!(
                "{p} is {cur} but rule `{rule}` says {v}"
            )));
        }
        *self.slot(p) = v;
        self.evidence.push(Evidence {
            claim: format!("{p} {v}"),
            rule: rule.to_string(),
            cite: cite.to_string(),
            data,
        });
        Ok(true)
    }

    /// Inclusions (F) ⇒ (PF) ⇒ (F1) ⇒ Pisot, pushed both ways.
    fn propagate(&mut self) -> Result<bool, ClassifyError> {
        let chain = [Property::F, Property::PF, Property::F1, Property::Pisot];
        let mut changed = false;
        for w in chain.windows(2) {
            if self.get(w[0]) == Verdict::Proven {
                changed |= self.set(w[1], Verdict::Proven, "inclusion", "(F) ⊂ (PF) ⊂ (F1) ⊂ Pisot", None)?;
            }
        }
        for w in chain.windows(2).rev() {
            if self.get(w[1]) == Verdict::Refuted {
                changed |= self.set(w[0], Verdict::Refuted, "inclusion", "(F) ⊂ (PF) ⊂ (F1) ⊂ Pisot", None)?;
            }
        }
        Ok(changed)
    }

    /// (F) ⇒ (PF) ⇒ (F1) on proven verdicts, the reverse on refuted ones.
    pub fn is_lattice_consistent(&self) -> bool {
        let order = [self.f, self.pf, self.f1, self.pisot];
        order.windows(2).all(|w| {
            !(w[0] == Verdict::Proven && w[1] != Verdict::Proven)
                && !(w[1] == Verdict::Refuted && w[0] != Verdict::Refuted)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `a_{d-1} ≥ ... ≥ a_1 ≥ a_0 ≥ 1`.
pub fn fs_type(coeffs: &[i64]) -> bool {
    coeffs.first().is_some_and(|&a0| a0 >= 1) && coeffs.windows(2).all(|w| w[1] >= w[0])
}

/// `a_{d-1} > a_{d-2} + ... + a_0` with every `a_j ≥ 0`.
pub fn hollander_type(coeffs: &[i64]) -> bool {
    let Some((&top, rest)) = coeffs.split_last() else {
        return false;
    };
    coeffs.iter().all(|&a| a >= 0) && top > rest.iter().sum::<i64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PfShape {
    /// `x^d - B x^{d-1} + Σ α_i x^{d-i}`, `α_i ≥ 0`, `α_d > 0`, `B > 1 + Σ α_i`:
    /// (PF) holds and (F) fails.
    PfWithoutFProven,
    /// Not of that form, so (PF) without (F) is impossible.
    NotSpecialForm,
}

/// The polynomials with (PF) but not (F) are exactly those of the form
/// `x^d - B x^{d-1} + Σ_{i≥2} α_i x^{d-i}` with `α_i ≥ 0`, `α_d > 0` and
/// `B > 1 + Σ α_i`; then necessarily `B = ⌊β⌋ + 1`.
pub fn pf_shape(coeffs: &[i64], floor_beta: i64) -> Result<PfShape, ClassifyError> {
    let d = coeffs.len();
    let big_b = coeffs[d - 1];
    // α_i = -a_{d-i}
    let alphas: Vec<i64> = coeffs[..d - 1].iter().map(|a| -a).collect();
    let special = alphas.iter().all(|&a| a >= 0)
        && alphas[0] > 0
        && big_b > 1 + alphas.iter().sum::<i64>();
    if !special {
        return Ok(PfShape::NotSpecialForm);
    }
    if big_b != floor_beta + 1 {
        return Err(ClassifyError::Contradiction(format!(
            "special form with B = {big_b} but ⌊β⌋ + 1 = {}",
            floor_beta + 1
        )));
    }
    Ok(PfShape::PfWithoutFProven)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BassinoCase {
    CaseI,
    CaseII,
    CaseIII { k: i64 },
    Finite,
}

impl BassinoCase {
    pub fn is_infinite(&self) -> bool {
        !matches!(self, BassinoCase::Finite)
    }
}

fn ensure_cubic_pisot(a: i64, b: i64, c: i64) -> Result<(), ClassifyError> {
    if c == 0 || !pisot::cubic_pisot_criterion(a, b, c) {
        return Err(ClassifyError::NotCubicPisot(a, b, c));
    }
    Ok(())
}

/// For a cubic Pisot `x^3 - a x^2 - b x - c`, which of the three families
/// with infinite `d_β(1)` it belongs to (or `Finite`).
pub fn bassino_case(a: i64, b: i64, c: i64) -> Result<BassinoCase, ClassifyError> {
    ensure_cubic_pisot(a, b, c)?;
    if 0 < b && b <= a && c < 0 {
        return Ok(BassinoCase::CaseI);
    }
    if -a < b && b <= 0 && b + c < 0 {
        return Ok(BassinoCase::CaseII);
    }
    if b <= -a {
        // e_k = 1 - a + (a - 2)/k, decreasing in k; find e_k ≤ b + c < e_{k-1}.
        let e = |k: i64| Ratio::new(k * (1 - a) + a - 2, k);
        let s = Ratio::from_integer(b + c);
        for k in 2..=a - 2 {
            if e(k) <= s && s < e(k - 1) {
                if b * (k - 1) + c * (k - 2) > (k - 2) - (k - 1) * a {
                    return Ok(BassinoCase::CaseIII { k });
                }
                break;
            }
        }
    }
    Ok(BassinoCase::Finite)
}

/// `⌊β⌋` read off the case: `a`, `a - 1`, `a - 2` for I, II, III.
pub fn floor_beta_cubic(a: i64, b: i64, c: i64) -> Result<i64, ClassifyError> {
    match bassino_case(a, b, c)? {
        BassinoCase::CaseI => Ok(a),
        BassinoCase::CaseII => Ok(a - 1),
        BassinoCase::CaseIII { .. } => Ok(a - 2),
        BassinoCase::Finite => Err(ClassifyError::NotApplicable),
    }
}

/// Smallest natural number with an infinite expansion, trying `⌊β⌋ + 1`
/// first, then `1..=n_max`.
pub fn find_infinite_natural(sys: &BetaSystem, n_max: u64) -> Result<Option<u64>, ClassifyError> {
    let candidate = sys.floor_beta() + 1;
    if !sys.is_finite_expansion(&sys.int(candidate))? {
        return Ok(Some(candidate as u64));
    }
    for n in 1..=n_max {
        if !sys.is_finite_expansion(&sys.int(n as i64))? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct CpCaseReport {
    /// False when (F1) is refuted, so the equivalence says nothing.
    pub applicable: bool,
    pub d_beta_one_infinite: bool,
    pub pf_without_f: bool,
    pub holds: bool,
    pub note: String,
}

/// For a cubic Pisot number with (F1): (PF) without (F) iff `d_β(1)` is infinite.
///
/// (F1) may come from the certificate or from any other rule of [`classify`];
/// `d_β(1)` and the (PF)-without-(F) shape are computed independently.
pub fn cpcase_check(a: i64, b: i64, c: i64, budgets: Budgets) -> Result<CpCaseReport, ClassifyError> {
    ensure_cubic_pisot(a, b, c)?;
    let field = BetaField::cubic(a, b, c)?;
    let sys = BetaSystem::with_budgets(field.clone(), budgets)?;
    let d_inf = !sys.d_beta_one()?.is_finite();
    let pf_without_f = pf_shape(&[c, b, a], sys.floor_beta())? == PfShape::PfWithoutFProven;
    let report = classify(field, budgets)?;
    match report.f1 {
        Verdict::Refuted => {
            let why = report
                .evidence
                .iter()
                .find(|e| e.claim == "F1 refuted")
                .map(|e| e.rule.clone())
                .unwrap_or_default();
            return Ok(CpCaseReport {
                applicable: false,
                d_beta_one_infinite: d_inf,
                pf_without_f,
                holds: true,
                note: format!("(F1) fails ({why})"),
            });
        }
        Verdict::Unknown => return Err(ClassifyError::F1Unknown),
        Verdict::Proven => {}
    }
    if pf_without_f != d_inf {
        return Err(ClassifyError::Contradiction(format!(
            "(PF) without (F) is {pf_without_f} but d_β(1) infinite is {d_inf}"
        )));
    }
    let rule = report
        .evidence
        .iter()
        .find(|e| e.claim == "F1 proven")
        .map(|e| e.rule.clone())
        .unwrap_or_default();
    Ok(CpCaseReport {
        applicable: true,
        d_beta_one_infinite: d_inf,
        pf_without_f,
        holds: true,
        note: format!("(F1) proven ({rule})"),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicUnitReport {
    pub f: bool,
    /// (PF) and (F1) coincide for cubic Pisot units.
    pub pf: bool,
    pub f1: bool,
    pub certificate: CertVerdict,
    pub refuting_n: Option<u64>,
    pub d_beta_one_finite: bool,
    pub consistent: bool,
}

/// Closed-form verdicts for a cubic Pisot unit, cross-checked against direct
/// computation: (F) iff `c = 1` and `b + c ≥ 0`; (PF) iff (F1) iff
/// `(b + c)c ≥ 0` and `(b, c) ≠ (1, -1)`.
pub fn cubic_unit_classify(a: i64, b: i64, c: i64, budgets: Budgets) -> Result<CubicUnitReport, ClassifyError> {
    if c.abs() != 1 {
        return Err(ClassifyError::NotUnit(c));
    }
    ensure_cubic_pisot(a, b, c)?;
    let f = c == 1 && b + c >= 0;
    let pf = (b + c) * c >= 0 && (b, c) != (1, -1);
    let sys = BetaSystem::with_budgets(BetaField::cubic(a, b, c)?, budgets)?;
    let d_finite = sys.d_beta_one()?.is_finite();
    let certificate = Srs::new(&sys).f1_certificate().verdict;
    let refuting_n = if pf {
        None
    } else {
        find_infinite_natural(&sys, budgets.n_sweep_max)?
    };
    let shape = pf_shape(&[c, b, a], sys.floor_beta())?;
    let mut consistent = true;
    // (F) for a Pisot number forces a finite d_β(1)
    consistent &= !f || d_finite;
    consistent &= certificate != CertVerdict::Proven || pf;
    consistent &= pf || refuting_n.is_some();
    consistent &= (shape == PfShape::PfWithoutFProven) == (pf && !f);
    if !consistent {
        return Err(ClassifyError::Contradiction(format!(
            "cubic unit ({a}, {b}, {c}) disagrees with direct computation"
        )));
    }
    Ok(CubicUnitReport {
        f,
        pf,
        f1: pf,
        certificate,
        refuting_n,
        d_beta_one_finite: d_finite,
        consistent,
    })
}

/// One term of an inequality chain `x_0 < x_1 < ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainTerm {
    Int(i64),
    Lambda(SrsVector),
}

/// Exact check of a strict chain of integers and `λ` values.
pub fn chain_holds(srs: &Srs, chain: &[ChainTerm]) -> bool {
    let field = srs.field();
    let value = |t: &ChainTerm| match t {
        ChainTerm::Int(n) => crate::FieldElement::from_int(field, *n),
        ChainTerm::Lambda(l) => srs.lambda(l),
    };
    chain
        .windows(2)
        .all(|w| (&value(&w[1]) - &value(&w[0])).sign() > 0)
}

fn lam(a: i64, b: i64) -> ChainTerm {
    ChainTerm::Lambda(SrsVector(vec![a, b]))
}

/// The five `λ` chains locating `Q_β` for `x^3 - 2t x^2 + 2t x - t`.
pub fn family_lambda_chains() -> Vec<Vec<ChainTerm>> {
    use ChainTerm::Int;
    vec![
        vec![Int(0), lam(2, 1), lam(1, 0), lam(3, 1), Int(1)],
        vec![Int(0), lam(-3, -2), lam(-1, -1), lam(-2, -2), Int(1)],
        vec![Int(1), lam(0, -1), lam(2, 0), lam(1, -1), Int(2)],
        vec![Int(1), lam(-3, -3), lam(-1, -2), Int(2)],
        vec![Int(2), lam(-2, -3), lam(0, -2), Int(3)],
    ]
}

/// `λ` chain placing `-l_I` on a cycle through `l_I` in each infinite case.
pub fn cpcase_lambda_chain(case: BassinoCase, c: i64) -> Option<Vec<ChainTerm>> {
    use ChainTerm::Int;
    match case {
        BassinoCase::CaseI => Some(vec![Int(0), lam(0, 1), lam(-1, 1), Int(1)]),
        BassinoCase::CaseII if c > 0 => Some(vec![Int(-1), lam(0, 1), Int(0), lam(1, 0), Int(1)]),
        BassinoCase::CaseIII { .. } => Some(vec![Int(-2), lam(0, 1), Int(-1), lam(1, 1), Int(0)]),
        _ => None,
    }
}

/// Orbits of `1` for non-Pisot β need not close; coordinates grow quickly.
const NON_PISOT_ORBIT_CAP: usize = 500;

const CITE_FS: &str = "a_{d-1} ≥ ... ≥ a_1 ≥ a_0 ≥ 1 implies (F)";
const CITE_HOLLANDER: &str = "a_{d-1} > a_{d-2} + ... + a_0, a_j ≥ 0 implies (F)";
const CITE_PISOT: &str = "(F1) implies β Pisot";
const CITE_CHARA: &str = "for Pisot β with (PF): (F) iff d_β(1) finite";
const CITE_QF: &str = "l ∈ Q_β ∖ F_β gives {λ}(l) ∈ Z[β] ∩ [0,1) ⊂ Z[1/β] with infinite expansion";
const CITE_DEG2: &str = "quadratic Pisot numbers have (PF)";
const CITE_PF: &str = "(PF) without (F) iff x^d - B x^{d-1} + Σ α_i x^{d-i}, α_i ≥ 0, α_d > 0, B > 1 + Σ α_i";
const CITE_UNIT_F: &str = "cubic Pisot unit: (F) iff c = 1 and b + c ≥ 0";
const CITE_UNIT_PF: &str = "cubic Pisot unit: (PF) iff (F1) iff (b+c)c ≥ 0 and (b,c) ≠ (1,-1)";
const CITE_CERT: &str = "τ^{-1}(P_β) ⊂ P_β and [-δ,δ]^{d-1} ∩ V_β ⊂ F_β imply (F1)";
const CITE_SWEEP: &str = "a natural number with infinite expansion refutes (F1)";
const CITE_CPCASE: &str = "cubic Pisot with (F1): (PF) without (F) iff d_β(1) infinite";

/// Full classification of the root of `p` with the given budgets.
pub fn classify(field: Arc<BetaField>, budgets: Budgets) -> Result<PropertyReport, ClassifyError> {
    let coeffs: Vec<i64> = (0..field.degree()).map(|i| field.coeff_i64(i)).collect();
    let d = coeffs.len();
    let mut rep = PropertyReport {
        poly: field.poly().to_symbolic(),
        pisot: Verdict::Unknown,
        f: Verdict::Unknown,
        pf: Verdict::Unknown,
        f1: Verdict::Unknown,
        d_beta_1: None,
        evidence: Vec::new(),
        irreducibility: field.irreducibility(),
    };
    if field.irreducibility() == Irreducibility::RationalRootsOnly {
        rep.evidence.push(Evidence {
            claim: "irreducibility not fully verified".into(),
            rule: "rational_root_test".into(),
            cite: "degree ≥ 5: only rational roots excluded".into(),
            data: None,
        });
    }
    let sys = BetaSystem::with_budgets(field.clone(), budgets)?;

    let test = pisot::pisot_test(&field);
    if test != PisotTest::Pisot {
        rep.set(Property::Pisot, Verdict::Refuted, "schur_cohn", "all conjugates but β inside the unit disk", Some(format!("{test:?}")))?;
        rep.set(Property::F1, Verdict::Refuted, "non_pisot", CITE_PISOT, None)?;
        rep.propagate()?;
        let capped = Budgets { orbit_cap: budgets.orbit_cap.min(NON_PISOT_ORBIT_CAP), ..budgets };
        rep.d_beta_1 = BetaSystem::with_budgets(field, capped)?
            .d_beta_one()
            .ok()
            .map(|w| w.to_string());
        return Ok(rep);
    }
    rep.set(Property::Pisot, Verdict::Proven, "schur_cohn", "all conjugates but β inside the unit disk", None)?;

    let d_one = sys.d_beta_one()?;
    let d_finite = d_one.is_finite();
    rep.d_beta_1 = Some(d_one.to_string());

    // (F)
    if fs_type(&coeffs) {
        rep.set(Property::F, Verdict::Proven, "fs_type", CITE_FS, None)?;
    }
    if hollander_type(&coeffs) {
        rep.set(Property::F, Verdict::Proven, "hollander_type", CITE_HOLLANDER, None)?;
    }
    let unit = d == 3 && coeffs[0].abs() == 1;
    if unit {
        let (a, b, c) = (coeffs[2], coeffs[1], coeffs[0]);
        let f = c == 1 && b + c >= 0;
        rep.set(Property::F, if f { Verdict::Proven } else { Verdict::Refuted }, "cubic_unit", CITE_UNIT_F, None)?;
        let pf = (b + c) * c >= 0 && (b, c) != (1, -1);
        let v = if pf { Verdict::Proven } else { Verdict::Refuted };
        rep.set(Property::PF, v, "cubic_unit", CITE_UNIT_PF, Some(format!("a = {a}")))?;
        rep.set(Property::F1, v, "cubic_unit", CITE_UNIT_PF, None)?;
    }
    if !d_finite {
        rep.set(Property::F, Verdict::Refuted, "d_beta_one_infinite", CITE_CHARA, Some(d_one.to_string()))?;
    }
    let srs = Srs::new(&sys);
    let graph = srs.q_set()?;
    if let Some(l) = graph.outside_f().into_iter().next() {
        rep.set(Property::F, Verdict::Refuted, "q_outside_f", CITE_QF, Some(format!("({l})")))?;
    }

    // (PF)
    if d == 2 {
        rep.set(Property::PF, Verdict::Proven, "quadratic_pisot", CITE_DEG2, None)?;
    }
    let shape = pf_shape(&coeffs, sys.floor_beta())?;
    if shape == PfShape::PfWithoutFProven {
        rep.set(Property::PF, Verdict::Proven, "pf_shape", CITE_PF, None)?;
        rep.set(Property::F, Verdict::Refuted, "pf_shape", CITE_PF, None)?;
    }

    // (F1)
    let cert: F1Certificate = srs.f1_certificate();
    if cert.verdict == CertVerdict::Proven {
        let data = format!("P_β = {:?}, δ = {}", cert.p_set.iter().map(|l| l.to_string()).collect::<Vec<_>>(), cert.delta);
        rep.set(Property::F1, Verdict::Proven, "f1_certificate", CITE_CERT, Some(data))?;
    }

    loop {
        let mut changed = rep.propagate()?;
        if shape == PfShape::NotSpecialForm {
            if rep.f == Verdict::Refuted {
                changed |= rep.set(Property::PF, Verdict::Refuted, "pf_shape", CITE_PF, None)?;
            }
            if rep.pf == Verdict::Proven {
                changed |= rep.set(Property::F, Verdict::Proven, "pf_shape", CITE_PF, None)?;
            }
        }
        if rep.pf == Verdict::Proven && d_finite {
            changed |= rep.set(Property::F, Verdict::Proven, "chara_pf", CITE_CHARA, None)?;
        }
        if d == 3 && rep.f1 == Verdict::Proven && !d_finite {
            changed |= rep.set(Property::PF, Verdict::Proven, "cpcase", CITE_CPCASE, None)?;
        }
        if !changed {
            break;
        }
    }

    if rep.f1 == Verdict::Unknown {
        if let Some(n) = find_infinite_natural(&sys, budgets.n_sweep_max)? {
            rep.set(Property::F1, Verdict::Refuted, "n_sweep", CITE_SWEEP, Some(format!("N = {n}")))?;
            rep.propagate()?;
        }
    }
    debug_assert!(rep.is_lattice_consistent());
    Ok(rep)
}

pub fn classify_coeffs(coeffs: &[i64], budgets: Budgets) -> Result<PropertyReport, ClassifyError> {
    classify(BetaField::from_coeffs(coeffs)?, budgets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: &str) -> PropertyReport {
        classify(BetaField::parse(spec).unwrap(), Budgets::default()).unwrap()
    }

    #[test]
    fn coefficient_tests() {
        assert!(fs_type(&[1, 1, 1]));
        assert!(!fs_type(&[2, -4, 4]));
        assert!(fs_type(&[1, 2, 2]));
        assert!(hollander_type(&[1, 2, 5]));
        assert!(!hollander_type(&[1, 1, 1]));
        assert!(!hollander_type(&[2, -4, 4]));
    }

    #[test]
    fn pf_shape_examples() {
        assert_eq!(pf_shape(&[2, -4, 4], 2).unwrap(), PfShape::NotSpecialForm);
        assert_eq!(pf_shape(&[1, 1, 1], 1).unwrap(), PfShape::NotSpecialForm);
        // x^3 - 4x^2 + 2: B = 4 > 1 + 2
        assert_eq!(pf_shape(&[-2, 0, 4], 3).unwrap(), PfShape::PfWithoutFProven);
    }

    #[test]
    fn bassino_witnesses() {
        assert_eq!(bassino_case(2, 1, -1).unwrap(), BassinoCase::CaseI);
        assert_eq!(bassino_case(3, -2, 1).unwrap(), BassinoCase::CaseII);
        assert!(matches!(bassino_case(5, -5, 2).unwrap(), BassinoCase::CaseIII { .. }));
        assert_eq!(bassino_case(4, -4, 2).unwrap(), BassinoCase::Finite);
        assert!(bassino_case(3, -1, -1).is_err());
        assert_eq!(floor_beta_cubic(2, 1, -1).unwrap(), 2);
        assert_eq!(floor_beta_cubic(3, -2, 1).unwrap(), 2);
        assert_eq!(floor_beta_cubic(5, -5, 2).unwrap(), 3);
        assert!(floor_beta_cubic(4, -4, 2).is_err());
    }

    #[test]
    fn family_report() {
        let r = run("x^3-4x^2+4x-2");
        assert_eq!(
            (r.pisot, r.f, r.pf, r.f1),
            (Verdict::Proven, Verdict::Refuted, Verdict::Refuted, Verdict::Proven)
        );
        assert_eq!(r.d_beta_1.as_deref(), Some("2 2 1 0 0 2"));
        assert!(r.is_lattice_consistent());
    }

    #[test]
    fn tribonacci_and_quadratic_reports() {
        let r = run("x^3-x^2-x-1");
        assert_eq!((r.f, r.pf, r.f1), (Verdict::Proven, Verdict::Proven, Verdict::Proven));
        let r = run("x^2-3x+1");
        assert_eq!(r.pf, Verdict::Proven);
        assert_eq!(r.f, Verdict::Refuted);
        assert_eq!(r.f1, Verdict::Proven);
    }

    #[test]
    fn cubic_unit_refuted_and_non_pisot() {
        let r = run("x^3-3x^2-x+1");
        assert_eq!(r.f1, Verdict::Refuted);
        assert_eq!(r.f, Verdict::Refuted);
        let r = run("x^3-x^2-4x+2");
        assert_eq!((r.pisot, r.f1), (Verdict::Refuted, Verdict::Refuted));
    }

    #[test]
    fn cpcase_examples() {
        let r = cpcase_check(3, 1, -1, Budgets::default()).unwrap();
        assert!(!r.applicable);
        let r = cpcase_check(1, 1, 1, Budgets::default()).unwrap();
        assert!(r.applicable && !r.d_beta_one_infinite && !r.pf_without_f);
        // x^3 - 4x^2 + 2
        let r = cpcase_check(4, 0, -2, Budgets::default()).unwrap();
        assert!(r.applicable && r.d_beta_one_infinite && r.pf_without_f);
    }

    #[test]
    fn unit_examples() {
        let r = cubic_unit_classify(1, 1, 1, Budgets::default()).unwrap();
        assert!(r.f && r.pf);
        let r = cubic_unit_classify(0, 1, 1, Budgets::default()).unwrap();
        assert!(r.f);
        let r = cubic_unit_classify(3, 1, -1, Budgets::default()).unwrap();
        assert!(!r.f1 && r.refuting_n.is_some());
        assert!(cubic_unit_classify(4, -4, 2, Budgets::default()).is_err());
    }

    #[test]
    fn report_json_keys() {
        let v = run("x^3-x-1").to_json();
        for k in ["poly", "pisot", "F", "PF", "F1", "d_beta_1", "evidence"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        let ev = &v["evidence"][0];
        assert!(ev.get("claim").is_some() && ev.get("rule").is_some() && ev.get("cite").is_some());
    }
}
