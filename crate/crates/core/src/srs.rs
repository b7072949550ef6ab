//! Shift radix system `τ(l) = (l_2, ..., l_{d-1}, -⌊r·l⌋)` attached to `β`.
//!
//! `{λ}(l) = {r·l}` conjugates `τ` on `Z^{d-1}` to `T` on `Z[β] ∩ [0, 1)`.
//! The finite set `Q_β` (closure of `l_I = (0, ..., 0, 1)` under `τ` and
//! `τ*(l) = -τ(-l)`), its periodic part `P_β`, and the nonpositive cone
//! `V_β` spanned by the `τ`-orbit of `l_I` feed a sufficient test for every
//! natural number having a finite expansion.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::element::FieldElement;
use crate::expansion::{BetaSystem, Budgets, ExpansionError};
use crate::field::BetaField;
use crate::pisot;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrsError {
    #[error("closure exceeded {cap} vectors (is beta Pisot?)")]
    ClosureBudgetExceeded { cap: usize },
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("beta is below the golden ratio")]
    GoldenRatioPrecondition,
    #[error("cannot parse vector `{0}`")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

/// Integer vector in `Z^{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SrsVector(pub Vec<i64>);

impl SrsVector {
    pub fn zero(dim: usize) -> Self {
        SrsVector(vec![0; dim])
    }

    /// `l_I = (0, ..., 0, 1)`.
    pub fn unit_last(dim: usize) -> Self {
        let mut v = vec![0; dim];
        v[dim - 1] = 1;
        SrsVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &SrsVector) -> SrsVector {
        SrsVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &SrsVector) -> SrsVector {
        SrsVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> SrsVector {
        SrsVector(self.0.iter().map(|a| -a).collect())
    }

    /// `max_j |l_j|`.
    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for SrsVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SrsVector {
    type Err = SrsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        t.split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(SrsVector)
            .map_err(|_| SrsError::Parse(s.to_string()))
    }
}

/// `τ` restricted to `Q_β`: every node has exactly one successor in the set.
#[derive(Debug, Clone)]
pub struct OrbitGraph {
    nodes: Vec<SrsVector>,
    index: BTreeMap<SrsVector, usize>,
    succ: Vec<usize>,
    in_f: Vec<bool>,
    in_p: Vec<bool>,
}

impl OrbitGraph {
    /// Nodes in lexicographic order.
    pub fn nodes(&self) -> &[SrsVector] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, l: &SrsVector) -> bool {
        self.index.contains_key(l)
    }

    pub fn node_set(&self) -> BTreeSet<SrsVector> {
        self.nodes.iter().cloned().collect()
    }

    /// `(l, τ(l))` for every node, self-loops included.
    pub fn edges(&self) -> Vec<(SrsVector, SrsVector)> {
        self.nodes
            .iter()
            .zip(&self.succ)
            .map(|(l, &s)| (l.clone(), self.nodes[s].clone()))
            .collect()
    }

    pub fn successor(&self, l: &SrsVector) -> Option<&SrsVector> {
        self.index.get(l).map(|&i| &self.nodes[self.succ[i]])
    }

    pub fn in_f(&self, l: &SrsVector) -> Option<bool> {
        self.index.get(l).map(|&i| self.in_f[i])
    }

    /// `P_β`: nonzero nodes on `τ`-cycles.
    pub fn p_set(&self) -> BTreeSet<SrsVector> {
        self.nodes
            .iter()
            .zip(&self.in_p)
            .filter(|(_, &p)| p)
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// `Q_β ∖ F_β`.
    pub fn outside_f(&self) -> BTreeSet<SrsVector> {
        self.nodes
            .iter()
            .zip(&self.in_f)
            .filter(|(_, &f)| !f)
            .map(|(l, _)| l.clone())
            .collect()
    }

    fn from_closure(nodes: BTreeSet<SrsVector>, tau: impl Fn(&SrsVector) -> SrsVector) -> Self {
        let nodes: Vec<SrsVector> = nodes.into_iter().collect();
        let index: BTreeMap<SrsVector, usize> =
            nodes.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let succ: Vec<usize> = nodes
            .iter()
            .map(|l| index[&tau(l)])
            .collect();
        let n = nodes.len();
        // Functional graph: walk each path once, marking cycles.
        let mut state = vec![0u8; n]; // 0 new, 1 on stack, 2 done
        let mut on_cycle = vec![false; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = succ[v];
            }
            if state[v] == 1 {
                let pos = path.iter().position(|&u| u == v).expect("on path");
                for &u in &path[pos..] {
                    on_cycle[u] = true;
                }
            }
            for &u in &path {
                state[u] = 2;
            }
        }
        let zero = nodes.iter().position(SrsVector::is_zero);
        let mut in_f = vec![false; n];
        if let Some(z) = zero {
            let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (u, &s) in succ.iter().enumerate() {
                pred[s].push(u);
            }
            let mut queue = VecDeque::from([z]);
            in_f[z] = true;
            while let Some(v) = queue.pop_front() {
                for &u in &pred[v] {
                    if !in_f[u] {
                        in_f[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        let in_p = (0..n).map(|i| on_cycle[i] && !nodes[i].is_zero()).collect();
        OrbitGraph {
            nodes,
            index,
            succ,
            in_f,
            in_p,
        }
    }
}

/// Outcome of the sufficient test for every natural number having a finite
/// expansion. Never "refuted": failing the test proves nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertVerdict {
    Proven,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct F1Certificate {
    pub verdict: CertVerdict,
    pub p_set: BTreeSet<SrsVector>,
    pub delta: i64,
    /// `[-δ, δ]^{d-1} ∩ V_β` as enumerated.
    pub r0: BTreeSet<SrsVector>,
    pub r0_complete: bool,
    /// `τ^{-1}(P_β) ⊂ P_β`.
    pub preimage_closure_ok: bool,
    /// `r0 ⊂ F_β`.
    pub r0_in_f: bool,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

/// The SRS of a fixed `β`.
#[derive(Debug, Clone)]
pub struct Srs {
    field: Arc<BetaField>,
    r: Vec<FieldElement>,
    budgets: Budgets,
}

impl Srs {
    pub fn new(sys: &BetaSystem) -> Self {
        Self::from_field(sys.field().clone(), *sys.budgets())
    }

    pub fn from_field(field: Arc<BetaField>, budgets: Budgets) -> Self {
        let d = field.degree();
        let inv = FieldElement::beta_inv(&field);
        let inv_pows: Vec<FieldElement> = (0..d).map(|k| inv.pow(k as u64)).collect();
        // r_j = Σ_{i=1}^{j} a_{j-i} β^{-i}
        let r = (1..d)
            .map(|j| {
                (1..=j).fold(FieldElement::zero(&field), |acc, i| {
                    &acc + &inv_pows[i].scale_int(field.coeff_i64(j - i))
                })
            })
            .collect();
        Srs { field, r, budgets }
    }

    pub fn field(&self) -> &Arc<BetaField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.field.degree() - 1
    }

    /// `(r_1, ..., r_{d-1})`.
    pub fn r_vector(&self) -> &[FieldElement] {
        &self.r
    }

    pub fn l_i(&self) -> SrsVector {
        SrsVector::unit_last(self.dim())
    }

    pub fn check_dim(&self, l: &SrsVector) -> Result<(), SrsError> {
        if l.dim() != self.dim() {
            return Err(SrsError::DimensionMismatch {
                got: l.dim(),
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// `λ(l) = r·l`.
    pub fn lambda(&self, l: &SrsVector) -> FieldElement {
        l.0.iter()
            .zip(&self.r)
            .fold(FieldElement::zero(&self.field), |acc, (&x, r)| {
                &acc + &r.scale_int(x)
            })
    }

    /// `{λ}(l)`.
    pub fn frac_lambda(&self, l: &SrsVector) -> FieldElement {
        self.lambda(l).fract()
    }

    /// `τ(l)`. Panics only if `⌊λ(l)⌋` leaves `i64`.
    pub fn tau(&self, l: &SrsVector) -> SrsVector {
        let mut v = l.0[1..].to_vec();
        v.push(-self.lambda(l).floor_i64().expect("⌊λ(l)⌋ fits in i64"));
        SrsVector(v)
    }

    /// `τ*(l) = -τ(-l)`.
    pub fn tau_star(&self, l: &SrsVector) -> SrsVector {
        self.tau(&l.neg()).neg()
    }

    /// `Q_β` with its `τ`-graph.
    pub fn q_set(&self) -> Result<OrbitGraph, SrsError> {
        let start = self.l_i();
        let mut seen: BTreeSet<SrsVector> = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(l) = queue.pop_front() {
            for m in [self.tau(&l), self.tau_star(&l)] {
                if seen.insert(m.clone()) {
                    if seen.len() > self.budgets.closure_cap {
                        return Err(SrsError::ClosureBudgetExceeded {
                            cap: self.budgets.closure_cap,
                        });
                    }
                    queue.push_back(m);
                }
            }
        }
        Ok(OrbitGraph::from_closure(seen, |l| self.tau(l)))
    }

    /// `l ∈ F_β`: some `τ^k(l) = 0`.
    pub fn in_f_beta(&self, l: &SrsVector) -> Result<bool, SrsError> {
        self.check_dim(l)?;
        let mut seen = HashSet::new();
        let mut cur = l.clone();
        loop {
            if cur.is_zero() {
                return Ok(true);
            }
            if !seen.insert(cur.clone()) {
                return Ok(false);
            }
            if seen.len() > self.budgets.orbit_cap {
                return Err(SrsError::ClosureBudgetExceeded {
                    cap: self.budgets.orbit_cap,
                });
            }
            cur = self.tau(&cur);
        }
    }

    /// `τ^{n}(l)` for `n = 0, 1, ...` until the first repeat (inclusive of
    /// the repeated vector's first occurrence only).
    pub fn orbit(&self, l: &SrsVector) -> Result<Vec<SrsVector>, SrsError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut cur = l.clone();
        while seen.insert(cur.clone()) {
            if seen.len() > self.budgets.orbit_cap {
                return Err(SrsError::ClosureBudgetExceeded {
                    cap: self.budgets.orbit_cap,
                });
            }
            out.push(cur.clone());
            cur = self.tau(&cur);
        }
        Ok(out)
    }

    /// All `l ∈ Z^{d-1}` with `τ(l) = m`. Such `l = (x, m_1, ..., m_{d-2})`
    /// with `⌊r_1 x + C⌋ = -m_{d-1}`; `r_1 = a_0 β^{-1} ≠ 0`, so `x` runs
    /// over an integer interval.
    pub fn tau_preimages(&self, m: &SrsVector) -> Result<BTreeSet<SrsVector>, SrsError> {
        self.check_dim(m)?;
        let dim = self.dim();
        let target = -m.0[dim - 1];
        let mut rest = vec![0];
        rest.extend_from_slice(&m.0[..dim - 1]);
        let c = self.lambda(&SrsVector(rest.clone()));
        let r1 = &self.r[0];
        let r1_inv = r1.inv().map_err(ExpansionError::from)?;
        // target ≤ r_1 x + C < target + 1
        let lo = &(-&c).add_int(target) * &r1_inv;
        let hi = &(-&c).add_int(target + 1) * &r1_inv;
        let (first, last) = if r1.sign() > 0 {
            (lo.ceil(), hi.ceil() - 1)
        } else {
            (hi.floor() + 1, lo.floor())
        };
        let mut out = BTreeSet::new();
        let mut x = first;
        while x <= last {
            let mut v = rest.clone();
            v[0] = i64::try_from(&x).map_err(|_| SrsError::InvariantViolation("preimage overflow".into()))?;
            let l = SrsVector(v);
            if &self.tau(&l) != m {
                return Err(SrsError::InvariantViolation(format!("τ({l}) ≠ {m}")));
            }
            out.insert(l);
            x += 1;
        }
        Ok(out)
    }

    /// Nonzero vectors of the `τ`-orbit of `l_I`.
    pub fn orbit_of_l_i(&self) -> Result<Vec<SrsVector>, SrsError> {
        let mut out: Vec<SrsVector> = self
            .orbit(&self.l_i())?
            .into_iter()
            .filter(|v| !v.is_zero())
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `[-δ, δ]^{d-1} ∩ V_β`, and whether the enumeration is provably complete.
    pub fn v_box_set(&self, delta: i64) -> Result<(BTreeSet<SrsVector>, bool), SrsError> {
        let gens = self.orbit_of_l_i()?;
        let nonneg = gens.iter().all(|v| v.0.iter().all(|&x| x >= 0));
        let nonpos = gens.iter().all(|v| v.0.iter().all(|&x| x <= 0));
        let complete = nonneg || nonpos;
        let bound = if complete {
            delta
        } else {
            let norm = gens.iter().map(SrsVector::max_norm).max().unwrap_or(0);
            delta + norm * self.budgets.box_pad
        };
        let zero = SrsVector::zero(self.dim());
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(l) = queue.pop_front() {
            for g in &gens {
                let m = l.sub(g);
                if m.max_norm() <= bound && seen.insert(m.clone()) {
                    if seen.len() > self.budgets.closure_cap {
                        return Err(SrsError::ClosureBudgetExceeded {
                            cap: self.budgets.closure_cap,
                        });
                    }
                    queue.push_back(m);
                }
            }
        }
        let inside = seen.into_iter().filter(|l| l.max_norm() <= delta).collect();
        Ok((inside, complete))
    }

    /// Sufficient certificate: `β` Pisot, `τ^{-1}(P_β) ⊂ P_β` and
    /// `[-δ, δ]^{d-1} ∩ V_β ⊂ F_β`.
    pub fn f1_certificate(&self) -> F1Certificate {
        let mut cert = F1Certificate {
            verdict: CertVerdict::Unknown,
            p_set: BTreeSet::new(),
            delta: 0,
            r0: BTreeSet::new(),
            r0_complete: false,
            preimage_closure_ok: false,
            r0_in_f: false,
            diagnostic: None,
        };
        if !pisot::is_pisot(&self.field) {
            cert.diagnostic = Some("beta is not a Pisot number".into());
            return cert;
        }
        if let Err(e) = self.fill_certificate(&mut cert) {
            cert.diagnostic = Some(e.to_string());
            return cert;
        }
        if cert.preimage_closure_ok && cert.r0_in_f && cert.r0_complete {
            cert.verdict = CertVerdict::Proven;
        } else if cert.diagnostic.is_none() {
            let mut why = Vec::new();
            if !cert.preimage_closure_ok {
                why.push("τ^{-1}(P_β) ⊄ P_β");
            }
            if !cert.r0_in_f {
                why.push("R_0 ⊄ F_β");
            }
            if !cert.r0_complete {
                why.push("V_β box enumeration incomplete");
            }
            cert.diagnostic = Some(why.join("; "));
        }
        cert
    }

    fn fill_certificate(&self, cert: &mut F1Certificate) -> Result<(), SrsError> {
        let graph = self.q_set()?;
        cert.p_set = graph.p_set();
        cert.delta = delta(&cert.p_set);
        let mut closed = true;
        for p in &cert.p_set {
            if !self.tau_preimages(p)?.is_subset(&cert.p_set) {
                closed = false;
            }
        }
        cert.preimage_closure_ok = closed;
        let (r0, complete) = self.v_box_set(cert.delta)?;
        let mut all_in = true;
        for l in &r0 {
            if !self.in_f_beta(l)? {
                all_in = false;
            }
        }
        cert.r0 = r0;
        cert.r0_complete = complete;
        cert.r0_in_f = all_in;
        Ok(())
    }

    /// `⌊β⌋ + 1` has a finite expansion iff `-l_I ∈ F_β` (needs `β ≥ (1+√5)/2`);
    /// both sides are computed and compared.
    pub fn floor_beta_plus_one_finite(&self, sys: &BetaSystem) -> Result<bool, SrsError> {
        let beta = sys.beta();
        let golden = (&beta * &beta) - &beta;
        if golden.add_int(-1).sign() < 0 {
            return Err(SrsError::GoldenRatioPrecondition);
        }
        let via_srs = self.in_f_beta(&self.l_i().neg())?;
        let direct = sys.is_finite_expansion(&sys.int(sys.floor_beta() + 1))?;
        if via_srs != direct {
            return Err(SrsError::InvariantViolation(format!(
                "-l_I ∈ F_β is {via_srs} but ⌊β⌋+1 finite is {direct}"
            )));
        }
        Ok(via_srs)
    }
}

/// `δ = max |l_j|` over `P_β`, and `0` for empty `P_β`.
pub fn delta(p_set: &BTreeSet<SrsVector>) -> i64 {
    p_set.iter().map(SrsVector::max_norm).max().unwrap_or(0)
}

#[derive(Serialize)]
struct GraphJson<'a> {
    nodes: &'a [SrsVector],
    edges: Vec<(SrsVector, SrsVector)>,
    p_set: BTreeSet<SrsVector>,
    f_flags: &'a [bool],
}

/// Deterministic DOT or JSON rendering of the `τ`-graph on `Q_β`.
pub fn export_graph(g: &OrbitGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => serde_json::to_string(&GraphJson {
            nodes: &g.nodes,
            edges: g.edges(),
            p_set: g.p_set(),
            f_flags: &g.in_f,
        })
        .expect("graph serializes"),
        GraphFormat::Dot => {
            let mut out = String::from("digraph srs {\n");
            for (i, l) in g.nodes.iter().enumerate() {
                let mut attrs = Vec::new();
                if g.in_p[i] {
                    attrs.push("shape=doublecircle");
                }
                if g.in_f[i] {
                    attrs.push("style=filled");
                }
                if attrs.is_empty() {
                    out.push_str(&format!("  \"{l}\";\n"));
                } else {
                    out.push_str(&format!("  \"{l}\" [{}];\n", attrs.join(", ")));
                }
            }
            for (l, m) in g.edges() {
                out.push_str(&format!("  \"{l}\" -> \"{m}\";\n"));
            }
            out.push_str("}\n");
            out
        }
    }
}
