//! Free block decompositions and the carry normalization of `x ↦ x + 1`.
//!
//! For an admissible word `c` the free block decomposition `0 = k_0 < k_1 < ...`
//! splits `c` into maximal prefixes of `d_β*(1)`, each closed by a strictly
//! smaller digit. Incrementing a digit inside a block and applying the carry
//! formula `c ≐ c[1,ℓ-1](c_ℓ+1)(c[ℓ+1,∞] ⊖ d_β*(1))` moves the increment to the
//! start of the block; repeating this block by block yields the expansion of
//! `x + 1` together with the identity `{x+1}_β - {x}_β = θ - Σ ω_j T^j(1)`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::element::FieldElement;
use crate::expansion::{BetaSystem, Expansion, ExpansionError};
use crate::word::{DigitWord, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("word `{0}` is not admissible")]
    NotAdmissible(String),
    #[error("block index {i} does not satisfy k_i < ℓ = {ell} with k_i ≥ 1")]
    BadBlockIndex { i: usize, ell: usize },
    #[error("carry cascade ran past the first block")]
    CascadeOverrun,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

/// Block boundaries `k_1 < k_2 < ...`: the explicit `head`, then the gaps in
/// `gaps` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeBlockDecomposition {
    head: Vec<usize>,
    gaps: Vec<usize>,
}

impl FreeBlockDecomposition {
    /// `k_i`, with `k_0 = 0`.
    pub fn k(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        if i <= self.head.len() {
            return self.head[i - 1];
        }
        let base = self.head.last().copied().unwrap_or(0);
        let extra = i - self.head.len();
        let full: usize = self.gaps.iter().sum();
        let (q, r) = (extra / self.gaps.len(), extra % self.gaps.len());
        base + q * full + self.gaps[..r].iter().sum::<usize>()
    }

    pub fn head(&self) -> &[usize] {
        &self.head
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// The `i` with `k_i < ℓ ≤ k_{i+1}`.
    pub fn block_of(&self, ell: usize) -> usize {
        let mut i = 0;
        while self.k(i + 1) < ell {
            i += 1;
        }
        i
    }

    /// `k_1, ..., k_n`.
    pub fn first(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|i| self.k(i)).collect()
    }
}

/// Free block decomposition of an admissible word.
pub fn free_blocks(
    sys: &BetaSystem,
    c: &SignedWord,
) -> Result<FreeBlockDecomposition, NormalizeError> {
    if !sys.is_admissible(c)? {
        return Err(NormalizeError::NotAdmissible(c.to_string()));
    }
    let star = sys.d_beta_star()?;
    let star = star.as_signed();
    let pre = c.preperiod().len();
    let cycle = c.cycle_len();
    let mut ks = vec![0usize];
    let mut phases: HashMap<usize, usize> = HashMap::new();
    loop {
        let k = *ks.last().expect("k_0");
        if k >= pre {
            let phase = (k - pre) % cycle;
            if let Some(&s) = phases.get(&phase) {
                let head = ks[1..=s].to_vec();
                let gaps = ks[s..].windows(2).map(|w| w[1] - w[0]).collect();
                return Ok(FreeBlockDecomposition { head, gaps });
            }
            phases.insert(phase, ks.len() - 1);
        }
        let limit = c.shift(k).joint_window(star) + 1;
        let mut j = 1;
        loop {
            let (cj, dj) = (c.at(k + j - 1), star.at(j - 1));
            if cj < dj {
                break;
            }
            if cj > dj || j > limit {
                return Err(NormalizeError::NotAdmissible(c.to_string()));
            }
            j += 1;
        }
        ks.push(k + j);
    }
}

/// `c[1,m] (c_{m+1} + 1)` followed by `zeros` zeros and then `tail`
/// (positions are 1-based as in the carry formula).
fn bump(c: &SignedWord, m: usize, zeros: usize, tail: &SignedWord) -> SignedWord {
    let mut head = c.prefix(m + 1);
    head[m] += 1;
    head.extend(std::iter::repeat(0).take(zeros));
    tail.prepend(&head)
}

/// Output of one application of the carry lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryStep {
    pub theta: u8,
    /// `c̃`, the word before the carry.
    pub tilde: SignedWord,
    /// `c̃^carry = c[1,k_i-1](c_{k_i}+1) 0^{ℓ-k_i-1} θ (c' ⊖ d_β*(1)[ℓ-k_i+1,∞])`.
    pub carry: SignedWord,
    /// Whether `c̃` was already admissible (the carry is then not needed).
    pub tilde_admissible: bool,
}

/// Carry lemma: move an increment at position `ell` (in block `i`, so
/// `k_i < ℓ`) to position `k_i`. `tail` is the word `c'` following position `ℓ`.
pub fn carry_step(
    sys: &BetaSystem,
    c: &SignedWord,
    blocks: &FreeBlockDecomposition,
    i: usize,
    ell: usize,
    tail: &SignedWord,
) -> Result<CarryStep, NormalizeError> {
    let ki = blocks.k(i);
    if i == 0 || ki >= ell {
        return Err(NormalizeError::BadBlockIndex { i, ell });
    }
    let next = blocks.k(i + 1);
    let (theta, tilde) = if ell < next {
        (1u8, bump(c, ell - 1, 0, tail))
    } else {
        (0u8, bump(c, next - 1, ell - next, tail))
    };
    let star = sys.d_beta_star()?;
    let shifted_star = star.as_signed().shift(ell - ki);
    let carry = bump(
        c,
        ki - 1,
        ell - ki - 1,
        &tail.sub(&shifted_star).prepend(&[theta as i64]),
    );
    let tilde_admissible = sys.is_admissible(&tilde)?;
    if !tilde_admissible {
        if sys.nu(&tilde) != sys.nu(&carry) {
            return Err(NormalizeError::InvariantViolation(format!(
                "carry changed the value of {tilde}"
            )));
        }
        let slack = sys
            .nu(tail)
            .add_int(theta as i64)
            .try_sub(&sys.xi(ell - ki + 1)?)
            .map_err(ExpansionError::from)?;
        if slack.sign() < 0 {
            return Err(NormalizeError::InvariantViolation(format!(
                "θ + ν(c') - ξ(ℓ-k_i+1) < 0 for {tilde}"
            )));
        }
    }
    Ok(CarryStep {
        theta,
        tilde,
        carry,
        tilde_admissible,
    })
}

/// Certificate `{x+1}_β - {x}_β = θ - Σ_j ω_j T^j(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyWitness {
    pub theta: u8,
    /// `ω_0, ..., ω_q`, trailing zeros trimmed.
    pub omegas: Vec<u64>,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
    pub verified: bool,
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    theta: u8,
    omegas: &'a [u64],
    lhs: Vec<String>,
    rhs: Vec<String>,
    verified: bool,
}

impl KeyWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WitnessJson {
            theta: self.theta,
            omegas: &self.omegas,
            lhs: self.lhs.coord_strings(),
            rhs: self.rhs.coord_strings(),
            verified: self.verified,
        })
        .expect("witness serializes")
    }
}

/// `Σ_j ω_j T^j(1)`.
pub fn omega_sum(sys: &BetaSystem, omegas: &[u64]) -> Result<FieldElement, ExpansionError> {
    let mut acc = sys.int(0);
    for (j, &w) in omegas.iter().enumerate() {
        if w != 0 {
            acc = &acc + &sys.t_power_one(j)?.scale_int(w as i64);
        }
    }
    Ok(acc)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Expansion of `x + 1` by carry normalization, with its witness.
pub fn add_one(
    sys: &BetaSystem,
    x: &FieldElement,
) -> Result<(Expansion, KeyWitness), NormalizeError> {
    let field = sys.field();
    let x1 = x.add_int(1);
    let ell = sys.big_l(&x1)?;
    let ex = sys.beta_expand(x)?;
    let c = ex.word.as_signed().prepend(&vec![0; ell - ex.exponent]);
    let blocks = free_blocks(sys, &c)?;
    let i = blocks.block_of(ell);
    let theta: u8 = u8::from(ell < blocks.k(i + 1));
    let frac_x = sys.nu(&c.shift(ell));

    let c0 = bump(&c, ell - 1, 0, &c.shift(ell));
    let mut xs: Vec<usize> = Vec::new();
    let word = if sys.is_admissible(&c0)? {
        if theta != 0 {
            return Err(NormalizeError::InvariantViolation(
                "admissible c_0^+ with θ = 1".into(),
            ));
        }
        c0
    } else {
        if i == 0 {
            return Err(NormalizeError::CascadeOverrun);
        }
        let mut y = frac_x.add_int(theta as i64);
        let mut n = 0;
        loop {
            n += 1;
            if n > i {
                return Err(NormalizeError::CascadeOverrun);
            }
            let m = ell - blocks.k(i - n + 1) + 1;
            y = y.try_sub(&sys.xi(m)?).map_err(ExpansionError::from)?;
            xs.push(m);
            if y.add_int(-1).sign() >= 0 {
                return Err(NormalizeError::InvariantViolation(format!(
                    "y_{n} ≥ 1 (γ < 1 fails when n = 1)"
                )));
            }
            if y.sign() < 0 {
                return Err(NormalizeError::InvariantViolation(format!("y_{n} < 0")));
            }
            let kk = blocks.k(i - n + 1);
            let cand = bump(&c, kk - 1, ell - kk, sys.d_beta(&y)?.as_signed());
            if sys.is_admissible(&cand)? {
                break cand;
            }
        }
    };

    let mut omegas = Vec::new();
    for &m in &xs {
        let j = sys.xi_exponent(m)?;
        if omegas.len() <= j {
            omegas.resize(j + 1, 0);
        }
        omegas[j] += 1;
    }
    let omegas = trim(omegas);
    let word = DigitWord::new(word, sys.floor_beta())
        .map_err(|e| NormalizeError::InvariantViolation(e.to_string()))?;
    let expansion = Expansion {
        exponent: ell,
        word,
    };
    let lhs = sys
        .frac_part(&x1)?
        .try_sub(&sys.frac_part(x)?)
        .map_err(ExpansionError::from)?;
    let rhs = FieldElement::from_int(field, theta as i64)
        .try_sub(&omega_sum(sys, &omegas)?)
        .map_err(ExpansionError::from)?;
    let verified = lhs == rhs && sys.reconstruct(&expansion) == x1;
    Ok((
        expansion,
        KeyWitness {
            theta,
            omegas,
            lhs,
            rhs,
            verified,
        },
    ))
}

/// `{x}_β`.
pub fn frac_part(sys: &BetaSystem, x: &FieldElement) -> Result<FieldElement, ExpansionError> {
    sys.frac_part(x)
}

/// `ω_n` (`n ≥ 1`, index 0 unused) with `{N}_β ≡ -Σ ω_n T^n(1) (mod Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalWitness {
    pub n: u64,
    pub omegas: Vec<u64>,
    pub verified: bool,
}

/// Witnesses for `0, 1, ..., n_max`, accumulated along the `+1` steps.
pub fn natural_witnesses(
    sys: &BetaSystem,
    n_max: u64,
) -> Result<Vec<NaturalWitness>, NormalizeError> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut acc: Vec<u64> = Vec::new();
    out.push(NaturalWitness {
        n: 0,
        omegas: Vec::new(),
        verified: true,
    });
    for n in 0..n_max {
        let x = sys.int(n as i64);
        let (_, w) = add_one(sys, &x)?;
        if !w.verified {
            return Err(NormalizeError::InvariantViolation(format!(
                "key identity fails at x = {n}"
            )));
        }
        // T^0(1) = 1 and θ are integers, hence invisible modulo Z.
        for (j, &o) in w.omegas.iter().enumerate().skip(1) {
            if acc.len() <= j {
                acc.resize(j + 1, 0);
            }
            acc[j] += o;
        }
        acc = trim(acc);
        let frac = sys.frac_part(&sys.int(n as i64 + 1))?;
        let total = &frac + &omega_sum(sys, &acc)?;
        out.push(NaturalWitness {
            n: n + 1,
            omegas: acc.clone(),
            verified: total.is_integer(),
        });
    }
    Ok(out)
}

pub fn witness_for_natural(sys: &BetaSystem, n: u64) -> Result<NaturalWitness, NormalizeError> {
    Ok(natural_witnesses(sys, n)?.pop().expect("nonempty"))
}
