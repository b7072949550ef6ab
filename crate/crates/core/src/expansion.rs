//! The β-transformation `T(x) = {βx}`, Rényi expansions `d_β(x)`, the
//! quasi-greedy expansion `d_β*(1)`, Parry admissibility and `ξ(n)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::element::FieldElement;
use crate::field::{BetaField, FieldError};
use crate::word::{DigitWord, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("orbit exceeded {cap} states (is beta Pisot?)")]
    OrbitBudgetExceeded { cap: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Iteration caps for every orbit-based computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct Budgets {
    /// States visited by `T` (and by `τ` walks) before giving up.
    pub orbit_cap: usize,
    /// Nodes in the `Q_β` closure.
    pub closure_cap: usize,
    /// Largest `N` tried when searching for a natural number with infinite expansion.
    pub n_sweep_max: u64,
    /// Padding factor of the fallback search box for `V_β`.
    pub box_pad: i64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            orbit_cap: 100_000,
            closure_cap: 1_000_000,
            n_sweep_max: 200,
            box_pad: 8,
        }
    }
}

/// `x = β^{exponent} · ν(word)` with `exponent = L(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expansion {
    pub exponent: usize,
    pub word: DigitWord,
}

impl Expansion {
    pub fn is_finite(&self) -> bool {
        self.word.is_finite()
    }

    /// Digits after the radix point, `c_{L+1} c_{L+2} ...`.
    pub fn fractional_word(&self) -> SignedWord {
        self.word.as_signed().shift(self.exponent)
    }

    /// Radix-point notation, e.g. `10.000020(1)^∞` or `1.0^∞`.
    pub fn radix_string(&self) -> String {
        let w = self.word.as_signed();
        let wide = w.max_digit() >= 10;
        let join = |ds: &[i64]| {
            let parts: Vec<String> = ds.iter().map(i64::to_string).collect();
            parts.join(if wide { " " } else { "" })
        };
        let int = if self.exponent == 0 {
            "0".to_string()
        } else {
            join(&w.prefix(self.exponent))
        };
        let frac = w.shift(self.exponent);
        let sep = if wide { " " } else { "" };
        let mut out = format!("{int}.");
        if frac.is_finite() {
            if !frac.preperiod().is_empty() {
                out.push_str(&join(frac.preperiod()));
                out.push_str(sep);
            }
            out.push_str("0^∞");
        } else {
            out.push_str(&join(frac.preperiod()));
            out.push_str(&format!("({})^∞", join(frac.period())));
        }
        out
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.radix_string())
    }
}

/// Orbit of `1` under `T`: `states[n] = T^n(1)`, periodic from `preperiod` on.
#[derive(Debug, Clone)]
struct OneOrbit {
    states: Vec<FieldElement>,
    preperiod: usize,
}

/// A base `β` together with budgets and memoized data derived from `d_β(1)`.
pub struct BetaSystem {
    field: Arc<BetaField>,
    budgets: Budgets,
    floor_beta: i64,
    orbit_one: OnceLock<Result<(DigitWord, OneOrbit), ExpansionError>>,
    d_star: OnceLock<Result<DigitWord, ExpansionError>>,
    xi_table: OnceLock<Result<Vec<FieldElement>, ExpansionError>>,
}

impl fmt::Debug for BetaSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BetaSystem")
            .field("field", &self.field)
            .field("budgets", &self.budgets)
            .finish()
    }
}

impl BetaSystem {
    pub fn new(field: Arc<BetaField>) -> Result<Self, ExpansionError> {
        Self::with_budgets(field, Budgets::default())
    }

    pub fn with_budgets(field: Arc<BetaField>, budgets: Budgets) -> Result<Self, ExpansionError> {
        let floor_beta = FieldElement::beta(&field).floor_i64()?;
        Ok(BetaSystem {
            field,
            budgets,
            floor_beta,
            orbit_one: OnceLock::new(),
            d_star: OnceLock::new(),
            xi_table: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Arc<BetaField> {
        &self.field
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    /// `⌊β⌋`; `β` is irrational, so the digit alphabet is `[0, ⌊β⌋]`.
    pub fn floor_beta(&self) -> i64 {
        self.floor_beta
    }

    pub fn elem(&self, coords: &[i64]) -> FieldElement {
        FieldElement::from_ints(&self.field, coords)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement::from_int(&self.field, n)
    }

    pub fn beta(&self) -> FieldElement {
        FieldElement::beta(&self.field)
    }

    fn check_unit_interval(&self, x: &FieldElement) -> Result<(), ExpansionError> {
        if x.sign() < 0 || x.add_int(-1).sign() > 0 {
            return Err(ExpansionError::OutOfRange(format!(
                "{x} is not in [0, 1]"
            )));
        }
        Ok(())
    }

    fn step(&self, x: &FieldElement) -> Result<(i64, FieldElement), ExpansionError> {
        let bx = x.try_mul(&self.beta())?;
        let digit = bx.floor_i64()?;
        Ok((digit, bx.add_int(-digit)))
    }

    /// `(⌊βx⌋, T(x))` for `x ∈ [0, 1]`.
    pub fn t_map(&self, x: &FieldElement) -> Result<(i64, FieldElement), ExpansionError> {
        self.check_unit_interval(x)?;
        self.step(x)
    }

    /// `d_β(x)` and the visited states, with the index where the cycle starts.
    fn orbit(&self, x: &FieldElement) -> Result<(DigitWord, Vec<FieldElement>, usize), ExpansionError> {
        self.check_unit_interval(x)?;
        let mut seen: HashMap<FieldElement, usize> = HashMap::new();
        let mut states = Vec::new();
        let mut digits = Vec::new();
        let mut cur = x.clone();
        loop {
            if let Some(&start) = seen.get(&cur) {
                let period = digits[start..].to_vec();
                digits.truncate(start);
                let word = SignedWord::new(digits, period);
                let word = DigitWord::new(word, self.floor_beta)
                    .map_err(|e| ExpansionError::OutOfRange(e.to_string()))?;
                return Ok((word, states, start));
            }
            if states.len() >= self.budgets.orbit_cap {
                return Err(ExpansionError::OrbitBudgetExceeded {
                    cap: self.budgets.orbit_cap,
                });
            }
            seen.insert(cur.clone(), states.len());
            let (digit, next) = self.step(&cur)?;
            states.push(cur);
            digits.push(digit);
            cur = next;
        }
    }

    /// `d_β(x)` for `x ∈ [0, 1]`.
    pub fn d_beta(&self, x: &FieldElement) -> Result<DigitWord, ExpansionError> {
        Ok(self.orbit(x)?.0)
    }

    fn one_orbit(&self) -> Result<&(DigitWord, OneOrbit), ExpansionError> {
        self.orbit_one
            .get_or_init(|| {
                let (word, states, preperiod) = self.orbit(&self.int(1))?;
                Ok((word, OneOrbit { states, preperiod }))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `d_β(1)`.
    pub fn d_beta_one(&self) -> Result<DigitWord, ExpansionError> {
        Ok(self.one_orbit()?.0.clone())
    }

    /// `T^j(1)`; zero from the step where a finite `d_β(1)` terminates.
    pub fn t_power_one(&self, j: usize) -> Result<FieldElement, ExpansionError> {
        let orbit = &self.one_orbit()?.1;
        let n = orbit.states.len();
        let idx = if j < n {
            j
        } else {
            orbit.preperiod + (j - orbit.preperiod) % (n - orbit.preperiod)
        };
        Ok(orbit.states[idx].clone())
    }

    /// Distinct points `T^m(1)`, `m ≥ 0`, in orbit order.
    pub fn one_orbit_points(&self) -> Result<Vec<FieldElement>, ExpansionError> {
        Ok(self.one_orbit()?.1.states.clone())
    }

    /// `d_β*(1)`: `(d_1 ... d_{q-1}(d_q - 1))^∞` when `d_β(1) = d_1 ... d_q 0^∞`,
    /// otherwise `d_β(1)` itself.
    pub fn d_beta_star(&self) -> Result<DigitWord, ExpansionError> {
        self.d_star
            .get_or_init(|| {
                let d = self.d_beta_one()?;
                if !d.is_finite() {
                    return Ok(d);
                }
                let mut period = d.preperiod().to_vec();
                *period.last_mut().expect("d_β(1) is nonzero") -= 1;
                DigitWord::new(SignedWord::new(Vec::new(), period), self.floor_beta)
                    .map_err(|e| ExpansionError::OutOfRange(e.to_string()))
            })
            .clone()
    }

    /// Parry's condition: digits in `[0, ⌊β⌋]` and `σ^n(w) <_lex d_β*(1)` for all `n ≥ 0`.
    pub fn is_admissible(&self, w: &SignedWord) -> Result<bool, ExpansionError> {
        if w.min_digit() < 0 || w.max_digit() > self.floor_beta {
            return Ok(false);
        }
        let star = self.d_beta_star()?;
        let star = star.as_signed();
        Ok((0..w.distinct_shift_bound())
            .all(|n| w.shift(n).cmp_lex(star) == std::cmp::Ordering::Less))
    }

    /// `L(x) = min { n ≥ 0 : x < β^n }`.
    pub fn big_l(&self, x: &FieldElement) -> Result<usize, ExpansionError> {
        if x.sign() < 0 {
            return Err(ExpansionError::OutOfRange(format!("{x} is negative")));
        }
        let beta = self.beta();
        let mut power = self.int(1);
        let mut n = 0;
        while x.try_sub(&power)?.sign() >= 0 {
            power = power.try_mul(&beta)?;
            n += 1;
        }
        Ok(n)
    }

    pub fn beta_expand(&self, x: &FieldElement) -> Result<Expansion, ExpansionError> {
        let exponent = self.big_l(x)?;
        let scaled = x.try_mul(&FieldElement::beta_pow(&self.field, -(exponent as i64)))?;
        Ok(Expansion {
            exponent,
            word: self.d_beta(&scaled)?,
        })
    }

    pub fn is_finite_expansion(&self, x: &FieldElement) -> Result<bool, ExpansionError> {
        Ok(self.beta_expand(x)?.is_finite())
    }

    /// `x = β^L ν(word)`.
    pub fn reconstruct(&self, e: &Expansion) -> FieldElement {
        &FieldElement::beta_pow(&self.field, e.exponent as i64) * &self.nu(e.word.as_signed())
    }

    /// `ν(c_1 c_2 ...) = Σ c_n β^{-n}`, summed in closed form.
    pub fn nu(&self, w: &SignedWord) -> FieldElement {
        let inv = FieldElement::beta_inv(&self.field);
        let finite_sum = |ds: &[i64]| {
            // Horner in β^{-1}: Σ ds[i] β^{-(i+1)}
            ds.iter()
                .rev()
                .fold(FieldElement::zero(&self.field), |acc, &c| &acc.add_int(c) * &inv)
        };
        let mut total = finite_sum(w.preperiod());
        if !w.period().is_empty() {
            let q = w.period().len() as u64;
            let inv_q = inv.pow(q);
            let geometric = (&self.int(1) - &inv_q)
                .inv()
                .expect("β^q ≠ 1 for β > 1");
            let tail = &finite_sum(w.period()) * &geometric;
            total = &total + &(&inv.pow(w.preperiod().len() as u64) * &tail);
        }
        total
    }

    fn xi_values(&self) -> Result<&Vec<FieldElement>, ExpansionError> {
        self.xi_table
            .get_or_init(|| {
                let star = self.d_beta_star()?;
                let star = star.as_signed();
                Ok((0..star.distinct_shift_bound())
                    .map(|k| self.nu(&star.shift(k)))
                    .collect())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `ξ(n) = ν(σ^{n-1}(d_β*(1)))`, `n ≥ 1`.
    pub fn xi(&self, n: usize) -> Result<FieldElement, ExpansionError> {
        if n == 0 {
            return Err(ExpansionError::OutOfRange("ξ(n) needs n ≥ 1".into()));
        }
        let star = self.d_beta_star()?;
        let star = star.as_signed();
        let table = self.xi_values()?;
        let k = n - 1;
        let pre = star.preperiod().len();
        let idx = if k < table.len() {
            k
        } else {
            pre + (k - pre) % star.cycle_len()
        };
        Ok(table[idx].clone())
    }

    /// The `j` with `ξ(m) = T^j(1)`.
    pub fn xi_exponent(&self, m: usize) -> Result<usize, ExpansionError> {
        if m == 0 {
            return Err(ExpansionError::OutOfRange("ξ(n) needs n ≥ 1".into()));
        }
        let d = self.d_beta_one()?;
        if !d.is_finite() {
            return Ok(m - 1);
        }
        let q = d.preperiod().len();
        Ok((m - 1) % q)
    }

    /// `{x}_β = ν(c_{L(x)+1} c_{L(x)+2} ...)`.
    pub fn frac_part(&self, x: &FieldElement) -> Result<FieldElement, ExpansionError> {
        let e = self.beta_expand(x)?;
        Ok(self.nu(&e.fractional_word()))
    }
}
