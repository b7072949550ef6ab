//! Exact arithmetic for β-expansions in base a real algebraic integer `β > 1`.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`], [`field`], [`element`], [`pisot`]: the base field `Q(β)` with
//!   certified sign and floor, and the Pisot test.
//! * [`word`], [`expansion`]: eventually periodic digit words, the
//!   β-transformation, Rényi expansions and Parry admissibility.
//! * [`normalize`]: free block decompositions and the `x ↦ x + 1` carry
//!   cascade with its `T^j(1)` witness.
//! * [`srs`]: the shift radix system `τ`, the sets `Q_β`, `P_β`, `F_β`, and the
//!   sufficient certificate for every natural number having a finite expansion.
//! * [`classify`]: three-valued verdicts for the finiteness properties.
//! * [`family`]: the fixed shift radix system of `x^3 - 2t x^2 + 2t x - t`.

pub mod classify;
pub mod element;
pub mod expansion;
pub mod family;
pub mod field;
pub mod normalize;
pub mod pisot;
pub mod poly;
pub mod srs;
pub mod word;

pub use element::FieldElement;
pub use expansion::{BetaSystem, Budgets, Expansion, ExpansionError};
pub use field::{BetaField, FieldError};
pub use word::{DigitWord, SignedWord};
