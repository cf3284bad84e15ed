//! Higher derivations on `Q[x]` / `Z[x]`, symbolic operator words and the
//! `(α, β)`-twisted Leibniz expansion.
//!
//! An `(α, β)`-higher derivation is a family `δ_0 = id, δ_1, δ_2, …` whose
//! value on a product `δ_n(r·s)` is a sum, over `i = 1..n` and over all weak
//! compositions `k_0 + … + k_i = n − i`, of products of two operator words
//! applied to `r` and `s`, scaled by `i!(n−i)!/n!`, plus the leading term
//! `δ_n(r)·α^n(s)`. [`ab_leibniz_rhs`] evaluates that sum literally, building
//! each word and normalizing it with the merge rules in [`OperatorWord`].

mod family;
mod leibniz;
mod word;

pub use family::{classical_leibniz_rhs, families_agree, hd_apply, HdFamily, HdKind};
pub use leibniz::{
    ab_leibniz_rhs, coefficient_identity, collapse_check, compositions, printed_expansion, printed_formula_check,
    verify_ab_hd, verify_classical_hd,
};
pub use word::{eval_word, normalize_word, OperatorWord, ProductRole, Symbol};

use crate::ring::Automorphism;

/// The pair of twisting automorphisms `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbContext {
    pub alpha: Automorphism,
    pub beta: Automorphism,
}

impl AbContext {
    pub fn new(alpha: Automorphism, beta: Automorphism) -> Self {
        AbContext { alpha, beta }
    }

    /// `α = β = id`, where the twisted law is the classical one.
    pub fn identity() -> Self {
        AbContext { alpha: Automorphism::identity(), beta: Automorphism::identity() }
    }
}
