//! Constraint-language classification and the enumeration dichotomy.
//!
//! A constraint language is a finite set of Boolean relations. Whether all
//! of its relations fall into one of four closure classes (Horn, dual Horn,
//! bijunctive, affine) decides how satisfying assignments of formulas over
//! the language are enumerated: inside a shared class, a polynomial-time
//! decider drives the prefix-extension engine and the NP oracle is never
//! consulted; outside, the formula is compiled to CNF and the SAT oracle
//! takes over. The remaining pieces support reductions between languages:
//! searching a language for a formula that behaves like the implication
//! relation, and eliminating constant constraints in favor of implications.

mod classify;
mod compile;
mod constants;
mod enumerate;
mod gadget;

pub use classify::{classify_language, classify_relation, SchaeferClass};
pub use compile::{relation_to_clausal_form, CompiledForm, CompiledTarget};
pub use constants::{constants_elimination, ConstantsElimination};
pub use enumerate::{enum_sat_gamma, GammaEnumeration, GammaRoute};
pub use gadget::imp_gadget_search;

/// Errors from the classification and search operations. Compilation
/// mismatches are deliberately not here: a compiled form whose models
/// disagree with its relation means the classifier itself is wrong, and
/// that panics instead of returning.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SchaeferError {
    #[error("relation arity {arity} exceeds the cap of {cap} for this operation")]
    ArityCap { arity: usize, cap: usize },
    #[error("relation lacks the {0:?} closure property")]
    NotInClass(CompiledTarget),
    #[error("gadget search space cap exceeded: {0}")]
    GadgetCap(String),
}
