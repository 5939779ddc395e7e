//! Enumerators for satisfiability-family problems.
//!
//! Everything here enumerates assignments of a propositional formula under
//! some side condition: all models ([`all_models_lex`], [`all_models_blocking`]),
//! free-variable assignments of a quantified formula ([`enumerate_qbf`],
//! [`PiSigmaStream`]), subset-minimal models ([`MinimalModelStream`]) and
//! cardinality-minimal models ([`cardinality_minimal_models`]). The
//! sequential-counter cardinality encoder they share lives in
//! [`encode_cardinality`].

mod allsat;
mod cardinality;
mod cardmin;
mod circumscription;
mod pi_sigma;
mod qbf;

pub use allsat::{all_models_blocking, all_models_lex};
pub use cardinality::{encode_cardinality, with_cardinality, CardSense, CardinalityConstraint};
pub use cardmin::{cardinality_minimal_models, CardMinEnumeration};
pub use circumscription::{minimal_models, minimal_models_sorted, MinimalModelStream};
pub use pi_sigma::PiSigmaStream;
pub use qbf::{enumerate_qbf, enumerate_qbf_exhaustive, QbfMode};

use crate::model::ModelError;
use crate::oracle::OracleError;

/// Construction-time failures of the enumerators in this module. Failures
/// during enumeration itself surface as [`crate::engine::EngineError`] from
/// `next_solution`.
#[derive(Debug, thiserror::Error)]
pub enum LogicError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    /// The instance is well-formed but outside what any available engine
    /// can handle (quantifier depth, variable count).
    #[error("unsupported instance: {0}")]
    Unsupported(String),
}
