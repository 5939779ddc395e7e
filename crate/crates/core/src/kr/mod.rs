//! Knowledge-representation enumerators: model-based diagnosis and
//! propositional abduction, plus the reduction carrying cardinality-minimal
//! model enumeration into diagnosis.
//!
//! Both problems share a shape: solutions are subsets of a component list
//! (system components to retain, hypotheses to assume), enumerated as
//! characteristic bit vectors in lexicographic order by the prefix
//! extension engine, with an NP oracle answering the extension queries.

mod abduction;
mod diagnosis;
mod mbd;

pub use abduction::{abduction_enum, abduction_extsol, abduction_extsol_with, ExtsolMode};
pub use diagnosis::{diagnosis_enum, DiagnosisEnumeration};
pub use mbd::cardmin_to_mbd;

use crate::model::ModelError;
use crate::oracle::OracleError;

#[derive(Debug, thiserror::Error)]
pub enum KrError {
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("the all-zero assignment satisfies the formula")]
    ZeroValid,
    #[error("exhaustive extension check limited to {cap} undecided hypotheses, got {got}")]
    FallbackTooWide { got: usize, cap: usize },
}
