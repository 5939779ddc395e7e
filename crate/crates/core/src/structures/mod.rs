//! Enumeration over graphs, hypergraphs, and relational databases:
//! minimal transversals, minimal dominating sets, proper colourings, and
//! database repairs, plus the reductions that carry one problem's stream
//! into another's (transversals via dominating sets, 3-colourings via
//! 4-colourings, universally quantified formulas via repairs).
//!
//! The direct enumerators all follow the same recipe: encode "`S` is a
//! solution" as a CNF over selection bits (plus auxiliary witnesses for
//! the minimality or maximality half) and run the prefix extension engine
//! with a SAT oracle on that encoding. The reductions are data: an
//! instance translation plus a solution mapping, executed by
//! [`ReducedStream`](crate::engine::ReducedStream).

mod coloring;
mod conflict;
mod hitting;
mod pi1sat;
mod repair;

pub use coloring::{coloring_enum, threecol_to_fourcol};
pub use conflict::{ground_egds, ConflictSet};
pub use hitting::{domset_enum, trans_to_dom, transversal_enum};
pub use pi1sat::pi1sat_to_repair;
pub use repair::repair_enum;

use crate::model::ModelError;

#[derive(Debug, thiserror::Error)]
pub enum StructuresError {
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
