//! SAT-oracle enumeration toolkit.
//!
//! The crate is organized around one idea: enumeration algorithms that make
//! no progress on their own, only by asking a decision oracle. Everything
//! else supports that loop.
//!
//! * [`model`] — formulas, assignments, relations, graphs, databases, and
//!   the text formats for each.
//! * [`oracle`] — the decision procedures enumerators query: a DPLL SAT
//!   solver, a CEGAR solver for exists-forall formulas, and polynomial-time
//!   deciders for the tractable constraint languages.
//! * [`engine`] — the enumeration engines themselves: prefix extension
//!   (lexicographic, bounded delay), blocking clauses (incremental), the
//!   reduction executor that transports enumeration between problems, and a
//!   brute-force reference used everywhere in tests.
//! * [`logic`] — enumerators for satisfiability-shaped problems: all-SAT,
//!   quantified formulas, circumscription, cardinality-minimal models.
//! * [`schaefer`] — constraint-language classification and the dichotomy
//!   between polynomial enumeration and oracle-backed enumeration.
//! * [`kr`] — model-based diagnosis and propositional abduction.
//! * [`structures`] — database repairs, hypergraph transversals, dominating
//!   sets, graph colorings, and the reductions connecting them.
//! * [`corpus`] — seeded instance generators shared by tests, benchmarks,
//!   and the command-line crosscheck.

pub mod corpus;
pub mod engine;
pub mod kr;
pub mod logic;
pub mod model;
pub mod oracle;
pub mod schaefer;
pub mod structures;

pub use engine::{DelayProfile, EngineError, SolutionStream};
pub use model::{Assignment, Clause, CnfFormula, Literal, VarId};
pub use oracle::{CounterHandle, OracleError, OracleStats, SatOracle, SatSession};
