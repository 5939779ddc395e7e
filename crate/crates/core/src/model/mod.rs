//! Propositional and relational instance types shared by every engine.
//!
//! Variables are 1-based `u32` indices. A [`Clause`] / [`DnfTerm`] is kept
//! normalized (literals sorted by variable, duplicates removed); a clause that
//! mentions both polarities of a variable is rejected at construction time so
//! downstream code never has to reason about tautologies.

mod database;
pub mod eval;
mod gamma;
mod graph;
mod instances;
pub mod parse;
mod qbf;
pub mod render;

pub use database::{egds_satisfied, Atom, DatabaseInstance, Egd, EgdAtom, EgdTerm};
pub use eval::truth_table_satisfiable;
pub use gamma::{BoolRelation, GammaFormula};
pub use graph::{Graph, Hypergraph};
pub use instances::{AbductionInstance, DiagnosisInstance};
pub use qbf::{QbfInstance, Quantifier};

use std::cmp::Ordering;
use std::fmt;

pub type VarId = u32;

/// Errors raised by instance construction and basic model operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("clause contains both polarities of variable {0}")]
    TautologicalClause(VarId),
    #[error("term contains both polarities of variable {0}")]
    ContradictoryTerm(VarId),
    #[error("assignment lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("variable {var} out of range (formula has {num_vars} variables)")]
    VarOutOfRange { var: VarId, num_vars: VarId },
    #[error("relation must have at least one tuple")]
    EmptyRelation,
    #[error("relation arity must be between 1 and 16, got {0}")]
    BadArity(usize),
    #[error("tuple width {got} does not match relation arity {arity}")]
    TupleWidth { arity: usize, got: usize },
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("relation {0:?} declared twice")]
    DuplicateRelation(String),
    #[error("constraint on {name:?} has {got} arguments, relation arity is {arity}")]
    ConstraintArity { name: String, arity: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
}

/// A signed propositional variable. Stored as `var << 1 | sign` so literals
/// order by variable with the positive literal first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    pub fn positive(var: VarId) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Literal(var << 1)
    }

    pub fn negative(var: VarId) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Literal(var << 1 | 1)
    }

    pub fn new(var: VarId, positive: bool) -> Self {
        if positive {
            Self::positive(var)
        } else {
            Self::negative(var)
        }
    }

    /// Builds a literal from a non-zero DIMACS integer.
    pub fn from_dimacs(value: i64) -> Result<Self, ModelError> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 >> 1 {
            return Err(ModelError::Invalid(format!("bad literal {value}")));
        }
        Ok(Self::new(value.unsigned_abs() as VarId, value > 0))
    }

    pub fn var(self) -> VarId {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Self {
        Literal(self.0 ^ 1)
    }

    /// True under the given total assignment.
    pub fn eval(self, a: &Assignment) -> bool {
        a.get(self.var()) == self.is_positive()
    }

    pub fn to_dimacs(self) -> i64 {
        if self.is_positive() {
            self.var() as i64
        } else {
            -(self.var() as i64)
        }
    }

    /// Dense index (positive literal of var v at 2v, negative at 2v+1),
    /// handy for watch lists and other per-literal tables.
    pub fn code(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

fn normalize_literals(mut lits: Vec<Literal>) -> Result<Vec<Literal>, VarId> {
    lits.sort_unstable();
    lits.dedup();
    for pair in lits.windows(2) {
        if pair[0].var() == pair[1].var() {
            return Err(pair[0].var());
        }
    }
    Ok(lits)
}

/// A disjunction of literals, normalized and tautology-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(lits: Vec<Literal>) -> Result<Self, ModelError> {
        normalize_literals(lits)
            .map(Clause)
            .map_err(ModelError::TautologicalClause)
    }

    /// Constructor for clauses built by encoders, which never produce
    /// tautologies by construction.
    pub fn expect(lits: Vec<Literal>) -> Self {
        Self::new(lits).expect("encoder produced a tautological clause")
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.0.iter().any(|l| l.eval(a))
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A conjunction of literals, normalized and contradiction-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DnfTerm(Vec<Literal>);

impl DnfTerm {
    pub fn new(lits: Vec<Literal>) -> Result<Self, ModelError> {
        normalize_literals(lits)
            .map(DnfTerm)
            .map_err(ModelError::ContradictoryTerm)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.0.iter().all(|l| l.eval(a))
    }
}

/// CNF formula over variables `1..=num_vars`.
#[derive(Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: VarId,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: VarId) -> Self {
        CnfFormula { num_vars, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> VarId {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn push_clause(&mut self, c: Clause) {
        for l in c.literals() {
            assert!(
                l.var() <= self.num_vars,
                "literal {l} out of range for {} variables",
                self.num_vars
            );
        }
        self.clauses.push(c);
    }

    /// Grows the variable space; existing clauses are unaffected.
    pub fn grow_vars(&mut self, num_vars: VarId) {
        assert!(num_vars >= self.num_vars);
        self.num_vars = num_vars;
    }

    /// Token count (literals plus one terminator per clause); the unit in
    /// which oracle input sizes are measured.
    pub fn token_size(&self) -> usize {
        self.clauses.iter().map(|c| c.len() + 1).sum()
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.eval(a))
    }
}

impl fmt::Debug for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cnf[{} vars] ", self.num_vars)?;
        f.debug_list().entries(&self.clauses).finish()
    }
}

/// DNF formula over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnfFormula {
    num_vars: VarId,
    terms: Vec<DnfTerm>,
}

impl DnfFormula {
    pub fn new(num_vars: VarId) -> Self {
        DnfFormula { num_vars, terms: Vec::new() }
    }

    pub fn num_vars(&self) -> VarId {
        self.num_vars
    }

    pub fn terms(&self) -> &[DnfTerm] {
        &self.terms
    }

    pub fn push_term(&mut self, t: DnfTerm) {
        for l in t.literals() {
            assert!(
                l.var() <= self.num_vars,
                "literal {l} out of range for {} variables",
                self.num_vars
            );
        }
        self.terms.push(t);
    }

    pub fn token_size(&self) -> usize {
        self.terms.iter().map(|t| t.len() + 1).sum()
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        self.terms.iter().any(|t| t.eval(a))
    }
}

/// Quantifier-free matrix of a QBF instance: either form is accepted where
/// the relevant oracle supports it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matrix {
    Cnf(CnfFormula),
    Dnf(DnfFormula),
}

impl Matrix {
    pub fn num_vars(&self) -> VarId {
        match self {
            Matrix::Cnf(f) => f.num_vars(),
            Matrix::Dnf(f) => f.num_vars(),
        }
    }

    pub fn token_size(&self) -> usize {
        match self {
            Matrix::Cnf(f) => f.token_size(),
            Matrix::Dnf(f) => f.token_size(),
        }
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        match self {
            Matrix::Cnf(f) => f.evaluate(a),
            Matrix::Dnf(f) => f.evaluate(a),
        }
    }

    /// All variables mentioned by the matrix.
    pub fn mentioned_vars(&self) -> Vec<VarId> {
        let mut seen = vec![false; self.num_vars() as usize + 1];
        match self {
            Matrix::Cnf(f) => {
                for c in f.clauses() {
                    for l in c.literals() {
                        seen[l.var() as usize] = true;
                    }
                }
            }
            Matrix::Dnf(f) => {
                for t in f.terms() {
                    for l in t.literals() {
                        seen[l.var() as usize] = true;
                    }
                }
            }
        }
        (1..=self.num_vars()).filter(|&v| seen[v as usize]).collect()
    }
}

/// Total assignment: bit `i` (0-based) is the value of variable `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    /// Assignment number `value` out of `2^n`, reading variable 1 as the most
    /// significant bit, so ascending integers give ascending lexicographic
    /// order.
    pub fn from_index(value: u64, n: usize) -> Self {
        assert!(n <= 63);
        Assignment((0..n).map(|i| value >> (n - 1 - i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of 1-based variable `var`.
    pub fn get(&self, var: VarId) -> bool {
        self.0[(var - 1) as usize]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn to_bitstring(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Restriction to the listed variables, in the order given.
    pub fn project(&self, vars: &[VarId]) -> Assignment {
        Assignment(vars.iter().map(|&v| self.get(v)).collect())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bitstring())
    }
}

/// Prefix of an assignment: variables `1..=len` are decided, the rest open.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment(Vec<bool>);

impl PartialAssignment {
    pub fn empty() -> Self {
        PartialAssignment(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        PartialAssignment(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.0.pop()
    }

    /// The decided prefix as assumption literals for an oracle call.
    pub fn as_literals(&self) -> Vec<Literal> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| Literal::new(i as VarId + 1, b))
            .collect()
    }
}

/// Lexicographic comparison with 0 < 1 and position 1 most significant.
pub fn lex_compare(a: &Assignment, b: &Assignment) -> Result<Ordering, ModelError> {
    if a.len() != b.len() {
        return Err(ModelError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.0.cmp(&b.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn clause_normalization_sorts_and_dedupes() {
        let c = Clause::new(vec![lit(3), lit(-1), lit(3)]).unwrap();
        assert_eq!(c.literals(), &[lit(-1), lit(3)]);
    }

    #[test]
    fn tautological_clause_rejected() {
        assert_eq!(
            Clause::new(vec![lit(2), lit(-2)]).unwrap_err(),
            ModelError::TautologicalClause(2)
        );
    }

    #[test]
    fn empty_clause_allowed() {
        let c = Clause::new(vec![]).unwrap();
        assert!(c.is_empty());
        assert!(!c.eval(&Assignment::from_bits(vec![true])));
    }

    #[test]
    fn lex_compare_is_msb_first() {
        let a = Assignment::from_bits(vec![false, true, true]);
        let b = Assignment::from_bits(vec![true, false, false]);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&b, &a).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&a, &a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn lex_compare_rejects_length_mismatch() {
        let a = Assignment::from_bits(vec![false]);
        let b = Assignment::from_bits(vec![false, true]);
        assert!(lex_compare(&a, &b).is_err());
    }

    #[test]
    fn from_index_matches_lex_order() {
        let all: Vec<Assignment> = (0..8).map(|v| Assignment::from_index(v, 3)).collect();
        for w in all.windows(2) {
            assert_eq!(lex_compare(&w[0], &w[1]).unwrap(), Ordering::Less);
        }
        assert_eq!(all[5].to_bitstring(), "101");
    }

    #[test]
    fn token_size_counts_terminators() {
        let mut f = CnfFormula::new(3);
        f.push_clause(Clause::expect(vec![lit(1), lit(2)]));
        f.push_clause(Clause::expect(vec![lit(-3)]));
        assert_eq!(f.token_size(), 3 + 2);
    }
}
