//! Decision oracles and the bookkeeping around them.
//!
//! Enumeration engines in this crate do all their reasoning through oracle
//! queries, so every oracle records how often it was asked and how large
//! each query was. Query size is measured in DIMACS tokens: one token per
//! literal plus one terminator per clause, plus one token per assumption.
//! That convention makes the sizes the engines guarantee (bounded input for
//! prefix extension, strictly growing input for blocking enumeration)
//! directly observable in tests.

mod deciders;
mod sigma2;

pub use deciders::{
    dual_horn_satisfiable, horn_satisfiable, two_sat_satisfiable, xor_satisfiable, XorEquation,
    XorSystem,
};
pub use sigma2::{Sigma2Oracle, Sigma2Query};

use crate::model::{Assignment, Clause, CnfFormula, Literal, VarId};
use std::cell::RefCell;
use std::rc::Rc;

/// Everything a counter handle has observed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleStats {
    /// Queries made through this handle, of any kind.
    pub calls: u64,
    /// Subset of `calls` answered by an NP oracle (the DPLL solver or the
    /// exists-forall solver) rather than a polynomial-time decider.
    pub np_calls: u64,
    /// Largest query seen, in DIMACS tokens.
    pub max_input_size: u64,
    /// Size of every query, in order. Lets tests check growth patterns.
    pub input_sizes: Vec<u64>,
}

/// Shared call counter. Clones observe the same totals, so an enumeration
/// engine and the oracle it drives can hold the same handle.
#[derive(Debug, Clone, Default)]
pub struct CounterHandle(Rc<RefCell<OracleStats>>);

impl CounterHandle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, input_size: u64, np_call: bool) {
        let mut s = self.0.borrow_mut();
        s.calls += 1;
        if np_call {
            s.np_calls += 1;
        }
        s.max_input_size = s.max_input_size.max(input_size);
        s.input_sizes.push(input_size);
    }

    pub fn stats(&self) -> OracleStats {
        self.0.borrow().clone()
    }

    pub fn calls(&self) -> u64 {
        self.0.borrow().calls
    }

    pub fn reset(&self) {
        *self.0.borrow_mut() = OracleStats::default();
    }
}

/// Ways an oracle can give up without answering.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("conflict budget exhausted after {conflicts} conflicts")]
    BudgetExhausted { conflicts: u64 },
    #[error("refinement iteration cap hit after {iterations} rounds")]
    IterationCap { iterations: u64 },
}

/// Complete SAT solver: DPLL with two watched literals and chronological
/// backtracking. Branching is deterministic (lowest unassigned variable,
/// false first), so the first model found is the lexicographically least
/// one. A conflict budget turns runaway searches into errors instead of
/// hangs.
pub struct SatOracle {
    counters: CounterHandle,
    conflict_budget: u64,
}

impl SatOracle {
    pub fn new(counters: CounterHandle) -> Self {
        SatOracle { counters, conflict_budget: u64::MAX }
    }

    pub fn with_conflict_budget(counters: CounterHandle, conflict_budget: u64) -> Self {
        SatOracle { counters, conflict_budget }
    }

    pub fn counters(&self) -> CounterHandle {
        self.counters.clone()
    }

    /// Is `f` satisfiable with all `assumptions` holding?
    pub fn solve(&self, f: &CnfFormula, assumptions: &[Literal]) -> Result<bool, OracleError> {
        self.record(f, assumptions);
        Ok(Search::run(f, assumptions, self.conflict_budget)?.is_some())
    }

    /// Like [`solve`](Self::solve), returning the model found (the
    /// lexicographically least one), if any.
    pub fn solve_with_model(
        &self,
        f: &CnfFormula,
        assumptions: &[Literal],
    ) -> Result<Option<Assignment>, OracleError> {
        self.record(f, assumptions);
        Search::run(f, assumptions, self.conflict_budget)
    }

    /// Lexicographically least model, built from yes/no queries alone: one
    /// satisfiability check, then one query per variable, preferring false.
    /// Exactly `num_vars + 1` oracle calls when satisfiable.
    pub fn lex_least_model(
        &self,
        f: &CnfFormula,
        assumptions: &[Literal],
    ) -> Result<Option<Assignment>, OracleError> {
        if !self.solve(f, assumptions)? {
            return Ok(None);
        }
        let mut fixed = assumptions.to_vec();
        let mut bits = Vec::with_capacity(f.num_vars() as usize);
        for v in 1..=f.num_vars() {
            fixed.push(Literal::negative(v));
            if self.solve(f, &fixed)? {
                bits.push(false);
            } else {
                fixed.pop();
                fixed.push(Literal::positive(v));
                bits.push(true);
            }
        }
        Ok(Some(Assignment::from_bits(bits)))
    }

    fn record(&self, f: &CnfFormula, assumptions: &[Literal]) {
        self.counters
            .record((f.token_size() + assumptions.len()) as u64, true);
    }
}

/// A satisfiability session for a formula that only ever grows: clauses
/// are added once and the watch structures persist, so a query after an
/// addition costs the search itself, not a re-read of the whole formula.
/// Blocking-style enumerators, which re-ask after every appended clause,
/// are the intended callers. Queries are recorded exactly like
/// [`SatOracle`] queries: current formula tokens plus one per assumption.
pub struct SatSession {
    counters: CounterHandle,
    num_vars: VarId,
    search: Search<Vec<Literal>>,
    units: Vec<Literal>,
    has_empty_clause: bool,
    tokens: usize,
}

impl SatSession {
    pub fn new(counters: CounterHandle, num_vars: VarId) -> Self {
        SatSession {
            counters,
            num_vars,
            search: Search::empty(num_vars),
            units: Vec::new(),
            has_empty_clause: false,
            tokens: 0,
        }
    }

    pub fn counters(&self) -> CounterHandle {
        self.counters.clone()
    }

    pub fn add_clause(&mut self, c: &Clause) {
        self.tokens += c.len() + 1;
        match c.len() {
            0 => self.has_empty_clause = true,
            1 => self.units.push(c.literals()[0]),
            _ => self.search.add_watched(c.literals().to_vec()),
        }
    }

    /// Is everything added so far satisfiable with `assumptions` holding?
    /// Returns the model found (the lexicographically least one), if any.
    pub fn solve_with_model(
        &mut self,
        assumptions: &[Literal],
    ) -> Result<Option<Assignment>, OracleError> {
        self.counters
            .record((self.tokens + assumptions.len()) as u64, true);
        if self.has_empty_clause {
            return Ok(None);
        }
        self.search.restart();
        for &l in self.units.iter().chain(assumptions) {
            if !self.search.enqueue(l) {
                return Ok(None);
            }
        }
        self.search.search(self.num_vars, u64::MAX)
    }
}

fn lit_value(assign: &[i8], l: Literal) -> i8 {
    let v = assign[l.var() as usize];
    if v == 0 {
        0
    } else if (v == 1) == l.is_positive() {
        1
    } else {
        -1
    }
}

enum WatchAction {
    Keep,
    Moved(Literal),
    Force(Literal),
}

/// One DPLL search over clause storage `C`: borrowed slices for one-shot
/// queries, owned vectors inside a [`SatSession`]. The two watched
/// literals of each clause are tracked as positions, so the clause text
/// itself is never touched.
struct Search<C> {
    clauses: Vec<C>,
    /// clause index -> positions of its two watched literals
    watch_pos: Vec<(u32, u32)>,
    /// literal code -> indices of clauses currently watching that literal
    watches: Vec<Vec<usize>>,
    /// var (1-based) -> 0 unassigned, 1 true, -1 false
    assign: Vec<i8>,
    trail: Vec<Literal>,
    prop_head: usize,
    /// (variable, position in trail, other phase already tried)
    decisions: Vec<(VarId, usize, bool)>,
    conflicts: u64,
}

impl<'a> Search<&'a [Literal]> {
    fn run(
        f: &'a CnfFormula,
        assumptions: &[Literal],
        budget: u64,
    ) -> Result<Option<Assignment>, OracleError> {
        let mut s = Search::empty(f.num_vars());
        s.clauses.reserve(f.clauses().len());
        s.watch_pos.reserve(f.clauses().len());
        for c in f.clauses() {
            let lits = c.literals();
            match lits.len() {
                0 => return Ok(None),
                1 => {
                    if !s.enqueue(lits[0]) {
                        return Ok(None);
                    }
                }
                _ => s.add_watched(lits),
            }
        }
        for &a in assumptions {
            if !s.enqueue(a) {
                return Ok(None);
            }
        }
        s.search(f.num_vars(), budget)
    }
}

impl<C: AsRef<[Literal]>> Search<C> {
    fn value(&self, l: Literal) -> i8 {
        lit_value(&self.assign, l)
    }

    fn empty(num_vars: VarId) -> Self {
        let n = num_vars as usize;
        Search {
            clauses: Vec::new(),
            watch_pos: Vec::new(),
            watches: vec![Vec::new(); 2 * (n + 1)],
            assign: vec![0; n + 1],
            trail: Vec::with_capacity(n),
            prop_head: 0,
            decisions: Vec::new(),
            conflicts: 0,
        }
    }

    /// Registers a clause of two or more literals, watching its first two.
    fn add_watched(&mut self, lits: C) {
        let idx = self.clauses.len();
        self.watches[lits.as_ref()[0].code()].push(idx);
        self.watches[lits.as_ref()[1].code()].push(idx);
        self.clauses.push(lits);
        self.watch_pos.push((0, 1));
    }

    /// Clears all assignment state while keeping clauses and watches. Any
    /// watch pair is valid once nothing is assigned, so a restarted search
    /// is correct without re-reading the formula.
    fn restart(&mut self) {
        for l in self.trail.drain(..) {
            self.assign[l.var() as usize] = 0;
        }
        self.prop_head = 0;
        self.decisions.clear();
        self.conflicts = 0;
    }

    /// Make `l` true. False when `l` is already false.
    fn enqueue(&mut self, l: Literal) -> bool {
        match self.value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.assign[l.var() as usize] = if l.is_positive() { 1 } else { -1 };
                self.trail.push(l);
                true
            }
        }
    }

    /// Propagate pending assignments. True on success, false on conflict.
    fn propagate(&mut self) -> bool {
        while self.prop_head < self.trail.len() {
            let falsified = self.trail[self.prop_head].negate();
            self.prop_head += 1;
            let watchers = std::mem::take(&mut self.watches[falsified.code()]);
            let mut kept = Vec::with_capacity(watchers.len());
            for (wi, &ci) in watchers.iter().enumerate() {
                // Keep the clause, move its watch, or try to force a literal.
                let action = {
                    let lits = self.clauses[ci].as_ref();
                    let (mut other, mut here) = self.watch_pos[ci];
                    if lits[other as usize] == falsified {
                        std::mem::swap(&mut other, &mut here);
                    }
                    debug_assert_eq!(lits[here as usize], falsified);
                    let first = lits[other as usize];
                    if lit_value(&self.assign, first) == 1 {
                        self.watch_pos[ci] = (other, here);
                        WatchAction::Keep
                    } else if let Some(k) = (0..lits.len()).find(|&k| {
                        k != other as usize
                            && k != here as usize
                            && lit_value(&self.assign, lits[k]) != -1
                    }) {
                        self.watch_pos[ci] = (other, k as u32);
                        WatchAction::Moved(lits[k])
                    } else {
                        self.watch_pos[ci] = (other, here);
                        WatchAction::Force(first)
                    }
                };
                match action {
                    WatchAction::Keep => kept.push(ci),
                    WatchAction::Moved(w) => self.watches[w.code()].push(ci),
                    WatchAction::Force(first) => {
                        kept.push(ci);
                        if !self.enqueue(first) {
                            kept.extend_from_slice(&watchers[wi + 1..]);
                            self.watches[falsified.code()] = kept;
                            return false;
                        }
                    }
                }
            }
            self.watches[falsified.code()] = kept;
        }
        true
    }

    fn undo_to(&mut self, pos: usize) {
        for l in self.trail.drain(pos..) {
            self.assign[l.var() as usize] = 0;
        }
        // Everything before `pos` was fully propagated when the decision at
        // `pos` was made, so propagation resumes there.
        self.prop_head = pos;
    }

    fn search(&mut self, num_vars: VarId, budget: u64) -> Result<Option<Assignment>, OracleError> {
        loop {
            if self.propagate() {
                // Branch on the lowest unassigned variable, false first.
                match (1..=num_vars).find(|&v| self.assign[v as usize] == 0) {
                    None => {
                        let bits = (1..=num_vars)
                            .map(|v| self.assign[v as usize] == 1)
                            .collect();
                        return Ok(Some(Assignment::from_bits(bits)));
                    }
                    Some(v) => {
                        self.decisions.push((v, self.trail.len(), false));
                        let ok = self.enqueue(Literal::negative(v));
                        debug_assert!(ok);
                    }
                }
            } else {
                self.conflicts += 1;
                if self.conflicts > budget {
                    return Err(OracleError::BudgetExhausted { conflicts: self.conflicts });
                }
                loop {
                    match self.decisions.pop() {
                        None => return Ok(None),
                        Some((v, pos, flipped)) => {
                            self.undo_to(pos);
                            if !flipped {
                                self.decisions.push((v, pos, true));
                                let ok = self.enqueue(Literal::positive(v));
                                debug_assert!(ok);
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
}
