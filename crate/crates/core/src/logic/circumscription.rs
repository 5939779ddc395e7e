//! Subset-minimal model enumeration (circumscription).
//!
//! The stream alternates two phases. First it asks the oracle for any model
//! of the working formula (the input plus all blocking added so far) and
//! greedily minimizes it: scanning variables in ascending order, it tries
//! to flip each true bit to false with all earlier decisions fixed, keeping
//! the flip whenever the working formula stays satisfiable. The result is a
//! subset-minimal model of the original formula. Second, it appends the
//! clause
//!
//! ```text
//! or over { not x_i : minimized model sets x_i }
//! ```
//!
//! which excludes exactly that model and all its supersets. Supersets of a
//! minimal model are never minimal themselves, so nothing is lost, and
//! every still-unemitted minimal model keeps satisfying the working
//! formula until its turn comes.

use crate::engine::{EngineError, SolutionStream};
use crate::model::{Assignment, Clause, CnfFormula, Literal, VarId};
use crate::oracle::{CounterHandle, OracleError, SatOracle};

pub struct MinimalModelStream {
    oracle: SatOracle,
    working: CnfFormula,
    done: bool,
}

/// All subset-minimal models of `f`, in discovery order, each exactly once.
/// With this crate's oracle (first model found is the lexicographically
/// least) discovery order coincides with lexicographic order, but callers
/// must not rely on that; use [`minimal_models_sorted`] for a fixed order.
pub fn minimal_models(counters: CounterHandle, f: CnfFormula) -> MinimalModelStream {
    MinimalModelStream { oracle: SatOracle::new(counters), working: f, done: false }
}

/// Runs the stream to completion and sorts lexicographically; intended for
/// tests and for diffing against other engines.
pub fn minimal_models_sorted(
    counters: CounterHandle,
    f: CnfFormula,
) -> Result<Vec<Assignment>, EngineError> {
    let mut stream = minimal_models(counters, f);
    let (mut out, _) = crate::engine::run_to_completion(&mut stream, None)?;
    out.sort_by_key(Assignment::to_bitstring);
    Ok(out)
}

impl MinimalModelStream {
    /// The input plus the blocking clauses added so far. Exposed so tests
    /// can confirm emitted models are really excluded from later rounds.
    pub fn working_formula(&self) -> &CnfFormula {
        &self.working
    }

    /// Greedy descent from `seed` to a subset-minimal model of the
    /// original formula. Queries go to the working formula; since blocking
    /// clauses only ever exclude supersets of already-emitted minimal
    /// models, a minimal model of the working formula is also one of the
    /// original input.
    fn minimize(&self, seed: Assignment) -> Result<Assignment, OracleError> {
        let n = self.working.num_vars();
        let mut current = seed;
        let mut decided: Vec<Literal> = Vec::with_capacity(n as usize);
        for v in 1..=n {
            if current.get(v) {
                decided.push(Literal::negative(v));
                match self.oracle.solve_with_model(&self.working, &decided)? {
                    Some(better) => current = better,
                    None => {
                        decided.pop();
                        decided.push(Literal::positive(v));
                    }
                }
            } else {
                decided.push(Literal::negative(v));
            }
        }
        Ok(current)
    }
}

impl SolutionStream for MinimalModelStream {
    type Item = Assignment;

    fn next_solution(&mut self) -> Result<Option<Assignment>, EngineError> {
        if self.done {
            return Ok(None);
        }
        let seed = match self.oracle.solve_with_model(&self.working, &[])? {
            None => {
                self.done = true;
                return Ok(None);
            }
            Some(m) => m,
        };
        let minimal = self.minimize(seed)?;
        let blocking: Vec<Literal> = (1..=self.working.num_vars())
            .filter(|&v| minimal.get(v))
            .map(Literal::negative)
            .collect();
        if blocking.is_empty() {
            // The all-zero model is a subset of everything, hence the
            // unique minimal model. Its blocking clause is the empty
            // clause; marking the stream done skips the pointless final
            // refusal query.
            self.done = true;
        }
        self.working.push_clause(Clause::expect(blocking));
        Ok(Some(minimal))
    }

    fn counters(&self) -> CounterHandle {
        self.oracle.counters()
    }
}
