//! Enumeration by blocking clauses: ask the SAT solver for a model, forbid
//! it, ask again. Simple, complete, and incremental; the price is that the
//! formula (and with it every later oracle query) grows by one clause per
//! output, so delays stretch as the run gets longer. The flashlight engine
//! is the one with bounded queries; this one trades that for needing no
//! extension oracle at all.

use super::{EngineError, SolutionStream};
use crate::model::{Assignment, Clause, CnfFormula, Literal, VarId};
use crate::oracle::{CounterHandle, SatOracle};

/// Streams models of a CNF formula, each distinct on `distinct_on`. After a
/// model is emitted, a clause requiring some difference on those variables
/// is appended, so no two outputs agree there. With `distinct_on` covering
/// all variables this is all-models enumeration.
pub struct BlockingStream {
    oracle: SatOracle,
    formula: CnfFormula,
    distinct_on: Vec<VarId>,
    done: bool,
}

impl BlockingStream {
    pub fn all_models(counters: CounterHandle, formula: CnfFormula) -> Self {
        let over = (1..=formula.num_vars()).collect();
        Self::distinct_on(counters, formula, over)
    }

    pub fn distinct_on(
        counters: CounterHandle,
        formula: CnfFormula,
        distinct_on: Vec<VarId>,
    ) -> Self {
        assert!(distinct_on.iter().all(|&v| v >= 1 && v <= formula.num_vars()));
        BlockingStream {
            oracle: SatOracle::new(counters),
            formula,
            distinct_on,
            done: false,
        }
    }

    /// The formula as grown so far, blocking clauses included.
    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }
}

impl SolutionStream for BlockingStream {
    type Item = Assignment;

    fn next_solution(&mut self) -> Result<Option<Assignment>, EngineError> {
        if self.done {
            return Ok(None);
        }
        match self.oracle.solve_with_model(&self.formula, &[])? {
            None => {
                self.done = true;
                Ok(None)
            }
            Some(model) => {
                let block: Vec<Literal> = self
                    .distinct_on
                    .iter()
                    .map(|&v| Literal::new(v, !model.get(v)))
                    .collect();
                self.formula.push_clause(Clause::expect(block));
                Ok(Some(model))
            }
        }
    }

    fn counters(&self) -> CounterHandle {
        self.oracle.counters()
    }
}
