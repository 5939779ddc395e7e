//! Enumeration of the free-variable assignments that satisfy a quantified
//! formula.
//!
//! Oracle-backed engines cover prefix shapes up to one leading existential
//! block and one universal block (no blocks, ∃, ∀, ∃∀): the extension
//! question for a prefix of free-variable decisions is then a single
//! satisfiability or exists-forall query. Deeper alternation falls back to
//! exhaustive evaluation, which is kept honest by hard caps on depth and
//! variable count.

use crate::engine::{Flashlight, SolutionStream};
use crate::logic::LogicError;
use crate::model::{Assignment, Clause, CnfFormula, DnfFormula, Literal, Matrix, QbfInstance, Quantifier, VarId};
use crate::oracle::{CounterHandle, SatOracle, Sigma2Oracle, Sigma2Query};

/// Which engine [`enumerate_qbf`] selected for an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QbfMode {
    /// Prefix-extension enumeration with a SAT or exists-forall oracle.
    Oracle,
    /// Direct evaluation of every free assignment, for prefix shapes no
    /// oracle here can express.
    Exhaustive,
}

/// Emits all assignments to `inst.free_vars` (positional, lexicographic)
/// under which the quantified formula is true, picking the strongest
/// available engine.
pub fn enumerate_qbf(
    counters: CounterHandle,
    inst: &QbfInstance,
) -> Result<(Box<dyn SolutionStream<Item = Assignment>>, QbfMode), LogicError> {
    inst.validate()?;
    if let Some(stream) = oracle_stream(counters.clone(), inst) {
        return Ok((stream, QbfMode::Oracle));
    }
    let stream = enumerate_qbf_exhaustive(counters, inst)?;
    Ok((Box::new(stream), QbfMode::Exhaustive))
}

/// The fallback engine as its own entry point, so tests can run it on
/// instances the oracle engines also cover and compare outputs.
pub fn enumerate_qbf_exhaustive(
    counters: CounterHandle,
    inst: &QbfInstance,
) -> Result<ExhaustiveQbf, LogicError> {
    inst.validate()?;
    if inst.depth() > 4 {
        return Err(LogicError::Unsupported(format!(
            "quantifier depth {} exceeds the exhaustive engine's cap of 4",
            inst.depth()
        )));
    }
    if inst.num_vars > 20 {
        return Err(LogicError::Unsupported(format!(
            "{} variables exceed the exhaustive engine's cap of 20",
            inst.num_vars
        )));
    }
    Ok(ExhaustiveQbf {
        inst: inst.clone(),
        next: 0,
        total: 1u64 << inst.free_vars.len(),
        counters,
    })
}

/// Scans free assignments in lexicographic order and keeps those under
/// which the quantified part evaluates true. No oracle is involved; the
/// call counters stay untouched.
pub struct ExhaustiveQbf {
    inst: QbfInstance,
    next: u64,
    total: u64,
    counters: CounterHandle,
}

impl SolutionStream for ExhaustiveQbf {
    type Item = Assignment;

    fn next_solution(&mut self) -> Result<Option<Assignment>, crate::engine::EngineError> {
        while self.next < self.total {
            let a = Assignment::from_index(self.next, self.inst.free_vars.len());
            self.next += 1;
            if self.inst.evaluate_exhaustive(&a) {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    fn counters(&self) -> CounterHandle {
        self.counters.clone()
    }
}

/// Builds the prefix-extension stream when the quantifier shape is within
/// oracle reach; `None` otherwise.
fn oracle_stream(
    counters: CounterHandle,
    inst: &QbfInstance,
) -> Option<Box<dyn SolutionStream<Item = Assignment>>> {
    use Quantifier::{Exists, Forall};
    let (leading_exists, forall) = match inst.blocks.as_slice() {
        [] => (Vec::new(), None),
        [(Exists, e)] => (e.clone(), None),
        [(Forall, u)] => (Vec::new(), Some(u.clone())),
        [(Exists, e), (Forall, u)] => (e.clone(), Some(u.clone())),
        _ => return None,
    };
    let free = inst.free_vars.clone();
    let positions = free.len();

    match (forall, &inst.matrix) {
        // Purely existential, CNF matrix: the extension question is plain
        // satisfiability with the prefix as assumptions; quantified
        // existential variables are simply left open in the query.
        (None, Matrix::Cnf(f)) => {
            let f = f.clone();
            let oracle = SatOracle::new(counters.clone());
            Some(Box::new(Flashlight::new(positions, counters, move |prefix: &[bool]| {
                let assumptions: Vec<Literal> = prefix
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| Literal::new(free[i], b))
                    .collect();
                oracle.solve(&f, &assumptions)
            })))
        }
        // Purely existential, DNF matrix: satisfiable iff some term is
        // compatible with the prefix, a polynomial scan. Recorded as a
        // non-NP call so oracle accounting stays honest.
        (None, Matrix::Dnf(d)) => {
            let d = d.clone();
            let recorder = counters.clone();
            Some(Box::new(Flashlight::new(positions, counters, move |prefix: &[bool]| {
                recorder.record((d.token_size() + prefix.len()) as u64, false);
                Ok(term_compatible(&d, &free, prefix))
            })))
        }
        // One universal block, optionally below a leading existential
        // block: the extension question is an exists-forall query where the
        // undecided free variables join the existential set and the prefix
        // becomes unit side clauses.
        (Some(forall), _) => {
            let exists: Vec<VarId> = free.iter().copied().chain(leading_exists).collect();
            let matrix = inst.matrix.clone();
            let num_vars = inst.num_vars;
            let sigma2 = Sigma2Oracle::new(counters.clone());
            Some(Box::new(Flashlight::new(positions, counters, move |prefix: &[bool]| {
                let mut side = CnfFormula::new(num_vars);
                for (i, &b) in prefix.iter().enumerate() {
                    side.push_clause(Clause::expect(vec![Literal::new(free[i], b)]));
                }
                let q = Sigma2Query {
                    num_vars,
                    exists: &exists,
                    forall: &forall,
                    matrix: &matrix,
                    side: &side,
                };
                sigma2.solve(&q)
            })))
        }
    }
}

/// Is some term of `d` consistent with the decided prefix? Terms are
/// contradiction-free, so consistency with the decided variables is all it
/// takes for the term to be satisfiable.
fn term_compatible(d: &DnfFormula, free: &[VarId], prefix: &[bool]) -> bool {
    let mut assigned: Vec<Option<bool>> = vec![None; d.num_vars() as usize + 1];
    for (i, &b) in prefix.iter().enumerate() {
        assigned[free[i] as usize] = Some(b);
    }
    d.terms().iter().any(|t| {
        t.literals()
            .iter()
            .all(|l| assigned[l.var() as usize].map_or(true, |b| b == l.is_positive()))
    })
}
