//! Model-based diagnosis: cardinality-maximal component subsets consistent
//! with an observation.
//!
//! The encoding attaches one selector variable to each component and
//! guards every component clause behind its selector, so a single SAT
//! query decides whether some assignment satisfies the observation plus
//! exactly the selected components. The maximal consistent cardinality c*
//! is found by scanning downward from the component count; enumeration is
//! then prefix extension over selector vectors against the encoding
//! constrained to exactly c* selected.

use super::KrError;
use crate::engine::{Flashlight, SolutionStream};
use crate::logic::{with_cardinality, CardSense, CardinalityConstraint};
use crate::model::{Assignment, Clause, CnfFormula, DiagnosisInstance, Literal, VarId};
use crate::oracle::{CounterHandle, SatOracle};

/// The scan result plus the running enumeration.
pub struct DiagnosisEnumeration {
    c_star: usize,
    stream: Box<dyn SolutionStream<Item = Assignment>>,
}

impl DiagnosisEnumeration {
    /// Maximal number of components retainable consistently with the
    /// observation.
    pub fn c_star(&self) -> usize {
        self.c_star
    }
}

impl SolutionStream for DiagnosisEnumeration {
    type Item = Assignment;

    fn next_solution(&mut self) -> Result<Option<Assignment>, crate::engine::EngineError> {
        self.stream.next_solution()
    }

    fn counters(&self) -> CounterHandle {
        self.stream.counters()
    }
}

/// Selector-guarded encoding: variables `1..=num_vars` are the instance's,
/// selector for component i is `num_vars + i`. The observation is always
/// in force; component clauses apply only under their selector.
fn selector_encoding(inst: &DiagnosisInstance) -> CnfFormula {
    let m = inst.components.len() as VarId;
    let mut f = CnfFormula::new(inst.num_vars + m);
    for c in inst.mu.clauses() {
        f.push_clause(c.clone());
    }
    for (i, comp) in inst.components.iter().enumerate() {
        let guard = Literal::negative(inst.num_vars + i as VarId + 1);
        for c in comp.clauses() {
            let mut lits = vec![guard];
            lits.extend_from_slice(c.literals());
            f.push_clause(Clause::expect(lits));
        }
    }
    f
}

/// Enumerates the diagnoses of `inst` in lexicographic order over
/// component bit vectors (1 = retained). Rejects instances violating the
/// problem preconditions: the full system must be inconsistent with the
/// observation, the system alone consistent, and the observation alone
/// satisfiable.
pub fn diagnosis_enum(
    counters: CounterHandle,
    inst: &DiagnosisInstance,
) -> Result<DiagnosisEnumeration, KrError> {
    inst.validate_shape()?;
    let m = inst.components.len();
    let oracle = SatOracle::new(counters.clone());

    let mut everything = CnfFormula::new(inst.num_vars);
    for c in inst.components.iter().flat_map(CnfFormula::clauses) {
        everything.push_clause(c.clone());
    }
    if !oracle.solve(&everything, &[])? {
        return Err(KrError::Invalid("system components are jointly inconsistent".into()));
    }
    if !oracle.solve(&inst.mu, &[])? {
        return Err(KrError::Invalid("observation is unsatisfiable".into()));
    }
    for c in inst.mu.clauses() {
        everything.push_clause(c.clone());
    }
    if oracle.solve(&everything, &[])? {
        return Err(KrError::Invalid(
            "system is consistent with the observation; nothing to diagnose".into(),
        ));
    }

    let base = selector_encoding(inst);
    let selectors: Vec<VarId> =
        (1..=m as VarId).map(|i| inst.num_vars + i).collect();
    let mut c_star = 0;
    for c in (0..=m).rev() {
        let constraint = CardinalityConstraint::new(selectors.clone(), c, CardSense::Exactly)
            .expect("bound within component count");
        let query = with_cardinality(&base, &constraint);
        if oracle.solve(&query, &[])? {
            c_star = c;
            break;
        }
        // c = 0 always succeeds: the observation alone is satisfiable.
    }

    let constraint = CardinalityConstraint::new(selectors.clone(), c_star, CardSense::Exactly)
        .expect("bound within component count");
    let query = with_cardinality(&base, &constraint);
    let ext = move |prefix: &[bool]| {
        let assumptions: Vec<Literal> = prefix
            .iter()
            .enumerate()
            .map(|(i, &b)| Literal::new(selectors[i], b))
            .collect();
        oracle.solve(&query, &assumptions)
    };
    Ok(DiagnosisEnumeration {
        c_star,
        stream: Box::new(Flashlight::new(m, counters, ext)),
    })
}
