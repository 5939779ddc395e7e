//! Propositional abduction: all hypothesis subsets E with Γ ∧ E
//! satisfiable and Γ ∧ E ⊨ q.
//!
//! Enumeration is prefix extension over inclusion bits for the hypothesis
//! list. The extension check is counterexample-guided: a selector variable
//! per hypothesis, linked so that a selected hypothesis must hold, lets
//! one SAT call propose a consistent candidate E; a second call checks
//! entailment of q. A failed entailment check yields a model m of
//! Γ ∧ E ∧ ¬q, and m refutes every candidate built only from hypotheses m
//! satisfies, so "include some hypothesis m falsifies" joins the proposal
//! formula as a clause over the selectors and the loop repeats. When the
//! loop hits its proposal cap the check falls back to trying every
//! completion of the prefix, provided few enough bits remain undecided.

use super::KrError;
use crate::engine::{Flashlight, SolutionStream};
use crate::model::{AbductionInstance, Assignment, Clause, CnfFormula, Literal, VarId};
use crate::oracle::{CounterHandle, OracleError, SatOracle};

/// Proposal rounds per extension check before giving up on the guided
/// loop. Reached only on adversarial instances; the loop never repeats a
/// candidate, so it always terminates within 2^|H| + 1 rounds on its own.
const PROPOSAL_CAP: u64 = 10_000;

/// Most undecided bits the exhaustive fallback will sweep (2^12
/// completions, two oracle calls each).
const FALLBACK_CAP: usize = 12;

/// How an extension check resolves a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtsolMode {
    /// Guided loop first, exhaustive sweep if the proposal cap is hit and
    /// few enough bits are undecided.
    Auto,
    /// Guided loop only; the proposal cap is an error.
    Cegar,
    /// Exhaustive sweep only; more than [`FALLBACK_CAP`] undecided bits is
    /// an error.
    Exhaustive,
}

/// State shared by one enumeration's extension checks. Countermodel
/// clauses speak only about the instance, not the prefix that provoked
/// them, so they stay in force across checks.
struct ExtensionChecker {
    oracle: SatOracle,
    /// Γ plus selector links, accumulating countermodel clauses.
    proposal: CnfFormula,
    /// Γ alone, for entailment checks over the original variables.
    gamma: CnfFormula,
    hypotheses: Vec<Literal>,
    q: VarId,
    n: VarId,
}

impl ExtensionChecker {
    fn new(counters: CounterHandle, inst: &AbductionInstance) -> Self {
        let n = inst.gamma.num_vars();
        let m = inst.hypotheses.len() as VarId;
        let mut proposal = inst.gamma.clone();
        proposal.grow_vars(n + m);
        for (j, &h) in inst.hypotheses.iter().enumerate() {
            let selector = Literal::negative(n + j as VarId + 1);
            proposal.push_clause(Clause::expect(vec![selector, h]));
        }
        ExtensionChecker {
            oracle: SatOracle::new(counters),
            proposal,
            gamma: inst.gamma.clone(),
            hypotheses: inst.hypotheses.clone(),
            q: inst.q,
            n,
        }
    }

    /// The guided loop. `Ok(None)` means the proposal cap was exhausted
    /// before the answer was decided.
    fn guided(&mut self, decided: &[bool]) -> Result<Option<bool>, OracleError> {
        let assumptions: Vec<Literal> = decided
            .iter()
            .enumerate()
            .map(|(j, &b)| Literal::new(self.n + j as VarId + 1, b))
            .collect();
        for _ in 0..PROPOSAL_CAP {
            let Some(model) = self.oracle.solve_with_model(&self.proposal, &assumptions)? else {
                return Ok(Some(false));
            };
            let candidate: Vec<Literal> = self
                .hypotheses
                .iter()
                .enumerate()
                .filter(|(j, _)| model.get(self.n + *j as VarId + 1))
                .map(|(_, &h)| h)
                .collect();
            let mut entailment = candidate;
            entailment.push(Literal::negative(self.q));
            let Some(counter) = self.oracle.solve_with_model(&self.gamma, &entailment)? else {
                return Ok(Some(true));
            };
            let refuting: Vec<Literal> = self
                .hypotheses
                .iter()
                .enumerate()
                .filter(|(_, h)| !h.eval(&counter))
                .map(|(j, _)| Literal::positive(self.n + j as VarId + 1))
                .collect();
            self.proposal.push_clause(Clause::expect(refuting));
        }
        Ok(None)
    }

    /// Tries every completion of the prefix: one satisfiability call plus
    /// one entailment call each.
    fn exhaustive(&self, decided: &[bool]) -> Result<bool, OracleError> {
        let free = self.hypotheses.len() - decided.len();
        for completion in 0u64..1 << free {
            let mut selected: Vec<Literal> = decided
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b)
                .map(|(j, _)| self.hypotheses[j])
                .collect();
            for k in 0..free {
                if completion >> k & 1 == 1 {
                    selected.push(self.hypotheses[decided.len() + k]);
                }
            }
            if !self.oracle.solve(&self.gamma, &selected)? {
                continue;
            }
            selected.push(Literal::negative(self.q));
            if !self.oracle.solve(&self.gamma, &selected)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn auto(&mut self, decided: &[bool]) -> Result<bool, OracleError> {
        match self.guided(decided)? {
            Some(answer) => Ok(answer),
            None if self.hypotheses.len() - decided.len() <= FALLBACK_CAP => {
                self.exhaustive(decided)
            }
            None => Err(OracleError::IterationCap { iterations: PROPOSAL_CAP }),
        }
    }
}

/// Checks whether some completion of the decided prefix is an explanation.
pub fn abduction_extsol(
    counters: CounterHandle,
    inst: &AbductionInstance,
    decided: &[bool],
) -> Result<bool, KrError> {
    abduction_extsol_with(counters, inst, decided, ExtsolMode::Auto)
}

/// [`abduction_extsol`] with the resolution strategy pinned, so the two
/// paths can be cross-validated against each other.
pub fn abduction_extsol_with(
    counters: CounterHandle,
    inst: &AbductionInstance,
    decided: &[bool],
    mode: ExtsolMode,
) -> Result<bool, KrError> {
    inst.validate_shape()?;
    if decided.len() > inst.hypotheses.len() {
        return Err(KrError::Invalid(format!(
            "prefix decides {} bits but there are {} hypotheses",
            decided.len(),
            inst.hypotheses.len()
        )));
    }
    let mut checker = ExtensionChecker::new(counters, inst);
    match mode {
        ExtsolMode::Auto => Ok(checker.auto(decided)?),
        ExtsolMode::Cegar => match checker.guided(decided)? {
            Some(answer) => Ok(answer),
            None => Err(OracleError::IterationCap { iterations: PROPOSAL_CAP }.into()),
        },
        ExtsolMode::Exhaustive => {
            let free = inst.hypotheses.len() - decided.len();
            if free > FALLBACK_CAP {
                return Err(KrError::FallbackTooWide { got: free, cap: FALLBACK_CAP });
            }
            Ok(checker.exhaustive(decided)?)
        }
    }
}

/// All explanations as inclusion bit vectors over the hypothesis list, in
/// lexicographic order.
pub fn abduction_enum(
    counters: CounterHandle,
    inst: &AbductionInstance,
) -> Result<Box<dyn SolutionStream<Item = Assignment>>, KrError> {
    inst.validate_shape()?;
    let mut checker = ExtensionChecker::new(counters.clone(), inst);
    let ext = move |prefix: &[bool]| checker.auto(prefix);
    Ok(Box::new(Flashlight::new(inst.hypotheses.len(), counters, ext)))
}
