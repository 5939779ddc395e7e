//! Carrying cardinality-minimal model enumeration into diagnosis.
//!
//! For a CNF formula φ over n variables that the all-zero assignment does
//! not satisfy, build one diagnosis component per variable,
//!
//! ```text
//! φ'_i = (φ ∨ x₀) ∧ (¬x_i ∨ x₀)
//! ```
//!
//! over the original variables plus a fresh x₀, observing ¬x₀. With x₀
//! false the retained components collapse to φ with their variables forced
//! false, so a component subset is consistent with the observation exactly
//! when φ has a model that is zero on the retained indices. Maximal
//! retained sets are therefore complements of minimal-support models, and
//! flipping the bit vector maps each diagnosis to one cardinality-minimal
//! model. The zero-valid case is excluded because the full component set
//! would then be consistent with the observation, which the diagnosis
//! problem rejects rather than solves.
//!
//! One escape hatch: when φ is unsatisfiable the empty retained set is
//! still a diagnosis (nothing retained conflicts with nothing), but its
//! complement, the all-ones vector, satisfies nothing. The mapping checks
//! the flipped vector against φ and drops it otherwise, keeping the
//! composed output equal to the model set. For satisfiable φ the check
//! never fires: a maximal retained set forces a model supported inside
//! its complement, and minimality of the weight makes that support exact.

use super::KrError;
use crate::engine::Reduction;
use crate::model::{Assignment, Clause, CnfFormula, DiagnosisInstance, Literal};

/// Builds the diagnosis instance and the solution mapping (bit-vector
/// complement). Every cardinality-minimal model has exactly one preimage,
/// so the batch bound is 1.
pub fn cardmin_to_mbd(
    f: &CnfFormula,
) -> Result<Reduction<DiagnosisInstance, Assignment, Assignment>, KrError> {
    let n = f.num_vars();
    if f.evaluate(&Assignment::from_bits(vec![false; n as usize])) {
        return Err(KrError::ZeroValid);
    }
    let x0 = n + 1;
    let mut components = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let mut comp = CnfFormula::new(n + 1);
        for c in f.clauses() {
            let mut lits = c.literals().to_vec();
            lits.push(Literal::positive(x0));
            comp.push_clause(Clause::expect(lits));
        }
        comp.push_clause(Clause::expect(vec![
            Literal::negative(i),
            Literal::positive(x0),
        ]));
        components.push(comp);
    }
    let mut mu = CnfFormula::new(n + 1);
    mu.push_clause(Clause::expect(vec![Literal::negative(x0)]));
    let target = DiagnosisInstance { num_vars: n + 1, components, mu };
    let source = f.clone();
    Ok(Reduction {
        target,
        tau: Box::new(move |s: &Assignment| {
            let flipped = Assignment::from_bits((1..=n).map(|i| !s.get(i)).collect());
            source.evaluate(&flipped).then_some(flipped)
        }),
        batch: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_to_completion, ReducedStream};
    use crate::kr::diagnosis_enum;
    use crate::logic::cardinality_minimal_models;
    use crate::oracle::CounterHandle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn cnf(n: VarId, clauses: &[&[i64]]) -> CnfFormula {
        let mut f = CnfFormula::new(n);
        for c in clauses {
            f.push_clause(Clause::expect(
                c.iter().map(|&v| Literal::from_dimacs(v).unwrap()).collect(),
            ));
        }
        f
    }

    fn through_reduction(f: &CnfFormula) -> Vec<String> {
        let r = cardmin_to_mbd(f).unwrap();
        let inner = diagnosis_enum(CounterHandle::new(), &r.target).unwrap();
        let tau = r.tau;
        let mut stream = ReducedStream::new(inner, r.batch, move |s| tau(s));
        let (models, _) = run_to_completion(&mut stream, None).unwrap();
        models.iter().map(Assignment::to_bitstring).collect()
    }

    fn direct(f: &CnfFormula) -> Vec<String> {
        let e = cardinality_minimal_models(CounterHandle::new(), f).unwrap();
        let mut stream = e.stream;
        let (models, _) = run_to_completion(&mut stream, None).unwrap();
        models.iter().map(Assignment::to_bitstring).collect()
    }

    #[test]
    fn single_positive_unit() {
        let f = cnf(1, &[&[1]]);
        assert_eq!(through_reduction(&f), vec!["1"]);
    }

    /// Output follows the diagnosis stream's lex order, so the mapped
    /// models arrive complemented: retained sets 01, 10 become models
    /// 10, 01.
    #[test]
    fn disjunction_gives_both_singletons() {
        let f = cnf(2, &[&[1, 2]]);
        assert_eq!(through_reduction(&f), vec!["10", "01"]);
    }

    #[test]
    fn zero_valid_is_rejected() {
        assert!(matches!(cardmin_to_mbd(&CnfFormula::new(2)), Err(KrError::ZeroValid)));
        let f = cnf(2, &[&[-1, 2]]);
        assert!(matches!(cardmin_to_mbd(&f), Err(KrError::ZeroValid)));
    }

    /// Unsatisfiable but not zero-valid: the target instance's lone
    /// diagnosis (retain nothing) maps to no model, so the composed
    /// output is empty just like the direct enumeration's.
    #[test]
    fn unsatisfiable_source_yields_nothing() {
        let f = cnf(1, &[&[1], &[-1]]);
        assert_eq!(through_reduction(&f), Vec::<String>::new());
    }

    /// Every diagnosis maps to a distinct model (the mapping is injective
    /// on the diagnosis set), and the mapped set equals the direct
    /// enumerator's output.
    #[test]
    fn bijects_with_direct_enumeration_on_random_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(620);
        let mut rounds = 0;
        while rounds < 80 {
            let n: VarId = rng.gen_range(1..=6);
            let mut f = CnfFormula::new(n);
            for _ in 0..rng.gen_range(1..=6) {
                let len = rng.gen_range(1..=3.min(n));
                let mut vars: Vec<VarId> = (1..=n).collect();
                for i in (1..vars.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    vars.swap(i, j);
                }
                let lits: Vec<Literal> = vars[..len as usize]
                    .iter()
                    .map(|&v| Literal::new(v, rng.gen_bool(0.5)))
                    .collect();
                f.push_clause(Clause::expect(lits));
            }
            let Ok(r) = cardmin_to_mbd(&f) else {
                continue; // zero-valid draw
            };
            rounds += 1;

            let mut inner = diagnosis_enum(CounterHandle::new(), &r.target).unwrap();
            let (diagnoses, _) = run_to_completion(&mut inner, None).unwrap();
            let mapped: Vec<String> = diagnoses
                .iter()
                .filter_map(|s| r.map_solution(s).map(|a| a.to_bitstring()))
                .collect();
            let distinct: HashSet<&String> = mapped.iter().collect();
            assert_eq!(distinct.len(), mapped.len(), "mapping must be injective");
            assert!(diagnoses.len() - mapped.len() <= 1, "at most one dropped diagnosis");

            let mut sorted = mapped.clone();
            sorted.sort();
            let mut expected = direct(&f);
            expected.sort();
            assert_eq!(sorted, expected);
        }
    }
}
