//! Free-variable enumeration through a single exists-forall oracle with
//! growing input: the incremental counterpart to the prefix-extension
//! engine in [`crate::logic::enumerate_qbf`].
//!
//! Each round asks the oracle for any witness of the remaining solutions,
//! emits its free-variable part, and appends one disequality clause over
//! the free variables to the oracle's side input so the same solution can
//! never be produced again. The oracle input therefore grows by exactly
//! one clause (free-variable count plus one token) per output, while the
//! number of oracle calls stays at one per output plus one final refusal.

use crate::engine::{EngineError, SolutionStream};
use crate::logic::LogicError;
use crate::model::{Assignment, Clause, CnfFormula, Literal, Matrix, QbfInstance, Quantifier, VarId};
use crate::oracle::{CounterHandle, Sigma2Oracle, Sigma2Query};

/// Enumerates the same set as `enumerate_qbf` for prefixes up to ∃∀, but in
/// the blocking style: no prefix search, one oracle round per solution.
pub struct PiSigmaStream {
    oracle: Sigma2Oracle,
    num_vars: VarId,
    free: Vec<VarId>,
    exists: Vec<VarId>,
    forall: Vec<VarId>,
    matrix: Matrix,
    side: CnfFormula,
    done: bool,
}

impl PiSigmaStream {
    /// Accepts prefix shapes: none, ∃, ∀, ∃∀. A leading existential block
    /// is folded into the oracle's existential set; its values are searched
    /// but not emitted.
    pub fn new(counters: CounterHandle, inst: &QbfInstance) -> Result<Self, LogicError> {
        inst.validate()?;
        use Quantifier::{Exists, Forall};
        let (leading_exists, forall) = match inst.blocks.as_slice() {
            [] => (Vec::new(), Vec::new()),
            [(Exists, e)] => (e.clone(), Vec::new()),
            [(Forall, u)] => (Vec::new(), u.clone()),
            [(Exists, e), (Forall, u)] => (e.clone(), u.clone()),
            _ => {
                return Err(LogicError::Unsupported(format!(
                    "prefix depth {} is beyond the exists-forall oracle",
                    inst.depth()
                )))
            }
        };
        let free = inst.free_vars.clone();
        let exists: Vec<VarId> = free.iter().copied().chain(leading_exists).collect();
        Ok(PiSigmaStream {
            oracle: Sigma2Oracle::new(counters),
            num_vars: inst.num_vars,
            free,
            exists,
            forall,
            matrix: inst.matrix.clone(),
            side: CnfFormula::new(inst.num_vars),
            done: false,
        })
    }

    /// The side formula accumulated so far, one disequality clause per
    /// emitted solution. Exposed for input-growth checks.
    pub fn side(&self) -> &CnfFormula {
        &self.side
    }
}

impl SolutionStream for PiSigmaStream {
    type Item = Assignment;

    fn next_solution(&mut self) -> Result<Option<Assignment>, EngineError> {
        if self.done {
            return Ok(None);
        }
        let q = Sigma2Query {
            num_vars: self.num_vars,
            exists: &self.exists,
            forall: &self.forall,
            matrix: &self.matrix,
            side: &self.side,
        };
        match self.oracle.solve_with_witness(&q)? {
            None => {
                self.done = true;
                Ok(None)
            }
            Some(witness) => {
                let out = witness.project(&self.free);
                if self.free.is_empty() {
                    // The empty assignment is the one and only solution;
                    // a blocking clause over zero variables would be the
                    // empty clause, so just stop here.
                    self.done = true;
                } else {
                    let lits: Vec<Literal> = self
                        .free
                        .iter()
                        .map(|&v| Literal::new(v, !witness.get(v)))
                        .collect();
                    self.side.push_clause(Clause::expect(lits));
                }
                Ok(Some(out))
            }
        }
    }

    fn counters(&self) -> CounterHandle {
        self.oracle.counters()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_to_completion;
    use crate::logic::enumerate_qbf_exhaustive;
    use crate::model::{CnfFormula, DnfFormula, DnfTerm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn cnf_matrix(n: VarId, clauses: &[&[i64]]) -> Matrix {
        let mut f = CnfFormula::new(n);
        for c in clauses {
            f.push_clause(Clause::expect(
                c.iter().map(|&v| Literal::from_dimacs(v).unwrap()).collect(),
            ));
        }
        Matrix::Cnf(f)
    }

    #[test]
    fn tautological_matrix_single_free_var() {
        let inst = QbfInstance {
            num_vars: 1,
            free_vars: vec![1],
            blocks: vec![],
            matrix: cnf_matrix(1, &[]),
        };
        let mut stream = PiSigmaStream::new(CounterHandle::new(), &inst).unwrap();
        let (out, _) = run_to_completion(&mut stream, None).unwrap();
        let set: BTreeSet<String> = out.iter().map(Assignment::to_bitstring).collect();
        assert_eq!(set.len(), out.len(), "duplicate emissions");
        assert_eq!(set, BTreeSet::from(["0".to_string(), "1".to_string()]));
    }

    #[test]
    fn no_solutions_stops_after_one_round() {
        let inst = QbfInstance {
            num_vars: 1,
            free_vars: vec![1],
            blocks: vec![],
            matrix: cnf_matrix(1, &[&[1], &[-1]]),
        };
        let counters = CounterHandle::new();
        let mut stream = PiSigmaStream::new(counters.clone(), &inst).unwrap();
        let (out, _) = run_to_completion(&mut stream, None).unwrap();
        assert!(out.is_empty());
        assert_eq!(counters.calls(), 1);
    }

    #[test]
    fn deep_prefix_rejected() {
        let inst = QbfInstance {
            num_vars: 3,
            free_vars: vec![1],
            blocks: vec![(Quantifier::Forall, vec![2]), (Quantifier::Exists, vec![3])],
            matrix: cnf_matrix(3, &[]),
        };
        assert!(matches!(
            PiSigmaStream::new(CounterHandle::new(), &inst),
            Err(LogicError::Unsupported(_))
        ));
    }

    fn random_instance(rng: &mut ChaCha8Rng) -> QbfInstance {
        let n: VarId = rng.gen_range(1..=8);
        let mut vars: Vec<VarId> = (1..=n).collect();
        for i in 0..vars.len() {
            let j = rng.gen_range(i..vars.len());
            vars.swap(i, j);
        }
        let shape = if n >= 2 { rng.gen_range(0..4u32) } else { rng.gen_range(0..3u32) };
        let quantified = match shape {
            0 => 0,
            1 | 2 => rng.gen_range(1..=n as usize),
            _ => rng.gen_range(2..=n as usize),
        };
        let free: Vec<VarId> = vars[quantified..].to_vec();
        let blocks = match shape {
            0 => vec![],
            1 => vec![(Quantifier::Exists, vars[..quantified].to_vec())],
            2 => vec![(Quantifier::Forall, vars[..quantified].to_vec())],
            _ => {
                let split = rng.gen_range(1..quantified);
                vec![
                    (Quantifier::Exists, vars[..split].to_vec()),
                    (Quantifier::Forall, vars[split..quantified].to_vec()),
                ]
            }
        };
        let matrix = if rng.gen() {
            let mut f = CnfFormula::new(n);
            for _ in 0..rng.gen_range(1..=6) {
                let width = rng.gen_range(1..=3.min(n as usize));
                let mut pool: Vec<VarId> = (1..=n).collect();
                for i in 0..width {
                    let j = rng.gen_range(i..pool.len());
                    pool.swap(i, j);
                }
                f.push_clause(Clause::expect(
                    pool[..width].iter().map(|&v| Literal::new(v, rng.gen())).collect(),
                ));
            }
            Matrix::Cnf(f)
        } else {
            let mut f = DnfFormula::new(n);
            for _ in 0..rng.gen_range(1..=5) {
                let width = rng.gen_range(1..=3.min(n as usize));
                let mut pool: Vec<VarId> = (1..=n).collect();
                for i in 0..width {
                    let j = rng.gen_range(i..pool.len());
                    pool.swap(i, j);
                }
                f.push_term(
                    DnfTerm::new(
                        pool[..width].iter().map(|&v| Literal::new(v, rng.gen())).collect(),
                    )
                    .unwrap(),
                );
            }
            Matrix::Dnf(f)
        };
        QbfInstance { num_vars: n, free_vars: free, blocks, matrix }
    }

    /// Set equality with the exhaustive engine, no duplicates, and the
    /// incremental signature: recorded oracle input sizes strictly increase
    /// by the size of one disequality clause per emission.
    #[test]
    fn matches_exhaustive_and_input_grows_by_one_block() {
        let mut rng = ChaCha8Rng::seed_from_u64(421);
        for round in 0..150 {
            let inst = random_instance(&mut rng);
            inst.validate().unwrap();
            let counters = CounterHandle::new();
            let mut stream = PiSigmaStream::new(counters.clone(), &inst).unwrap();
            let (got, _) = run_to_completion(&mut stream, None).unwrap();

            let mut reference = enumerate_qbf_exhaustive(CounterHandle::new(), &inst).unwrap();
            let (want, _) = run_to_completion(&mut reference, None).unwrap();

            let got_set: BTreeSet<String> = got.iter().map(Assignment::to_bitstring).collect();
            let want_set: BTreeSet<String> = want.iter().map(Assignment::to_bitstring).collect();
            assert_eq!(got_set.len(), got.len(), "round {round}: duplicates");
            assert_eq!(got_set, want_set, "round {round}: {inst:?}");

            let sizes = counters.stats().input_sizes;
            let step = inst.free_vars.len() as u64 + 1;
            for (i, pair) in sizes.windows(2).enumerate() {
                // Call i+1 comes after emission i, whose clause added
                // free-count + 1 tokens. After the free set is exhausted
                // the stream stops, so every recorded gap is one block.
                assert_eq!(
                    pair[1] - pair[0],
                    step,
                    "round {round} call {i}: {sizes:?}"
                );
            }
        }
    }
}
