//! Cardinality-minimal model enumeration.
//!
//! Two phases. The minimum model weight k* is found by a linear scan
//! k = 0, 1, 2, ... asking whether the formula stays satisfiable under an
//! at-most-k constraint; the first satisfiable k is k*, and an input with
//! no model exhausts the scan (at most n+1 oracle calls either way). The
//! weight-k* models are then enumerated in lexicographic order by prefix
//! extension over the original variables against the formula conjoined
//! with an exactly-k* constraint. The sequential-counter registers are
//! functionally determined, so distinct emissions always differ on the
//! original variables.

use crate::engine::{Flashlight, ReplayStream, SolutionStream};
use crate::logic::{with_cardinality, CardSense, CardinalityConstraint};
use crate::model::{Assignment, CnfFormula, Literal, VarId};
use crate::oracle::{CounterHandle, OracleError, SatOracle};

pub struct CardMinEnumeration {
    /// Minimum model weight, absent when the formula is unsatisfiable.
    pub k_star: Option<usize>,
    /// Weight-k* models over the original variables, lexicographic; empty
    /// when `k_star` is absent.
    pub stream: Box<dyn SolutionStream<Item = Assignment>>,
}

/// Runs the k* scan (eagerly, so the scan's oracle calls are charged to
/// construction rather than to the first delay gap) and returns the stream.
pub fn cardinality_minimal_models(
    counters: CounterHandle,
    f: &CnfFormula,
) -> Result<CardMinEnumeration, OracleError> {
    let n = f.num_vars();
    let scan_oracle = SatOracle::new(counters.clone());
    let all_vars: Vec<VarId> = (1..=n).collect();
    let mut k_star = None;
    for k in 0..=n as usize {
        let c = CardinalityConstraint::new(all_vars.clone(), k, CardSense::AtMost)
            .expect("bound ranges over 0..=n");
        let bounded = with_cardinality(f, &c);
        if scan_oracle.solve(&bounded, &[])? {
            k_star = Some(k);
            break;
        }
    }
    let Some(k) = k_star else {
        return Ok(CardMinEnumeration {
            k_star: None,
            stream: Box::new(ReplayStream::<Assignment>::new(Vec::new())),
        });
    };

    let c = CardinalityConstraint::new(all_vars, k, CardSense::Exactly)
        .expect("k_star is at most n");
    let encoded = with_cardinality(f, &c);
    let oracle = SatOracle::new(counters.clone());
    let ext = move |prefix: &[bool]| {
        let assumptions: Vec<Literal> = prefix
            .iter()
            .enumerate()
            .map(|(i, &b)| Literal::new(i as VarId + 1, b))
            .collect();
        oracle.solve(&encoded, &assumptions)
    };
    Ok(CardMinEnumeration {
        k_star: Some(k),
        stream: Box::new(Flashlight::new(n as usize, counters, ext)),
    })
}
