//! All models of a CNF formula, by two engines with different oracle
//! regimes: prefix extension keeps every oracle input within `|f| + n`
//! tokens (polynomial-delay signature), blocking clauses let the input grow
//! with each output (incremental signature).

use crate::engine::{BlockingStream, Flashlight};
use crate::model::{CnfFormula, Literal, VarId};
use crate::oracle::{CounterHandle, OracleError, SatOracle};

/// Lexicographic enumeration by prefix extension. The extension question
/// "does this prefix extend to a model" is exactly a SAT call with the
/// prefix as assumptions, so each oracle input is the formula plus at most
/// one assumption per variable.
pub fn all_models_lex(
    counters: CounterHandle,
    f: CnfFormula,
) -> Flashlight<impl FnMut(&[bool]) -> Result<bool, OracleError>> {
    let n = f.num_vars() as usize;
    let oracle = SatOracle::new(counters.clone());
    Flashlight::new(n, counters, move |prefix: &[bool]| {
        let assumptions: Vec<Literal> = prefix
            .iter()
            .enumerate()
            .map(|(i, &b)| Literal::new(i as VarId + 1, b))
            .collect();
        oracle.solve(&f, &assumptions)
    })
}

/// Model enumeration by blocking clauses: each emitted model is excluded
/// from the formula and the oracle is asked again.
pub fn all_models_blocking(counters: CounterHandle, f: CnfFormula) -> BlockingStream {
    BlockingStream::all_models(counters, f)
}
