//! Instance types for the diagnosis and abduction problems.

use super::{CnfFormula, Literal, ModelError, VarId};

/// Abduction instance: a background theory, candidate hypothesis literals,
/// and a query variable. Solutions are hypothesis subsets E with gamma ∧ E
/// satisfiable and gamma ∧ E entailing q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbductionInstance {
    pub gamma: CnfFormula,
    pub hypotheses: Vec<Literal>,
    pub q: VarId,
}

impl AbductionInstance {
    /// Structural checks only; the satisfiability of `gamma` is verified by
    /// the enumerator, which owns an oracle.
    pub fn validate_shape(&self) -> Result<(), ModelError> {
        let n = self.gamma.num_vars();
        if self.q == 0 || self.q > n {
            return Err(ModelError::VarOutOfRange { var: self.q, num_vars: n });
        }
        let mut seen = Vec::new();
        for &h in &self.hypotheses {
            if h.var() > n {
                return Err(ModelError::VarOutOfRange { var: h.var(), num_vars: n });
            }
            if h.var() == self.q {
                return Err(ModelError::Invalid(format!(
                    "query variable {} may not appear among the hypotheses",
                    self.q
                )));
            }
            if seen.contains(&h) {
                return Err(ModelError::Invalid(format!("hypothesis {h} listed twice")));
            }
            seen.push(h);
        }
        Ok(())
    }
}

/// Diagnosis instance: component formulas over a shared variable space plus
/// an observation `mu`. Solutions are cardinality-maximal component subsets
/// whose conjunction with `mu` is satisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosisInstance {
    pub num_vars: VarId,
    pub components: Vec<CnfFormula>,
    pub mu: CnfFormula,
}

impl DiagnosisInstance {
    pub fn validate_shape(&self) -> Result<(), ModelError> {
        for f in self.components.iter().chain(std::iter::once(&self.mu)) {
            if f.num_vars() != self.num_vars {
                return Err(ModelError::Invalid(format!(
                    "component variable space {} differs from instance space {}",
                    f.num_vars(),
                    self.num_vars
                )));
            }
        }
        if self.components.is_empty() {
            return Err(ModelError::Invalid("diagnosis instance with no components".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Clause;

    #[test]
    fn abduction_shape_checks() {
        let mut gamma = CnfFormula::new(3);
        gamma.push_clause(Clause::expect(vec![Literal::positive(1)]));
        let ok = AbductionInstance {
            gamma: gamma.clone(),
            hypotheses: vec![Literal::positive(2), Literal::negative(3)],
            q: 1,
        };
        ok.validate_shape().unwrap();

        let q_in_h = AbductionInstance {
            gamma: gamma.clone(),
            hypotheses: vec![Literal::positive(1)],
            q: 1,
        };
        assert!(q_in_h.validate_shape().is_err());

        let dup = AbductionInstance {
            gamma,
            hypotheses: vec![Literal::positive(2), Literal::positive(2)],
            q: 1,
        };
        assert!(dup.validate_shape().is_err());
    }

    #[test]
    fn diagnosis_shape_checks() {
        let inst = DiagnosisInstance {
            num_vars: 2,
            components: vec![CnfFormula::new(2)],
            mu: CnfFormula::new(1),
        };
        assert!(inst.validate_shape().is_err());
        let inst = DiagnosisInstance {
            num_vars: 2,
            components: vec![],
            mu: CnfFormula::new(2),
        };
        assert!(inst.validate_shape().is_err());
    }
}
