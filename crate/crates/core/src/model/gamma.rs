//! Constraint formulas over a finite language of Boolean relations.

use super::{Assignment, ModelError, VarId};
use std::collections::BTreeMap;

/// A Boolean relation given extensionally: a nonempty set of tuples of a
/// fixed arity. Tuples are kept sorted for canonical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolRelation {
    arity: usize,
    tuples: Vec<Vec<bool>>,
}

impl BoolRelation {
    pub fn new(arity: usize, mut tuples: Vec<Vec<bool>>) -> Result<Self, ModelError> {
        if arity == 0 || arity > 16 {
            return Err(ModelError::BadArity(arity));
        }
        for t in &tuples {
            if t.len() != arity {
                return Err(ModelError::TupleWidth { arity, got: t.len() });
            }
        }
        tuples.sort();
        tuples.dedup();
        if tuples.is_empty() {
            return Err(ModelError::EmptyRelation);
        }
        Ok(BoolRelation { arity, tuples })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[Vec<bool>] {
        &self.tuples
    }

    pub fn contains(&self, tuple: &[bool]) -> bool {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }

    /// Tuples as bitmasks with coordinate 1 in the least significant bit;
    /// convenient for closure computations.
    pub fn tuple_masks(&self) -> Vec<u16> {
        self.tuples
            .iter()
            .map(|t| {
                t.iter()
                    .enumerate()
                    .fold(0u16, |m, (i, &b)| if b { m | 1 << i } else { m })
            })
            .collect()
    }

    pub fn from_masks(arity: usize, masks: &[u16]) -> Result<Self, ModelError> {
        let tuples = masks
            .iter()
            .map(|&m| (0..arity).map(|i| m >> i & 1 == 1).collect())
            .collect();
        Self::new(arity, tuples)
    }
}

/// Conjunction of relation atoms applied to variables `1..=num_vars`.
/// Variables may repeat within an atom; unconstrained variables are free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFormula {
    num_vars: VarId,
    language: BTreeMap<String, BoolRelation>,
    constraints: Vec<(String, Vec<VarId>)>,
}

impl GammaFormula {
    pub fn new(num_vars: VarId) -> Self {
        GammaFormula {
            num_vars,
            language: BTreeMap::new(),
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> VarId {
        self.num_vars
    }

    pub fn add_relation(&mut self, name: &str, rel: BoolRelation) -> Result<(), ModelError> {
        if self.language.contains_key(name) {
            return Err(ModelError::DuplicateRelation(name.to_string()));
        }
        self.language.insert(name.to_string(), rel);
        Ok(())
    }

    pub fn add_constraint(&mut self, name: &str, vars: Vec<VarId>) -> Result<(), ModelError> {
        let rel = self
            .language
            .get(name)
            .ok_or_else(|| ModelError::UnknownRelation(name.to_string()))?;
        if vars.len() != rel.arity() {
            return Err(ModelError::ConstraintArity {
                name: name.to_string(),
                arity: rel.arity(),
                got: vars.len(),
            });
        }
        for &v in &vars {
            if v == 0 || v > self.num_vars {
                return Err(ModelError::VarOutOfRange { var: v, num_vars: self.num_vars });
            }
        }
        self.constraints.push((name.to_string(), vars));
        Ok(())
    }

    pub fn language(&self) -> &BTreeMap<String, BoolRelation> {
        &self.language
    }

    pub fn relation(&self, name: &str) -> Option<&BoolRelation> {
        self.language.get(name)
    }

    pub fn constraints(&self) -> &[(String, Vec<VarId>)] {
        &self.constraints
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        self.constraints.iter().all(|(name, vars)| {
            let tuple: Vec<bool> = vars.iter().map(|&v| a.get(v)).collect();
            self.language[name].contains(&tuple)
        })
    }

    /// Token measure used for oracle-input accounting: one slot per argument
    /// plus a terminator per constraint.
    pub fn token_size(&self) -> usize {
        self.constraints.iter().map(|(_, vs)| vs.len() + 1).sum()
    }
}
