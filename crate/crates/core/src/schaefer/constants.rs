//! Eliminating constant constraints in favor of implication chains.
//!
//! A formula may pin variables with the unary constants T = {1} and
//! F = {0}. Languages with implications can simulate the pinning: add two
//! pole variables f and t, substitute f for every F-pinned variable and t
//! for every T-pinned one inside the remaining atoms, and wire every
//! variable into the implication order f → x → t (pinned variables are
//! tied to their pole from both sides). Models of the target with f false
//! and t true restrict to exactly the models of the source. The only other
//! models the chains allow are the all-zero and all-one points (f → t
//! rules out f true with t false, and either remaining pattern collapses
//! every variable to its pole), so at most two target models map to
//! nothing. Contradictory constants tie f and t together, which empties
//! the f-false, t-true slice and with it the output.

use crate::engine::Reduction;
use crate::model::{Assignment, BoolRelation, GammaFormula, VarId};

/// The outcome of the elimination: the target formula plus everything
/// needed to map its models back.
pub struct ConstantsElimination {
    pub target: GammaFormula,
    /// Pole variable substituted for F-pinned variables; must be false.
    pub false_var: VarId,
    /// Pole variable substituted for T-pinned variables; must be true.
    pub true_var: VarId,
    /// Name of the implication relation inside the target's language.
    pub imp_name: String,
    num_source_vars: VarId,
}

impl ConstantsElimination {
    /// Maps a target model back to a source model: the restriction to the
    /// source variables when the poles sit right, nothing otherwise.
    pub fn map_model(&self, m: &Assignment) -> Option<Assignment> {
        if m.get(self.false_var) || !m.get(self.true_var) {
            return None;
        }
        Some(Assignment::from_bits(
            m.bits()[..self.num_source_vars as usize].to_vec(),
        ))
    }

    /// Packages the elimination as a reduction; every source model has
    /// exactly one preimage, so the batch bound is 1.
    pub fn into_reduction(self) -> Reduction<GammaFormula, Assignment, Assignment> {
        let false_var = self.false_var;
        let true_var = self.true_var;
        let keep = self.num_source_vars as usize;
        Reduction {
            target: self.target,
            tau: Box::new(move |m: &Assignment| {
                if m.get(false_var) || !m.get(true_var) {
                    return None;
                }
                Some(Assignment::from_bits(m.bits()[..keep].to_vec()))
            }),
            batch: 1,
        }
    }
}

fn implication_relation() -> BoolRelation {
    BoolRelation::new(
        2,
        vec![vec![false, false], vec![false, true], vec![true, true]],
    )
    .expect("fixed relation is well formed")
}

/// True for a unary relation holding exactly the given constant.
fn is_constant(rel: &BoolRelation, value: bool) -> bool {
    rel.arity() == 1 && rel.tuples() == [vec![value]]
}

/// Builds the elimination for `f`. Constant relations are recognized by
/// extension, not by name; formulas without any constants pass through
/// with just the chain scaffolding added.
pub fn constants_elimination(f: &GammaFormula) -> ConstantsElimination {
    let n = f.num_vars();
    let false_var = n + 1;
    let true_var = n + 2;

    let mut pinned_false = vec![false; n as usize + 1];
    let mut pinned_true = vec![false; n as usize + 1];
    for (name, vars) in f.constraints() {
        let rel = &f.language()[name];
        if is_constant(rel, false) {
            pinned_false[vars[0] as usize] = true;
        } else if is_constant(rel, true) {
            pinned_true[vars[0] as usize] = true;
        }
    }
    let substitute = |v: VarId| -> VarId {
        if pinned_false[v as usize] {
            false_var
        } else if pinned_true[v as usize] {
            true_var
        } else {
            v
        }
    };

    let mut target = GammaFormula::new(n + 2);
    let imp = implication_relation();
    let mut imp_name: Option<String> = None;
    for (name, rel) in f.language() {
        if is_constant(rel, false) || is_constant(rel, true) {
            continue;
        }
        if imp_name.is_none() && *rel == imp {
            imp_name = Some(name.clone());
        }
        target.add_relation(name, rel.clone()).expect("source names are unique");
    }
    let imp_name = imp_name.unwrap_or_else(|| {
        let mut candidate = "Imp".to_string();
        let mut i = 2;
        while target.relation(&candidate).is_some() {
            candidate = format!("Imp{i}");
            i += 1;
        }
        target.add_relation(&candidate, imp).expect("candidate name is fresh");
        candidate
    });

    for (name, vars) in f.constraints() {
        let rel = &f.language()[name];
        if is_constant(rel, false) || is_constant(rel, true) {
            continue;
        }
        let mapped: Vec<VarId> = vars.iter().map(|&v| substitute(v)).collect();
        target.add_constraint(name, mapped).expect("target covers all variables");
    }

    let mut chain = |a: VarId, b: VarId| {
        target
            .add_constraint(&imp_name, vec![a, b])
            .expect("chain endpoints are in range");
    };
    chain(false_var, true_var);
    for v in 1..=n {
        if pinned_false[v as usize] {
            chain(v, false_var);
            chain(false_var, v);
            // A variable pinned both ways ties the poles together and
            // empties the accepted slice, matching the unsatisfiable
            // source.
            if pinned_true[v as usize] {
                chain(v, true_var);
                chain(true_var, v);
            }
        } else if pinned_true[v as usize] {
            chain(v, true_var);
            chain(true_var, v);
        } else {
            chain(false_var, v);
            chain(v, true_var);
        }
    }

    ConstantsElimination {
        target,
        false_var,
        true_var,
        imp_name,
        num_source_vars: n,
    }
}
