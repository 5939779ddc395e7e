//! Searching a constraint language for an implication gadget.
//!
//! A gadget is a conjunction of language atoms over two distinguished
//! variables x, y and up to two auxiliaries whose model set projects onto
//! (x,y) as exactly {00, 01, 11}, with each projection extended by exactly
//! one auxiliary pattern. The one-to-one extension requirement is what
//! lets a gadget substitute for a genuine implication constraint without
//! changing solution counts.
//!
//! The search is complete for conjunctions: fix the three auxiliary
//! extension patterns, collect every atom satisfied by all three target
//! models, and check whether that maximal conjunction pins the model set
//! down exactly. Any conjunction with the target model set only uses
//! atoms from that collection, and dropping atoms never shrinks a model
//! set, so if the maximal conjunction overshoots, nothing works for those
//! patterns.

use super::SchaeferError;
use crate::model::{BoolRelation, GammaFormula, VarId};
use std::collections::BTreeMap;

const GADGET_ARITY_CAP: usize = 4;
const GADGET_AUX_CAP: usize = 2;

/// One candidate atom: a relation name and an argument tuple.
type Atom = (String, Vec<VarId>);

fn atom_accepts(rel: &BoolRelation, vars: &[VarId], model: &[bool]) -> bool {
    let tuple: Vec<bool> = vars.iter().map(|&v| model[v as usize - 1]).collect();
    rel.contains(&tuple)
}

/// All argument tuples (with repetition) of the given length over
/// variables `1..=total`, in lexicographic order.
fn argument_tuples(arity: usize, total: usize) -> Vec<Vec<VarId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=total as VarId).map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Searches `language` for an implication gadget with at most `max_aux`
/// auxiliary variables (capped at 2). Returns the smallest-auxiliary
/// gadget found as a formula over x = 1, y = 2, auxiliaries 3 upward, or
/// `None` when the exhaustive search comes up empty. Languages with a
/// relation wider than 4 exceed the search cap, which is an error rather
/// than a not-found answer.
pub fn imp_gadget_search(
    language: &BTreeMap<String, BoolRelation>,
    max_aux: usize,
) -> Result<Option<GammaFormula>, SchaeferError> {
    if max_aux > GADGET_AUX_CAP {
        return Err(SchaeferError::GadgetCap(format!(
            "{max_aux} auxiliary variables requested, cap is {GADGET_AUX_CAP}"
        )));
    }
    for (name, rel) in language {
        if rel.arity() > GADGET_ARITY_CAP {
            return Err(SchaeferError::GadgetCap(format!(
                "relation {name} has arity {}, cap is {GADGET_ARITY_CAP}",
                rel.arity()
            )));
        }
    }
    for naux in 0..=max_aux {
        let total = 2 + naux;
        // The three target models, as (x, y) plus one auxiliary pattern
        // each; patterns iterate in lexicographic order for determinism.
        for patterns in 0u32..(1u32 << (3 * naux)) {
            let ext = |slot: usize| -> Vec<bool> {
                (0..naux)
                    .map(|i| patterns >> (slot * naux + i) & 1 == 1)
                    .collect()
            };
            let mut targets: Vec<Vec<bool>> = Vec::with_capacity(3);
            for (x, y, slot) in [(false, false, 0), (false, true, 1), (true, true, 2)] {
                let mut m = vec![x, y];
                m.extend(ext(slot));
                targets.push(m);
            }
            if let Some(g) = build_for_targets(language, total, &targets) {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Tries to realize exactly the given model set over `total` variables.
fn build_for_targets(
    language: &BTreeMap<String, BoolRelation>,
    total: usize,
    targets: &[Vec<bool>],
) -> Option<GammaFormula> {
    let mut admissible: Vec<Atom> = Vec::new();
    for (name, rel) in language {
        for vars in argument_tuples(rel.arity(), total) {
            if targets.iter().all(|m| atom_accepts(rel, &vars, m)) {
                admissible.push((name.clone(), vars));
            }
        }
    }
    // Model set of the maximal conjunction.
    let is_target = |model: &[bool]| targets.iter().any(|t| t == model);
    let accepted_by_all = |model: &[bool]| {
        admissible
            .iter()
            .all(|(name, vars)| atom_accepts(&language[name], vars, model))
    };
    let all_models: Vec<Vec<bool>> = (0u32..(1u32 << total))
        .map(|idx| (0..total).map(|i| idx >> i & 1 == 1).collect())
        .collect();
    if all_models.iter().any(|m| accepted_by_all(m) != is_target(m)) {
        return None;
    }
    // Greedy irredundant subset: exclude each non-target model with the
    // first admissible atom that rejects it.
    let mut chosen: Vec<Atom> = Vec::new();
    for m in &all_models {
        if is_target(m) {
            continue;
        }
        let rejects =
            |(name, vars): &Atom| !atom_accepts(&language[name], vars, m);
        if chosen.iter().any(rejects) {
            continue;
        }
        let atom = admissible.iter().find(|&a| rejects(a)).expect(
            "maximal conjunction excludes this model, so some atom rejects it",
        );
        chosen.push(atom.clone());
    }
    let mut g = GammaFormula::new(total as VarId);
    for (name, rel) in language {
        if chosen.iter().any(|(n, _)| n == name) {
            g.add_relation(name, rel.clone()).expect("names are unique");
        }
    }
    for (name, vars) in chosen {
        g.add_constraint(&name, vars).expect("atoms fit the formula");
    }
    Some(g)
}
