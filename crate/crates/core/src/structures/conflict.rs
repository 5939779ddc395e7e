//! Grounding dependencies into conflict sets.
//!
//! Consistency under equality-generating dependencies is downward closed:
//! an embedding of a dependency body whose equated values differ stays
//! violating in every superset of its image. Each such embedding therefore
//! names a set of atoms that no consistent sub-instance may fully retain,
//! and a sub-instance is consistent exactly when it contains none of these
//! sets. Only inclusion-minimal sets are kept: a superset conflict is
//! implied by the minimal one inside it, and the maximality encodings
//! downstream are only correct over minimal conflicts.

use crate::model::{Atom, DatabaseInstance, Egd, EgdTerm};
use std::collections::{BTreeSet, HashMap};

/// An inclusion-minimal set of atom indices that cannot all be kept.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConflictSet {
    pub atoms: BTreeSet<usize>,
}

/// All minimal conflict sets of `d` under `egds`: one per violating body
/// embedding, deduplicated, with non-minimal sets dropped, in ascending
/// order. An empty result means `d` satisfies every dependency.
pub fn ground_egds(d: &DatabaseInstance, egds: &[Egd]) -> Vec<ConflictSet> {
    let mut raw: Vec<BTreeSet<usize>> = Vec::new();
    for egd in egds {
        egd.validate().expect("EGD with empty body or unbound equation variable");
        let mut binding = HashMap::new();
        let mut chosen = Vec::new();
        collect(egd, &d.atoms, 0, &mut binding, &mut chosen, &mut raw);
    }
    raw.sort_by_key(BTreeSet::len);
    let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
    for set in raw {
        if !minimal.iter().any(|kept| kept.is_subset(&set)) {
            minimal.push(set);
        }
    }
    minimal.sort();
    minimal.into_iter().map(|atoms| ConflictSet { atoms }).collect()
}

/// Extends a partial embedding of `egd.body[at..]` into `atoms` in every
/// possible way, recording the image index set of each completion whose
/// equated variables received different values.
fn collect<'a>(
    egd: &'a Egd,
    atoms: &'a [Atom],
    at: usize,
    binding: &mut HashMap<&'a str, &'a str>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if at == egd.body.len() {
        let lv = binding[egd.lhs.as_str()];
        let rv = binding[egd.rhs.as_str()];
        if lv != rv {
            out.push(chosen.iter().copied().collect());
        }
        return;
    }
    let pat = &egd.body[at];
    'cand: for (index, atom) in atoms.iter().enumerate() {
        if atom.predicate != pat.predicate || atom.args.len() != pat.args.len() {
            continue;
        }
        let mut added: Vec<&str> = Vec::new();
        for (t, value) in pat.args.iter().zip(&atom.args) {
            match t {
                EgdTerm::Const(c) => {
                    if c != value {
                        unbind(binding, &added);
                        continue 'cand;
                    }
                }
                EgdTerm::Var(name) => match binding.get(name.as_str()) {
                    Some(&bound) if bound != value.as_str() => {
                        unbind(binding, &added);
                        continue 'cand;
                    }
                    Some(_) => {}
                    None => {
                        binding.insert(name, value);
                        added.push(name);
                    }
                },
            }
        }
        chosen.push(index);
        collect(egd, atoms, at + 1, binding, chosen, out);
        chosen.pop();
        unbind(binding, &added);
    }
}

fn unbind<'a>(binding: &mut HashMap<&'a str, &'a str>, added: &[&'a str]) {
    for name in added {
        binding.remove(name);
    }
}
