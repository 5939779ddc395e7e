//! Relational database instances and equality-generating dependencies.

use super::ModelError;
use std::collections::HashMap;
use std::fmt;

/// A ground fact, e.g. `p(0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.predicate, self.args.join(","))
    }
}

/// Term in an EGD body: variable or constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EgdTerm {
    Var(String),
    Const(String),
}

/// Non-ground atom in an EGD body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgdAtom {
    pub predicate: String,
    pub args: Vec<EgdTerm>,
}

/// Equality-generating dependency: whenever the body atoms embed into the
/// instance, the images of `lhs` and `rhs` must coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Egd {
    pub body: Vec<EgdAtom>,
    pub lhs: String,
    pub rhs: String,
}

impl Egd {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.body.is_empty() {
            return Err(ModelError::Invalid("EGD with empty body".into()));
        }
        let occurs = |name: &str| {
            self.body.iter().any(|a| {
                a.args.iter().any(|t| matches!(t, EgdTerm::Var(v) if v == name))
            })
        };
        for side in [&self.lhs, &self.rhs] {
            if !occurs(side) {
                return Err(ModelError::Invalid(format!(
                    "equation variable {side} does not occur in the EGD body"
                )));
            }
        }
        Ok(())
    }
}

/// Database instance: a declared domain of constants plus a duplicate-free
/// fact list in input order (positions matter for repair bit vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatabaseInstance {
    pub domain: Vec<String>,
    pub atoms: Vec<Atom>,
}

impl DatabaseInstance {
    pub fn new(domain: Vec<String>, atoms: Vec<Atom>) -> Result<Self, ModelError> {
        let mut dedup_dom = domain.clone();
        dedup_dom.sort();
        dedup_dom.dedup();
        if dedup_dom.len() != domain.len() {
            return Err(ModelError::Invalid("duplicate domain constant".into()));
        }
        let mut seen = Vec::new();
        let mut arity: HashMap<&str, usize> = HashMap::new();
        for a in &atoms {
            for c in &a.args {
                if !domain.contains(c) {
                    return Err(ModelError::Invalid(format!(
                        "constant {c:?} in {a} is outside the declared domain"
                    )));
                }
            }
            match arity.get(a.predicate.as_str()) {
                Some(&k) if k != a.args.len() => {
                    return Err(ModelError::Invalid(format!(
                        "predicate {} used with arities {k} and {}",
                        a.predicate,
                        a.args.len()
                    )))
                }
                _ => {
                    arity.insert(&a.predicate, a.args.len());
                }
            }
            if seen.contains(a) {
                continue; // duplicates dropped, first occurrence kept
            }
            seen.push(a.clone());
        }
        Ok(DatabaseInstance { domain, atoms: seen })
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }
}

/// Direct evaluation of a set of EGDs on the subset of `db.atoms` selected by
/// `keep` (positional; `keep.len() == db.atoms.len()`). This is the reference
/// consistency check: plain backtracking over body-atom embeddings, sharing
/// nothing with the conflict-set machinery.
pub fn egds_satisfied(db: &DatabaseInstance, egds: &[Egd], keep: &[bool]) -> bool {
    assert_eq!(keep.len(), db.atoms.len());
    let kept: Vec<&Atom> = db
        .atoms
        .iter()
        .zip(keep)
        .filter_map(|(a, &k)| k.then_some(a))
        .collect();
    egds.iter().all(|egd| !violated(egd, &kept))
}

fn violated(egd: &Egd, atoms: &[&Atom]) -> bool {
    let mut binding: HashMap<&str, &str> = HashMap::new();
    embed(egd, atoms, 0, &mut binding)
}

/// True iff some embedding of `egd.body[at..]` extends `binding` so that the
/// equation fails.
fn embed<'a>(
    egd: &'a Egd,
    atoms: &[&'a Atom],
    at: usize,
    binding: &mut HashMap<&'a str, &'a str>,
) -> bool {
    if at == egd.body.len() {
        let lv = binding.get(egd.lhs.as_str()).expect("validated: lhs occurs in body");
        let rv = binding.get(egd.rhs.as_str()).expect("validated: rhs occurs in body");
        return lv != rv;
    }
    let pat = &egd.body[at];
    'cand: for atom in atoms {
        if atom.predicate != pat.predicate || atom.args.len() != pat.args.len() {
            continue;
        }
        let mut added: Vec<&str> = Vec::new();
        for (t, value) in pat.args.iter().zip(&atom.args) {
            match t {
                EgdTerm::Const(c) => {
                    if c != value {
                        for name in added {
                            binding.remove(name);
                        }
                        continue 'cand;
                    }
                }
                EgdTerm::Var(name) => match binding.get(name.as_str()) {
                    Some(&bound) if bound != value.as_str() => {
                        for name in added {
                            binding.remove(name);
                        }
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
        if embed(egd, atoms, at + 1, binding) {
            return true;
        }
        for name in added {
            binding.remove(name);
        }
    }
    false
}
