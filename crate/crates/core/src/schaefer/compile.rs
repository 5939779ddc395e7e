//! Compiling relations to clausal or linear form.
//!
//! Each target class admits a syntactic normal form: Horn clauses, dual
//! Horn clauses, 2-clauses, or GF(2) equations over the relation's
//! coordinate positions. The compiler enumerates every candidate of the
//! target shape entailed by the relation, keeps a small irredundant
//! subset, and then verifies by exhaustive model comparison that the
//! conjunction captures the relation exactly. Verification failure means
//! the caller-supplied closure flag was wrong, which is a bug in the
//! classifier, so it aborts rather than returning an error.

use super::{classify_relation, SchaeferError};
use crate::model::{BoolRelation, Clause, Literal, VarId};
use crate::oracle::{XorEquation, XorSystem};

/// Which normal form to compile into. `TwoCnf` serves bijunctive
/// relations; the other names match their classes directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompiledTarget {
    Horn,
    DualHorn,
    TwoCnf,
    AffineSystem,
}

/// A compiled relation: clauses or equations over coordinate positions
/// `1..=arity`, whose joint models are exactly the relation's tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompiledForm {
    Clauses { arity: usize, clauses: Vec<Clause> },
    Equations(XorSystem),
}

impl CompiledForm {
    pub fn accepts(&self, tuple: &[bool]) -> bool {
        match self {
            CompiledForm::Clauses { clauses, .. } => clauses.iter().all(|c| {
                c.literals()
                    .iter()
                    .any(|l| tuple[l.var() as usize - 1] == l.is_positive())
            }),
            CompiledForm::Equations(sys) => sys.evaluate(tuple),
        }
    }
}

/// True when the clause fits the target shape.
fn shape_ok(lits: &[Literal], target: CompiledTarget) -> bool {
    match target {
        CompiledTarget::Horn => lits.iter().filter(|l| l.is_positive()).count() <= 1,
        CompiledTarget::DualHorn => lits.iter().filter(|l| !l.is_positive()).count() <= 1,
        CompiledTarget::TwoCnf => lits.len() <= 2,
        CompiledTarget::AffineSystem => unreachable!("affine compilation has no clauses"),
    }
}

/// All clauses of the target shape over `arity` positions that every tuple
/// of the relation satisfies, in a canonical order: ascending width, then
/// lexicographic on the literal vector. Each variable contributes at most
/// one literal, so the enumeration walks sign patterns over variable
/// subsets.
fn entailed_clauses(r: &BoolRelation, target: CompiledTarget) -> Vec<Clause> {
    let arity = r.arity();
    let mut out: Vec<Clause> = Vec::new();
    for subset in 1u32..(1u32 << arity) {
        let vars: Vec<VarId> = (0..arity as u32)
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        for signs in 0u32..(1u32 << vars.len()) {
            let lits: Vec<Literal> = vars
                .iter()
                .enumerate()
                .map(|(j, &v)| Literal::new(v, signs >> j & 1 == 1))
                .collect();
            if !shape_ok(&lits, target) {
                continue;
            }
            let clause = Clause::expect(lits);
            let entailed = r.tuples().iter().all(|t| {
                clause
                    .literals()
                    .iter()
                    .any(|l| t[l.var() as usize - 1] == l.is_positive())
            });
            if entailed {
                out.push(clause);
            }
        }
    }
    out.sort_by_key(|c| (c.len(), c.literals().to_vec()));
    out
}

/// Drops every clause that has a proper entailed subclause; the remaining
/// prime clauses exclude everything the full candidate set excludes.
fn prime_clauses(mut candidates: Vec<Clause>) -> Vec<Clause> {
    let all = candidates.clone();
    candidates.retain(|c| {
        !all.iter().any(|other| {
            other.len() < c.len()
                && other.literals().iter().all(|l| c.literals().contains(l))
        })
    });
    candidates
}

/// Greedy cover: walk the non-tuples in ascending order and, for each one
/// not yet excluded, take the first prime clause that excludes it.
fn cover_non_tuples(r: &BoolRelation, primes: &[Clause]) -> Option<Vec<Clause>> {
    let arity = r.arity();
    let mut chosen: Vec<Clause> = Vec::new();
    for idx in 0u32..(1u32 << arity) {
        let tuple: Vec<bool> = (0..arity).map(|i| idx >> i & 1 == 1).collect();
        if r.contains(&tuple) {
            continue;
        }
        let falsifies = |c: &Clause| {
            c.literals()
                .iter()
                .all(|l| tuple[l.var() as usize - 1] != l.is_positive())
        };
        if chosen.iter().any(falsifies) {
            continue;
        }
        match primes.iter().find(|&c| falsifies(c)) {
            Some(c) => chosen.push(c.clone()),
            None => return None,
        }
    }
    Some(chosen)
}

/// GF(2) equations entailed by the relation, reduced to an independent
/// basis by incremental elimination. A coordinate subset yields an
/// equation iff all tuples agree on its parity.
fn entailed_equations(r: &BoolRelation) -> XorSystem {
    let arity = r.arity();
    let masks = r.tuple_masks();
    let mut sys = XorSystem::new(arity as VarId);
    // Echelon rows over arity variable columns plus the constant.
    let mut pivots: Vec<Option<(u16, bool)>> = vec![None; arity];
    for subset in 1u16..(1u16 << arity) {
        let parity = |m: u16| (m & subset).count_ones() % 2 == 1;
        let rhs = parity(masks[0]);
        if !masks.iter().all(|&m| parity(m) == rhs) {
            continue;
        }
        // Reduce against the basis; keep only rows adding a new pivot.
        let mut row = subset;
        let mut b = rhs;
        let mut fresh = false;
        while row != 0 {
            let lead = row.trailing_zeros() as usize;
            match &pivots[lead] {
                Some((prow, prhs)) => {
                    row ^= prow;
                    b ^= prhs;
                }
                None => {
                    pivots[lead] = Some((row, b));
                    fresh = true;
                    break;
                }
            }
        }
        if fresh {
            let vars: Vec<VarId> = (0..arity as u32)
                .filter(|i| subset >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            sys.push(XorEquation::new(vars, rhs));
        }
    }
    sys
}

/// Compiles `r` into the requested normal form. Errors when the relation
/// lacks the matching closure flag; panics when the compiled form fails
/// the exhaustive model comparison, since that contradicts the flag.
pub fn relation_to_clausal_form(
    r: &BoolRelation,
    target: CompiledTarget,
) -> Result<CompiledForm, SchaeferError> {
    let class = classify_relation(r)?;
    let flag = match target {
        CompiledTarget::Horn => class.horn,
        CompiledTarget::DualHorn => class.dualhorn,
        CompiledTarget::TwoCnf => class.bijunctive,
        CompiledTarget::AffineSystem => class.affine,
    };
    if !flag {
        return Err(SchaeferError::NotInClass(target));
    }
    let form = match target {
        CompiledTarget::AffineSystem => CompiledForm::Equations(entailed_equations(r)),
        _ => {
            let primes = prime_clauses(entailed_clauses(r, target));
            let clauses = cover_non_tuples(r, &primes).unwrap_or_else(|| {
                panic!("no {target:?} clause excludes some non-tuple of {r:?}")
            });
            CompiledForm::Clauses { arity: r.arity(), clauses }
        }
    };
    let arity = r.arity();
    for idx in 0u32..(1u32 << arity) {
        let tuple: Vec<bool> = (0..arity).map(|i| idx >> i & 1 == 1).collect();
        assert_eq!(
            form.accepts(&tuple),
            r.contains(&tuple),
            "compiled {target:?} form disagrees with relation on {tuple:?}: \
             classifier bug"
        );
    }
    Ok(form)
}
