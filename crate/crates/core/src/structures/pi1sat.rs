//! Reducing model enumeration for universally quantified 3-DNF formulas
//! to database repair enumeration.
//!
//! For ψ(x) = ∀y φ(x, y) with φ a disjunction of implicants of up to
//! three literals, the constructed database holds two facts `pᵢ(0,1)`,
//! `pᵢ(1,0)` per free variable, the two `q` facts, seven `a` facts (every
//! binary triple except `a(1,1,1)`), and the two anchor facts `b0(0)`,
//! `b1(1)`. One dependency per free variable forbids keeping both `pᵢ`
//! facts, and a final dependency relates the surviving `pᵢ` choices to φ:
//! its body embeds into a one-per-pair instance exactly when some
//! assignment to the universal variables makes every implicant false,
//! because an implicant's `a`-atom is instantiated to the triple of its
//! literal values and only `a(1,1,1)` is missing. Repairs that keep one
//! fact per pair and everything else therefore spell out the models of ψ
//! (keeping `pᵢ(1,0)` means xᵢ is true); the handful of other repairs,
//! single deletions of shared facts and whole-pair deletions, map to
//! `None` and number at most k+11, which sizes the read-ahead batch.
//!
//! Implicants with fewer than three distinct literals are treated as
//! padded by repetition, which leaves their meaning unchanged; implicants
//! with more than three are rejected.

use crate::engine::Reduction;
use crate::model::{
    Assignment, Atom, DatabaseInstance, Egd, EgdAtom, EgdTerm, Literal, Matrix, QbfInstance,
    Quantifier, VarId,
};
use crate::structures::StructuresError;
use std::collections::HashMap;

/// Builds the repair instance and solution mapping for `psi`. The input
/// must have a (possibly absent) single universal block, at least one
/// free variable, and a DNF matrix whose implicants carry at most three
/// distinct literals each.
pub fn pi1sat_to_repair(
    psi: &QbfInstance,
) -> Result<Reduction<(DatabaseInstance, Vec<Egd>), Assignment, Assignment>, StructuresError> {
    psi.validate()?;
    let Matrix::Dnf(phi) = &psi.matrix else {
        return Err(StructuresError::Invalid(
            "the matrix must be a disjunction of implicants".into(),
        ));
    };
    let universals: &[VarId] = match psi.blocks.as_slice() {
        [] => &[],
        [(Quantifier::Forall, ys)] => ys,
        _ => {
            return Err(StructuresError::Invalid(
                "the quantifier prefix must be a single universal block".into(),
            ))
        }
    };
    let k = psi.free_vars.len();
    if k == 0 {
        return Err(StructuresError::Invalid(
            "at least one free variable is required".into(),
        ));
    }
    if let Some(t) = phi.terms().iter().find(|t| t.literals().len() > 3 || t.literals().is_empty())
    {
        return Err(StructuresError::Invalid(format!(
            "implicant with {} distinct literals, between 1 and 3 are allowed",
            t.literals().len()
        )));
    }

    // Body variable names for each propositional variable: positive
    // occurrences use the plain name, negative ones the primed name, and
    // the embedding target fixes plain + primed to complementary values.
    let mut names: HashMap<VarId, (String, String)> = HashMap::new();
    for (i, &v) in psi.free_vars.iter().enumerate() {
        names.insert(v, (format!("X{}", i + 1), format!("X{}P", i + 1)));
    }
    for (j, &v) in universals.iter().enumerate() {
        names.insert(v, (format!("Y{}", j + 1), format!("Y{}P", j + 1)));
    }
    let term_of = |l: Literal| {
        let (plain, primed) = &names[&l.var()];
        EgdTerm::Var(if l.is_positive() { plain.clone() } else { primed.clone() })
    };

    let var = |s: &str| EgdTerm::Var(s.into());
    let bit = |b: bool| if b { "1".to_string() } else { "0".to_string() };
    let fact = |p: String, args: &[bool]| Atom {
        predicate: p,
        args: args.iter().map(|&b| bit(b)).collect(),
    };
    let v01 = |b: bool| var(if b { "V1" } else { "V0" });

    let mut atoms = Vec::new();
    for i in 1..=k {
        atoms.push(fact(format!("p{i}"), &[false, true]));
        atoms.push(fact(format!("p{i}"), &[true, false]));
    }
    atoms.push(fact("q".into(), &[false, true]));
    atoms.push(fact("q".into(), &[true, false]));
    let mut shared = vec![
        EgdAtom { predicate: "b0".into(), args: vec![var("V0")] },
        EgdAtom { predicate: "b1".into(), args: vec![var("V1")] },
        EgdAtom { predicate: "q".into(), args: vec![var("V0"), var("V1")] },
        EgdAtom { predicate: "q".into(), args: vec![var("V1"), var("V0")] },
    ];
    for combo in 0u8..7 {
        let (u, v, w) = (combo & 4 != 0, combo & 2 != 0, combo & 1 != 0);
        atoms.push(fact("a".into(), &[u, v, w]));
        shared.push(EgdAtom { predicate: "a".into(), args: vec![v01(u), v01(v), v01(w)] });
    }
    atoms.push(fact("b0".into(), &[false]));
    atoms.push(fact("b1".into(), &[true]));
    for i in 1..=k {
        shared.push(EgdAtom {
            predicate: format!("p{i}"),
            args: vec![var(&format!("W{i}")), var(&format!("W{i}P"))],
        });
    }
    let db = DatabaseInstance::new(vec!["0".into(), "1".into()], atoms)
        .expect("the constructed facts are well-formed");

    let mut egds = Vec::new();
    for i in 1..=k {
        let mut body = shared.clone();
        body.push(EgdAtom { predicate: format!("p{i}"), args: vec![var("X"), var("XP")] });
        body.push(EgdAtom { predicate: format!("p{i}"), args: vec![var("XP"), var("X")] });
        egds.push(Egd { body, lhs: "X".into(), rhs: "XP".into() });
    }
    let mut body = shared;
    for i in 1..=k {
        body.push(EgdAtom {
            predicate: format!("p{i}"),
            args: vec![var(&format!("X{i}")), var(&format!("X{i}P"))],
        });
    }
    for j in 1..=universals.len() {
        body.push(EgdAtom {
            predicate: "q".into(),
            args: vec![var(&format!("Y{j}")), var(&format!("Y{j}P"))],
        });
    }
    for t in phi.terms() {
        let lits = t.literals();
        let padded = [
            lits[0],
            *lits.get(1).unwrap_or(&lits[0]),
            *lits.get(2).unwrap_or(lits.last().unwrap()),
        ];
        body.push(EgdAtom {
            predicate: "a".into(),
            args: padded.iter().map(|&l| term_of(l)).collect(),
        });
    }
    egds.push(Egd { body, lhs: "X1".into(), rhs: "X1P".into() });

    Ok(Reduction {
        target: (db, egds),
        tau: Box::new(move |repair: &Assignment| {
            // Keep bits: pair i sits at positions 2i-1 and 2i; the shared
            // facts fill 2k+1 ..= 2k+11 and must all survive.
            if (2 * k as VarId + 1..=2 * k as VarId + 11).any(|v| !repair.get(v)) {
                return None;
            }
            let mut x = Vec::with_capacity(k);
            for i in 1..=k as VarId {
                let keeps_false_side = repair.get(2 * i - 1);
                let keeps_true_side = repair.get(2 * i);
                if keeps_false_side == keeps_true_side {
                    return None;
                }
                x.push(keeps_true_side);
            }
            Some(Assignment::from_bits(x))
        }),
        batch: k as u64 + 12,
    })
}
