//! Enumerating the repairs of a database instance.
//!
//! Repairs here are obtained by deletion only, so they are exactly the
//! maximal consistent subsets of the fact list: deleting less would leave
//! a violation, deleting more is wasteful. Grounding the dependencies
//! first (see [`ground_egds`]) turns both halves of that condition into
//! propositional constraints over one keep bit per atom:
//!
//! * consistency: every conflict set loses at least one atom;
//! * maximality: every deleted atom has a conflict set through it whose
//!   other atoms are all kept, so putting the atom back would violate.
//!
//! The witness variables for the maximality half are one-sided: a model
//! may leave a witness bit off even where it could hold, but some witness
//! must back every deletion, which is all maximality needs.

use crate::engine::{Flashlight, ReplayStream, SolutionStream};
use crate::model::{Assignment, Clause, CnfFormula, DatabaseInstance, Egd, Literal, VarId};
use crate::oracle::{CounterHandle, SatOracle};
use crate::structures::ground_egds;

/// Emits the repairs of `d` under `egds` as keep bit vectors over
/// `d.atoms`, in lexicographic order. A consistent instance yields the
/// single all-ones vector; no oracle is consulted for it.
pub fn repair_enum(
    counters: CounterHandle,
    d: &DatabaseInstance,
    egds: &[Egd],
) -> Box<dyn SolutionStream<Item = Assignment>> {
    let n = d.num_atoms();
    let conflicts = ground_egds(d, egds);
    if conflicts.is_empty() {
        let whole = Assignment::from_bits(vec![true; n]);
        return Box::new(ReplayStream::with_counters(vec![whole], counters));
    }

    // Keep bit for atom i is variable i+1; witness variables follow.
    let keep = |i: usize| i as VarId + 1;
    let mut f = CnfFormula::new(n as VarId);
    for c in &conflicts {
        f.push_clause(Clause::expect(
            c.atoms.iter().map(|&i| Literal::negative(keep(i))).collect(),
        ));
    }
    for i in 0..n {
        let through: Vec<usize> =
            (0..conflicts.len()).filter(|&s| conflicts[s].atoms.contains(&i)).collect();
        if through.is_empty() {
            // An atom in no conflict can always be kept, so every repair
            // keeps it.
            f.push_clause(Clause::expect(vec![Literal::positive(keep(i))]));
            continue;
        }
        let mut reasons = vec![Literal::positive(keep(i))];
        for s in through {
            let w = f.num_vars() + 1;
            f.grow_vars(w);
            reasons.push(Literal::positive(w));
            for &j in &conflicts[s].atoms {
                if j != i {
                    f.push_clause(Clause::expect(vec![
                        Literal::negative(w),
                        Literal::positive(keep(j)),
                    ]));
                }
            }
        }
        f.push_clause(Clause::expect(reasons));
    }

    let oracle = SatOracle::new(counters.clone());
    Box::new(Flashlight::new(n, counters, move |prefix: &[bool]| {
        let assumptions: Vec<Literal> =
            prefix.iter().enumerate().map(|(i, &b)| Literal::new(keep(i), b)).collect();
        oracle.solve(&f, &assumptions)
    }))
}
