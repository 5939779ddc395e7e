//! Sequential-counter cardinality constraints.
//!
//! The encoder introduces register variables `s(i, j)` meaning "at least j
//! of the first i constrained variables are true" and defines each register
//! in both directions:
//!
//! ```text
//! s(i, j)  <->  s(i-1, j)  or  (x_i and s(i-1, j-1))
//! ```
//!
//! Because both implication directions are emitted, the registers are
//! functionally determined by the constrained variables: every assignment
//! of the constrained variables extends to exactly one model of the
//! fragment (or none, when it violates the bound). Projecting the
//! fragment's models onto the constrained variables therefore yields
//! exactly the assignments meeting the bound, and conjoining the fragment
//! to a formula neither duplicates nor loses models. A single register
//! chain of width `bound + 1` serves all three senses: `at_most k` forbids
//! `s(m, k+1)`, `at_least k` asserts `s(m, k)`, `exactly k` does both.

use crate::model::{Clause, CnfFormula, Literal, ModelError, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CardSense {
    AtMost,
    AtLeast,
    Exactly,
}

/// A bound on how many of `vars` may be true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityConstraint {
    vars: Vec<VarId>,
    bound: usize,
    sense: CardSense,
}

impl CardinalityConstraint {
    /// Requires distinct nonzero variables and `bound <= vars.len()`;
    /// bounds beyond the variable count are either vacuous or unsatisfiable
    /// and almost certainly a caller bug.
    pub fn new(vars: Vec<VarId>, bound: usize, sense: CardSense) -> Result<Self, ModelError> {
        if bound > vars.len() {
            return Err(ModelError::Invalid(format!(
                "cardinality bound {bound} exceeds the {} constrained variables",
                vars.len()
            )));
        }
        let mut sorted = vars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(ModelError::Invalid(
                "cardinality constraint lists a variable twice".into(),
            ));
        }
        if vars.contains(&0) {
            return Err(ModelError::Invalid("variable 0 in cardinality constraint".into()));
        }
        Ok(CardinalityConstraint { vars, bound, sense })
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn sense(&self) -> CardSense {
        self.sense
    }

    /// Does `bits` (positionally matching `vars`) meet the bound? Reference
    /// semantics for tests and brute-force comparisons.
    pub fn check(&self, bits: &[bool]) -> bool {
        assert_eq!(bits.len(), self.vars.len());
        let count = bits.iter().filter(|&&b| b).count();
        match self.sense {
            CardSense::AtMost => count <= self.bound,
            CardSense::AtLeast => count >= self.bound,
            CardSense::Exactly => count == self.bound,
        }
    }
}

/// Emits the constraint as a self-contained CNF fragment whose variables are
/// `c.vars` plus registers starting at `fresh_var_base`.
///
/// The caller guarantees `fresh_var_base` is above every variable of the
/// formula the fragment will be conjoined to (checked against `c.vars`).
pub fn encode_cardinality(c: &CardinalityConstraint, fresh_var_base: VarId) -> CnfFormula {
    let m = c.vars.len();
    assert!(fresh_var_base >= 1, "fresh_var_base must be a valid variable");
    assert!(
        c.vars.iter().all(|&v| v < fresh_var_base),
        "fresh_var_base overlaps the constrained variables"
    );

    // Register chain width: counting to bound+1 answers both "at least
    // bound" and "more than bound". Never wider than the variable count.
    let w = m.min(c.bound + 1);
    let mut f = CnfFormula::new(fresh_var_base - 1 + (m * w) as VarId);
    if m == 0 {
        // Bound 0 over no variables holds vacuously in every sense.
        return f;
    }
    let reg = |i: usize, j: usize| -> Literal {
        debug_assert!((1..=m).contains(&i) && (1..=w).contains(&j));
        Literal::positive(fresh_var_base + ((i - 1) * w + (j - 1)) as VarId)
    };

    for i in 1..=m {
        let x = Literal::positive(c.vars[i - 1]);
        for j in 1..=w {
            let s = reg(i, j);
            if j > i {
                // A prefix of i variables can never reach a count above i.
                f.push_clause(Clause::expect(vec![s.negate()]));
                continue;
            }
            if i == 1 {
                // s(1,1) <-> x_1
                f.push_clause(Clause::expect(vec![x.negate(), s]));
                f.push_clause(Clause::expect(vec![s.negate(), x]));
                continue;
            }
            let a = reg(i - 1, j);
            if j == 1 {
                // s(i,1) <-> s(i-1,1) or x_i
                f.push_clause(Clause::expect(vec![a.negate(), s]));
                f.push_clause(Clause::expect(vec![x.negate(), s]));
                f.push_clause(Clause::expect(vec![s.negate(), a, x]));
            } else {
                // s(i,j) <-> s(i-1,j) or (x_i and s(i-1,j-1))
                let c_prev = reg(i - 1, j - 1);
                f.push_clause(Clause::expect(vec![a.negate(), s]));
                f.push_clause(Clause::expect(vec![x.negate(), c_prev.negate(), s]));
                f.push_clause(Clause::expect(vec![s.negate(), a, x]));
                f.push_clause(Clause::expect(vec![s.negate(), a, c_prev]));
            }
        }
    }

    let forbid_above = matches!(c.sense, CardSense::AtMost | CardSense::Exactly);
    let demand_bound = matches!(c.sense, CardSense::AtLeast | CardSense::Exactly);
    if forbid_above && c.bound < m {
        f.push_clause(Clause::expect(vec![reg(m, c.bound + 1).negate()]));
    }
    if demand_bound && c.bound >= 1 {
        f.push_clause(Clause::expect(vec![reg(m, c.bound)]));
    }
    f
}

/// `f` conjoined with the constraint, registers placed above `f`'s variables.
pub fn with_cardinality(f: &CnfFormula, c: &CardinalityConstraint) -> CnfFormula {
    let fragment = encode_cardinality(c, f.num_vars() + 1);
    let mut out = f.clone();
    out.grow_vars(fragment.num_vars());
    for clause in fragment.clauses() {
        out.push_clause(clause.clone());
    }
    out
}
