//! Polynomial-time satisfiability deciders for the tractable clause shapes.
//! Each one answers the same question as the full SAT solver, restricted to
//! formulas of its shape, without any search. The enumeration layer uses
//! them as drop-in extension oracles so that tractable constraint languages
//! are enumerated with zero NP oracle calls.

use crate::model::{CnfFormula, Literal, VarId};

/// Unit propagation to fixpoint. Returns false on conflict. `assign` is
/// indexed by variable, 0 unassigned / 1 true / -1 false, and is left at the
/// fixpoint on success.
fn propagate_units(f: &CnfFormula, assign: &mut [i8]) -> bool {
    loop {
        let mut changed = false;
        for c in f.clauses() {
            let mut unassigned: Option<Literal> = None;
            let mut satisfied = false;
            let mut open = 0;
            for &l in c.literals() {
                match assign[l.var() as usize] {
                    0 => {
                        open += 1;
                        unassigned = Some(l);
                    }
                    v => {
                        if (v == 1) == l.is_positive() {
                            satisfied = true;
                            break;
                        }
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => return false,
                1 => {
                    let l = unassigned.unwrap();
                    assign[l.var() as usize] = if l.is_positive() { 1 } else { -1 };
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn seed_assumptions(num_vars: VarId, assumptions: &[Literal]) -> Option<Vec<i8>> {
    let mut assign = vec![0i8; num_vars as usize + 1];
    for &a in assumptions {
        let want: i8 = if a.is_positive() { 1 } else { -1 };
        let slot = &mut assign[a.var() as usize];
        if *slot == -want {
            return None;
        }
        *slot = want;
    }
    Some(assign)
}

/// Horn satisfiability (every clause has at most one positive literal).
/// Unit propagation is complete here: if it does not conflict, setting every
/// remaining variable false satisfies each leftover clause through one of
/// its negative literals.
pub fn horn_satisfiable(f: &CnfFormula, assumptions: &[Literal]) -> bool {
    debug_assert!(
        f.clauses()
            .iter()
            .all(|c| c.literals().iter().filter(|l| l.is_positive()).count() <= 1),
        "formula is not Horn"
    );
    match seed_assumptions(f.num_vars(), assumptions) {
        None => false,
        Some(mut assign) => propagate_units(f, &mut assign),
    }
}

/// Dual-Horn satisfiability (at most one negative literal per clause). The
/// mirror image of the Horn case, completing with true instead of false.
pub fn dual_horn_satisfiable(f: &CnfFormula, assumptions: &[Literal]) -> bool {
    debug_assert!(
        f.clauses()
            .iter()
            .all(|c| c.literals().iter().filter(|l| !l.is_positive()).count() <= 1),
        "formula is not dual-Horn"
    );
    match seed_assumptions(f.num_vars(), assumptions) {
        None => false,
        Some(mut assign) => propagate_units(f, &mut assign),
    }
}

/// 2-SAT via strongly connected components of the implication graph.
/// Satisfiable iff no variable sits in the same component as its negation.
pub fn two_sat_satisfiable(f: &CnfFormula, assumptions: &[Literal]) -> bool {
    debug_assert!(
        f.clauses().iter().all(|c| c.len() <= 2),
        "formula has a clause wider than 2"
    );
    let n = f.num_vars() as usize;
    let nodes = 2 * (n + 1);
    let mut adj = vec![Vec::new(); nodes];
    let mut radj = vec![Vec::new(); nodes];
    fn add_implication(
        adj: &mut [Vec<usize>],
        radj: &mut [Vec<usize>],
        from: Literal,
        to: Literal,
    ) {
        adj[from.code()].push(to.code());
        radj[to.code()].push(from.code());
    }
    for c in f.clauses() {
        match c.literals() {
            // Forcing l is the implication not-l -> l.
            [l] => add_implication(&mut adj, &mut radj, l.negate(), *l),
            [a, b] => {
                add_implication(&mut adj, &mut radj, a.negate(), *b);
                add_implication(&mut adj, &mut radj, b.negate(), *a);
            }
            [] => return false,
            _ => unreachable!("checked above"),
        }
    }
    for &a in assumptions {
        add_implication(&mut adj, &mut radj, a.negate(), a);
    }

    // Kosaraju with explicit stacks.
    let mut order = Vec::with_capacity(nodes);
    let mut seen = vec![false; nodes];
    for start in 2..nodes {
        if seen[start] {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < adj[node].len() {
                let child = adj[node][*next];
                *next += 1;
                if !seen[child] {
                    seen[child] = true;
                    stack.push((child, 0));
                }
            } else {
                order.push(node);
                stack.pop();
            }
        }
    }
    let mut component = vec![usize::MAX; nodes];
    let mut current = 0;
    for &start in order.iter().rev() {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = current;
        while let Some(node) = stack.pop() {
            for &child in &radj[node] {
                if component[child] == usize::MAX {
                    component[child] = current;
                    stack.push(child);
                }
            }
        }
        current += 1;
    }
    (1..=n as VarId).all(|v| {
        component[Literal::positive(v).code()] != component[Literal::negative(v).code()]
    })
}

/// A linear equation over GF(2): the variables on the left sum to `rhs`.
/// Variables listed twice cancel out at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorEquation {
    vars: Vec<VarId>,
    rhs: bool,
}

impl XorEquation {
    pub fn new(mut vars: Vec<VarId>, rhs: bool) -> Self {
        vars.sort_unstable();
        let mut kept = Vec::with_capacity(vars.len());
        let mut i = 0;
        while i < vars.len() {
            let mut run = 1;
            while i + run < vars.len() && vars[i + run] == vars[i] {
                run += 1;
            }
            if run % 2 == 1 {
                kept.push(vars[i]);
            }
            i += run;
        }
        XorEquation { vars: kept, rhs }
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn rhs(&self) -> bool {
        self.rhs
    }

    pub fn evaluate(&self, bits: &[bool]) -> bool {
        let sum = self
            .vars
            .iter()
            .fold(false, |acc, &v| acc ^ bits[v as usize - 1]);
        sum == self.rhs
    }
}

/// A system of GF(2) equations over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorSystem {
    pub num_vars: VarId,
    pub equations: Vec<XorEquation>,
}

impl XorSystem {
    pub fn new(num_vars: VarId) -> Self {
        XorSystem { num_vars, equations: Vec::new() }
    }

    pub fn push(&mut self, eq: XorEquation) {
        assert!(eq.vars.iter().all(|&v| v >= 1 && v <= self.num_vars));
        self.equations.push(eq);
    }

    /// Token count analogous to the DIMACS convention: one token per
    /// variable occurrence plus a terminator per equation.
    pub fn token_size(&self) -> u64 {
        self.equations
            .iter()
            .map(|e| e.vars.len() as u64 + 1)
            .sum()
    }

    pub fn evaluate(&self, bits: &[bool]) -> bool {
        self.equations.iter().all(|e| e.evaluate(bits))
    }
}

/// Gaussian elimination over GF(2), with assumptions added as unit
/// equations. Rows are bitmasks over the variables plus a constant column.
pub fn xor_satisfiable(sys: &XorSystem, assumptions: &[Literal]) -> bool {
    let n = sys.num_vars as usize;
    let blocks = n.div_ceil(64);
    // Echelon form: pivots[j] holds the row whose leading variable is j.
    let mut pivots: Vec<Option<(Vec<u64>, bool)>> = vec![None; n];
    let mut insert = |mut row: Vec<u64>, mut rhs: bool| -> bool {
        loop {
            let lead = row
                .iter()
                .enumerate()
                .find(|(_, &b)| b != 0)
                .map(|(i, &b)| i * 64 + b.trailing_zeros() as usize);
            match lead {
                None => return !rhs,
                Some(j) => match &pivots[j] {
                    Some((prow, prhs)) => {
                        for (r, p) in row.iter_mut().zip(prow) {
                            *r ^= p;
                        }
                        rhs ^= prhs;
                    }
                    None => {
                        pivots[j] = Some((row, rhs));
                        return true;
                    }
                },
            }
        }
    };
    for eq in &sys.equations {
        let mut row = vec![0u64; blocks];
        for &v in &eq.vars {
            let bit = v as usize - 1;
            row[bit / 64] |= 1 << (bit % 64);
        }
        if !insert(row, eq.rhs) {
            return false;
        }
    }
    for &a in assumptions {
        let mut row = vec![0u64; blocks];
        let bit = a.var() as usize - 1;
        row[bit / 64] |= 1 << (bit % 64);
        if !insert(row, a.is_positive()) {
            return false;
        }
    }
    true
}
