//! Seeded instance generators: the reproducible corpus behind the
//! acceptance tests and the command-line cross-check.
//!
//! Every generator draws from a caller-supplied random stream, so one
//! seed pins an entire corpus; the same seed on the same version yields
//! byte-identical instances. Sizes are parameters with the callers
//! choosing desk-scale caps that keep the brute-force reference feasible.

use crate::model::{
    AbductionInstance, Atom, BoolRelation, Clause, CnfFormula, DatabaseInstance,
    DiagnosisInstance, DnfFormula, DnfTerm, Egd, EgdAtom, EgdTerm, GammaFormula, Graph,
    Hypergraph, Literal, Matrix, QbfInstance, Quantifier, VarId,
};
use rand::Rng;

/// Random CNF with `1..=max_vars` variables and `1..=max_clauses` clauses
/// of one to three distinct variables each.
pub fn random_cnf<R: Rng>(rng: &mut R, max_vars: VarId, max_clauses: usize) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars);
    let mut f = CnfFormula::new(n);
    for _ in 0..rng.gen_range(1..=max_clauses) {
        f.push_clause(random_clause(rng, n));
    }
    f
}

fn random_clause<R: Rng>(rng: &mut R, n: VarId) -> Clause {
    let width = rng.gen_range(1..=3.min(n as usize));
    Clause::expect(
        distinct_vars(rng, n, width).into_iter().map(|v| Literal::new(v, rng.gen())).collect(),
    )
}

fn distinct_vars<R: Rng>(rng: &mut R, n: VarId, count: usize) -> Vec<VarId> {
    let mut pool: Vec<VarId> = (1..=n).collect();
    for i in 0..count {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}

/// Random quantified instance of depth `0..=max_depth` with a CNF or DNF
/// matrix; free variables may be absent. Always structurally valid.
pub fn random_qbf<R: Rng>(rng: &mut R, max_vars: VarId, max_depth: usize) -> QbfInstance {
    let n = rng.gen_range(1..=max_vars);
    let mut vars: Vec<VarId> = distinct_vars(rng, n, n as usize);
    let depth = rng.gen_range(0..=max_depth.min(n as usize));
    let mut blocks = Vec::new();
    let mut lead: Quantifier = if rng.gen() { Quantifier::Exists } else { Quantifier::Forall };
    for d in 0..depth {
        // Leave enough variables for the remaining blocks; whatever is
        // left after the last block stays free.
        let spare = depth - d - 1;
        let take = rng.gen_range(1..=vars.len() - spare);
        let block: Vec<VarId> = vars.drain(..take).collect();
        blocks.push((lead, block));
        lead = match lead {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        };
    }
    QbfInstance {
        num_vars: n,
        free_vars: vars,
        blocks,
        matrix: random_matrix(rng, n),
    }
}

fn random_matrix<R: Rng>(rng: &mut R, n: VarId) -> Matrix {
    if rng.gen() {
        let mut f = CnfFormula::new(n);
        for _ in 0..rng.gen_range(1..=7) {
            f.push_clause(random_clause(rng, n));
        }
        Matrix::Cnf(f)
    } else {
        let mut f = DnfFormula::new(n);
        for _ in 0..rng.gen_range(1..=5) {
            let width = rng.gen_range(1..=3.min(n as usize));
            f.push_term(
                DnfTerm::new(
                    distinct_vars(rng, n, width)
                        .into_iter()
                        .map(|v| Literal::new(v, rng.gen()))
                        .collect(),
                )
                .expect("distinct variables cannot contradict"),
            );
        }
        Matrix::Dnf(f)
    }
}

/// Random closed ∃∀ instance (no free variables, one existential then one
/// universal block), the shape the two-level oracle answers directly.
pub fn random_exists_forall<R: Rng>(rng: &mut R, max_vars: VarId) -> QbfInstance {
    let n = rng.gen_range(2..=max_vars.max(2));
    let vars = distinct_vars(rng, n, n as usize);
    let split = rng.gen_range(1..n as usize);
    QbfInstance {
        num_vars: n,
        free_vars: Vec::new(),
        blocks: vec![
            (Quantifier::Exists, vars[..split].to_vec()),
            (Quantifier::Forall, vars[split..].to_vec()),
        ],
        matrix: random_matrix(rng, n),
    }
}

/// Random universally quantified 3-DNF instance: at least one free
/// variable, at most one universal block, implicants of up to three
/// literals, `free + universal <= max_total_vars`.
pub fn random_pi1_3dnf<R: Rng>(rng: &mut R, max_total_vars: VarId) -> QbfInstance {
    let k = rng.gen_range(1..=max_total_vars);
    let l = rng.gen_range(0..=max_total_vars - k);
    let n = k + l;
    let mut f = DnfFormula::new(n);
    for _ in 0..rng.gen_range(0..=4) {
        let width = rng.gen_range(1..=3.min(n as usize));
        f.push_term(
            DnfTerm::new(
                distinct_vars(rng, n, width)
                    .into_iter()
                    .map(|v| Literal::new(v, rng.gen()))
                    .collect(),
            )
            .expect("distinct variables cannot contradict"),
        );
    }
    QbfInstance {
        num_vars: n,
        free_vars: (1..=k).collect(),
        blocks: if l == 0 { vec![] } else { vec![(Quantifier::Forall, (k + 1..=n).collect())] },
        matrix: Matrix::Dnf(f),
    }
}

/// Random constraint formula: one to three extensionally random relations
/// of arity one to three, applied one to six times over `1..=max_vars`
/// variables (repetitions allowed, matching the formula type's contract).
pub fn random_gamma<R: Rng>(rng: &mut R, max_vars: VarId) -> GammaFormula {
    let n = rng.gen_range(1..=max_vars);
    let mut f = GammaFormula::new(n);
    let count = rng.gen_range(1..=3);
    for r in 0..count {
        let arity = rng.gen_range(1..=3usize);
        let universe = 1u16 << arity;
        let mut tuples = Vec::new();
        while tuples.is_empty() {
            tuples = (0..universe)
                .filter(|_| rng.gen_ratio(2, 5))
                .map(|m| (0..arity).map(|i| m >> i & 1 == 1).collect())
                .collect();
        }
        f.add_relation(&format!("R{r}"), BoolRelation::new(arity, tuples).unwrap())
            .expect("fresh relation name");
    }
    for _ in 0..rng.gen_range(1..=6) {
        let r = rng.gen_range(0..count);
        let arity = f.relation(&format!("R{r}")).unwrap().arity();
        let vars: Vec<VarId> = (0..arity).map(|_| rng.gen_range(1..=n)).collect();
        f.add_constraint(&format!("R{r}"), vars).expect("arity and range checked");
    }
    f
}

/// Random simple graph with `1..=max_vertices` vertices and edge
/// probability 2/5.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: u32) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_ratio(2, 5) {
                g.add_edge(u, v).expect("in range, no loop");
            }
        }
    }
    g
}

/// Random hypergraph with one to six hyperedges of one to three vertices
/// drawn from `1..=max_vertices`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_vertices: u32) -> Hypergraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let width = rng.gen_range(1..=3.min(n) as usize);
        edges.push(distinct_vars(rng, n, width));
    }
    Hypergraph::new(edges).expect("nonempty hyperedges over 1-based vertices")
}

/// Random database with facts over a two-or-three-constant domain and
/// one to `max_egds` dependencies whose bodies hold one to three atoms;
/// equated variables always occur in the body.
pub fn random_database<R: Rng>(
    rng: &mut R,
    max_atoms: usize,
    max_egds: usize,
) -> (DatabaseInstance, Vec<Egd>) {
    let domain: Vec<String> = (0..rng.gen_range(2..=3)).map(|c| c.to_string()).collect();
    let mut atoms = Vec::new();
    for _ in 0..rng.gen_range(1..=max_atoms) {
        let (p, arity) = if rng.gen() { ("r", 2) } else { ("s", 1) };
        let args: Vec<String> =
            (0..arity).map(|_| domain[rng.gen_range(0..domain.len())].clone()).collect();
        atoms.push(Atom { predicate: p.into(), args });
    }
    let d = DatabaseInstance::new(domain, atoms).expect("constants drawn from the domain");
    let names = ["X", "Y", "Z", "W"];
    let mut egds = Vec::new();
    while egds.len() < rng.gen_range(1..=max_egds) {
        let mut body = Vec::new();
        let mut seen: Vec<&str> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let (p, arity) = if rng.gen() { ("r", 2) } else { ("s", 1) };
            let args: Vec<EgdTerm> = (0..arity)
                .map(|_| {
                    if rng.gen_ratio(1, 6) {
                        EgdTerm::Const(rng.gen_range(0..2).to_string())
                    } else {
                        let name = names[rng.gen_range(0..names.len())];
                        if !seen.contains(&name) {
                            seen.push(name);
                        }
                        EgdTerm::Var(name.into())
                    }
                })
                .collect();
            body.push(EgdAtom { predicate: p.into(), args });
        }
        if seen.is_empty() {
            continue;
        }
        let lhs = seen[rng.gen_range(0..seen.len())].to_string();
        let rhs = seen[rng.gen_range(0..seen.len())].to_string();
        egds.push(Egd { body, lhs, rhs });
    }
    (d, egds)
}

/// Random diagnosis instance: up to `max_components` component formulas
/// of one or two clauses each, a one-or-two-clause observation, all over
/// a shared space of `1..=max_vars` variables.
pub fn random_diagnosis<R: Rng>(
    rng: &mut R,
    max_vars: VarId,
    max_components: usize,
) -> DiagnosisInstance {
    let n = rng.gen_range(1..=max_vars);
    let small = |rng: &mut R| {
        let mut f = CnfFormula::new(n);
        for _ in 0..rng.gen_range(1..=2) {
            f.push_clause(random_clause(rng, n));
        }
        f
    };
    let components = (0..rng.gen_range(1..=max_components)).map(|_| small(rng)).collect();
    DiagnosisInstance { num_vars: n, components, mu: small(rng) }
}

/// Random abduction instance: a random theory, a query variable, and up
/// to `max_hypotheses` distinct hypothesis literals avoiding the query.
pub fn random_abduction<R: Rng>(
    rng: &mut R,
    max_vars: VarId,
    max_hypotheses: usize,
) -> AbductionInstance {
    let n = rng.gen_range(2..=max_vars.max(2));
    let mut gamma = CnfFormula::new(n);
    for _ in 0..rng.gen_range(1..=6) {
        gamma.push_clause(random_clause(rng, n));
    }
    let q = rng.gen_range(1..=n);
    let candidates: Vec<VarId> = (1..=n).filter(|&v| v != q).collect();
    let take = rng.gen_range(1..=max_hypotheses.min(candidates.len()));
    let mut hypotheses = Vec::new();
    let mut pool = candidates;
    for _ in 0..take {
        let at = rng.gen_range(0..pool.len());
        let v = pool.swap_remove(at);
        hypotheses.push(Literal::new(v, rng.gen()));
    }
    AbductionInstance { gamma, hypotheses, q }
}
