//! Minimal transversals of hypergraphs, minimal dominating sets of
//! graphs, and the reduction that borrows the former's enumeration from
//! the latter's.
//!
//! Both enumerators run the prefix extension engine over selection bits
//! with a SAT oracle on a coverage-plus-privacy encoding. Coverage says
//! every hyperedge (or closed neighborhood) keeps a selected member;
//! privacy says every selected vertex has a hyperedge (or dominated
//! vertex) that only it covers, which characterizes minimality. The
//! privacy witnesses are one-sided: a model may leave a witness off where
//! it could hold, but each selected vertex needs at least one, and that
//! forces the selection to be minimal.

use crate::engine::{Flashlight, Reduction, SolutionStream};
use crate::model::{Assignment, Clause, CnfFormula, Graph, Hypergraph, Literal, VarId};
use crate::oracle::{CounterHandle, SatOracle};
use crate::structures::StructuresError;

/// Emits the subset-minimal transversals of `h` (vertex sets meeting
/// every hyperedge) as bit vectors over `1..=num_vertices`, in
/// lexicographic order.
pub fn transversal_enum(
    counters: CounterHandle,
    h: &Hypergraph,
) -> Box<dyn SolutionStream<Item = Assignment>> {
    let n = h.num_vertices() as usize;
    let mut f = CnfFormula::new(n as VarId);
    for e in h.edges() {
        f.push_clause(Clause::expect(
            e.iter().map(|&v| Literal::positive(v as VarId)).collect(),
        ));
    }
    for v in 1..=n as u32 {
        let incident: Vec<usize> =
            (0..h.num_edges()).filter(|&i| h.edges()[i].contains(&v)).collect();
        if incident.is_empty() {
            // A vertex on no hyperedge covers nothing, so no minimal
            // transversal selects it.
            f.push_clause(Clause::expect(vec![Literal::negative(v as VarId)]));
            continue;
        }
        let mut private = vec![Literal::negative(v as VarId)];
        for i in incident {
            let w = f.num_vars() + 1;
            f.grow_vars(w);
            private.push(Literal::positive(w));
            for &u in &h.edges()[i] {
                if u != v {
                    f.push_clause(Clause::expect(vec![
                        Literal::negative(w),
                        Literal::negative(u as VarId),
                    ]));
                }
            }
        }
        f.push_clause(Clause::expect(private));
    }
    selection_stream(counters, n, f)
}

/// Emits the subset-minimal dominating sets of `g` (every vertex sees a
/// selected one in its closed neighborhood) as bit vectors, in
/// lexicographic order.
pub fn domset_enum(
    counters: CounterHandle,
    g: &Graph,
) -> Box<dyn SolutionStream<Item = Assignment>> {
    let n = g.num_vertices() as usize;
    let mut f = CnfFormula::new(n as VarId);
    for v in 1..=n as u32 {
        f.push_clause(Clause::expect(
            g.closed_neighborhood(v).iter().map(|&u| Literal::positive(u as VarId)).collect(),
        ));
    }
    for v in 1..=n as u32 {
        // A selected vertex needs a private vertex: one it dominates that
        // no other selected vertex dominates. The vertex itself qualifies
        // when none of its neighbors are selected.
        let mut private = vec![Literal::negative(v as VarId)];
        for p in g.closed_neighborhood(v) {
            let w = f.num_vars() + 1;
            f.grow_vars(w);
            private.push(Literal::positive(w));
            for u in g.closed_neighborhood(p) {
                if u != v {
                    f.push_clause(Clause::expect(vec![
                        Literal::negative(w),
                        Literal::negative(u as VarId),
                    ]));
                }
            }
        }
        f.push_clause(Clause::expect(private));
    }
    selection_stream(counters, n, f)
}

fn selection_stream(
    counters: CounterHandle,
    n: usize,
    f: CnfFormula,
) -> Box<dyn SolutionStream<Item = Assignment>> {
    let oracle = SatOracle::new(counters.clone());
    Box::new(Flashlight::new(n, counters, move |prefix: &[bool]| {
        let assumptions: Vec<Literal> = prefix
            .iter()
            .enumerate()
            .map(|(i, &b)| Literal::new(i as VarId + 1, b))
            .collect();
        oracle.solve(&f, &assumptions)
    }))
}

/// Reduces minimal-transversal enumeration on `h` to minimal-dominating-set
/// enumeration on a graph built from `h`'s incidence structure: a clique on
/// the vertices, a clique on one handle vertex per hyperedge, edges joining
/// each hyperedge handle to its members, and one extra vertex adjacent to
/// all original vertices.
///
/// Vertex layout of the target graph: `1..=nv` are `h`'s vertices,
/// `nv+1..=nv+ne` the hyperedge handles in `h.edges()` order, `nv+ne+1`
/// the extra vertex. The minimal dominating sets that live entirely inside
/// `1..=nv` are exactly the minimal transversals; every other minimal
/// dominating set is a two-element set that picks a handle or the extra
/// vertex, and the solution mapping sends those to `None`. There are
/// at most `(nv + 1) * ne` of them, which sizes the read-ahead batch.
pub fn trans_to_dom(
    h: &Hypergraph,
) -> Result<Reduction<Graph, Assignment, Assignment>, StructuresError> {
    let nv = h.num_vertices();
    let ne = h.num_edges() as u32;
    if nv == 0 || ne == 0 {
        return Err(StructuresError::Invalid(
            "the incidence construction needs at least one vertex and one hyperedge".into(),
        ));
    }
    let apex = nv + ne + 1;
    let mut g = Graph::new(apex);
    for u in 1..=nv {
        for v in u + 1..=nv {
            g.add_edge(u, v).expect("vertex clique edge in range");
        }
    }
    for i in 0..ne {
        for j in i + 1..ne {
            g.add_edge(nv + 1 + i, nv + 1 + j).expect("handle clique edge in range");
        }
    }
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            g.add_edge(v, nv + 1 + i as u32).expect("incidence edge in range");
        }
    }
    for v in 1..=nv {
        g.add_edge(v, apex).expect("apex edge in range");
    }
    let batch = (nv as u64 + 1) * ne as u64 + 1;
    Ok(Reduction {
        target: g,
        tau: Box::new(move |d: &Assignment| {
            if (nv + 1..=apex).any(|v| d.get(v)) {
                return None;
            }
            Some(Assignment::from_bits((1..=nv).map(|v| d.get(v)).collect()))
        }),
        batch,
    })
}
