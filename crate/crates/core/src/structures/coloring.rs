//! Proper colourings and the reduction from 3-colouring to 4-colouring.
//!
//! Colourings are emitted as digit vectors (vertex order, one digit per
//! vertex) by the digit flashlight; the extension oracle asks a SAT query
//! over the one-hot encoding with the decided prefix pinned by
//! assumptions. At-most-one-colour clauses are omitted deliberately: extra
//! colour bits on a vertex only tighten the per-edge constraints, so a
//! model exists exactly when a proper colouring extends the prefix.

use crate::engine::{DigitFlashlight, Reduction, SolutionStream};
use crate::model::{Clause, CnfFormula, Graph, Literal, VarId};
use crate::oracle::{CounterHandle, SatOracle};

/// Emits the proper colourings of `g` with colours `0..colors`, digit
/// vectors in lexicographic order.
pub fn coloring_enum(
    counters: CounterHandle,
    g: &Graph,
    colors: u8,
) -> Box<dyn SolutionStream<Item = Vec<u8>>> {
    let n = g.num_vertices() as usize;
    let q = colors as VarId;
    // Variable (v-1)*q + c + 1 means "vertex v wears colour c".
    let hot = move |v: u32, c: u8| (v as VarId - 1) * q + c as VarId + 1;
    let mut f = CnfFormula::new(n as VarId * q);
    for v in 1..=n as u32 {
        f.push_clause(Clause::expect((0..colors).map(|c| Literal::positive(hot(v, c))).collect()));
    }
    for (u, v) in g.edges() {
        for c in 0..colors {
            f.push_clause(Clause::expect(vec![
                Literal::negative(hot(u, c)),
                Literal::negative(hot(v, c)),
            ]));
        }
    }
    let oracle = SatOracle::new(counters.clone());
    Box::new(DigitFlashlight::new(n, colors, counters, move |prefix: &[u8]| {
        let assumptions: Vec<Literal> = prefix
            .iter()
            .enumerate()
            .map(|(i, &d)| Literal::positive(hot(i as u32 + 1, d)))
            .collect();
        oracle.solve(&f, &assumptions)
    }))
}

/// Reduces 3-colouring enumeration on `g` to 4-colouring enumeration on
/// `g` plus one extra vertex adjacent to everything. The extra vertex's
/// colour is unique to it, so swapping that colour with 3 across the
/// whole colouring and then dropping the extra vertex yields a proper
/// 3-colouring; every 3-colouring arises from exactly 4 inner solutions
/// (one per colour choice for the extra vertex), so nothing maps to
/// `None` and the read-ahead batch is 4.
pub fn threecol_to_fourcol(g: &Graph) -> Reduction<Graph, Vec<u8>, Vec<u8>> {
    let n = g.num_vertices();
    let apex = n + 1;
    let mut target = Graph::new(apex);
    for (u, v) in g.edges() {
        target.add_edge(u, v).expect("copied edge in range");
    }
    for v in 1..=n {
        target.add_edge(v, apex).expect("apex edge in range");
    }
    Reduction {
        target,
        tau: Box::new(move |c: &Vec<u8>| {
            let a = c[n as usize];
            Some(
                c[..n as usize]
                    .iter()
                    .map(|&d| if d == a { 3 } else if d == 3 { a } else { d })
                    .collect(),
            )
        }),
        batch: 4,
    }
}
