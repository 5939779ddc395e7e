//! Simple graphs and hypergraphs over integer vertices `1..=n`.

use super::ModelError;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    num_vertices: u32,
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    pub fn new(num_vertices: u32) -> Self {
        Graph { num_vertices, edges: BTreeSet::new() }
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<(), ModelError> {
        if u == 0 || v == 0 || u > self.num_vertices || v > self.num_vertices {
            return Err(ModelError::Invalid(format!(
                "edge ({u},{v}) out of range for {} vertices",
                self.num_vertices
            )));
        }
        if u == v {
            return Err(ModelError::Invalid(format!("self-loop on vertex {u}")));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        (1..=self.num_vertices).filter(|&u| self.has_edge(u, v)).collect()
    }

    /// `N[v]`: the vertex together with its neighbors.
    pub fn closed_neighborhood(&self, v: u32) -> Vec<u32> {
        let mut n = self.neighbors(v);
        n.push(v);
        n.sort_unstable();
        n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    num_vertices: u32,
    edges: Vec<BTreeSet<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph from its hyperedges; the vertex set is
    /// `1..=max vertex mentioned` (possibly grown via `num_vertices`).
    /// Hyperedges are deduplicated; an empty hyperedge is rejected.
    pub fn new(edge_lists: Vec<Vec<u32>>) -> Result<Self, ModelError> {
        let mut edges: Vec<BTreeSet<u32>> = Vec::new();
        let mut max_v = 0;
        for list in edge_lists {
            if list.is_empty() {
                return Err(ModelError::Invalid("empty hyperedge".into()));
            }
            if list.contains(&0) {
                return Err(ModelError::Invalid("vertices are 1-based".into()));
            }
            let set: BTreeSet<u32> = list.into_iter().collect();
            max_v = max_v.max(*set.iter().last().unwrap());
            if !edges.contains(&set) {
                edges.push(set);
            }
        }
        Ok(Hypergraph { num_vertices: max_v, edges })
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn edges(&self) -> &[BTreeSet<u32>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
}
