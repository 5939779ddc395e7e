//! Transporting enumeration across problem reductions.
//!
//! A reduction here is an instance translation plus a solution mapping
//! back: solving the target instance and mapping each of its solutions
//! through `tau` recovers exactly the source instance's solutions, except
//! that `tau` may return `None` (padding solutions) or repeat itself
//! (several target solutions standing for one source solution). The
//! executor re-establishes enumeration semantics on the source side:
//! every source solution exactly once, nothing else.

use super::{EngineError, SolutionStream};
use crate::oracle::CounterHandle;
use std::collections::HashSet;
use std::hash::Hash;

/// The data of one reduction from a source problem to `Target`.
/// `batch` bounds how many target solutions stand for one source solution
/// (plus its share of padding); the executor reads that many per
/// scheduling round, so a correct bound gives a delay of `batch` target
/// delays per source output. An underestimate costs only lag, never
/// correctness or duplicates.
pub struct Reduction<Target, InnerSol, OuterSol> {
    pub target: Target,
    pub tau: Box<dyn Fn(&InnerSol) -> Option<OuterSol>>,
    pub batch: u64,
}

impl<Target, InnerSol, OuterSol> Reduction<Target, InnerSol, OuterSol> {
    pub fn map_solution(&self, z: &InnerSol) -> Option<OuterSol> {
        (self.tau)(z)
    }
}

/// Chains two reductions: source -> mid via `outer`, mid -> target via
/// `inner`. `inner.target` must have been built from `outer.target`.
pub fn compose<T2, Z2, T1, Z1, Z0>(
    outer: Reduction<T1, Z1, Z0>,
    inner: Reduction<T2, Z2, Z1>,
) -> Reduction<T2, Z2, Z0>
where
    Z0: 'static,
    Z1: 'static,
    Z2: 'static,
    T1: 'static,
{
    let outer_tau = outer.tau;
    let inner_tau = inner.tau;
    Reduction {
        target: inner.target,
        tau: Box::new(move |z2| inner_tau(z2).and_then(|z1| outer_tau(&z1))),
        batch: outer.batch.saturating_mul(inner.batch),
    }
}

/// Runs a solution stream for the target problem and emits the mapped
/// source solutions: deduplicated, padding dropped, in order of first
/// appearance. Reads up to `batch` target solutions per scheduling round,
/// then emits everything new that round produced before reading again.
pub struct ReducedStream<S, T, F> {
    inner: S,
    tau: F,
    batch: u64,
    queue: Vec<T>,
    seen: HashSet<T>,
    cursor: usize,
    inner_done: bool,
}

impl<S, T, F> ReducedStream<S, T, F>
where
    S: SolutionStream,
    T: Clone + Eq + Hash,
    F: FnMut(&S::Item) -> Option<T>,
{
    pub fn new(inner: S, batch: u64, tau: F) -> Self {
        assert!(batch >= 1, "batch bound must be positive");
        ReducedStream {
            inner,
            tau,
            batch,
            queue: Vec::new(),
            seen: HashSet::new(),
            cursor: 0,
            inner_done: false,
        }
    }
}

impl<S, T, F> SolutionStream for ReducedStream<S, T, F>
where
    S: SolutionStream,
    T: Clone + Eq + Hash,
    F: FnMut(&S::Item) -> Option<T>,
{
    type Item = T;

    fn next_solution(&mut self) -> Result<Option<T>, EngineError> {
        loop {
            if self.cursor < self.queue.len() {
                let item = self.queue[self.cursor].clone();
                self.cursor += 1;
                return Ok(Some(item));
            }
            if self.inner_done {
                return Ok(None);
            }
            for _ in 0..self.batch {
                match self.inner.next_solution()? {
                    None => {
                        self.inner_done = true;
                        break;
                    }
                    Some(z) => {
                        if let Some(t) = (self.tau)(&z) {
                            if self.seen.insert(t.clone()) {
                                self.queue.push(t);
                            }
                        }
                    }
                }
            }
        }
    }

    fn counters(&self) -> CounterHandle {
        self.inner.counters()
    }
}
