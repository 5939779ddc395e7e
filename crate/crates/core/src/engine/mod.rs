//! Enumeration engines and the instrumentation shared by all of them.
//!
//! An engine is anything that implements [`SolutionStream`]: it hands out
//! solutions one at a time and exposes the oracle traffic it generated.
//! The two workhorses are [`DigitFlashlight`] (depth-first prefix extension,
//! lexicographic order, bounded oracle calls between outputs) and
//! [`BlockingStream`] (repeated SAT with blocking clauses, oracle input
//! growing as it goes). [`ReducedStream`] transports a stream through a
//! solution mapping so that enumeration for one problem can be borrowed
//! from another, and [`brute_force_assignments`] is the slow, obviously
//! correct reference the tests compare everything against.

mod blocking;
mod brute;
mod flashlight;
mod reduction;

pub use blocking::BlockingStream;
pub use brute::{brute_force_assignments, brute_force_digits, SolutionFilter};
pub use flashlight::{DigitFlashlight, Flashlight};
pub use reduction::{compose, ReducedStream, Reduction};

use crate::oracle::{CounterHandle, OracleError};
use std::hash::Hash;

/// Ways an enumeration run can fail.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    /// The extension oracle accepted a prefix and then rejected every way
    /// of extending it. Either the oracle is buggy or the two sides answer
    /// different questions; enumeration cannot continue soundly.
    #[error("extension oracle contradicted itself: {0}")]
    Inconsistent(String),
}

/// A source of solutions, pulled one at a time. `Ok(None)` means the stream
/// is exhausted; afterwards every call must keep returning `Ok(None)`.
pub trait SolutionStream {
    type Item: Clone + Eq + Hash;

    fn next_solution(&mut self) -> Result<Option<Self::Item>, EngineError>;

    /// Handle on the oracle counters this stream drives. Snapshotting it
    /// between pulls gives per-gap traffic.
    fn counters(&self) -> CounterHandle;
}

impl<S: SolutionStream + ?Sized> SolutionStream for Box<S> {
    type Item = S::Item;

    fn next_solution(&mut self) -> Result<Option<Self::Item>, EngineError> {
        (**self).next_solution()
    }

    fn counters(&self) -> CounterHandle {
        (**self).counters()
    }
}

/// Canned stream over a known list. Lets tests and cross-checks feed a
/// reduction executor without a real oracle behind it.
pub struct ReplayStream<T> {
    items: std::vec::IntoIter<T>,
    counters: CounterHandle,
}

impl<T> ReplayStream<T> {
    pub fn new(items: Vec<T>) -> Self {
        ReplayStream { items: items.into_iter(), counters: CounterHandle::new() }
    }

    /// Like [`ReplayStream::new`], but reporting through an existing
    /// counter handle, for enumerators that answer trivial instances
    /// without an oracle yet share one handle per run.
    pub fn with_counters(items: Vec<T>, counters: CounterHandle) -> Self {
        ReplayStream { items: items.into_iter(), counters }
    }
}

impl<T: Clone + Eq + Hash> SolutionStream for ReplayStream<T> {
    type Item = T;

    fn next_solution(&mut self) -> Result<Option<T>, EngineError> {
        Ok(self.items.next())
    }

    fn counters(&self) -> CounterHandle {
        self.counters.clone()
    }
}

/// Oracle traffic of a finished (or truncated) enumeration run, shaped for
/// reporting. The serialized form carries the totals; the per-gap call
/// counts stay in memory for tests that check delay bounds.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DelayProfile {
    pub outputs: u64,
    pub gaps: u64,
    pub oracle_calls: u64,
    pub max_oracle_input: u64,
    #[serde(skip)]
    pub calls_per_gap: Vec<u64>,
}

impl DelayProfile {
    pub fn max_calls_per_gap(&self) -> u64 {
        self.calls_per_gap.iter().copied().max().unwrap_or(0)
    }
}

/// Drains a stream (up to `limit` outputs if given), recording oracle calls
/// per gap. The gap after the last output, where the stream proves it is
/// done, is included; a run cut short by `limit` has no such closing gap.
pub fn run_to_completion<S: SolutionStream>(
    stream: &mut S,
    limit: Option<u64>,
) -> Result<(Vec<S::Item>, DelayProfile), EngineError> {
    let counters = stream.counters();
    let mut items = Vec::new();
    let mut calls_per_gap = Vec::new();
    let mut before = counters.calls();
    loop {
        if limit.is_some_and(|l| items.len() as u64 >= l) {
            break;
        }
        let next = stream.next_solution()?;
        let after = counters.calls();
        calls_per_gap.push(after - before);
        before = after;
        match next {
            Some(item) => items.push(item),
            None => break,
        }
    }
    let stats = counters.stats();
    let profile = DelayProfile {
        outputs: items.len() as u64,
        gaps: calls_per_gap.len() as u64,
        oracle_calls: stats.calls,
        max_oracle_input: stats.max_input_size,
        calls_per_gap,
    };
    Ok((items, profile))
}
