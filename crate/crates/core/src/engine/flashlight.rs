//! Depth-first prefix extension ("flashlight") search.
//!
//! The only thing the engine knows about the problem is an extension
//! oracle: given a prefix of digit choices, can it be completed to a
//! solution? Asking it before every descent keeps the search from ever
//! entering a dead subtree, which is what bounds the work between two
//! consecutive outputs: walking from one solution to the next touches at
//! most one path up and one path down the tree, paying at most `colors`
//! oracle calls per level, for a worst case of `colors * (positions + 1)`
//! calls in each direction. With two colors that is the familiar
//! `4n + 4` bound.

use super::{EngineError, SolutionStream};
use crate::model::Assignment;
use crate::oracle::{CounterHandle, OracleError};

/// Answers "does some solution extend this prefix?". Any closure over
/// digit prefixes qualifies; [`Flashlight`] adapts boolean oracles.
pub trait ExtOracle {
    fn extends(&mut self, prefix: &[u8]) -> Result<bool, OracleError>;
}

impl<F> ExtOracle for F
where
    F: FnMut(&[u8]) -> Result<bool, OracleError>,
{
    fn extends(&mut self, prefix: &[u8]) -> Result<bool, OracleError> {
        self(prefix)
    }
}

/// Enumerates, in lexicographic order, all strings over `0..colors` of
/// length `positions` whose extension oracle approves every prefix.
pub struct DigitFlashlight<E> {
    positions: usize,
    colors: u8,
    ext: E,
    counters: CounterHandle,
    prefix: Vec<u8>,
    state: State,
}

enum State {
    Fresh,
    AtSolution,
    Done,
}

impl<E: ExtOracle> DigitFlashlight<E> {
    /// `counters` should be the handle the extension oracle records into;
    /// the engine itself makes no queries of its own.
    pub fn new(positions: usize, colors: u8, counters: CounterHandle, ext: E) -> Self {
        assert!(colors >= 1, "need at least one digit value");
        DigitFlashlight {
            positions,
            colors,
            ext,
            counters,
            prefix: Vec::with_capacity(positions),
            state: State::Fresh,
        }
    }

    /// Extends the current prefix to the lexicographically least solution
    /// below it, or reports that no digit works at some level.
    fn descend(&mut self) -> Result<bool, EngineError> {
        'fill: while self.prefix.len() < self.positions {
            for d in 0..self.colors {
                self.prefix.push(d);
                if self.ext.extends(&self.prefix)? {
                    continue 'fill;
                }
                self.prefix.pop();
            }
            return Ok(false);
        }
        Ok(true)
    }
}

impl<E: ExtOracle> SolutionStream for DigitFlashlight<E> {
    type Item = Vec<u8>;

    fn next_solution(&mut self) -> Result<Option<Vec<u8>>, EngineError> {
        match self.state {
            State::Done => return Ok(None),
            State::Fresh => {
                self.state = State::Done;
                if self.positions == 0 {
                    // The empty string is the only candidate; ask directly.
                    let hit = self.ext.extends(&[])?;
                    return Ok(if hit { Some(Vec::new()) } else { None });
                }
                if self.descend()? {
                    self.state = State::AtSolution;
                    return Ok(Some(self.prefix.clone()));
                }
                return Ok(None);
            }
            State::AtSolution => {}
        }
        // Walk up from the current solution, trying untested siblings.
        while let Some(d) = self.prefix.pop() {
            for nd in (d + 1)..self.colors {
                self.prefix.push(nd);
                if self.ext.extends(&self.prefix)? {
                    if self.descend()? {
                        return Ok(Some(self.prefix.clone()));
                    }
                    self.state = State::Done;
                    return Err(EngineError::Inconsistent(format!(
                        "prefix {:?} was approved but has no completion",
                        self.prefix
                    )));
                }
                self.prefix.pop();
            }
        }
        self.state = State::Done;
        Ok(None)
    }

    fn counters(&self) -> CounterHandle {
        self.counters.clone()
    }
}

/// Adapts an oracle over partial boolean assignments to digit prefixes.
pub struct BoolExt<F> {
    f: F,
    scratch: Vec<bool>,
}

impl<F> ExtOracle for BoolExt<F>
where
    F: FnMut(&[bool]) -> Result<bool, OracleError>,
{
    fn extends(&mut self, prefix: &[u8]) -> Result<bool, OracleError> {
        self.scratch.clear();
        self.scratch.extend(prefix.iter().map(|&d| d == 1));
        (self.f)(&self.scratch)
    }
}

/// Binary flashlight: assignments over `1..=n` in lexicographic order
/// (variable 1 is the most significant position, false before true).
pub struct Flashlight<F> {
    inner: DigitFlashlight<BoolExt<F>>,
}

impl<F> Flashlight<F>
where
    F: FnMut(&[bool]) -> Result<bool, OracleError>,
{
    /// `ext` receives the prefix as bools for variables `1..=len`.
    pub fn new(num_vars: usize, counters: CounterHandle, ext: F) -> Self {
        let adapter = BoolExt { f: ext, scratch: Vec::with_capacity(num_vars) };
        Flashlight { inner: DigitFlashlight::new(num_vars, 2, counters, adapter) }
    }
}

impl<F> SolutionStream for Flashlight<F>
where
    F: FnMut(&[bool]) -> Result<bool, OracleError>,
{
    type Item = Assignment;

    fn next_solution(&mut self) -> Result<Option<Assignment>, EngineError> {
        Ok(self
            .inner
            .next_solution()?
            .map(|digits| Assignment::from_bits(digits.iter().map(|&d| d == 1).collect())))
    }

    fn counters(&self) -> CounterHandle {
        self.inner.counters()
    }
}
