//! Exhaustive reference enumeration. Slow on purpose: every fancier engine
//! in the crate is tested against these.

use crate::model::Assignment;

/// Which solutions to keep, relative to the full solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionFilter {
    All,
    /// No other solution's true-set is a proper subset of this one's.
    SubsetMinimal,
    /// No other solution's true-set is a proper superset of this one's.
    SubsetMaximal,
    /// Fewest true variables.
    CardMinimal,
    /// Most true variables.
    CardMaximal,
}

fn strict_subset(a: &Assignment, b: &Assignment) -> bool {
    a.bits() != b.bits()
        && a.bits()
            .iter()
            .zip(b.bits())
            .all(|(&x, &y)| !x || y)
}

/// All assignments over `1..=num_vars` satisfying `pred`, in
/// lexicographic order, then filtered. Capped at 24 variables; anything
/// bigger has no business being brute-forced.
pub fn brute_force_assignments(
    num_vars: usize,
    mut pred: impl FnMut(&Assignment) -> bool,
    filter: SolutionFilter,
) -> Vec<Assignment> {
    assert!(num_vars <= 24, "brute force cap exceeded: {num_vars} variables");
    let all: Vec<Assignment> = (0..(1u64 << num_vars))
        .map(|i| Assignment::from_index(i, num_vars))
        .filter(|a| pred(a))
        .collect();
    match filter {
        SolutionFilter::All => all,
        SolutionFilter::SubsetMinimal => all
            .iter()
            .filter(|a| !all.iter().any(|b| strict_subset(b, a)))
            .cloned()
            .collect(),
        SolutionFilter::SubsetMaximal => all
            .iter()
            .filter(|a| !all.iter().any(|b| strict_subset(a, b)))
            .cloned()
            .collect(),
        SolutionFilter::CardMinimal => {
            let best = all.iter().map(|a| a.weight()).min();
            all.iter().filter(|a| Some(a.weight()) == best).cloned().collect()
        }
        SolutionFilter::CardMaximal => {
            let best = all.iter().map(|a| a.weight()).max();
            all.iter().filter(|a| Some(a.weight()) == best).cloned().collect()
        }
    }
}

/// All digit strings over `0..colors` of length `positions` satisfying
/// `pred`, in lexicographic order.
pub fn brute_force_digits(
    positions: usize,
    colors: u8,
    mut pred: impl FnMut(&[u8]) -> bool,
) -> Vec<Vec<u8>> {
    assert!(colors >= 1);
    assert!(
        (positions as f64) * (colors as f64).log2() <= 24.0,
        "brute force cap exceeded"
    );
    let mut out = Vec::new();
    let mut current = vec![0u8; positions];
    loop {
        if pred(&current) {
            out.push(current.clone());
        }
        // Odometer step, most significant digit first.
        let mut i = positions;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] + 1 < colors {
                current[i] += 1;
                for d in &mut current[i + 1..] {
                    *d = 0;
                }
                break;
            }
        }
    }
}
