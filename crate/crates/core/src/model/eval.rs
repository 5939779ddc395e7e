//! Bit-parallel truth-table evaluation.
//!
//! This is the reference satisfiability check used by tests and by the
//! crosscheck harness: it shares no code with the DPLL solver, evaluating 64
//! assignments per word instead.

use super::{CnfFormula, Literal};

/// 64-bit column patterns for the six least significant index bits:
/// bit `j` of `PAT[k]` is `(j >> k) & 1`.
const PAT: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Column of variable `var` within the 64-assignment block starting at
/// `base`, under the MSB-is-variable-1 indexing used by `Assignment`.
fn column(var: u32, n: u32, base: u64) -> u64 {
    let shift = n - var; // assignment bit position of `var`
    if shift < 6 {
        PAT[shift as usize]
    } else if base >> shift & 1 == 1 {
        u64::MAX
    } else {
        0
    }
}

/// Exhaustive satisfiability check of `f` with the given literals fixed.
/// Panics if the formula has more than 28 variables; callers stay far below.
pub fn truth_table_satisfiable(f: &CnfFormula, fixed: &[Literal]) -> bool {
    let n = f.num_vars();
    assert!(n <= 28, "truth-table check limited to 28 variables");
    if n == 0 {
        // The empty assignment satisfies a formula iff it has no clauses
        // (a clause over zero variables is the empty clause).
        return f.clauses().is_empty();
    }
    let total: u64 = 1 << n;
    let mut base = 0;
    while base < total {
        let mut ok = u64::MAX;
        if total - base < 64 {
            ok = (1u64 << (total - base)) - 1;
        }
        for l in fixed {
            let col = column(l.var(), n, base);
            ok &= if l.is_positive() { col } else { !col };
            if ok == 0 {
                break;
            }
        }
        for c in f.clauses() {
            if ok == 0 {
                break;
            }
            let mut sat = 0u64;
            for l in c.literals() {
                let col = column(l.var(), n, base);
                sat |= if l.is_positive() { col } else { !col };
                if sat == u64::MAX {
                    break;
                }
            }
            ok &= sat;
        }
        if ok != 0 {
            return true;
        }
        base += 64;
    }
    false
}
