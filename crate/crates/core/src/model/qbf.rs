//! Quantified Boolean instances with free variables.

use super::{Assignment, Matrix, ModelError, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// A prenex QBF with free variables: solutions are assignments to
/// `free_vars` (in listed order) under which the quantified part is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QbfInstance {
    pub num_vars: VarId,
    pub free_vars: Vec<VarId>,
    pub blocks: Vec<(Quantifier, Vec<VarId>)>,
    pub matrix: Matrix,
}

impl QbfInstance {
    /// Checks the structural invariants: free and quantified variables
    /// partition `1..=num_vars`, quantifier blocks strictly alternate and are
    /// nonempty, and the matrix stays within the variable space.
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.matrix.num_vars() != self.num_vars {
            return Err(ModelError::Invalid(format!(
                "matrix is over {} variables, instance declares {}",
                self.matrix.num_vars(),
                self.num_vars
            )));
        }
        let mut seen = vec![false; self.num_vars as usize + 1];
        let mut mark = |v: VarId| -> Result<(), ModelError> {
            if v == 0 || v > self.num_vars {
                return Err(ModelError::VarOutOfRange { var: v, num_vars: self.num_vars });
            }
            if seen[v as usize] {
                return Err(ModelError::Invalid(format!("variable {v} listed twice")));
            }
            seen[v as usize] = true;
            Ok(())
        };
        for &v in &self.free_vars {
            mark(v)?;
        }
        for (q, vars) in &self.blocks {
            if vars.is_empty() {
                return Err(ModelError::Invalid("empty quantifier block".into()));
            }
            let _ = q;
            for &v in vars {
                mark(v)?;
            }
        }
        for w in self.blocks.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(ModelError::Invalid(
                    "adjacent quantifier blocks must alternate".into(),
                ));
            }
        }
        if let Some(v) = (1..=self.num_vars).find(|&v| !seen[v as usize]) {
            return Err(ModelError::Invalid(format!(
                "variable {v} is neither free nor quantified"
            )));
        }
        Ok(())
    }

    /// Quantifier depth (number of blocks).
    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    pub fn quantified_var_count(&self) -> usize {
        self.blocks.iter().map(|(_, vs)| vs.len()).sum()
    }

    /// Reference semantics by full expansion: is the quantified part true
    /// once the free variables take the values in `free_assign` (positionally
    /// matching `free_vars`)? Exponential in the quantified variables; used
    /// as the independent oracle and the small-instance fallback.
    pub fn evaluate_exhaustive(&self, free_assign: &Assignment) -> bool {
        assert_eq!(free_assign.len(), self.free_vars.len());
        let mut values = vec![false; self.num_vars as usize + 1];
        for (i, &v) in self.free_vars.iter().enumerate() {
            values[v as usize] = free_assign.bits()[i];
        }
        self.eval_blocks(0, &mut values)
    }

    fn eval_blocks(&self, depth: usize, values: &mut Vec<bool>) -> bool {
        if depth == self.blocks.len() {
            let a = Assignment::from_bits(values[1..].to_vec());
            return self.matrix.evaluate(&a);
        }
        let (q, vars) = &self.blocks[depth];
        let vars = vars.clone();
        let combos = 1u64 << vars.len();
        for combo in 0..combos {
            for (i, &v) in vars.iter().enumerate() {
                values[v as usize] = combo >> i & 1 == 1;
            }
            let sub = self.eval_blocks(depth + 1, values);
            match q {
                Quantifier::Exists if sub => return true,
                Quantifier::Forall if !sub => return false,
                _ => {}
            }
        }
        matches!(q, Quantifier::Forall)
    }
}
