//! The dichotomy enumerator for satisfying assignments of Γ-formulas.
//!
//! When every relation of the language shares a closure flag, the whole
//! formula compiles into that flag's normal form and a polynomial-time
//! decider answers the prefix-extension queries, so the solutions stream
//! out with polynomial delay and the NP-oracle counter stays at zero.
//! Otherwise each constraint expands into the maxterms of its complement
//! (at most 2^arity clauses) and the SAT oracle drives the same engine.

use super::{classify_language, relation_to_clausal_form, CompiledForm, CompiledTarget};
use crate::engine::{EngineError, Flashlight, SolutionStream};
use crate::model::{Assignment, Clause, CnfFormula, GammaFormula, Literal, VarId};
use crate::oracle::{
    dual_horn_satisfiable, horn_satisfiable, two_sat_satisfiable, xor_satisfiable,
    CounterHandle, SatOracle, XorEquation, XorSystem,
};

/// How the enumeration is answered: by a polynomial decider for the named
/// normal form, or by the SAT oracle over a CNF encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaRoute {
    Polynomial(CompiledTarget),
    NpOracle,
}

/// A running enumeration plus the route the dichotomy picked for it.
pub struct GammaEnumeration {
    route: GammaRoute,
    stream: Box<dyn SolutionStream<Item = Assignment>>,
}

impl GammaEnumeration {
    pub fn route(&self) -> GammaRoute {
        self.route
    }
}

impl SolutionStream for GammaEnumeration {
    type Item = Assignment;

    fn next_solution(&mut self) -> Result<Option<Assignment>, EngineError> {
        self.stream.next_solution()
    }

    fn counters(&self) -> CounterHandle {
        self.stream.counters()
    }
}

/// Substitutes constraint variables into a compiled clause. Returns `None`
/// for clauses that become tautological under repeated variables.
fn instantiate_clause(template: &Clause, vars: &[VarId]) -> Option<Clause> {
    let lits: Vec<Literal> = template
        .literals()
        .iter()
        .map(|l| Literal::new(vars[l.var() as usize - 1], l.is_positive()))
        .collect();
    Clause::new(lits).ok()
}

/// Compiles every constraint of `f` into the target form over `f`'s
/// variables. Equations cancel repeated variables on their own; clauses
/// that turn tautological are dropped.
fn instantiate_formula(
    f: &GammaFormula,
    target: CompiledTarget,
) -> Result<InstanceForm, super::SchaeferError> {
    let mut compiled: std::collections::BTreeMap<&str, CompiledForm> = Default::default();
    for (name, rel) in f.language() {
        compiled.insert(name, relation_to_clausal_form(rel, target)?);
    }
    match target {
        CompiledTarget::AffineSystem => {
            let mut sys = XorSystem::new(f.num_vars());
            for (name, vars) in f.constraints() {
                let CompiledForm::Equations(template) = &compiled[name.as_str()] else {
                    unreachable!("affine target compiled to clauses")
                };
                for eq in &template.equations {
                    let mapped: Vec<VarId> =
                        eq.vars().iter().map(|&p| vars[p as usize - 1]).collect();
                    sys.push(XorEquation::new(mapped, eq.rhs()));
                }
            }
            Ok(InstanceForm::Equations(sys))
        }
        _ => {
            let mut cnf = CnfFormula::new(f.num_vars());
            for (name, vars) in f.constraints() {
                let CompiledForm::Clauses { clauses, .. } = &compiled[name.as_str()] else {
                    unreachable!("clausal target compiled to equations")
                };
                for template in clauses {
                    if let Some(c) = instantiate_clause(template, vars) {
                        cnf.push_clause(c);
                    }
                }
            }
            Ok(InstanceForm::Clauses(cnf))
        }
    }
}

enum InstanceForm {
    Clauses(CnfFormula),
    Equations(XorSystem),
}

/// Expands each constraint into the maxterms of its complement: one clause
/// per excluded tuple pattern, over the constraint's variables. Exact for
/// any relation, at the price of up to 2^arity clauses per constraint.
fn maxterm_cnf(f: &GammaFormula) -> CnfFormula {
    let mut cnf = CnfFormula::new(f.num_vars());
    for (name, vars) in f.constraints() {
        let rel = f.relation(name).expect("constraint names a known relation");
        let arity = rel.arity();
        for idx in 0u32..(1u32 << arity) {
            let tuple: Vec<bool> = (0..arity).map(|i| idx >> i & 1 == 1).collect();
            if rel.contains(&tuple) {
                continue;
            }
            let lits: Vec<Literal> = tuple
                .iter()
                .zip(vars)
                .map(|(&bit, &v)| Literal::new(v, !bit))
                .collect();
            if let Ok(c) = Clause::new(lits) {
                cnf.push_clause(c);
            }
        }
    }
    cnf
}

/// Enumerates the models of `f` in lexicographic order. The route is
/// polynomial iff the language shares a closure flag (checked in the
/// priority order Horn, dual Horn, bijunctive, affine); languages with a
/// relation too wide to classify go straight to the SAT oracle, which is
/// correct for any shape.
pub fn enum_sat_gamma(counters: CounterHandle, f: &GammaFormula) -> GammaEnumeration {
    let shared = classify_language(f.language()).ok();
    let target = shared.and_then(|class| {
        [
            (class.horn, CompiledTarget::Horn),
            (class.dualhorn, CompiledTarget::DualHorn),
            (class.bijunctive, CompiledTarget::TwoCnf),
            (class.affine, CompiledTarget::AffineSystem),
        ]
        .into_iter()
        .find_map(|(flag, t)| flag.then_some(t))
    });
    let n = f.num_vars() as usize;
    match target {
        Some(target) => {
            let form = instantiate_formula(f, target)
                .expect("shared flag guarantees compilation");
            let handle = counters.clone();
            let ext = move |prefix: &[bool]| {
                let assumptions: Vec<Literal> = prefix
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| Literal::new(i as VarId + 1, b))
                    .collect();
                let (size, sat) = match &form {
                    InstanceForm::Clauses(cnf) => (
                        cnf.token_size() as u64,
                        match target {
                            CompiledTarget::Horn => horn_satisfiable(cnf, &assumptions),
                            CompiledTarget::DualHorn => {
                                dual_horn_satisfiable(cnf, &assumptions)
                            }
                            CompiledTarget::TwoCnf => {
                                two_sat_satisfiable(cnf, &assumptions)
                            }
                            CompiledTarget::AffineSystem => unreachable!(),
                        },
                    ),
                    InstanceForm::Equations(sys) => {
                        (sys.token_size(), xor_satisfiable(sys, &assumptions))
                    }
                };
                handle.record(size + assumptions.len() as u64, false);
                Ok(sat)
            };
            GammaEnumeration {
                route: GammaRoute::Polynomial(target),
                stream: Box::new(Flashlight::new(n, counters, ext)),
            }
        }
        None => {
            let cnf = maxterm_cnf(f);
            let oracle = SatOracle::new(counters.clone());
            let ext = move |prefix: &[bool]| {
                let assumptions: Vec<Literal> = prefix
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| Literal::new(i as VarId + 1, b))
                    .collect();
                oracle.solve(&cnf, &assumptions)
            };
            GammaEnumeration {
                route: GammaRoute::NpOracle,
                stream: Box::new(Flashlight::new(n, counters, ext)),
            }
        }
    }
}
