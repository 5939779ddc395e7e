//! Acceptance suite: one test per release gate, each checking an engine
//! against an independently written reference at fixed seeds and fixed
//! instance counts. The per-test `ok`/`FAILED` line in the harness output
//! is the verdict; each test also prints a one-line summary of what it
//! measured for `--nocapture` runs.
//!
//! The shared CNF corpus (1,000 formulas, at most 14 variables and 60
//! clauses each) is enumerated once behind a `OnceLock`: the first gate to
//! need it pays the cost, the others reuse the runs.

use enumkit_core::corpus;
use enumkit_core::engine::{
    brute_force_assignments, run_to_completion, ReducedStream, Reduction, SolutionFilter,
};
use enumkit_core::kr::{abduction_enum, cardmin_to_mbd, diagnosis_enum, KrError};
use enumkit_core::logic::{
    all_models_blocking, all_models_lex, cardinality_minimal_models, enumerate_qbf,
    minimal_models, PiSigmaStream,
};
use enumkit_core::model::{
    egds_satisfied, truth_table_satisfiable, Assignment, BoolRelation, CnfFormula, GammaFormula,
    Literal, QbfInstance, Quantifier,
};
use enumkit_core::oracle::{CounterHandle, SatOracle, Sigma2Oracle, Sigma2Query};
use enumkit_core::schaefer::{
    classify_language, classify_relation, constants_elimination, enum_sat_gamma, GammaRoute,
};
use enumkit_core::structures::{
    coloring_enum, domset_enum, pi1sat_to_repair, repair_enum, threecol_to_fourcol, trans_to_dom,
    transversal_enum,
};
use enumkit_core::{DelayProfile, SolutionStream, VarId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::sync::OnceLock;

const CORPUS_SEED: u64 = 101;
const CORPUS_SIZE: usize = 1_000;

/// One corpus formula with everything the corpus-wide gates look at:
/// reference model set, both engine runs, and the size of every oracle
/// input the blocking engine issued.
struct CnfRun {
    formula: CnfFormula,
    lex: Vec<Assignment>,
    lex_profile: DelayProfile,
    blocking: Vec<Assignment>,
    blocking_sizes: Vec<u64>,
}

static CNF_RUNS: OnceLock<Vec<CnfRun>> = OnceLock::new();

fn cnf_runs() -> &'static [CnfRun] {
    CNF_RUNS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
        (0..CORPUS_SIZE)
            .map(|_| {
                let formula = corpus::random_cnf(&mut rng, 14, 60);
                let mut lex_stream = all_models_lex(CounterHandle::new(), formula.clone());
                let (lex, lex_profile) =
                    run_to_completion(&mut lex_stream, None).expect("no budget in force");
                let counters = CounterHandle::new();
                let mut blocking_stream = all_models_blocking(counters.clone(), formula.clone());
                let (blocking, _) =
                    run_to_completion(&mut blocking_stream, None).expect("no budget in force");
                let blocking_sizes = counters.stats().input_sizes;
                CnfRun { formula, lex, lex_profile, blocking, blocking_sizes }
            })
            .collect()
    })
}

fn drain<S: SolutionStream>(stream: &mut S) -> Vec<S::Item> {
    run_to_completion(stream, None).expect("no budget in force").0
}

fn assert_strictly_increasing(items: &[Assignment], what: &str) {
    for w in items.windows(2) {
        assert!(w[0] < w[1], "{what}: {} !< {}", w[0].to_bitstring(), w[1].to_bitstring());
    }
}

/// `a`'s true-set strictly inside `b`'s.
fn strictly_below(a: &Assignment, b: &Assignment) -> bool {
    a != b && a.bits().iter().zip(b.bits()).all(|(&x, &y)| !x || y)
}

#[test]
fn a01_decision_oracles_match_exhaustive_evaluation() {
    let mut mismatches = 0;
    for run in cnf_runs() {
        let oracle = SatOracle::new(CounterHandle::new());
        let got = oracle.solve(&run.formula, &[]).unwrap();
        if got != truth_table_satisfiable(&run.formula, &[]) {
            mismatches += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..300 {
        let inst = corpus::random_exists_forall(&mut rng, 14);
        let oracle = Sigma2Oracle::new(CounterHandle::new());
        let side = CnfFormula::new(inst.num_vars);
        let q = Sigma2Query {
            num_vars: inst.num_vars,
            exists: &inst.blocks[0].1,
            forall: &inst.blocks[1].1,
            matrix: &inst.matrix,
            side: &side,
        };
        let got = oracle.solve(&q).unwrap();
        if got != inst.evaluate_exhaustive(&Assignment::from_bits(Vec::new())) {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
    println!(
        "decision oracles: {} sat + 300 exists-forall instances, 0 mismatches",
        CORPUS_SIZE
    );
}

#[test]
fn a02_lex_blocking_and_brute_force_emit_identical_model_sets() {
    let mut total_models = 0usize;
    for run in cnf_runs() {
        let brute = brute_force_assignments(
            run.formula.num_vars() as usize,
            |a| run.formula.evaluate(a),
            SolutionFilter::All,
        );
        assert_eq!(run.lex, brute, "prefix extension disagrees with brute force");
        assert_strictly_increasing(&run.lex, "prefix extension output");

        let blocking_set: HashSet<&Assignment> = run.blocking.iter().collect();
        assert_eq!(run.blocking.len(), blocking_set.len(), "blocking engine repeated a model");
        let brute_set: HashSet<&Assignment> = brute.iter().collect();
        assert_eq!(blocking_set, brute_set, "blocking engine disagrees with brute force");
        total_models += brute.len();
    }
    println!(
        "engine equivalence: {} formulas, {} models, both engines equal brute force",
        CORPUS_SIZE, total_models
    );
}

#[test]
fn a03_oracle_input_sizes_show_the_bounded_and_growing_signatures() {
    let mut growth_checked = 0;
    for run in cnf_runs() {
        let bound = (run.formula.token_size() + run.formula.num_vars() as usize) as u64;
        assert!(
            run.lex_profile.max_oracle_input <= bound,
            "prefix extension exceeded its input bound: {} > {bound}",
            run.lex_profile.max_oracle_input
        );
        if run.blocking.len() >= 3 {
            for w in run.blocking_sizes.windows(2) {
                assert!(w[1] > w[0], "blocking input sizes failed to grow: {:?}", w);
            }
            growth_checked += 1;
        }
    }
    println!(
        "input-size signatures: bounded on all {} formulas, strictly growing on {} runs with 3+ models",
        CORPUS_SIZE, growth_checked
    );
}

#[test]
fn a04_delay_budgets_hold_between_consecutive_outputs() {
    let mut worst_gap_slack = u64::MAX;
    for run in cnf_runs() {
        let n = run.formula.num_vars() as u64;
        let budget = 4 * n + 4;
        let gap = run.lex_profile.max_calls_per_gap();
        assert!(gap <= budget, "delay budget broken: {gap} calls in one gap, budget {budget}");
        worst_gap_slack = worst_gap_slack.min(budget - gap);

        let counters = CounterHandle::new();
        let oracle = SatOracle::new(counters.clone());
        let model = oracle.lex_least_model(&run.formula, &[]).unwrap();
        let calls = counters.calls();
        assert!(
            calls <= 2 * n + 1,
            "model from decisions took {calls} calls, budget {}",
            2 * n + 1
        );
        match model {
            Some(m) => assert_eq!(Some(&m), run.lex.first(), "not the least model"),
            None => assert!(run.lex.is_empty(), "missed every model"),
        }
    }
    println!(
        "delay budgets: extension gaps within 4n+4 (min slack {}), decision-built models within 2n+1 calls",
        worst_gap_slack
    );
}

#[test]
fn a05_subset_minimal_enumeration_matches_brute_force_and_stays_excluded() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let mut total = 0usize;
    for _ in 0..300 {
        let f = corpus::random_cnf(&mut rng, 12, 40);
        let mut stream = minimal_models(CounterHandle::new(), f.clone());
        let got = drain(&mut stream);

        let brute = brute_force_assignments(
            f.num_vars() as usize,
            |a| f.evaluate(a),
            SolutionFilter::SubsetMinimal,
        );
        let mut sorted = got.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, brute, "subset-minimal set mismatch");

        for (i, a) in got.iter().enumerate() {
            for b in &got[i + 1..] {
                assert!(
                    !strictly_below(a, b) && !strictly_below(b, a),
                    "emitted models are not an antichain"
                );
            }
        }

        let working = stream.working_formula();
        for m in &got {
            assert!(
                !working.evaluate(m),
                "iteration clauses left an emitted model admissible"
            );
        }
        total += got.len();
    }
    println!("subset-minimal models: 300 formulas, {total} minimal models, all re-queries excluded");
}

#[test]
fn a06_extremal_cardinality_enumerations_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    for _ in 0..300 {
        let f = corpus::random_cnf(&mut rng, 12, 40);
        let result = cardinality_minimal_models(CounterHandle::new(), &f).unwrap();
        let brute = brute_force_assignments(
            f.num_vars() as usize,
            |a| f.evaluate(a),
            SolutionFilter::CardMinimal,
        );
        match result.k_star {
            None => assert!(brute.is_empty(), "missed a satisfiable formula"),
            Some(k) => {
                assert_eq!(k, brute[0].weight(), "wrong minimal weight");
                let mut stream = result.stream;
                let got = drain(&mut stream);
                assert!(got.iter().all(|m| m.weight() == k), "weights differ from k*");
                assert_eq!(got, brute, "lightest models mismatch or out of order");
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(602);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 150 {
        attempts += 1;
        assert!(attempts < 20_000, "diagnosis corpus starved");
        let inst = corpus::random_diagnosis(&mut rng, 12, 10);
        let m = inst.components.len();

        // Reference: for every observation-satisfying assignment, record
        // which components it satisfies; a retained set is consistent with
        // the observation exactly when some record covers it.
        let mut covers: Vec<u32> = Vec::new();
        for idx in 0..(1u64 << inst.num_vars) {
            let a = Assignment::from_index(idx, inst.num_vars as usize);
            if !inst.mu.evaluate(&a) {
                continue;
            }
            let mut mask = 0u32;
            for (i, comp) in inst.components.iter().enumerate() {
                if comp.evaluate(&a) {
                    mask |= 1 << i;
                }
            }
            covers.push(mask);
        }
        let consistent = |keep: u32| covers.iter().any(|&c| keep & !c == 0);

        match diagnosis_enum(CounterHandle::new(), &inst) {
            Err(KrError::Invalid(_)) => continue,
            Err(e) => panic!("unexpected diagnosis failure: {e}"),
            Ok(mut run) => {
                let mut best = 0;
                let mut want = Vec::new();
                for idx in 0..(1u64 << m) {
                    let a = Assignment::from_index(idx, m);
                    let keep =
                        (0..m).fold(0u32, |acc, i| acc | (u32::from(a.get(i as VarId + 1)) << i));
                    if !consistent(keep) {
                        continue;
                    }
                    match keep.count_ones().cmp(&best) {
                        std::cmp::Ordering::Greater => {
                            best = keep.count_ones();
                            want = vec![a];
                        }
                        std::cmp::Ordering::Equal => want.push(a),
                        std::cmp::Ordering::Less => {}
                    }
                }
                assert_eq!(run.c_star(), best as usize, "wrong maximal retained cardinality");
                let got = drain(&mut run);
                assert_eq!(got, want, "retained-set mismatch or out of order");
                accepted += 1;
            }
        }
    }
    println!("extremal cardinality: 300 lightest-model runs and {accepted} diagnosis runs match brute force");
}

#[test]
fn a07_abduction_matches_brute_force_and_survives_independent_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let mut total = 0usize;
    for _ in 0..200 {
        let inst = corpus::random_abduction(&mut rng, 12, 10);
        let h = inst.hypotheses.len();

        // Reference: for every theory model, record which hypothesis
        // literals it makes true and whether it falsifies the query.
        let mut all_covers: Vec<u32> = Vec::new();
        let mut query_false_covers: Vec<u32> = Vec::new();
        for idx in 0..(1u64 << inst.gamma.num_vars()) {
            let a = Assignment::from_index(idx, inst.gamma.num_vars() as usize);
            if !inst.gamma.evaluate(&a) {
                continue;
            }
            let mut mask = 0u32;
            for (j, lit) in inst.hypotheses.iter().enumerate() {
                if lit.eval(&a) {
                    mask |= 1 << j;
                }
            }
            all_covers.push(mask);
            if !a.get(inst.q) {
                query_false_covers.push(mask);
            }
        }
        let mut want = Vec::new();
        for idx in 0..(1u64 << h) {
            let a = Assignment::from_index(idx, h);
            let sel = (0..h).fold(0u32, |acc, j| acc | (u32::from(a.get(j as VarId + 1)) << j));
            let consistent = all_covers.iter().any(|&c| sel & !c == 0);
            let entails = !query_false_covers.iter().any(|&c| sel & !c == 0);
            if consistent && entails {
                want.push(a);
            }
        }

        let mut stream = abduction_enum(CounterHandle::new(), &inst).unwrap();
        let got = drain(&mut stream);
        assert_eq!(got, want, "explanation set mismatch or out of order");

        let check = SatOracle::new(CounterHandle::new());
        for e in &got {
            let assumptions: Vec<Literal> = inst
                .hypotheses
                .iter()
                .enumerate()
                .filter(|(j, _)| e.get(*j as VarId + 1))
                .map(|(_, &l)| l)
                .collect();
            assert!(check.solve(&inst.gamma, &assumptions).unwrap(), "explanation inconsistent");
            let mut with_query_false = assumptions;
            with_query_false.push(Literal::negative(inst.q));
            assert!(
                !check.solve(&inst.gamma, &with_query_false).unwrap(),
                "explanation fails to entail the query"
            );
        }
        total += got.len();
    }
    println!("abduction: 200 instances, {total} explanations, every one re-verified on a fresh oracle");
}

#[test]
fn a08_dichotomy_routes_and_classifier_flags_are_correct() {
    // Tractable side: whenever the language passes classification, the
    // enumerator must answer without NP-oracle traffic and still agree
    // with brute force.
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let mut tractable = 0;
    let mut attempts = 0;
    while tractable < 120 {
        attempts += 1;
        assert!(attempts < 20_000, "constraint corpus starved");
        let f = corpus::random_gamma(&mut rng, 10);
        let class = classify_language(f.language()).unwrap();
        let counters = CounterHandle::new();
        let mut run = enum_sat_gamma(counters.clone(), &f);
        let got = drain(&mut run);
        let brute = brute_force_assignments(
            f.num_vars() as usize,
            |a| f.evaluate(a),
            SolutionFilter::All,
        );
        assert_eq!(got, brute, "constraint enumeration disagrees with brute force");
        if class.is_schaefer() {
            assert!(
                matches!(run.route(), GammaRoute::Polynomial(_)),
                "tractable language routed to the NP oracle"
            );
            assert_eq!(counters.stats().np_calls, 0, "NP calls on a tractable language");
            tractable += 1;
        }
    }

    // Intractable side: exactly-one-of-three has none of the closure
    // properties, so the enumerator must take the NP route.
    let one_in_three = BoolRelation::new(
        3,
        vec![
            vec![true, false, false],
            vec![false, true, false],
            vec![false, false, true],
        ],
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(802);
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let mut f = GammaFormula::new(n);
        f.add_relation("ONE3", one_in_three.clone()).unwrap();
        for _ in 0..rng.gen_range(1..=5) {
            let vars: Vec<VarId> = (0..3).map(|_| rng.gen_range(1..=n)).collect();
            f.add_constraint("ONE3", vars).unwrap();
        }
        let counters = CounterHandle::new();
        let mut run = enum_sat_gamma(counters.clone(), &f);
        let got = drain(&mut run);
        assert_eq!(run.route(), GammaRoute::NpOracle, "expected the NP route");
        assert!(counters.stats().np_calls > 0, "NP route made no NP calls");
        let brute = brute_force_assignments(
            f.num_vars() as usize,
            |a| f.evaluate(a),
            SolutionFilter::All,
        );
        assert_eq!(got, brute, "NP-route enumeration disagrees with brute force");
    }

    // Classifier audit: recompute every flag from the definitions, over
    // every nonempty relation of arity at most four.
    let mut audited = 0u64;
    for arity in 1..=4usize {
        let universe = 1u32 << arity;
        for subset in 1..(1u64 << universe) {
            let tuples: Vec<Vec<bool>> = (0..universe)
                .filter(|&m| subset >> m & 1 == 1)
                .map(|m| (0..arity).map(|i| m >> i & 1 == 1).collect())
                .collect();
            let set: HashSet<&[bool]> = tuples.iter().map(Vec::as_slice).collect();
            let apply = |op: &dyn Fn(&[&Vec<bool>]) -> Vec<bool>, k: usize| -> bool {
                let mut stack = vec![0usize; k];
                loop {
                    let args: Vec<&Vec<bool>> = stack.iter().map(|&i| &tuples[i]).collect();
                    if !set.contains(op(&args).as_slice()) {
                        return false;
                    }
                    let mut pos = 0;
                    loop {
                        if pos == k {
                            return true;
                        }
                        stack[pos] += 1;
                        if stack[pos] < tuples.len() {
                            break;
                        }
                        stack[pos] = 0;
                        pos += 1;
                    }
                }
            };
            let horn = apply(&|a| (0..arity).map(|i| a[0][i] && a[1][i]).collect(), 2);
            let dualhorn = apply(&|a| (0..arity).map(|i| a[0][i] || a[1][i]).collect(), 2);
            let bijunctive = apply(
                &|a| {
                    (0..arity)
                        .map(|i| {
                            (a[0][i] && a[1][i]) || (a[0][i] && a[2][i]) || (a[1][i] && a[2][i])
                        })
                        .collect()
                },
                3,
            );
            let affine = apply(&|a| (0..arity).map(|i| a[0][i] ^ a[1][i] ^ a[2][i]).collect(), 3);

            let rel = BoolRelation::new(arity, tuples.clone()).unwrap();
            let class = classify_relation(&rel).unwrap();
            assert_eq!(class.horn, horn, "horn flag wrong on {tuples:?}");
            assert_eq!(class.dualhorn, dualhorn, "dual-horn flag wrong on {tuples:?}");
            assert_eq!(class.bijunctive, bijunctive, "bijunctive flag wrong on {tuples:?}");
            assert_eq!(class.affine, affine, "affine flag wrong on {tuples:?}");
            assert_eq!(class.zero_valid, set.contains(vec![false; arity].as_slice()));
            assert_eq!(class.one_valid, set.contains(vec![true; arity].as_slice()));
            audited += 1;
        }
    }
    println!(
        "dichotomy: {tractable} tractable runs with 0 NP calls, 100 NP-route runs, {audited} relations audited"
    );
}

/// Drains the target-side enumeration of `census` and counts how many of
/// its solutions the mapping discards. `census` must be built from the
/// same source instance as the executed reduction.
fn dropped_count<T, Z: Clone + Eq + std::hash::Hash, O, S: SolutionStream<Item = Z>>(
    census: &Reduction<T, Z, O>,
    inner: &mut S,
) -> (usize, usize) {
    let all = drain(inner);
    let dropped = all.iter().filter(|z| census.map_solution(z).is_none()).count();
    (dropped, all.len())
}

#[test]
fn a09_reductions_reproduce_direct_enumeration_with_bounded_losses() {
    // Graph coloring, three colors through four: every target solution
    // maps back, four to one.
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    for _ in 0..100 {
        let g = corpus::random_graph(&mut rng, 9);
        let r = threecol_to_fourcol(&g);
        let inner = coloring_enum(CounterHandle::new(), &r.target, 4);
        let Reduction { batch, tau, .. } = r;
        let mut reduced = ReducedStream::new(inner, batch, move |z| tau(z));
        let got = drain(&mut reduced);

        let mut direct = coloring_enum(CounterHandle::new(), &g, 3);
        let want = drain(&mut direct);
        let got_set: HashSet<&Vec<u8>> = got.iter().collect();
        let want_set: HashSet<&Vec<u8>> = want.iter().collect();
        assert_eq!(got.len(), got_set.len(), "reduced stream repeated a coloring");
        assert_eq!(got_set, want_set, "three-coloring sets differ");

        let census = threecol_to_fourcol(&g);
        let mut inner = coloring_enum(CounterHandle::new(), &census.target, 4);
        let (dropped, total) = dropped_count(&census, &mut inner);
        assert_eq!(dropped, 0, "the four-coloring mapping never discards");
        assert_eq!(total, 4 * want.len(), "expected exactly four preimages per coloring");
    }

    // Hypergraph transversals through dominating sets: discards are the
    // two-vertex dominating pairs, counted exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    for _ in 0..100 {
        let h = corpus::random_hypergraph(&mut rng, 9);
        let r = trans_to_dom(&h).unwrap();
        let inner = domset_enum(CounterHandle::new(), &r.target);
        let Reduction { batch, tau, .. } = r;
        let mut reduced = ReducedStream::new(inner, batch, move |z| tau(z));
        let got = drain(&mut reduced);

        let mut direct = transversal_enum(CounterHandle::new(), &h);
        let want = drain(&mut direct);
        let got_set: HashSet<&Assignment> = got.iter().collect();
        let want_set: HashSet<&Assignment> = want.iter().collect();
        assert_eq!(got.len(), got_set.len(), "reduced stream repeated a transversal");
        assert_eq!(got_set, want_set, "transversal sets differ");

        let census = trans_to_dom(&h).unwrap();
        let mut inner = domset_enum(CounterHandle::new(), &census.target);
        let (dropped, _) = dropped_count(&census, &mut inner);
        let non_universal = (1..=h.num_vertices())
            .filter(|v| !h.edges().iter().all(|e| e.contains(v)))
            .count();
        assert_eq!(
            dropped,
            (non_universal + 1) * h.num_edges(),
            "dominating-set discard census is exact"
        );
        assert!((dropped as u64) < census.batch, "batch bound must cover the discards");
    }

    // Lightest models through diagnosis: at most one discard, and only
    // for unsatisfiable sources.
    let mut rng = ChaCha8Rng::seed_from_u64(903);
    let mut accepted = 0;
    while accepted < 100 {
        let f = corpus::random_cnf(&mut rng, 12, 40);
        let r = match cardmin_to_mbd(&f) {
            Err(KrError::ZeroValid) => continue,
            other => other.unwrap(),
        };
        let inner = diagnosis_enum(CounterHandle::new(), &r.target).unwrap();
        let Reduction { batch, tau, .. } = r;
        let mut reduced = ReducedStream::new(inner, batch, move |z| tau(z));
        let got = drain(&mut reduced);

        let direct = cardinality_minimal_models(CounterHandle::new(), &f).unwrap();
        let mut stream = direct.stream;
        let want = drain(&mut stream);
        let got_set: HashSet<&Assignment> = got.iter().collect();
        let want_set: HashSet<&Assignment> = want.iter().collect();
        assert_eq!(got.len(), got_set.len(), "reduced stream repeated a model");
        assert_eq!(got_set, want_set, "lightest-model sets differ");

        let census = cardmin_to_mbd(&f).unwrap();
        let mut inner = diagnosis_enum(CounterHandle::new(), &census.target).unwrap();
        let (dropped, _) = dropped_count(&census, &mut inner);
        let expected = usize::from(!truth_table_satisfiable(&f, &[]));
        assert_eq!(dropped, expected, "diagnosis discard census is exact");
        accepted += 1;
    }

    // Constant elimination: both pole patterns are the only possible
    // discards.
    let mut rng = ChaCha8Rng::seed_from_u64(904);
    for _ in 0..100 {
        let mut f = corpus::random_gamma(&mut rng, 6);
        f.add_relation("T", BoolRelation::new(1, vec![vec![true]]).unwrap()).unwrap();
        f.add_relation("F", BoolRelation::new(1, vec![vec![false]]).unwrap()).unwrap();
        for _ in 0..rng.gen_range(0..=3) {
            let name = if rng.gen() { "T" } else { "F" };
            let var = rng.gen_range(1..=f.num_vars());
            f.add_constraint(name, vec![var]).unwrap();
        }

        let r = constants_elimination(&f).into_reduction();
        let inner = enum_sat_gamma(CounterHandle::new(), &r.target);
        let Reduction { batch, tau, .. } = r;
        let mut reduced = ReducedStream::new(inner, batch, move |z| tau(z));
        let got = drain(&mut reduced);

        let want = brute_force_assignments(
            f.num_vars() as usize,
            |a| f.evaluate(a),
            SolutionFilter::All,
        );
        let got_set: HashSet<&Assignment> = got.iter().collect();
        let want_set: HashSet<&Assignment> = want.iter().collect();
        assert_eq!(got.len(), got_set.len(), "reduced stream repeated a model");
        assert_eq!(got_set, want_set, "constant-free model sets differ");

        let census = constants_elimination(&f).into_reduction();
        let target_models = brute_force_assignments(
            census.target.num_vars() as usize,
            |a| census.target.evaluate(a),
            SolutionFilter::All,
        );
        let dropped =
            target_models.iter().filter(|m| census.map_solution(m).is_none()).count();
        assert!(dropped <= 2, "at most the two pole patterns may be discarded");
        assert_eq!(target_models.len() - dropped, want.len(), "preimages must be unique");
    }

    // Universally quantified implicant formulas through database repairs:
    // the discard census is pinned exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(905);
    for _ in 0..100 {
        let psi = corpus::random_pi1_3dnf(&mut rng, 5);
        let k = psi.free_vars.len();
        let r = pi1sat_to_repair(&psi).unwrap();
        let inner = repair_enum(CounterHandle::new(), &r.target.0, &r.target.1);
        let Reduction { batch, tau, .. } = r;
        let mut reduced = ReducedStream::new(inner, batch, move |z| tau(z));
        let got = drain(&mut reduced);

        let want: Vec<Assignment> = (0..(1u64 << k))
            .map(|idx| Assignment::from_index(idx, k))
            .filter(|a| psi.evaluate_exhaustive(a))
            .collect();
        let got_set: HashSet<&Assignment> = got.iter().collect();
        let want_set: HashSet<&Assignment> = want.iter().collect();
        assert_eq!(got.len(), got_set.len(), "reduced stream repeated an assignment");
        assert_eq!(got_set, want_set, "satisfying-assignment sets differ");

        let census = pi1sat_to_repair(&psi).unwrap();
        let mut inner = repair_enum(CounterHandle::new(), &census.target.0, &census.target.1);
        let (dropped, _) = dropped_count(&census, &mut inner);
        assert!(dropped <= k + 11, "repair discards exceeded k+11: {dropped}");
        let expected = 11 + if k >= 2 { k } else { usize::from(want.is_empty()) };
        assert_eq!(dropped, expected, "repair discard census is exact");
    }

    println!("reductions: 5 registered reductions x 100 instances, sets equal, discard censuses exact");
}

#[test]
fn a10_repairs_are_exactly_the_maximal_consistent_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut consistent_instances = 0;
    for _ in 0..200 {
        let (d, egds) = corpus::random_database(&mut rng, 12, 3);
        let n = d.num_atoms();
        let mut stream = repair_enum(CounterHandle::new(), &d, &egds);
        let got = drain(&mut stream);

        let subsets: Vec<Assignment> = (0..(1u64 << n))
            .map(|idx| Assignment::from_index(idx, n))
            .filter(|a| egds_satisfied(&d, &egds, a.bits()))
            .collect();
        let want: Vec<Assignment> = subsets
            .iter()
            .filter(|a| !subsets.iter().any(|b| strictly_below(a, b)))
            .cloned()
            .collect();
        assert_eq!(got, want, "repair set mismatch or out of order");

        if egds_satisfied(&d, &egds, &vec![true; n]) {
            assert_eq!(
                got,
                vec![Assignment::from_bits(vec![true; n])],
                "a consistent database must repair to itself alone"
            );
            consistent_instances += 1;
        }
    }
    println!(
        "repairs: 200 databases match the maximal-consistent-subset reference ({consistent_instances} already consistent)"
    );
}

#[test]
fn a11_blocking_quantified_enumeration_grows_by_one_disequality_per_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(1101);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 100 {
        attempts += 1;
        assert!(attempts < 20_000, "quantified corpus starved");
        let inst = corpus::random_qbf(&mut rng, 10, 2);
        let supported = match inst.blocks.as_slice() {
            [] | [(Quantifier::Exists, _)] | [(Quantifier::Forall, _)] => true,
            [(Quantifier::Exists, _), (Quantifier::Forall, _)] => true,
            _ => false,
        };
        if !supported {
            continue;
        }

        let counters = CounterHandle::new();
        let mut blocking = PiSigmaStream::new(counters.clone(), &inst).unwrap();
        let got = drain(&mut blocking);
        let got_set: HashSet<&Assignment> = got.iter().collect();
        assert_eq!(got.len(), got_set.len(), "blocking run repeated a solution");

        let (mut direct, _) = enumerate_qbf(CounterHandle::new(), &inst).unwrap();
        let want = drain(&mut direct);
        let want_set: HashSet<&Assignment> = want.iter().collect();
        assert_eq!(got_set, want_set, "blocking and prefix engines disagree");

        let sizes = counters.stats().input_sizes;
        let free = inst.free_vars.len() as u64;
        if free == 0 {
            assert_eq!(sizes.len(), 1, "no free variables means a single round");
        } else {
            assert_eq!(sizes.len(), got.len() + 1, "one round per solution plus the refusal");
            for w in sizes.windows(2) {
                assert_eq!(
                    w[1] - w[0],
                    free + 1,
                    "each output must add exactly one disequality clause"
                );
            }
        }
        accepted += 1;
    }
    println!("blocking quantified runs: 100 instances equal the prefix engine, growth is one clause per output");
}
