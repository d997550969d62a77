use std::collections::BTreeSet;

use causal_teams::laws::{
    check_law, contributing_cycle, generate_team, registry, GeneratorConfig, LawKind, LawOutcome, DEFAULT_TRIALS,
};

/// One test per law id. The meta-test below fails when the registry gains a
/// law that is missing here.
macro_rules! law_tests {
    ($($name:ident => $id:literal, $trials:expr;)*) => {
        const COVERED: &[&str] = &[$($id),*];
        $(
            #[test]
            fn $name() {
                expect_pass($id, $trials);
            }
        )*
    };
}

fn expect_pass(id: &str, trials: usize) {
    let report = check_law(id, &GeneratorConfig::default(), trials).unwrap();
    assert!(report.passed(), "{report}");
    let kind = registry().into_iter().find(|l| l.id == id).unwrap().kind;
    match kind {
        LawKind::Universal => {
            assert_eq!(report.outcome, LawOutcome::Holds);
            assert!(report.nonvacuous > 0, "{id}: every trial was vacuous");
        }
        LawKind::Counterexample => assert_eq!(report.outcome, LawOutcome::CounterexampleConfirmed),
    }
}

law_tests! {
    downward => "DOWNWARD", DEFAULT_TRIALS;
    empty => "EMPTY", DEFAULT_TRIALS;
    flat => "FLAT", DEFAULT_TRIALS;
    wem => "WEM", DEFAULT_TRIALS;
    sem_fail => "SEM-FAIL", 1;
    cem_holds => "CEM-HOLDS", DEFAULT_TRIALS;
    cem_prime_fail => "CEM'-FAIL", 1;
    distribution => "D", DEFAULT_TRIALS;
    imp_exp => "IMP/EXP", DEFAULT_TRIALS;
    perm => "PERM", DEFAULT_TRIALS;
    full_imp_exp => "FULLIMPEXP", DEFAULT_TRIALS;
    full_perm => "FULLPERM", DEFAULT_TRIALS;
    rep => "REP", DEFAULT_TRIALS;
    rewrite => "REWRITE", DEFAULT_TRIALS;
    eff => "EFF", DEFAULT_TRIALS;
    dec => "DEC", DEFAULT_TRIALS;
    uni => "UNI", DEFAULT_TRIALS;
    ce => "CE", DEFAULT_TRIALS;
    ci => "CI", DEFAULT_TRIALS;
    in_out => "OR/AND/NEG-IN-OUT", DEFAULT_TRIALS;
    int_split => "INTSPLIT", DEFAULT_TRIALS;
    cf_in_out => "CF-IN-OUT", DEFAULT_TRIALS;
    sel_e_i => "SEL-E/I", DEFAULT_TRIALS;
    sel_in_out => "SEL-IN-OUT", DEFAULT_TRIALS;
    mp_or => "MP-OR", DEFAULT_TRIALS;
    rec => "REC", DEFAULT_TRIALS;
    selimp_rules => "SELIMP-RULES", DEFAULT_TRIALS;
    dep_rules => "DEPRULES", DEFAULT_TRIALS;
    noncomm => "NONCOMM", 1;
    cf_vs_sel => "CF-VS-SEL", 1;
    deduction => "DEDUCTION", DEFAULT_TRIALS;
    probspace => "PROBSPACE", DEFAULT_TRIALS;
    complement => "COMPLEMENT", DEFAULT_TRIALS;
    cond_sel => "CONDSEL", DEFAULT_TRIALS;
    int_obs => "INTOBS", DEFAULT_TRIALS;
    cond_def => "CONDDEF", DEFAULT_TRIALS;
    conserv => "CONSERV", DEFAULT_TRIALS;
    dep_def => "DEPDEF", DEFAULT_TRIALS;
    ma_mc => "MA-MC", DEFAULT_TRIALS;
    markov_product => "MARKOV-PRODUCT", DEFAULT_TRIALS;
}

/// The selected subteam of U has a constant X column, so the independence
/// atom holds there; only the first claim reproduces.
#[test]
fn indep_sel() {
    let report = check_law("INDEP-SEL", &GeneratorConfig::default(), 1).unwrap();
    match report.outcome {
        LawOutcome::Fails { detail, .. } => {
            assert_eq!(detail, "U: X=1 => indep(X, Y): expected UNSAT, evaluated SAT");
        }
        other => panic!("unexpected outcome {other:?}"),
    }
}

#[test]
fn registry_is_covered() {
    let mut tested: BTreeSet<&str> = COVERED.iter().copied().collect();
    tested.insert("INDEP-SEL");
    let registered: BTreeSet<&str> = registry().iter().map(|l| l.id).collect();
    let missing: Vec<_> = registered.difference(&tested).collect();
    let stale: Vec<_> = tested.difference(&registered).collect();
    assert!(missing.is_empty(), "laws without a test: {missing:?}");
    assert!(stale.is_empty(), "tests for unregistered laws: {stale:?}");
}

#[test]
fn flat_at_500_parametric_trials() {
    let cfg = GeneratorConfig {
        parametric: true,
        ..GeneratorConfig::default()
    };
    let r = check_law("FLAT", &cfg, 500).unwrap();
    assert_eq!(r.outcome, LawOutcome::Holds, "{r}");
}

#[test]
fn reports_are_reproducible() {
    let cfg = GeneratorConfig {
        seed: 99,
        ..GeneratorConfig::default()
    };
    assert_eq!(check_law("DOWNWARD", &cfg, 50).unwrap(), check_law("DOWNWARD", &cfg, 50).unwrap());
}

#[test]
fn other_seeds_and_shapes() {
    for seed in [1, 2, 3] {
        for (multiteam, parametric) in [(false, false), (true, true)] {
            let cfg = GeneratorConfig {
                seed,
                multiteam,
                parametric,
                max_vars: 5,
                max_rows: 10,
                ..GeneratorConfig::default()
            };
            for law in registry().iter().filter(|l| l.kind == LawKind::Universal) {
                let r = check_law(law.id, &cfg, 40).unwrap();
                assert!(r.passed(), "seed {seed}: {r}");
            }
        }
    }
}

#[test]
fn no_contributing_cycles_on_larger_teams() {
    for seed in 0..30 {
        let cfg = GeneratorConfig {
            seed,
            max_vars: 5,
            edge_prob: 0.7,
            ..GeneratorConfig::default()
        };
        assert_eq!(contributing_cycle(&generate_team(&cfg)).unwrap(), None);
    }
}
