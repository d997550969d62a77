//! Randomized comparisons against brute-force oracles written independently
//! of the library's evaluation code.

use std::collections::BTreeMap;

use causal_teams::laws::{generate_team, random_formula, FormulaShape, GeneratorConfig};
use causal_teams::prob::{probability_of, Probability};
use causal_teams::semantics::holds;
use causal_teams::{do_intervention, parse, Atom, CausalTeam, Formula, InterventionSpec, Value};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(seed: u64, multiteam: bool, max_vars: usize) -> GeneratorConfig {
    GeneratorConfig {
        seed,
        multiteam,
        parametric: true,
        max_vars,
        max_rows: 8,
        ..GeneratorConfig::default()
    }
}

fn atoms(row: &[Value]) -> Vec<Atom> {
    row.iter().map(|v| v.as_proper().expect("parametric teams stay proper").clone()).collect()
}

/// Value of `v` after setting `fixed` in `row`, by recursion on parents.
fn recompute(team: &CausalTeam, row: &[Atom], fixed: &BTreeMap<usize, Atom>, v: usize, memo: &mut Vec<Option<Atom>>) -> Atom {
    if let Some(a) = &memo[v] {
        return a.clone();
    }
    let out = if let Some(a) = fixed.get(&v) {
        a.clone()
    } else if !fixed.keys().any(|&x| team.graph().descendants(x).contains(&v)) {
        row[v].clone()
    } else {
        let f = team.function(v).expect("descendants are endogenous");
        let args: Vec<Atom> = f.parents.iter().map(|&p| recompute(team, row, fixed, p, memo)).collect();
        f.get(&args).expect("parametric").clone()
    };
    memo[v] = Some(out.clone());
    out
}

fn oracle_rows(team: &CausalTeam, bindings: &[(String, Atom)]) -> BTreeMap<Vec<Atom>, u64> {
    let fixed: BTreeMap<usize, Atom> = bindings
        .iter()
        .map(|(n, a)| (team.var_index(n).unwrap(), a.clone()))
        .collect();
    let mut out = BTreeMap::new();
    for r in team.rows() {
        let row = atoms(&r.values);
        let mut memo = vec![None; team.len_vars()];
        let new: Vec<Atom> = (0..team.len_vars()).map(|v| recompute(team, &row, &fixed, v, &mut memo)).collect();
        *out.entry(new).or_insert(0) += r.count;
    }
    if !team.is_multiteam() {
        out.values_mut().for_each(|c| *c = 1);
    }
    out
}

fn library_rows(team: &CausalTeam) -> BTreeMap<Vec<Atom>, u64> {
    let mut out = BTreeMap::new();
    for r in team.rows() {
        *out.entry(atoms(&r.values)).or_insert(0) += r.count;
    }
    out
}

/// Flat formula on one assignment of `team`.
fn row_sat(team: &CausalTeam, row: &[Atom], phi: &Formula) -> bool {
    let at = |v: &str| &row[team.var_index(v).unwrap()];
    match phi {
        Formula::Eq(v, a) => at(v) == a,
        Formula::Neq(v, a) => at(v) != a,
        Formula::And(a, b) => row_sat(team, row, a) && row_sat(team, row, b),
        Formula::TensorOr(a, b) => row_sat(team, row, a) || row_sat(team, row, b),
        Formula::DualNeg(a) => !row_sat(team, row, a),
        Formula::Selective(theta, chi) => !row_sat(team, row, theta) || row_sat(team, row, chi),
        Formula::Counterfactual(bs, chi) => {
            let fixed: BTreeMap<usize, Atom> = bs.iter().map(|(n, a)| (team.var_index(n).unwrap(), a.clone())).collect();
            let mut memo = vec![None; team.len_vars()];
            let moved: Vec<Atom> = (0..team.len_vars()).map(|v| recompute(team, row, &fixed, v, &mut memo)).collect();
            // the intervened team has a different graph, but a flat consequent only reads values
            row_sat(team, &moved, chi)
        }
        other => panic!("not flat: {other}"),
    }
}

fn nested_cf_free(phi: &Formula) -> bool {
    match phi {
        Formula::Counterfactual(_, chi) => !matches!(**chi, Formula::Counterfactual(..)) && cf_free(chi),
        Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::Selective(a, b) => nested_cf_free(a) && nested_cf_free(b),
        Formula::DualNeg(a) => nested_cf_free(a),
        _ => true,
    }
}

fn cf_free(phi: &Formula) -> bool {
    match phi {
        Formula::Counterfactual(..) => false,
        Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::Selective(a, b) => cf_free(a) && cf_free(b),
        Formula::DualNeg(a) => cf_free(a),
        _ => true,
    }
}

fn binding(rng: &mut ChaCha8Rng, team: &CausalTeam) -> Vec<(String, Atom)> {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut vars: Vec<usize> = (0..team.len_vars()).collect();
    vars.shuffle(rng);
    vars.truncate(rng.gen_range(1..=2.min(team.len_vars())));
    vars.into_iter()
        .map(|v| (team.name(v).to_string(), team.range(v).choose(rng).unwrap().clone()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn intervention_matches_recursive_oracle(seed: u64, multi: bool, pick: u64) {
        let team = generate_team(&config(seed, multi, 5));
        let bs = binding(&mut ChaCha8Rng::seed_from_u64(pick), &team);
        let after = do_intervention(&team, &InterventionSpec::new(bs.clone())).unwrap();
        prop_assert_eq!(library_rows(&after), oracle_rows(&team, &bs));
        for (n, _) in &bs {
            let v = team.var_index(n).unwrap();
            prop_assert!(after.graph().parents(v).is_empty());
        }
        prop_assert_eq!(after.cardinality() <= team.cardinality(), true);
        if multi {
            prop_assert_eq!(after.cardinality(), team.cardinality());
        }
    }

    #[test]
    fn flat_formulas_match_row_oracle(seed: u64, fseed: u64) {
        let team = generate_team(&config(seed, false, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        let phi = random_formula(&mut rng, &team, FormulaShape::Flat, 3);
        prop_assume!(nested_cf_free(&phi));
        let expected = team.rows().iter().all(|r| row_sat(&team, &atoms(&r.values), &phi));
        prop_assert_eq!(holds(&team, &phi).unwrap(), expected, "{}", phi);
    }

    #[test]
    fn probabilities_match_counting_oracle(seed: u64, fseed: u64) {
        let team = generate_team(&config(seed, true, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        let phi = random_formula(&mut rng, &team, FormulaShape::Observational, 3);
        prop_assume!(nested_cf_free(&phi));
        let hits: u64 = team
            .rows()
            .iter()
            .filter(|r| row_sat(&team, &atoms(&r.values), &phi))
            .map(|r| r.count)
            .sum();
        let expected = Probability::new(hits as i64, team.cardinality() as i64);
        prop_assert_eq!(probability_of(&team, &phi).unwrap(), expected, "{}", phi);
    }

    #[test]
    fn dependence_matches_pairwise_oracle(seed: u64, ys: usize, mask: u8) {
        let team = generate_team(&config(seed, false, 5));
        let n = team.len_vars();
        let y = ys % n;
        let xs: Vec<usize> = (0..n).filter(|&v| v != y && mask >> v & 1 == 1).collect();
        let rows: Vec<Vec<Atom>> = team.rows().iter().map(|r| atoms(&r.values)).collect();
        let expected = rows.iter().all(|s| rows.iter().all(|t| xs.iter().any(|&x| s[x] != t[x]) || s[y] == t[y]));
        let names: Vec<&str> = xs.iter().map(|&x| team.name(x)).collect();
        prop_assert_eq!(holds(&team, &Formula::dep(&names, team.name(y))).unwrap(), expected);
    }

    #[test]
    fn printed_formulas_parse_back(seed: u64, fseed: u64, shape in 0usize..4) {
        let team = generate_team(&config(seed, false, 4));
        let shapes = [FormulaShape::Classical, FormulaShape::Observational, FormulaShape::Flat, FormulaShape::DownwardClosed];
        let phi = random_formula(&mut ChaCha8Rng::seed_from_u64(fseed), &team, shapes[shape], 4);
        prop_assert_eq!(parse(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn team_documents_round_trip(seed: u64, multi: bool) {
        let team = generate_team(&config(seed, multi, 6));
        let back = causal_teams::load_team(&team.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), team.to_json());
        prop_assert_eq!(back, team);
    }

    #[test]
    fn selection_is_a_row_filter(seed: u64, fseed: u64) {
        let team = generate_team(&config(seed, true, 4));
        let theta = random_formula(&mut ChaCha8Rng::seed_from_u64(fseed), &team, FormulaShape::Classical, 2);
        let sel = team.select_subteam(&theta).unwrap();
        let expected: u64 = team
            .rows()
            .iter()
            .filter(|r| row_sat(&team, &atoms(&r.values), &theta))
            .map(|r| r.count)
            .sum();
        prop_assert_eq!(sel.cardinality(), expected);
    }
}
