//! Exact probabilities over causal multiteams.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intervene::{do_intervention, InterventionSpec};
use crate::model::{Atom, CausalTeam};
use crate::semantics::prob_in;
use crate::syntax::Formula;

pub type Probability = Ratio<i64>;

fn multiteam(team: &CausalTeam) -> CausalTeam {
    let t = if team.is_multiteam() { team.clone() } else { team.as_multiteam() };
    t.explicit_closure()
}

/// `Pr_T(chi)` for `chi` in CO.
pub fn probability_of(team: &CausalTeam, chi: &Formula) -> Result<Probability> {
    if !chi.is_co() {
        return Err(Error::NotInCO);
    }
    prob_in(&multiteam(team), chi)?.ok_or(Error::EmptyTeam)
}

/// `Pr_T(target | given)`.
pub fn conditional_probability(team: &CausalTeam, target: &Formula, given: &Formula) -> Result<Probability> {
    let base = probability_of(team, given)?;
    if base.is_zero() {
        return Err(Error::ZeroCondition);
    }
    let both = probability_of(team, &Formula::and(given.clone(), target.clone()))?;
    Ok(both / base)
}

/// `first ⫫ second`, optionally conditioned on `given`. A zero-probability
/// condition makes the statement vacuously true.
pub fn prob_independent(
    team: &CausalTeam,
    first: &Formula,
    second: &Formula,
    given: Option<&Formula>,
) -> Result<bool> {
    let cond = |extra: Option<&Formula>| -> Formula {
        match (given, extra) {
            (Some(g), Some(e)) => Formula::and(e.clone(), g.clone()),
            (Some(g), None) => g.clone(),
            (None, Some(e)) => e.clone(),
            (None, None) => unreachable!(),
        }
    };
    if let Some(g) = given {
        if probability_of(team, g)?.is_zero() {
            return Ok(true);
        }
    }
    let with_first = cond(Some(first));
    if probability_of(team, &with_first)?.is_zero() {
        return Ok(true);
    }
    if probability_of(team, &cond(Some(second)))?.is_zero() {
        return Ok(true);
    }
    let lhs = conditional_probability(team, second, &with_first)?;
    let rhs = match given {
        Some(_) => conditional_probability(team, second, &cond(None))?,
        None => probability_of(team, second)?,
    };
    Ok(lhs == rhs)
}

// ------------------------------------------------------------------ Markov

/// A failed conditional-independence instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovViolation {
    pub variable: String,
    pub value: Atom,
    pub parents: Vec<(String, Atom)>,
    pub conditioned: Vec<(String, Atom)>,
    /// `Pr(X=x | parents)`
    pub marginal: Probability,
    /// `Pr(X=x | parents, conditioned)`
    pub conditional: Probability,
}

impl fmt::Display for MarkovViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[(String, Atom)]| xs.iter().map(|(v, a)| format!("{v}={a}")).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{}={} pa{{{}}} nd{{{}}} {} vs {}",
            self.variable,
            self.value,
            list(&self.parents),
            list(&self.conditioned),
            self.marginal,
            self.conditional
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovReport {
    pub holds: bool,
    /// Number of equalities checked.
    pub checks: usize,
    pub violation: Option<MarkovViolation>,
}

pub const DEFAULT_MARKOV_CAP: usize = 8;

fn proper_rows(team: &CausalTeam) -> Result<Vec<(Vec<Atom>, u64)>> {
    team.rows()
        .iter()
        .map(|r| {
            let vals = r
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.as_proper()
                        .cloned()
                        .ok_or_else(|| Error::FormalTermEncountered(team.name(i).to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((vals, r.count))
        })
        .collect()
}

struct Tally<'a> {
    rows: &'a [(Vec<Atom>, u64)],
}

impl Tally<'_> {
    fn counts(&self, vars: &[usize]) -> HashMap<Vec<&Atom>, u64> {
        let mut m = HashMap::new();
        for (vals, c) in self.rows {
            *m.entry(vars.iter().map(|&v| &vals[v]).collect()).or_insert(0) += c;
        }
        m
    }
}

/// Checks `X ⫫ N | PA_X` for every variable `X` and every `N` produced by
/// `subsets(X)`, over the tuples occurring in the team.
fn markov_scheme(team: &CausalTeam, subsets: impl Fn(usize, Vec<usize>) -> Vec<Vec<usize>>) -> Result<MarkovReport> {
    let t = multiteam(team);
    let rows = proper_rows(&t)?;
    let tally = Tally { rows: &rows };
    let g = t.graph();
    let mut checks = 0;
    let mut worst: Option<(Probability, MarkovViolation)> = None;
    for x in 0..t.len_vars() {
        let pa: Vec<usize> = g.parents(x).to_vec();
        let nd: Vec<usize> = g.nondescendants(x).into_iter().filter(|v| !pa.contains(v)).collect();
        for n in subsets(x, nd) {
            if n.is_empty() {
                continue;
            }
            let with = |extra: &[usize]| pa.iter().chain(extra).copied().collect::<Vec<_>>();
            let c_pa = tally.counts(&pa);
            let c_pa_x = tally.counts(&with(&[x]));
            let pa_n = with(&n);
            let c_pa_n = tally.counts(&pa_n);
            let mut pa_n_x = pa_n.clone();
            pa_n_x.push(x);
            let c_pa_n_x = tally.counts(&pa_n_x);
            for (vals, _) in &rows {
                checks += 1;
                let key = |vs: &[usize]| vs.iter().map(|&v| &vals[v]).collect::<Vec<_>>();
                let marginal = Probability::new(c_pa_x[&key(&with(&[x]))] as i64, c_pa[&key(&pa)] as i64);
                let conditional = Probability::new(c_pa_n_x[&key(&pa_n_x)] as i64, c_pa_n[&key(&pa_n)] as i64);
                if marginal == conditional {
                    continue;
                }
                let gap = if marginal > conditional { marginal - conditional } else { conditional - marginal };
                if worst.as_ref().is_some_and(|(w, _)| *w >= gap) {
                    continue;
                }
                let named = |vs: &[usize]| vs.iter().map(|&v| (t.name(v).to_string(), vals[v].clone())).collect();
                worst = Some((
                    gap,
                    MarkovViolation {
                        variable: t.name(x).to_string(),
                        value: vals[x].clone(),
                        parents: named(&pa),
                        conditioned: named(&n),
                        marginal,
                        conditional,
                    },
                ));
            }
        }
    }
    Ok(MarkovReport {
        holds: worst.is_none(),
        checks,
        violation: worst.map(|(_, v)| v),
    })
}

/// The Markov Axiom Scheme: every variable is independent of all its
/// non-parent nondescendants given its parents. The reported violation is
/// the one with the largest probability gap.
pub fn check_markov_axiom(team: &CausalTeam) -> Result<MarkovReport> {
    markov_scheme(team, |_, nd| vec![nd])
}

/// The Markov Condition: independence from every set of non-parent
/// nondescendants. Exponential in the number of variables.
pub fn check_markov_condition(team: &CausalTeam) -> Result<MarkovReport> {
    check_markov_condition_with_cap(team, DEFAULT_MARKOV_CAP)
}

pub fn check_markov_condition_with_cap(team: &CausalTeam, cap: usize) -> Result<MarkovReport> {
    if team.len_vars() > cap {
        return Err(Error::DomainTooLarge {
            vars: team.len_vars(),
            cap,
        });
    }
    markov_scheme(team, |_, nd| {
        (1u32..1 << nd.len())
            .map(|mask| nd.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
            .collect()
    })
}

/// Frequency of each full tuple in the multiteam.
pub fn joint_distribution(team: &CausalTeam) -> Result<BTreeMap<Vec<Atom>, Probability>> {
    let t = multiteam(team);
    let total = t.cardinality();
    if total == 0 {
        return Err(Error::EmptyTeam);
    }
    let mut out: BTreeMap<Vec<Atom>, Probability> = BTreeMap::new();
    for (vals, c) in proper_rows(&t)? {
        *out.entry(vals).or_insert_with(Probability::zero) += Probability::new(c as i64, total as i64);
    }
    Ok(out)
}

const PRODUCT_TUPLE_CAP: u128 = 1 << 20;

fn all_tuples(team: &CausalTeam) -> Result<Vec<Vec<Atom>>> {
    let size: u128 = (0..team.len_vars()).map(|v| team.range(v).len() as u128).product();
    if size > PRODUCT_TUPLE_CAP {
        return Err(Error::SearchSpaceTooLarge {
            size,
            cap: PRODUCT_TUPLE_CAP,
        });
    }
    let mut out = vec![Vec::new()];
    for v in 0..team.len_vars() {
        out = out
            .into_iter()
            .flat_map(|p| {
                team.range(v).iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

/// `Π Pr(X_i = x_i | PA_i = pa_i)` over the variables not in `skip`, or
/// `None` if some conditioning event has probability zero.
pub fn markov_product(team: &CausalTeam, tuple: &[Atom], skip: &[usize]) -> Result<Option<Probability>> {
    let t = multiteam(team);
    let rows = proper_rows(&t)?;
    Ok(product_with(&t, &Tally { rows: &rows }, tuple, skip))
}

fn product_with(t: &CausalTeam, tally: &Tally, tuple: &[Atom], skip: &[usize]) -> Option<Probability> {
    let mut acc = Probability::one();
    for x in (0..t.len_vars()).filter(|v| !skip.contains(v)) {
        let pa = t.graph().parents(x);
        let mut num = 0u64;
        let mut den = 0u64;
        for (vals, c) in tally.rows {
            if pa.iter().all(|&p| vals[p] == tuple[p]) {
                den += c;
                if vals[x] == tuple[x] {
                    num += c;
                }
            }
        }
        if den == 0 {
            return None;
        }
        acc *= Probability::new(num as i64, den as i64);
    }
    Some(acc)
}

/// Checks `Pr(tuple) = Π Pr(X_i | PA_i)` on every full tuple of the range
/// product whose factors are all defined. Returns the first failing tuple.
pub fn check_product_formula(team: &CausalTeam) -> Result<Option<Vec<Atom>>> {
    let t = multiteam(team);
    let rows = proper_rows(&t)?;
    let tally = Tally { rows: &rows };
    let joint = joint_distribution(&t)?;
    for tuple in all_tuples(&t)? {
        if let Some(p) = product_with(&t, &tally, &tuple, &[]) {
            if joint.get(&tuple).copied().unwrap_or_else(Probability::zero) != p {
                return Ok(Some(tuple));
            }
        }
    }
    Ok(None)
}

/// The truncated product for `T_{X=x}`: factors of intervened variables are
/// dropped and tuples must agree with the intervention. Returns the first
/// failing tuple.
pub fn check_intervened_product(team: &CausalTeam, spec: &InterventionSpec) -> Result<Option<Vec<Atom>>> {
    if let Some(v) = team.first_partial_function() {
        return Err(Error::NotParametric(team.name(v).to_string()));
    }
    let t = multiteam(team);
    let rows = proper_rows(&t)?;
    let tally = Tally { rows: &rows };
    let after = do_intervention(&t, spec)?;
    let joint = joint_distribution(&after)?;
    let fixed: Vec<(usize, Atom)> = spec
        .normalized()
        .into_iter()
        .map(|(v, a)| Ok((t.var_index(&v)?, a)))
        .collect::<Result<_>>()?;
    let skip: Vec<usize> = fixed.iter().map(|(v, _)| *v).collect();
    for tuple in all_tuples(&t)? {
        let consistent = fixed.iter().all(|(v, a)| &tuple[*v] == a);
        let Some(p) = product_with(&t, &tally, &tuple, &skip) else { continue };
        let expected = if consistent { p } else { Probability::zero() };
        if joint.get(&tuple).copied().unwrap_or_else(Probability::zero) != expected {
            return Ok(Some(tuple));
        }
    }
    Ok(None)
}

/// The joint distribution obtained by pushing the exogenous frequencies
/// through the structural equations.
pub fn joint_from_exogenous(team: &CausalTeam) -> Result<BTreeMap<Vec<Atom>, Probability>> {
    if let Some(v) = team.first_partial_function() {
        return Err(Error::NotParametric(team.name(v).to_string()));
    }
    let t = multiteam(team);
    let total = t.cardinality();
    if total == 0 {
        return Err(Error::EmptyTeam);
    }
    let g = t.graph();
    let exo: Vec<usize> = (0..t.len_vars()).filter(|&v| !g.is_endogenous(v)).collect();
    let mut freq: BTreeMap<Vec<Atom>, u64> = BTreeMap::new();
    for r in t.rows() {
        let key = exo
            .iter()
            .map(|&v| {
                r.values[v]
                    .as_proper()
                    .cloned()
                    .ok_or_else(|| Error::FormalTermEncountered(t.name(v).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        *freq.entry(key).or_insert(0) += r.count;
    }
    let order = g.topological_order();
    let mut out: BTreeMap<Vec<Atom>, Probability> = BTreeMap::new();
    for (u, c) in freq {
        let mut vals: Vec<Option<Atom>> = vec![None; t.len_vars()];
        for (&v, a) in exo.iter().zip(u) {
            vals[v] = Some(a);
        }
        for &v in &order {
            if let Some(f) = t.function(v) {
                let args: Vec<Atom> = f.parents.iter().map(|&p| vals[p].clone().expect("topological")).collect();
                let out = f.get(&args).ok_or_else(|| Error::NotParametric(t.name(v).to_string()))?;
                vals[v] = Some(out.clone());
            }
        }
        let full: Vec<Atom> = vals.into_iter().map(|a| a.expect("assigned")).collect();
        *out.entry(full).or_insert_with(Probability::zero) += Probability::new(c as i64, total as i64);
    }
    Ok(out)
}

/// The conjunction `X_1=x_1 & ... & X_n=x_n` for a full tuple.
pub fn tuple_formula(team: &CausalTeam, tuple: &[Atom]) -> Option<Formula> {
    Formula::and_all(
        team.names()
            .iter()
            .zip(tuple)
            .map(|(n, a)| Formula::Eq(n.clone(), a.clone())),
    )
}

/// Renders a probability with six decimals.
pub fn decimal(p: Probability) -> String {
    let scaled = (*p.numer() as i128 * 1_000_000 * 2 + *p.denom() as i128) / (2 * *p.denom() as i128);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{TeamBuilder, TeamMode};
    use crate::syntax::parse;

    fn markov_team() -> CausalTeam {
        TeamBuilder::new(TeamMode::Multi)
            .variable("X", 1..=2)
            .variable("Y", 1..=2)
            .row(&[1, 1])
            .row(&[2, 1])
            .row(&[1, 2])
            .build()
            .unwrap()
    }

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn counterexample_probabilities() {
        let t = markov_team();
        assert_eq!(probability_of(&t, &p("X=1")).unwrap(), Probability::new(2, 3));
        assert_eq!(conditional_probability(&t, &p("X=1"), &p("Y=2")).unwrap(), Probability::one());
        assert!(!prob_independent(&t, &p("X=1"), &p("Y=2"), None).unwrap());
        assert!(prob_independent(&t, &p("X=1 & X=2"), &p("Y=2"), None).unwrap());
        assert_eq!(
            conditional_probability(&t, &p("X=1"), &p("X=2 & Y=2")),
            Err(Error::ZeroCondition)
        );
        assert_eq!(probability_of(&t, &p("X=1 | X!=1")).unwrap(), Probability::one());
        assert_eq!(probability_of(&t.empty_subteam(), &p("X=1")), Err(Error::EmptyTeam));
        assert_eq!(probability_of(&t, &p("dep(X;Y)")), Err(Error::NotInCO));
    }

    #[test]
    fn markov_axiom_witness() {
        let r = check_markov_axiom(&markov_team()).unwrap();
        let v = r.violation.unwrap();
        assert_eq!(v.variable, "X");
        assert_eq!(v.value, Atom::Int(1));
        assert_eq!(v.conditioned, vec![("Y".to_string(), Atom::Int(2))]);
        assert_eq!(v.marginal, Probability::new(2, 3));
        assert_eq!(v.conditional, Probability::one());
        assert!(!check_markov_condition(&markov_team()).unwrap().holds);
    }

    #[test]
    fn markov_trivial_cases() {
        let one = TeamBuilder::new(TeamMode::Multi).variable("X", 1..=2).row(&[1]).row(&[2]).build().unwrap();
        assert!(check_markov_axiom(&one).unwrap().holds);
        assert!(check_markov_condition(&one).unwrap().holds);
        let single = TeamBuilder::new(TeamMode::Multi)
            .variable("X", 1..=2)
            .variable("Y", 1..=2)
            .row(&[1, 2])
            .build()
            .unwrap();
        assert!(check_markov_axiom(&single).unwrap().holds);
    }

    #[test]
    fn product_of_independent_columns() {
        let t = TeamBuilder::new(TeamMode::Multi)
            .variable("X", 1..=2)
            .variable("Y", 1..=2)
            .variable("Z", 1..=4)
            .edge("X", "Z")
            .edge("Y", "Z")
            .entry("Z", [1, 1], 2)
            .entry("Z", [1, 2], 3)
            .entry("Z", [2, 1], 3)
            .entry("Z", [2, 2], 4)
            .row(&[1, 1, 2])
            .row(&[1, 2, 3])
            .row(&[2, 1, 3])
            .row(&[2, 2, 4])
            .build()
            .unwrap();
        assert!(check_markov_axiom(&t).unwrap().holds);
        assert_eq!(check_product_formula(&t).unwrap(), None);
        assert_eq!(check_intervened_product(&t, &InterventionSpec::single("X", 1)).unwrap(), None);
        let joint = joint_from_exogenous(&t).unwrap();
        assert_eq!(joint, joint_distribution(&t).unwrap());
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(Probability::new(2, 3)), "0.666667");
        assert_eq!(decimal(Probability::one()), "1.000000");
        assert_eq!(decimal(Probability::new(1, 4)), "0.250000");
    }
}
