//! Interventionist causal notions and the graph hierarchy.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::intervene::{do_intervention, InterventionSpec};
use crate::model::{Atom, CausalTeam};
use crate::prob::{probability_of, Probability};
use crate::semantics::holds;
use crate::syntax::Formula;

/// Default bound on the number of candidate tuples a search may visit.
pub const SEARCH_CAP: u128 = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CauseKind {
    Direct,
    Total,
    ProbDirect,
    ProbTotal,
    Contributing,
}

impl CauseKind {
    pub fn tag(self) -> &'static str {
        match self {
            CauseKind::Direct => "DC",
            CauseKind::Total => "TC",
            CauseKind::ProbDirect => "PDC",
            CauseKind::ProbTotal => "PTC",
            CauseKind::Contributing => "CC",
        }
    }

    pub fn parse(s: &str) -> Option<CauseKind> {
        Some(match s.to_ascii_uppercase().as_str() {
            "DC" => CauseKind::Direct,
            "TC" => CauseKind::Total,
            "PDC" => CauseKind::ProbDirect,
            "PTC" => CauseKind::ProbTotal,
            "CC" => CauseKind::Contributing,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// `Y = y` after `x`, `Y = y'` after `x'`.
    Values { y: Atom, y_alt: Atom },
    /// `Pr(Y = y)` is `p` after `x` and `p_alt` after `x'`.
    Probabilities { y: Atom, p: Probability, p_alt: Probability },
}

/// Evidence for a causal relation between `cause` and `effect`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauseWitness {
    pub kind: CauseKind,
    pub cause: String,
    pub effect: String,
    /// Background intervention: `Fix(z)` for DC/PDC, `Fix'(w)` for TC, `Z=z` for CC.
    pub fixed: Vec<(String, Atom)>,
    pub x: Atom,
    pub x_alt: Atom,
    pub outcome: Outcome,
}

impl fmt::Display for CauseWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fixed: Vec<String> = self.fixed.iter().map(|(v, a)| format!("{v}={a}")).collect();
        write!(
            f,
            "{} {}->{} fix{{{}}} ",
            self.kind.tag(),
            self.cause,
            self.effect,
            fixed.join(",")
        )?;
        match &self.outcome {
            Outcome::Values { y, y_alt } => write!(f, "x:{}=>y:{} x':{}=>y':{}", self.x, y, self.x_alt, y_alt),
            Outcome::Probabilities { y, p, p_alt } => write!(
                f,
                "x:{}=>Pr({}={})={} x':{}=>Pr({}={})={}",
                self.x, self.effect, y, p, self.x_alt, self.effect, y, p_alt
            ),
        }
    }
}

fn with_binding(fixed: &[(String, Atom)], var: &str, a: &Atom) -> Vec<(String, Atom)> {
    let mut b = fixed.to_vec();
    b.push((var.to_string(), a.clone()));
    b
}

impl CauseWitness {
    /// The formula whose satisfaction the witness asserts.
    pub fn formula(&self) -> Formula {
        let (c, e) = (&self.cause, &self.effect);
        match (&self.kind, &self.outcome) {
            (CauseKind::Direct, Outcome::Values { y, y_alt }) => Formula::and(
                Formula::cf(with_binding(&self.fixed, c, &self.x), Formula::eq(e, y.clone())),
                Formula::cf(with_binding(&self.fixed, c, &self.x_alt), Formula::eq(e, y_alt.clone())),
            ),
            (CauseKind::Total | CauseKind::Contributing, Outcome::Values { y, y_alt }) => Formula::cf(
                self.fixed.clone(),
                Formula::and(
                    Formula::cf1(c, self.x.clone(), Formula::eq(e, y.clone())),
                    Formula::cf1(c, self.x_alt.clone(), Formula::eq(e, y_alt.clone())),
                ),
            ),
            (_, Outcome::Probabilities { y, p, p_alt }) => Formula::and(
                Formula::cf(
                    with_binding(&self.fixed, c, &self.x),
                    Formula::pr_eq(Formula::eq(e, y.clone()), *p),
                ),
                Formula::cf(
                    with_binding(&self.fixed, c, &self.x_alt),
                    Formula::pr_eq(Formula::eq(e, y.clone()), *p_alt),
                ),
            ),
            (kind, outcome) => unreachable!("{kind:?} with {outcome:?}"),
        }
    }

    /// Evaluates [`CauseWitness::formula`] on `team`.
    pub fn replays(&self, team: &CausalTeam) -> Result<bool> {
        holds(team, &self.formula())
    }
}

fn check_pair(team: &CausalTeam, x: &str, y: &str) -> Result<(usize, usize)> {
    let xi = team.var_index(x)?;
    let yi = team.var_index(y)?;
    if xi == yi {
        return Err(Error::Schema(format!("cause and effect must differ, got {x} twice")));
    }
    Ok((xi, yi))
}

/// All tuples over the ranges of `vars`, in lexicographic order.
fn range_product(team: &CausalTeam, vars: &[usize], cap: u128) -> Result<Vec<Vec<Atom>>> {
    let size: u128 = vars.iter().map(|&v| team.range(v).len() as u128).product();
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let mut out = vec![Vec::new()];
    for &v in vars {
        let mut next = Vec::with_capacity(out.len() * team.range(v).len());
        for p in &out {
            for a in team.range(v) {
                let mut q = p.clone();
                q.push(a.clone());
                next.push(q);
            }
        }
        out = next;
    }
    Ok(out)
}

fn bindings(team: &CausalTeam, vars: &[usize], vals: &[Atom]) -> Vec<(String, Atom)> {
    vars.iter().zip(vals).map(|(&v, a)| (team.name(v).to_string(), a.clone())).collect()
}

/// Values `y` with `T |= Y=y`.
fn forced_values(team: &CausalTeam, y: usize) -> Result<Vec<Atom>> {
    let mut out = Vec::new();
    for a in team.range(y) {
        if holds(team, &Formula::Eq(team.name(y).to_string(), a.clone()))? {
            out.push(a.clone());
        }
    }
    Ok(out)
}

fn first_distinct(a: &[Atom], b: &[Atom]) -> Option<(Atom, Atom)> {
    for u in a {
        for v in b {
            if u != v {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}

fn others(team: &CausalTeam, skip: &[usize]) -> Vec<usize> {
    (0..team.len_vars()).filter(|v| !skip.contains(v)).collect()
}

/// Direct cause: with every other variable held fixed, two settings of `x`
/// force two different values of `y`.
pub fn direct_cause(team: &CausalTeam, x: &str, y: &str) -> Result<Option<CauseWitness>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let rest = others(team, &[xi, yi]);
    let cap = SEARCH_CAP / (team.range(xi).len() as u128).pow(2);
    for z in range_product(team, &rest, cap)? {
        let fixed = bindings(team, &rest, &z);
        let mut forced = Vec::new();
        for a in team.range(xi) {
            let spec = InterventionSpec::new(with_binding(&fixed, x, a));
            let after = do_intervention(team, &spec)?;
            debug_assert!(!team.graph().has_edge(xi, yi) || after.distinct_rows().len() <= 1);
            forced.push(forced_values(&after, yi)?);
        }
        for (i, a) in team.range(xi).iter().enumerate() {
            for (j, b) in team.range(xi).iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Some((v, w)) = first_distinct(&forced[i], &forced[j]) {
                    return Ok(Some(CauseWitness {
                        kind: CauseKind::Direct,
                        cause: x.into(),
                        effect: y.into(),
                        fixed,
                        x: a.clone(),
                        x_alt: b.clone(),
                        outcome: Outcome::Values { y: v, y_alt: w },
                    }));
                }
            }
        }
    }
    Ok(None)
}

const FORMULA_CAP: u128 = 1 << 14;

fn check_formula_size(size: u128) -> Result<()> {
    if size > FORMULA_CAP {
        return Err(Error::SearchSpaceTooLarge { size, cap: FORMULA_CAP });
    }
    Ok(())
}

fn distinct_pairs(range: &[Atom]) -> Vec<(Atom, Atom)> {
    let mut out = Vec::new();
    for a in range {
        for b in range {
            if a != b {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// The intuitionistic disjunction defining direct cause. `None` when the
/// disjunction is empty (a single-valued cause or effect).
pub fn dc_formula(team: &CausalTeam, x: &str, y: &str) -> Result<Option<Formula>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let rest = others(team, &[xi, yi]);
    let xs = distinct_pairs(team.range(xi));
    let ys = distinct_pairs(team.range(yi));
    let zs = range_product(team, &rest, FORMULA_CAP)?;
    check_formula_size((xs.len() * ys.len() * zs.len()) as u128)?;
    let mut parts = Vec::new();
    for z in &zs {
        let fixed = bindings(team, &rest, z);
        for (a, b) in &xs {
            for (v, w) in &ys {
                parts.push(Formula::and(
                    Formula::cf(with_binding(&fixed, x, a), Formula::eq(y, v.clone())),
                    Formula::cf(with_binding(&fixed, x, b), Formula::eq(y, w.clone())),
                ));
            }
        }
    }
    Ok(Formula::int_or_all(parts))
}

/// Nondescendant tuples of `x` occurring in the team, in row order without
/// repetition.
fn occurring(team: &CausalTeam, vars: &[usize]) -> Result<Vec<Vec<Atom>>> {
    let t = team.explicit_closure();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in t.rows() {
        let w = vars
            .iter()
            .map(|&v| {
                r.values[v]
                    .as_proper()
                    .cloned()
                    .ok_or_else(|| Error::FormalTermEncountered(t.name(v).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Total cause: after fixing the nondescendants of `x` to a tuple occurring
/// in the team, two settings of `x` force two different values of `y`.
pub fn total_cause(team: &CausalTeam, x: &str, y: &str) -> Result<Option<CauseWitness>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let nd: Vec<usize> = team.graph().nondescendants(xi).into_iter().collect();
    for w in occurring(team, &nd)? {
        let fixed = bindings(team, &nd, &w);
        let base = do_intervention(team, &InterventionSpec::new(fixed.clone()))?;
        let mut forced = Vec::new();
        for a in team.range(xi) {
            let after = do_intervention(&base, &InterventionSpec::single(x, a.clone()))?;
            forced.push(forced_values(&after, yi)?);
        }
        for (i, a) in team.range(xi).iter().enumerate() {
            for (j, b) in team.range(xi).iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Some((v, u)) = first_distinct(&forced[i], &forced[j]) {
                    return Ok(Some(CauseWitness {
                        kind: CauseKind::Total,
                        cause: x.into(),
                        effect: y.into(),
                        fixed,
                        x: a.clone(),
                        x_alt: b.clone(),
                        outcome: Outcome::Values { y: v, y_alt: u },
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The intuitionistic disjunction defining total cause.
pub fn tc_formula(team: &CausalTeam, x: &str, y: &str) -> Result<Option<Formula>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let nd: Vec<usize> = team.graph().nondescendants(xi).into_iter().collect();
    let ws = occurring(team, &nd)?;
    let xs = distinct_pairs(team.range(xi));
    let ys = distinct_pairs(team.range(yi));
    check_formula_size((xs.len() * ys.len() * ws.len()) as u128)?;
    let mut parts = Vec::new();
    for w in &ws {
        let fixed = bindings(team, &nd, w);
        for (a, b) in &xs {
            for (v, u) in &ys {
                parts.push(Formula::cf(
                    fixed.clone(),
                    Formula::and(
                        Formula::cf1(x, a.clone(), Formula::eq(y, v.clone())),
                        Formula::cf1(x, b.clone(), Formula::eq(y, u.clone())),
                    ),
                ));
            }
        }
    }
    Ok(Formula::int_or_all(parts))
}

fn as_multi(team: &CausalTeam) -> CausalTeam {
    if team.is_multiteam() {
        team.clone()
    } else {
        team.as_multiteam()
    }
}

fn prob_after(team: &CausalTeam, spec: &InterventionSpec, y: &str, v: &Atom) -> Result<Option<Probability>> {
    let after = do_intervention(team, spec)?;
    if after.is_empty() {
        return Ok(None);
    }
    probability_of(&after, &Formula::eq(y, v.clone())).map(Some)
}

/// Probabilistic direct cause: under `Fix(z)`, setting `x` makes `Y=y`
/// impossible and setting `x'` makes it certain.
pub fn prob_direct_cause(team: &CausalTeam, x: &str, y: &str) -> Result<Option<CauseWitness>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let team = as_multi(team);
    let rest = others(&team, &[xi, yi]);
    let cap = SEARCH_CAP / (team.range(xi).len() as u128).pow(2);
    let zero = Probability::from_integer(0);
    let one = Probability::from_integer(1);
    for z in range_product(&team, &rest, cap)? {
        let fixed = bindings(&team, &rest, &z);
        let mut probs = Vec::new();
        for a in team.range(xi) {
            let spec = InterventionSpec::new(with_binding(&fixed, x, a));
            let after = do_intervention(&team, &spec)?;
            let mut row = Vec::new();
            for v in team.range(yi) {
                row.push(if after.is_empty() {
                    None
                } else {
                    Some(probability_of(&after, &Formula::eq(y, v.clone()))?)
                });
            }
            probs.push(row);
        }
        for (k, v) in team.range(yi).iter().enumerate() {
            for (j, b) in team.range(xi).iter().enumerate() {
                if probs[j][k] != Some(one) {
                    continue;
                }
                for (i, a) in team.range(xi).iter().enumerate() {
                    if i != j && probs[i][k] == Some(zero) {
                        return Ok(Some(CauseWitness {
                            kind: CauseKind::ProbDirect,
                            cause: x.into(),
                            effect: y.into(),
                            fixed,
                            x: a.clone(),
                            x_alt: b.clone(),
                            outcome: Outcome::Probabilities {
                                y: v.clone(),
                                p: zero,
                                p_alt: one,
                            },
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Probabilistic total cause: two settings of `x` give `Y=y` different
/// probabilities.
pub fn prob_total_cause(team: &CausalTeam, x: &str, y: &str) -> Result<Option<CauseWitness>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let team = as_multi(team);
    let mut probs = Vec::new();
    for a in team.range(xi) {
        let spec = InterventionSpec::single(x, a.clone());
        let mut row = Vec::new();
        for v in team.range(yi) {
            row.push(prob_after(&team, &spec, y, v)?);
        }
        probs.push(row);
    }
    for (i, a) in team.range(xi).iter().enumerate() {
        for (j, b) in team.range(xi).iter().enumerate() {
            if i == j {
                continue;
            }
            for (k, v) in team.range(yi).iter().enumerate() {
                if let (Some(p), Some(q)) = (probs[i][k], probs[j][k]) {
                    if p != q {
                        return Ok(Some(CauseWitness {
                            kind: CauseKind::ProbTotal,
                            cause: x.into(),
                            effect: y.into(),
                            fixed: Vec::new(),
                            x: a.clone(),
                            x_alt: b.clone(),
                            outcome: Outcome::Probabilities {
                                y: v.clone(),
                                p,
                                p_alt: q,
                            },
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The non-uniform disjunction defining probabilistic total cause, over
/// multiples of `1/card(T)`.
pub fn ptc_formula(team: &CausalTeam, x: &str, y: &str) -> Result<Option<Formula>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let n = as_multi(team).cardinality() as i64;
    if n == 0 {
        return Ok(None);
    }
    let xs = distinct_pairs(team.range(xi));
    let size = xs.len() as u128 * team.range(yi).len() as u128 * ((n + 1) * n) as u128;
    check_formula_size(size)?;
    let mut parts = Vec::new();
    for (a, b) in &xs {
        for v in team.range(yi) {
            for m in 0..=n {
                for k in 0..=n {
                    if m == k {
                        continue;
                    }
                    let atom = |c: i64| Formula::pr_eq(Formula::eq(y, v.clone()), Probability::new(c, n));
                    parts.push(Formula::and(
                        Formula::cf1(x, a.clone(), atom(m)),
                        Formula::cf1(x, b.clone(), atom(k)),
                    ));
                }
            }
        }
    }
    Ok(Formula::int_or_all(parts))
}

/// The intuitionistic disjunction defining probabilistic direct cause.
pub fn pdc_formula(team: &CausalTeam, x: &str, y: &str) -> Result<Option<Formula>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let rest = others(team, &[xi, yi]);
    let xs = distinct_pairs(team.range(xi));
    let zs = range_product(team, &rest, FORMULA_CAP)?;
    check_formula_size((xs.len() * team.range(yi).len() * zs.len()) as u128)?;
    let mut parts = Vec::new();
    for z in &zs {
        let fixed = bindings(team, &rest, z);
        for (a, b) in &xs {
            for v in team.range(yi) {
                let atom = |c: i64| Formula::pr_eq(Formula::eq(y, v.clone()), Probability::from_integer(c));
                parts.push(Formula::and(
                    Formula::cf(with_binding(&fixed, x, a), atom(0)),
                    Formula::cf(with_binding(&fixed, x, b), atom(1)),
                ));
            }
        }
    }
    Ok(Formula::int_or_all(parts))
}

/// `(Pr_T(chi), Pr_{T_spec}(chi))`.
pub fn probability_shift(
    team: &CausalTeam,
    spec: &InterventionSpec,
    chi: &Formula,
) -> Result<(Probability, Probability)> {
    let team = as_multi(team);
    let before = probability_of(&team, chi)?;
    let after = probability_of(&do_intervention(&team, spec)?, chi)?;
    Ok((before, after))
}

/// Contributing cause: some background intervention `Z=z`, with `Z`
/// containing every nondescendant of `x`, makes `y` depend on `x`.
pub fn contributing_cause(team: &CausalTeam, x: &str, y: &str) -> Result<Option<CauseWitness>> {
    let (xi, yi) = check_pair(team, x, y)?;
    let nd = team.graph().nondescendants(xi);
    if nd.contains(&yi) {
        return Ok(None);
    }
    let optional: Vec<usize> = others(team, &[xi, yi]).into_iter().filter(|v| !nd.contains(v)).collect();
    if optional.len() > 20 {
        return Err(Error::SearchSpaceTooLarge {
            size: 1 << optional.len().min(127),
            cap: 1 << 20,
        });
    }
    let mut visited: u128 = 0;
    for mask in 0u32..1 << optional.len() {
        let mut zs: Vec<usize> = nd.iter().copied().collect();
        zs.extend(optional.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        zs.sort_unstable();
        let tuples = range_product(team, &zs, SEARCH_CAP)?;
        visited += tuples.len() as u128;
        if visited > SEARCH_CAP {
            return Err(Error::SearchSpaceTooLarge {
                size: visited,
                cap: SEARCH_CAP,
            });
        }
        for z in tuples {
            let fixed = bindings(team, &zs, &z);
            let base = do_intervention(team, &InterventionSpec::new(fixed.clone()))?;
            let mut forced = Vec::new();
            for a in team.range(xi) {
                let after = do_intervention(&base, &InterventionSpec::single(x, a.clone()))?;
                forced.push(forced_values(&after, yi)?);
            }
            for (i, a) in team.range(xi).iter().enumerate() {
                for (j, b) in team.range(xi).iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    if let Some((v, u)) = first_distinct(&forced[i], &forced[j]) {
                        return Ok(Some(CauseWitness {
                            kind: CauseKind::Contributing,
                            cause: x.into(),
                            effect: y.into(),
                            fixed,
                            x: a.clone(),
                            x_alt: b.clone(),
                            outcome: Outcome::Values { y: v, y_alt: u },
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Runs the detector of the given kind.
pub fn detect(team: &CausalTeam, kind: CauseKind, x: &str, y: &str) -> Result<Option<CauseWitness>> {
    match kind {
        CauseKind::Direct => direct_cause(team, x, y),
        CauseKind::Total => total_cause(team, x, y),
        CauseKind::ProbDirect => prob_direct_cause(team, x, y),
        CauseKind::ProbTotal => prob_total_cause(team, x, y),
        CauseKind::Contributing => contributing_cause(team, x, y),
    }
}

/// Every consistent intervention `Z=z` with `Z` nonempty, in order of the
/// variable subsets and then of the values.
pub fn all_interventions(team: &CausalTeam, cap: u128) -> Result<Vec<InterventionSpec>> {
    let n = team.len_vars();
    let size: u128 = (0..n).map(|v| team.range(v).len() as u128 + 1).product::<u128>() - 1;
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        let vars: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        for z in range_product(team, &vars, cap)? {
            out.push(InterventionSpec::new(bindings(team, &vars, &z)));
        }
    }
    Ok(out)
}

/// First intervention (the null one first) after which `psi` fails.
pub fn invariance_counterexample(team: &CausalTeam, psi: &Formula) -> Result<Option<InterventionSpec>> {
    if !holds(team, psi)? {
        return Ok(Some(InterventionSpec::default()));
    }
    for spec in all_interventions(team, SEARCH_CAP)? {
        if !holds(&do_intervention(team, &spec)?, psi)? {
            return Ok(Some(spec));
        }
    }
    Ok(None)
}

/// `INV(psi)`: `psi` holds in the team and after every intervention.
pub fn invariant_check(team: &CausalTeam, psi: &Formula) -> Result<bool> {
    Ok(invariance_counterexample(team, psi)?.is_none())
}

/// `T |= dep(xs; y)`.
pub fn dependency_holds(team: &CausalTeam, xs: &[&str], y: &str) -> Result<bool> {
    holds(team, &Formula::dep(xs, y))
}

/// Inclusion-minimal sets of other variables that functionally determine `y`.
pub fn minimal_determining_sets(team: &CausalTeam, y: &str) -> Result<Vec<Vec<String>>> {
    let yi = team.var_index(y)?;
    let rest = others(team, &[yi]);
    if rest.len() > 20 {
        return Err(Error::DomainTooLarge {
            vars: team.len_vars(),
            cap: 21,
        });
    }
    let mut masks: Vec<u32> = (0u32..1 << rest.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found: Vec<u32> = Vec::new();
    for m in masks {
        if found.iter().any(|f| f & m == *f) {
            continue;
        }
        let names: Vec<&str> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &v)| team.name(v))
            .collect();
        if dependency_holds(team, &names, y)? {
            found.push(m);
        }
    }
    Ok(found
        .into_iter()
        .map(|m| {
            rest.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &v)| team.name(v).to_string())
                .collect()
        })
        .collect())
}

/// The three graphs `G ⊆ G_inv ⊆ G_cont`, as sorted edge lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphHierarchy {
    pub causal: Vec<(String, String)>,
    pub invariant: Vec<(String, String)>,
    pub contingent: Vec<(String, String)>,
}

impl GraphHierarchy {
    pub fn is_chain(&self) -> bool {
        let inv: BTreeSet<_> = self.invariant.iter().collect();
        let cont: BTreeSet<_> = self.contingent.iter().collect();
        self.causal.iter().all(|e| inv.contains(e)) && inv.is_subset(&cont)
    }
}

/// `X -> Y` is contingent when some set containing `X` determines `Y` in the
/// team, and invariant when such a dependency survives every intervention.
/// Both reduce to the dependency of `Y` on all other variables.
pub fn graph_hierarchy(team: &CausalTeam) -> Result<GraphHierarchy> {
    if let Some(v) = team.first_partial_function() {
        return Err(Error::NotParametric(team.name(v).to_string()));
    }
    let mut invariant = Vec::new();
    let mut contingent = Vec::new();
    for yi in 0..team.len_vars() {
        let y = team.name(yi);
        let rest = others(team, &[yi]);
        let names: Vec<&str> = rest.iter().map(|&v| team.name(v)).collect();
        let dep = Formula::dep(&names, y);
        if !holds(team, &dep)? {
            continue;
        }
        let inv = invariant_check(team, &dep)?;
        for &xi in &rest {
            let e = (team.name(xi).to_string(), y.to_string());
            if inv {
                invariant.push(e.clone());
            }
            contingent.push(e);
        }
    }
    invariant.sort();
    contingent.sort();
    Ok(GraphHierarchy {
        causal: team.graph().named_edges(),
        invariant,
        contingent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{TeamBuilder, TeamMode};

    /// X -> Z -> Y and X -> Y with Z = X and Y = X + Z.
    fn dc_team(mode: TeamMode) -> CausalTeam {
        let mut b = TeamBuilder::new(mode)
            .variable("X", 1..=3)
            .variable("Z", 1..=3)
            .variable("Y", 1..=6)
            .edge("X", "Z")
            .edge("X", "Y")
            .edge("Z", "Y");
        for x in 1..=3 {
            b = b.entry("Z", [x], x);
            for z in 1..=3 {
                b = b.entry("Y", [x, z], x + z);
            }
        }
        b.row(&[1, 1, 2]).row(&[2, 2, 4]).row(&[3, 3, 6]).build().unwrap()
    }

    #[test]
    fn direct_cause_example() {
        let w = direct_cause(&dc_team(TeamMode::Set), "X", "Y").unwrap().unwrap();
        assert_eq!(w.to_string(), "DC X->Y fix{Z=1} x:1=>y:2 x':2=>y':3");
        assert!(w.replays(&dc_team(TeamMode::Set)).unwrap());
        assert!(total_cause(&dc_team(TeamMode::Set), "X", "Y").unwrap().is_some());
    }

    #[test]
    fn constant_effect_is_not_caused() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 0..=1)
            .variable("Y", 0..=1)
            .edge("X", "Y")
            .entry("Y", [0], 0)
            .entry("Y", [1], 0)
            .row(&[0, 0])
            .row(&[1, 0])
            .build()
            .unwrap();
        assert!(direct_cause(&t, "X", "Y").unwrap().is_none());
        assert!(total_cause(&t, "X", "Y").unwrap().is_none());
        assert!(prob_direct_cause(&t, "X", "Y").unwrap().is_none());
        assert!(prob_total_cause(&t, "X", "Y").unwrap().is_none());
    }

    #[test]
    fn probabilistic_direct_cause_example() {
        let t = dc_team(TeamMode::Multi);
        let w = prob_direct_cause(&t, "X", "Y").unwrap().unwrap();
        assert_eq!(w.x, Atom::Int(2));
        assert_eq!(w.x_alt, Atom::Int(1));
        assert!(matches!(&w.outcome, Outcome::Probabilities { y: Atom::Int(2), .. }));
        assert!(w.replays(&t).unwrap());
    }

    #[test]
    fn formulas_agree_with_search() {
        let t = dc_team(TeamMode::Multi);
        assert!(holds(&t, &dc_formula(&t, "X", "Y").unwrap().unwrap()).unwrap());
        assert!(holds(&t, &pdc_formula(&t, "X", "Y").unwrap().unwrap()).unwrap());
        assert!(holds(&t, &tc_formula(&t, "X", "Y").unwrap().unwrap()).unwrap());
        assert!(holds(&t, &ptc_formula(&t, "X", "Y").unwrap().unwrap()).unwrap());
        assert!(!holds(&t, &dc_formula(&t, "Z", "X").unwrap().unwrap()).unwrap());
    }

    #[test]
    fn shift_under_intervention() {
        let s = TeamBuilder::new(TeamMode::Multi)
            .variable("X", 0..=2)
            .variable("Y", 0..=2)
            .row(&[0, 0])
            .row(&[0, 1])
            .row(&[1, 2])
            .build()
            .unwrap();
        let chi = crate::syntax::parse("X=0 & Y=2").unwrap();
        let (before, after) = probability_shift(&s, &InterventionSpec::single("X", 0), &chi).unwrap();
        assert_eq!(before, Probability::from_integer(0));
        assert_eq!(after, Probability::new(1, 3));
    }

    #[test]
    fn higher_order_dependence() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=3)
            .variable("Y", 1..=3)
            .variable("Z", 1..=3)
            .edge("X", "Y")
            .row(&[1, 2, 1])
            .row(&[2, 3, 1])
            .build()
            .unwrap();
        assert!(!dependency_holds(&t, &["Z"], "Y").unwrap());
        let d = do_intervention(&t, &InterventionSpec::single("X", 1)).unwrap();
        assert!(dependency_holds(&d, &["Z"], "Y").unwrap());
        assert_eq!(minimal_determining_sets(&t, "Y").unwrap(), vec![vec!["X".to_string()]]);
    }

    #[test]
    fn invariance() {
        let t = dc_team(TeamMode::Set);
        assert!(invariant_check(&t, &Formula::dep(&["X", "Z"], "Y")).unwrap());
        assert!(!invariant_check(&t, &Formula::eq("Z", 1)).unwrap());
        let fixed = do_intervention(&t, &InterventionSpec::single("Y", 2)).unwrap();
        assert!(invariant_check(&fixed, &Formula::dep(&["X", "Z"], "Y")).unwrap());
        let h = graph_hierarchy(&t).unwrap();
        assert!(h.is_chain());
    }

    #[test]
    fn constant_columns_enter_the_contingent_graph() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=2)
            .variable("Y", 1..=2)
            .row(&[1, 1])
            .row(&[2, 1])
            .build()
            .unwrap();
        let h = graph_hierarchy(&t).unwrap();
        assert!(h.causal.is_empty());
        assert_eq!(h.invariant, vec![("X".to_string(), "Y".to_string())]);
        assert_eq!(h.contingent, vec![("X".to_string(), "Y".to_string())]);
        assert!(h.is_chain());
    }
}
