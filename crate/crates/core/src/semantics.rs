//! Satisfaction relations: standard, falsifiable and admissible.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::intervene::{do_intervention, InterventionSpec};
use crate::model::{eval_classical, Atom, CausalTeam, Row, Value};
use crate::prob::Probability;
use crate::syntax::{Formula, ProbRhs};

/// Tuning knobs for the evaluator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest number of rows for the full cover search (3^n).
    pub cover_cap: usize,
    /// Largest number of distinct rows for partition search (2^n).
    pub partition_cap: usize,
    /// Decide tensor disjunctions by searching splits even when both sides
    /// are flat. Slow; used to test the shortcuts.
    pub exhaustive: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            cover_cap: 14,
            partition_cap: 20,
            exhaustive: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub satisfied: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn plain(satisfied: bool) -> Self {
        Verdict {
            satisfied,
            witness: None,
        }
    }
}

/// `T |= phi` under default options.
pub fn satisfies(team: &CausalTeam, phi: &Formula) -> Result<Verdict> {
    satisfies_with(team, phi, &EvalOptions::default())
}

pub fn satisfies_with(team: &CausalTeam, phi: &Formula, opts: &EvalOptions) -> Result<Verdict> {
    let base = prepare(team, phi);
    let ev = Evaluator { opts };
    let satisfied = ev.eval(&base, phi)?;
    let witness = if satisfied { None } else { explain_failure(&base, phi) };
    Ok(Verdict { satisfied, witness })
}

/// Shorthand for `satisfies(..)?.satisfied`.
pub fn holds(team: &CausalTeam, phi: &Formula) -> Result<bool> {
    Ok(satisfies(team, phi)?.satisfied)
}

pub fn holds_with(team: &CausalTeam, phi: &Formula, opts: &EvalOptions) -> Result<bool> {
    Ok(satisfies_with(team, phi, opts)?.satisfied)
}

/// Explicit closure, and multiteam reading when probabilities are involved.
fn prepare(team: &CausalTeam, phi: &Formula) -> CausalTeam {
    let t = if phi.mentions_probability() && !team.is_multiteam() {
        team.as_multiteam()
    } else {
        team.clone()
    };
    t.explicit_closure()
}

/// `{s} |= phi` for row `i` of an explicit team.
pub(crate) fn row_satisfies(team: &CausalTeam, i: usize, phi: &Formula) -> Result<bool> {
    Evaluator {
        opts: &EvalOptions::default(),
    }
    .eval(&team.singleton(i), phi)
}

/// `Pr_T(chi)` on an explicit multiteam; `None` on the empty team.
pub(crate) fn prob_in(team: &CausalTeam, chi: &Formula) -> Result<Option<Probability>> {
    let total = team.cardinality();
    if total == 0 {
        return Ok(None);
    }
    let mut hits = 0u64;
    for (i, r) in team.rows().iter().enumerate() {
        if row_satisfies(team, i, chi)? {
            hits += r.count;
        }
    }
    Ok(Some(Probability::new(hits as i64, total as i64)))
}

fn explain_failure(team: &CausalTeam, phi: &Formula) -> Option<String> {
    match phi {
        Formula::Eq(v, _) | Formula::Neq(v, _) => {
            let i = team.var_index(v).ok()?;
            let j = (0..team.rows().len()).find(|&j| !row_satisfies(team, j, phi).unwrap_or(true))?;
            Some(format!("row {j} has {v}={}", team.rows()[j].values[i]))
        }
        _ => None,
    }
}

fn column(team: &CausalTeam, name: &str) -> Result<usize> {
    team.var_index(name)
}

fn require_proper(team: &CausalTeam, vars: &[usize]) -> Result<()> {
    for r in team.rows() {
        for &v in vars {
            if !r.values[v].is_proper() {
                return Err(Error::FormalTermEncountered(team.name(v).to_string()));
            }
        }
    }
    Ok(())
}

fn spec_of(bindings: &[(String, Atom)]) -> InterventionSpec {
    InterventionSpec::new(bindings.to_vec())
}

/// Rows with equal values merged into one unit (multiplicity dropped).
fn distinct_subteam(team: &CausalTeam) -> CausalTeam {
    let mut seen = HashSet::new();
    let rows: Vec<Row> = team
        .rows()
        .iter()
        .filter(|r| seen.insert(r.values.clone()))
        .cloned()
        .collect();
    team.with_rows(rows)
}

/// Rows expanded so that each unit has multiplicity one.
fn unit_subteam(team: &CausalTeam) -> CausalTeam {
    let mut rows = Vec::new();
    for r in team.rows() {
        for _ in 0..r.count {
            rows.push(Row {
                values: r.values.clone(),
                count: 1,
            });
        }
    }
    team.with_rows(rows)
}

fn split_by_mask(team: &CausalTeam, mask: u64) -> (CausalTeam, CausalTeam) {
    (
        team.subteam_by_index(|i| mask >> i & 1 == 1),
        team.subteam_by_index(|i| mask >> i & 1 == 0),
    )
}

struct Evaluator<'a> {
    opts: &'a EvalOptions,
}

impl Evaluator<'_> {
    fn eval(&self, t: &CausalTeam, phi: &Formula) -> Result<bool> {
        match phi {
            Formula::Eq(v, a) | Formula::Neq(v, a) => {
                let i = column(t, v)?;
                require_proper(t, &[i])?;
                let want = matches!(phi, Formula::Eq(..));
                Ok(t
                    .rows()
                    .iter()
                    .all(|r| (r.values[i].as_proper() == Some(a)) == want))
            }
            Formula::Dep(xs, y) | Formula::NDep(xs, y) => {
                let holds = self.dependence(t, xs, y)?;
                Ok(holds == matches!(phi, Formula::Dep(..)))
            }
            Formula::MargIndep(xs, ys) => {
                let xi = xs.iter().map(|x| column(t, x)).collect::<Result<Vec<_>>>()?;
                let yi = ys.iter().map(|y| column(t, y)).collect::<Result<Vec<_>>>()?;
                require_proper(t, &xi)?;
                require_proper(t, &yi)?;
                let proj = |r: &Row, idx: &[usize]| idx.iter().map(|&v| r.values[v].clone()).collect::<Vec<_>>();
                let px: HashSet<Vec<Value>> = t.rows().iter().map(|r| proj(r, &xi)).collect();
                let py: HashSet<Vec<Value>> = t.rows().iter().map(|r| proj(r, &yi)).collect();
                let pairs: HashSet<(Vec<Value>, Vec<Value>)> =
                    t.rows().iter().map(|r| (proj(r, &xi), proj(r, &yi))).collect();
                Ok(pairs.len() == px.len() * py.len())
            }
            Formula::DualNeg(a) => {
                for i in 0..t.rows().len() {
                    if self.eval(&t.singleton(i), a)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::And(a, b) => Ok(self.eval(t, a)? && self.eval(t, b)?),
            Formula::IntuitOr(a, b) => Ok(self.eval(t, a)? || self.eval(t, b)?),
            Formula::TensorOr(a, b) => self.tensor_or(t, a, b),
            Formula::Selective(theta, chi) => {
                let mut keep = Vec::with_capacity(t.rows().len());
                if theta.is_classical() {
                    for r in t.rows() {
                        keep.push(eval_classical(t, &r.values, theta)?);
                    }
                } else if theta.is_flat() {
                    // flat selectors (e.g. counterfactual antecedents) select row-wise
                    for i in 0..t.rows().len() {
                        keep.push(self.eval(&t.singleton(i), theta)?);
                    }
                } else {
                    return Err(Error::AntecedentNotClassical);
                }
                self.eval(&t.subteam_by_index(|i| keep[i]), chi)
            }
            Formula::Counterfactual(bs, chi) => {
                let spec = spec_of(bs);
                if !spec.is_consistent() {
                    return Ok(true);
                }
                self.eval(&do_intervention(t, &spec)?, chi)
            }
            Formula::ProbCmp { lhs, rel, rhs } => {
                let Some(l) = prob_in(t, lhs)? else { return Ok(false) };
                let r = match rhs {
                    ProbRhs::Const(c) => *c,
                    ProbRhs::Prob(r) => match prob_in(t, r)? {
                        Some(p) => p,
                        None => return Ok(false),
                    },
                };
                Ok(rel.holds(l, r))
            }
        }
    }

    fn dependence(&self, t: &CausalTeam, xs: &[String], y: &str) -> Result<bool> {
        let xi = xs.iter().map(|x| column(t, x)).collect::<Result<Vec<_>>>()?;
        let yi = column(t, y)?;
        require_proper(t, &xi)?;
        require_proper(t, &[yi])?;
        let mut seen: HashMap<Vec<&Value>, &Value> = HashMap::new();
        for r in t.rows() {
            let key: Vec<&Value> = xi.iter().map(|&v| &r.values[v]).collect();
            match seen.get(&key) {
                Some(prev) if *prev != &r.values[yi] => return Ok(false),
                Some(_) => {}
                None => {
                    seen.insert(key, &r.values[yi]);
                }
            }
        }
        Ok(true)
    }

    fn tensor_or(&self, t: &CausalTeam, a: &Formula, b: &Formula) -> Result<bool> {
        let (fa, fb) = (a.is_flat(), b.is_flat());
        let (da, db) = (a.is_downward_closed(), b.is_downward_closed());
        if !self.opts.exhaustive {
            if fa && fb {
                for i in 0..t.rows().len() {
                    let s = t.singleton(i);
                    if !(self.eval(&s, a)? || self.eval(&s, b)?) {
                        return Ok(false);
                    }
                }
                return Ok(true);
            }
            // With one flat side the other side only needs the rows the flat
            // side rejects; downward closure makes that choice optimal.
            if fa && db {
                return self.eval(&self.rejected_by(t, a)?, b);
            }
            if fb && da {
                return self.eval(&self.rejected_by(t, b)?, a);
            }
        }
        if da && db {
            let units = distinct_subteam(t);
            let n = units.rows().len();
            if n > self.opts.partition_cap {
                return Err(Error::TeamTooLargeForSplit {
                    rows: n,
                    cap: self.opts.partition_cap,
                });
            }
            for mask in 0..1u64 << n {
                let (l, r) = split_by_mask(&units, mask);
                if self.eval(&l, a)? && self.eval(&r, b)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let units = if t.is_multiteam() { unit_subteam(t) } else { t.clone() };
        let n = units.rows().len();
        if n > self.opts.cover_cap {
            return Err(Error::TeamTooLargeForSplit {
                rows: n,
                cap: self.opts.cover_cap,
            });
        }
        // each unit goes left (0), right (1) or both (2)
        let mut digits = vec![0u8; n];
        loop {
            let l = units.subteam_by_index(|i| digits[i] != 1);
            let r = units.subteam_by_index(|i| digits[i] != 0);
            if self.eval(&l, a)? && self.eval(&r, b)? {
                return Ok(true);
            }
            let mut k = 0;
            while k < n && digits[k] == 2 {
                digits[k] = 0;
                k += 1;
            }
            if k == n {
                return Ok(false);
            }
            digits[k] += 1;
        }
    }

    fn rejected_by(&self, t: &CausalTeam, flat: &Formula) -> Result<CausalTeam> {
        let mut keep = Vec::with_capacity(t.rows().len());
        for i in 0..t.rows().len() {
            keep.push(!self.eval(&t.singleton(i), flat)?);
        }
        Ok(t.subteam_by_index(|i| keep[i]))
    }
}

// ------------------------------------------------------------ falsifiability

/// `T |=f phi`: the data in `T` already falsify `phi`.
pub fn satisfies_falsifiable(team: &CausalTeam, phi: &Formula) -> Result<Verdict> {
    let opts = EvalOptions::default();
    Ok(Verdict::plain(falsifiable(&team.explicit_closure(), phi, &opts)?))
}

fn falsifiable(t: &CausalTeam, phi: &Formula, opts: &EvalOptions) -> Result<bool> {
    match phi {
        Formula::Eq(v, a) | Formula::Neq(v, a) => {
            let i = column(t, v)?;
            let want_equal = matches!(phi, Formula::Neq(..));
            Ok(t
                .rows()
                .iter()
                .any(|r| r.values[i].as_proper().is_some_and(|p| (p == a) == want_equal)))
        }
        Formula::Dep(xs, y) => {
            let xi = xs.iter().map(|x| column(t, x)).collect::<Result<Vec<_>>>()?;
            let yi = column(t, y)?;
            let mut seen: HashMap<Vec<&Value>, &Atom> = HashMap::new();
            for r in t.rows() {
                let Some(out) = r.values[yi].as_proper() else { continue };
                let key: Vec<&Value> = xi.iter().map(|&v| &r.values[v]).collect();
                match seen.get(&key) {
                    Some(prev) if *prev != out => return Ok(true),
                    Some(_) => {}
                    None => {
                        seen.insert(key, out);
                    }
                }
            }
            Ok(false)
        }
        Formula::And(a, b) => Ok(falsifiable(t, a, opts)? || falsifiable(t, b, opts)?),
        Formula::TensorOr(a, b) => {
            // Falsifiability is preserved by supersets, so checking every
            // partition covers every cover.
            let units = distinct_subteam(t);
            let n = units.rows().len();
            if n > opts.partition_cap {
                return Err(Error::TeamTooLargeForSplit {
                    rows: n,
                    cap: opts.partition_cap,
                });
            }
            for mask in 0..1u64 << n {
                let (l, r) = split_by_mask(&units, mask);
                if !(falsifiable(&l, a, opts)? || falsifiable(&r, b, opts)?) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Selective(theta, chi) => {
            if !theta.is_classical() {
                return Err(Error::AntecedentNotClassical);
            }
            let vars = theta
                .atom_variables()
                .iter()
                .map(|v| column(t, v))
                .collect::<Result<Vec<_>>>()?;
            let mut keep = Vec::with_capacity(t.rows().len());
            for r in t.rows() {
                let unknown = vars.iter().any(|&v| !r.values[v].is_proper());
                keep.push(unknown || eval_classical(t, &r.values, theta)?);
            }
            falsifiable(&t.subteam_by_index(|i| keep[i]), chi, opts)
        }
        Formula::Counterfactual(bs, chi) => {
            let spec = spec_of(bs);
            if !spec.is_consistent() {
                return Ok(false);
            }
            falsifiable(&do_intervention(t, &spec)?, chi, opts)
        }
        other => Err(Error::UnsupportedConnective(connective_name(other).into())),
    }
}

fn connective_name(phi: &Formula) -> &'static str {
    match phi {
        Formula::IntuitOr(..) => "++",
        Formula::ProbCmp { .. } => "Pr",
        Formula::NDep(..) => "ndep",
        Formula::MargIndep(..) => "indep",
        Formula::DualNeg(..) => "!",
        Formula::Counterfactual(..) => "[]->",
        Formula::Selective(..) => "=>",
        _ => "connective",
    }
}

// ------------------------------------------------------------- admissibility

/// `T |=a phi`: `phi` is consistent with the proper data of `T`.
pub fn satisfies_admissible(team: &CausalTeam, phi: &Formula) -> Result<Verdict> {
    let t = team.explicit_closure();
    let ok = match phi {
        Formula::Dep(xs, y) => {
            let xi = xs.iter().map(|x| column(&t, x)).collect::<Result<Vec<_>>>()?;
            let yi = column(&t, y)?;
            let mut seen: HashMap<Vec<&Value>, &Atom> = HashMap::new();
            let mut ok = true;
            for r in t.rows() {
                let Some(out) = r.values[yi].as_proper() else { continue };
                let key: Vec<&Value> = xi.iter().map(|&v| &r.values[v]).collect();
                if let Some(prev) = seen.get(&key) {
                    if *prev != out {
                        ok = false;
                        break;
                    }
                } else {
                    seen.insert(key, out);
                }
            }
            ok
        }
        _ => {
            let clauses = dnf_clauses(phi)?;
            let lits = clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(v, a, eq)| Ok((column(&t, v)?, (*a).clone(), *eq)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            t.rows()
                .iter()
                .all(|r| lits.iter().any(|clause| clause_admits(&r.values, clause)))
        }
    };
    Ok(Verdict::plain(ok))
}

type Literal<'a> = (&'a String, &'a Atom, bool);

fn dnf_clauses(phi: &Formula) -> Result<Vec<Vec<Literal<'_>>>> {
    fn disjuncts<'a>(phi: &'a Formula, out: &mut Vec<&'a Formula>) {
        match phi {
            Formula::TensorOr(a, b) => {
                disjuncts(a, out);
                disjuncts(b, out);
            }
            other => out.push(other),
        }
    }
    fn literals<'a>(phi: &'a Formula, out: &mut Vec<Literal<'a>>) -> Result<()> {
        match phi {
            Formula::And(a, b) => {
                literals(a, out)?;
                literals(b, out)
            }
            Formula::Eq(v, a) => {
                out.push((v, a, true));
                Ok(())
            }
            Formula::Neq(v, a) => {
                out.push((v, a, false));
                Ok(())
            }
            other => Err(Error::NotSupportedShape(format!("{other} is not a literal"))),
        }
    }
    let mut ds = Vec::new();
    disjuncts(phi, &mut ds);
    let mut clauses = Vec::new();
    for d in ds {
        let mut lits = Vec::new();
        literals(d, &mut lits)?;
        let mut names: Vec<&String> = lits.iter().map(|l| l.0).collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotSupportedShape(format!("clause {d} repeats a variable")));
        }
        clauses.push(lits);
    }
    Ok(clauses)
}

fn clause_admits(row: &[Value], clause: &[(usize, Atom, bool)]) -> bool {
    for (v, a, eq) in clause {
        if let Some(p) = row[*v].as_proper() {
            if (p == a) != *eq {
                return false;
            }
        }
    }
    for (i, (v, a, eq)) in clause.iter().enumerate() {
        for (w, b, eq2) in &clause[i + 1..] {
            let clash = match (eq, eq2) {
                (true, true) => a != b,
                (true, false) | (false, true) => a == b,
                (false, false) => false,
            };
            if clash && row[*v] == row[*w] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{TeamBuilder, TeamMode};
    use crate::syntax::parse;

    fn sat(t: &CausalTeam, s: &str) -> bool {
        holds(t, &parse(s).unwrap()).unwrap()
    }

    fn xy(rows: &[[i64; 2]]) -> CausalTeam {
        let mut b = TeamBuilder::new(TeamMode::Set).variable("X", 1..=2).variable("Y", 1..=2);
        for r in rows {
            b = b.row(r);
        }
        b.build().unwrap()
    }

    #[test]
    fn selection_example() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("Z", 1..=3)
            .variable("Y", 1..=3)
            .variable("X", 1..=3)
            .row(&[1, 2, 3])
            .row(&[2, 1, 1])
            .row(&[3, 2, 1])
            .row(&[3, 2, 2])
            .build()
            .unwrap();
        assert!(sat(&t, "Z=3 => Y=2"));
        assert!(!sat(&t, "Y=2"));
    }

    #[test]
    fn split_example() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=3)
            .variable("Y", 1..=3)
            .variable("Z", 1..=3)
            .edge("X", "Z")
            .edge("Y", "Z")
            .row(&[1, 1, 1])
            .row(&[1, 2, 2])
            .row(&[2, 2, 3])
            .build()
            .unwrap();
        assert!(sat(&t, "do Y=2 []-> (Z=2 | Z=3)"));
        assert!(!sat(&t, "do Y=2 []-> Z=2"));
        let opts = EvalOptions {
            exhaustive: true,
            ..EvalOptions::default()
        };
        assert!(holds_with(&t, &parse("do Y=2 []-> (Z=2 | Z=3)").unwrap(), &opts).unwrap());
    }

    #[test]
    fn cem_prime_failure() {
        let t = xy(&[[1, 1], [1, 2]]);
        assert!(!sat(&t, "do X=1 []-> Y=1"));
        assert!(!sat(&t, "do X=1 []-> Y!=1"));
        assert!(sat(&t, "do X=1 []-> (Y=1 | Y!=1)"));
    }

    #[test]
    fn indep_team() {
        let u = xy(&[[1, 1], [1, 2], [2, 1], [2, 2]]);
        assert!(sat(&u, "indep(X,Y)"));
        assert!(sat(&u, "X!=1 | indep(X,Y)"));
        // the selected half has constant X, so the atom holds there
        assert!(sat(&u, "X=1 => indep(X,Y)"));
        assert!(!sat(&xy(&[[1, 1], [2, 1], [2, 2]]), "indep(X,Y)"));
        assert!(!sat(&xy(&[[1, 1], [2, 2]]), "indep(X,Y)"));
    }

    #[test]
    fn empty_team() {
        let e = xy(&[]);
        for s in ["X=1", "X=1 & X=2", "dep(;Y)", "do X=1 []-> Y=2", "X=1 => Y=1", "X=1 | Y=1"] {
            assert!(sat(&e, s), "{s}");
        }
        assert!(!sat(&e, "ndep(X;Y)"));
        assert!(!sat(&e, "Pr(X=1) >= 0"));
        assert!(!sat(&e, "Pr(X=1) < 1"));
    }

    #[test]
    fn dep_and_ndep() {
        let t = xy(&[[1, 1], [1, 2]]);
        assert!(!sat(&t, "dep(X;Y)"));
        assert!(sat(&t, "ndep(X;Y)"));
        assert!(sat(&t, "dep(Y;X)"));
        assert!(sat(&t, "ndep(X;Y) | X=2"));
    }

    #[test]
    fn sem_failure() {
        let t = TeamBuilder::new(TeamMode::Set).variable("X", 1..=2).row(&[1]).row(&[2]).build().unwrap();
        assert!(!sat(&t, "X=1"));
        assert!(!sat(&t, "X!=1"));
        assert!(!sat(&t, "!X=1"));
        assert!(sat(&t, "X=1 | !X=1"));
    }

    #[test]
    fn inconsistent_antecedent_is_trivially_true() {
        assert!(sat(&xy(&[[1, 1]]), "do X=1 & X=2 []-> Y=2"));
    }

    #[test]
    fn probability_atoms() {
        let t = xy(&[[1, 1], [2, 1], [1, 2]]).as_multiteam();
        assert!(sat(&t, "Pr(X=1) = 2/3"));
        assert!(sat(&t, "Pr(X=1) > 1/2"));
        assert!(sat(&t, "!Pr(X=1) <= 1/2"));
        assert!(sat(&t, "Pr(X=1) >= Pr(Y=1)"));
        assert!(sat(&t, "Y=2 => Pr(X=1) = 1"));
        // a set team is read as a multiteam once probabilities appear
        let s = xy(&[[1, 1], [2, 1]]);
        assert!(sat(&s, "do X=1 []-> Pr(Y=1) = 1"));
        assert!(sat(&s, "Pr(X=1) <= 1/2 | Pr(X=1) >= 1"));
    }

    #[test]
    fn terms_are_rejected_by_the_standard_relation() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=2)
            .variable("Y", 1..=2)
            .edge("X", "Y")
            .row_values(vec![Value::int(2), Value::int(1)], 1)
            .row_values(vec![Value::int(1), Value::term("Y", vec![Value::int(1)])], 1)
            .build()
            .unwrap();
        assert!(matches!(
            holds(&t, &parse("Y=1").unwrap()),
            Err(Error::FormalTermEncountered(_))
        ));
        assert!(!sat(&t, "X=2"));
    }

    #[test]
    fn falsifiable_clauses() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=2)
            .variable("Y", 1..=2)
            .edge("X", "Y")
            .row_values(vec![Value::int(2), Value::int(1)], 1)
            .row_values(vec![Value::int(1), Value::term("Y", vec![Value::int(1)])], 1)
            .build()
            .unwrap();
        let f = |s: &str| satisfies_falsifiable(&t, &parse(s).unwrap()).unwrap().satisfied;
        assert!(f("X=1"));
        assert!(!f("Y!=2"));
        assert!(f("Y!=1"));
        // the selective clause keeps the undecided second row
        assert!(f("Y=1 => X=2"));
        assert!(!f("Y=1 => X!=3"));
        assert!(!f("X=2 => Y=1"));
        assert!(!f("X=1 | X=2"));
        assert!(matches!(
            satisfies_falsifiable(&t, &parse("X=1 ++ X=2").unwrap()),
            Err(Error::UnsupportedConnective(_))
        ));
        let d = xy(&[[1, 1], [1, 2]]);
        assert!(satisfies_falsifiable(&d, &parse("dep(X;Y)").unwrap()).unwrap().satisfied);
        assert!(!satisfies_falsifiable(&d, &parse("dep(Y;X)").unwrap()).unwrap().satisfied);
    }

    #[test]
    fn admissible_clauses() {
        let col = |vals: Vec<Value>| {
            let mut b = TeamBuilder::new(TeamMode::Set).variable("W", 1..=4).variable("X", 1..=4).edge("W", "X");
            for (i, v) in vals.into_iter().enumerate() {
                b = b.row_values(vec![Value::int(i as i64 + 1), v], 1);
            }
            b.build().unwrap()
        };
        let a = |t: &CausalTeam, s: &str| satisfies_admissible(t, &parse(s).unwrap()).unwrap().satisfied;
        let mixed = col(vec![Value::int(3), Value::term("X", vec![Value::int(2)])]);
        assert!(a(&mixed, "X=3"));
        assert!(!a(&col(vec![Value::int(3), Value::int(4)]), "X=3"));
        assert!(a(&col(vec![Value::int(3), Value::int(4)]), "X=3 | X=4"));

        let shared = Value::term("W", vec![Value::int(3), Value::term("V", vec![Value::int(2)])]);
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=2)
            .variable("Y", 1..=2)
            .row_values(vec![shared.clone(), shared], 1)
            .build()
            .unwrap();
        assert!(!a(&t, "X=1 & Y=2"));
        assert!(a(&t, "X=1 & Y=1"));
        assert!(!a(&t, "X=1 & Y!=1"));
        assert!(matches!(
            satisfies_admissible(&t, &parse("X=1 => Y=1").unwrap()),
            Err(Error::NotSupportedShape(_))
        ));
        assert!(matches!(
            satisfies_admissible(&t, &parse("X=1 & X=2").unwrap()),
            Err(Error::NotSupportedShape(_))
        ));
    }
}
