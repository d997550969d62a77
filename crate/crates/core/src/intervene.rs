//! The `do` intervention algorithm on recursive causal teams.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{dedup_rows, Atom, CausalTeam, Row, TeamMode, Value};

/// A conjunction of settings `X = x`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InterventionSpec {
    pub bindings: Vec<(String, Atom)>,
}

impl InterventionSpec {
    pub fn new(bindings: Vec<(String, Atom)>) -> Self {
        InterventionSpec { bindings }
    }

    pub fn single(var: &str, value: impl Into<Atom>) -> Self {
        InterventionSpec {
            bindings: vec![(var.to_string(), value.into())],
        }
    }

    /// Parses `X=1,Y=a` (also accepts `&` as separator).
    pub fn parse(text: &str) -> Result<Self> {
        let mut bindings = Vec::new();
        for part in text.split([',', '&']).map(str::trim).filter(|p| !p.is_empty()) {
            let (var, val) = part.split_once('=').ok_or_else(|| Error::Syntax {
                position: 0,
                message: format!("expected VAR=value, found {part:?}"),
            })?;
            let val = val.trim();
            let atom = val.parse::<i64>().map(Atom::Int).unwrap_or_else(|_| Atom::Str(val.to_string()));
            bindings.push((var.trim().to_string(), atom));
        }
        Ok(InterventionSpec { bindings })
    }

    /// First variable bound to two different values, if any.
    pub fn conflict(&self) -> Option<&str> {
        for (i, (v, a)) in self.bindings.iter().enumerate() {
            if self.bindings[..i].iter().any(|(w, b)| w == v && b != a) {
                return Some(v);
            }
        }
        None
    }

    pub fn is_consistent(&self) -> bool {
        self.conflict().is_none()
    }

    /// Bindings with repetitions removed, in first-occurrence order.
    pub fn normalized(&self) -> Vec<(String, Atom)> {
        let mut out: Vec<(String, Atom)> = Vec::new();
        for (v, a) in &self.bindings {
            if !out.iter().any(|(w, _)| w == v) {
                out.push((v.clone(), a.clone()));
            }
        }
        out
    }

    /// Conjunction of two specs.
    pub fn and(&self, other: &InterventionSpec) -> InterventionSpec {
        let mut bindings = self.bindings.clone();
        bindings.extend(other.bindings.iter().cloned());
        InterventionSpec { bindings }
    }
}

impl fmt::Display for InterventionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, a)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}={a}")?;
        }
        Ok(())
    }
}

/// Computes `T_{X=x}`. Inconsistent specs are refused.
pub fn do_intervention(team: &CausalTeam, spec: &InterventionSpec) -> Result<CausalTeam> {
    if let Some(v) = spec.conflict() {
        return Err(Error::InconsistentSpec(v.to_string()));
    }
    let mut set: Vec<(usize, Atom)> = Vec::new();
    for (name, a) in spec.normalized() {
        let v = team.var_index(&name)?;
        if team.range(v).binary_search(&a).is_err() {
            return Err(Error::RangeViolation {
                variable: name,
                value: a.to_string(),
            });
        }
        set.push((v, a));
    }
    let team = team.fully_explicit();
    let xs: Vec<usize> = set.iter().map(|(v, _)| *v).collect();
    let graph = team.graph().remove_incoming(&xs);
    let dist = team.graph().eval_distances(&xs);
    let mut schedule: Vec<usize> = (0..team.len_vars()).filter(|&v| dist[v] >= 1).collect();
    schedule.sort_by_key(|&v| (dist[v], v));

    let rows: Vec<Row> = team
        .rows()
        .iter()
        .map(|r| {
            let mut values = r.values.clone();
            for (v, a) in &set {
                values[*v] = Value::Proper(a.clone());
            }
            for &z in &schedule {
                values[z] = compute(&team, z, &values);
            }
            Row { values, count: r.count }
        })
        .collect();
    let rows = match team.mode() {
        TeamMode::Set => dedup_rows(rows),
        TeamMode::Multi => rows,
    };
    Ok(team.with_structure(graph, rows))
}

/// `f_z` applied to the current parent values, or a formal term when the
/// lookup is undefined.
fn compute(team: &CausalTeam, z: usize, values: &[Value]) -> Value {
    let f = team.function(z).expect("scheduled variables are endogenous");
    let args: Option<Vec<Atom>> = f.parents.iter().map(|&p| values[p].as_proper().cloned()).collect();
    if let Some(out) = args.as_ref().and_then(|a| f.get(a)) {
        return Value::Proper(out.clone());
    }
    Value::term(team.name(z), f.parents.iter().map(|&p| values[p].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TeamBuilder;

    fn ex1() -> CausalTeam {
        TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=4)
            .variable("Y", 1..=4)
            .variable("Z", 1..=4)
            .edge("X", "Y")
            .edge("Y", "Z")
            .row(&[1, 2, 3])
            .row(&[2, 1, 4])
            .row(&[4, 1, 4])
            .row(&[3, 3, 4])
            .build()
            .unwrap()
    }

    fn ex3(extra: bool) -> CausalTeam {
        let mut b = TeamBuilder::new(TeamMode::Set)
            .variable("U", 1..=4)
            .variable("X", 1..=4)
            .variable("Y", 1..=4)
            .variable("Z", 1..=4)
            .edge("X", "Y")
            .edge("U", "Z")
            .edge("X", "Z")
            .edge("Y", "Z");
        if extra {
            b = b.entry("Z", [1, 1, 2], 3);
        }
        b.row(&[2, 1, 2, 4]).row(&[3, 1, 2, 4]).row(&[1, 3, 3, 1]).row(&[1, 4, 1, 1]).build().unwrap()
    }

    #[test]
    fn example_one() {
        let t = do_intervention(&ex1(), &InterventionSpec::single("Y", 2)).unwrap();
        assert_eq!(t.render_table(&["X", "Y", "Z"]).unwrap(), "X Y Z\n1 2 3\n2 2 3\n4 2 3\n3 2 3\n");
        assert!(t.graph().edges().len() == 1);
    }

    #[test]
    fn example_two_deduplicates() {
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
        let d = do_intervention(&t, &InterventionSpec::single("Y", 2)).unwrap();
        assert_eq!(d.render_table(&["X", "Y", "Z"]).unwrap(), "X Y Z\n1 2 2\n2 2 3\n");
        let m = do_intervention(&t.as_multiteam(), &InterventionSpec::single("Y", 2)).unwrap();
        assert_eq!(m.cardinality(), 3);
    }

    #[test]
    fn nonparametric_emits_terms() {
        let d = do_intervention(&ex3(false), &InterventionSpec::single("X", 1)).unwrap();
        assert_eq!(
            d.render_table(&["U", "X", "Y", "Z"]).unwrap(),
            "U X Y Z\n2 1 2 4\n3 1 2 4\n1 1 2 f_Z(1,1,2)\n"
        );
        let d = do_intervention(&ex3(true), &InterventionSpec::single("X", 1)).unwrap();
        assert_eq!(d.render_table(&["U", "X", "Y", "Z"]).unwrap(), "U X Y Z\n2 1 2 4\n3 1 2 4\n1 1 2 3\n");
    }

    #[test]
    fn nested_terms_under_iteration() {
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", 1..=3)
            .variable("Y", 1..=3)
            .variable("Z", 1..=3)
            .edge("X", "Y")
            .edge("Y", "Z")
            .row(&[1, 1, 1])
            .build()
            .unwrap();
        let d = do_intervention(&t, &InterventionSpec::single("X", 2)).unwrap();
        assert_eq!(d.render_table(&["X", "Y", "Z"]).unwrap(), "X Y Z\n2 f_Y(2) f_Z(f_Y(2))\n");
    }

    #[test]
    fn empty_team_and_errors() {
        let e = ex1().empty_subteam();
        assert!(do_intervention(&e, &InterventionSpec::single("Y", 2)).unwrap().is_empty());
        let bad = InterventionSpec::new(vec![("Y".into(), Atom::Int(1)), ("Y".into(), Atom::Int(2))]);
        assert!(matches!(do_intervention(&ex1(), &bad), Err(Error::InconsistentSpec(_))));
        assert!(matches!(
            do_intervention(&ex1(), &InterventionSpec::single("Y", 9)),
            Err(Error::RangeViolation { .. })
        ));
        assert!(matches!(
            do_intervention(&ex1(), &InterventionSpec::single("Q", 1)),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn spec_parsing() {
        let s = InterventionSpec::parse("X=1, Y=a").unwrap();
        assert_eq!(s.bindings, vec![("X".into(), Atom::Int(1)), ("Y".into(), Atom::Str("a".into()))]);
        assert!(InterventionSpec::parse("X").is_err());
        assert_eq!(s.to_string(), "X=1,Y=a");
    }
}
