//! Causal (multi)teams: rows, graph, ranges and structural function tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Dag;
use crate::syntax::Formula;

/// A proper value: an opaque integer or string token.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Atom {
    Int(i64),
    Str(String),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(i) => write!(f, "{i}"),
            Atom::Str(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for Atom {
    fn from(i: i64) -> Self {
        Atom::Int(i)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::Str(s.to_string())
    }
}

/// A formal term `f_Z(args)` standing for an unknown function application.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    /// Name of the variable whose function symbol this is.
    pub variable: String,
    pub args: Vec<Value>,
}

/// A cell of a team: proper, or a formal term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Proper(Atom),
    Term(Term),
}

impl Value {
    pub fn int(i: i64) -> Self {
        Value::Proper(Atom::Int(i))
    }

    pub fn as_proper(&self) -> Option<&Atom> {
        match self {
            Value::Proper(a) => Some(a),
            Value::Term(_) => None,
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self, Value::Proper(_))
    }

    pub fn term(variable: &str, args: Vec<Value>) -> Self {
        Value::Term(Term {
            variable: variable.to_string(),
            args,
        })
    }
}

impl From<Atom> for Value {
    fn from(a: Atom) -> Self {
        Value::Proper(a)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Proper(a) => write!(f, "{a}"),
            Value::Term(t) => {
                write!(f, "f_{}(", t.variable)?;
                for (i, a) in t.args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            Value::Proper(a) => a.serialize(s),
            Value::Term(t) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("term", &format!("f_{}", t.variable))?;
                m.serialize_entry("args", &t.args)?;
                m.end()
            }
        }
    }
}

/// One assignment together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Row {
    pub values: Vec<Value>,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TeamMode {
    Set,
    Multi,
}

/// Partial function from parent tuples to values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FunctionTable {
    pub parents: Vec<usize>,
    pub entries: BTreeMap<Vec<Atom>, Atom>,
}

impl FunctionTable {
    pub fn get(&self, args: &[Atom]) -> Option<&Atom> {
        self.entries.get(args)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Signature {
    names: Vec<String>,
    index: HashMap<String, usize>,
    ranges: Vec<Vec<Atom>>,
}

/// A causal team or multiteam. Cheap to clone: structure is shared.
#[derive(Debug, Clone)]
pub struct CausalTeam {
    sig: Arc<Signature>,
    graph: Arc<Dag>,
    functions: Arc<Vec<FunctionTable>>,
    rows: Vec<Row>,
    mode: TeamMode,
    explicit: bool,
}

impl PartialEq for CausalTeam {
    /// Componentwise equality: signature, graph, functions of endogenous
    /// variables, mode, and rows as a multiset.
    fn eq(&self, other: &Self) -> bool {
        if self.sig != other.sig || self.graph != other.graph || self.mode != other.mode {
            return false;
        }
        for v in 0..self.len_vars() {
            if self.graph.is_endogenous(v) && self.functions[v] != other.functions[v] {
                return false;
            }
        }
        self.canonical_rows() == other.canonical_rows()
    }
}

impl CausalTeam {
    pub fn builder(mode: TeamMode) -> TeamBuilder {
        TeamBuilder::new(mode)
    }

    pub fn mode(&self) -> TeamMode {
        self.mode
    }

    pub fn is_multiteam(&self) -> bool {
        self.mode == TeamMode::Multi
    }

    pub fn graph(&self) -> &Dag {
        &self.graph
    }

    pub fn names(&self) -> &[String] {
        &self.sig.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.sig.names[v]
    }

    pub fn len_vars(&self) -> usize {
        self.sig.names.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.sig
            .index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Sorted range of `v`.
    pub fn range(&self, v: usize) -> &[Atom] {
        &self.sig.ranges[v]
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of assignments counted with multiplicity.
    pub fn cardinality(&self) -> u64 {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn is_explicit(&self) -> bool {
        self.explicit
    }

    pub fn is_endogenous(&self, v: usize) -> bool {
        self.graph.is_endogenous(v)
    }

    /// The function table of `v`, if `v` is endogenous.
    pub fn function(&self, v: usize) -> Option<&FunctionTable> {
        if self.graph.is_endogenous(v) {
            Some(&self.functions[v])
        } else {
            None
        }
    }

    /// True when every endogenous table is total on its parents' ranges.
    pub fn is_parametric(&self) -> bool {
        self.first_partial_function().is_none()
    }

    pub(crate) fn first_partial_function(&self) -> Option<usize> {
        (0..self.len_vars()).find(|&v| {
            self.function(v).is_some_and(|f| {
                let total: u128 = f.parents.iter().map(|&p| self.sig.ranges[p].len() as u128).product();
                (f.entries.len() as u128) < total
            })
        })
    }

    /// Rows merged by value and sorted; used for multiset comparison.
    pub fn canonical_rows(&self) -> Vec<(Vec<Value>, u64)> {
        let mut m: BTreeMap<&Vec<Value>, u64> = BTreeMap::new();
        for r in &self.rows {
            *m.entry(&r.values).or_insert(0) += r.count;
        }
        m.into_iter().map(|(k, c)| (k.clone(), c)).collect()
    }

    /// Distinct assignments in first-occurrence order.
    pub fn distinct_rows(&self) -> Vec<&Vec<Value>> {
        let mut seen = std::collections::HashSet::new();
        self.rows
            .iter()
            .filter(|r| seen.insert(&r.values))
            .map(|r| &r.values)
            .collect()
    }

    pub(crate) fn with_rows(&self, rows: Vec<Row>) -> CausalTeam {
        CausalTeam {
            sig: self.sig.clone(),
            graph: self.graph.clone(),
            functions: self.functions.clone(),
            rows,
            mode: self.mode,
            explicit: self.explicit,
        }
    }

    pub(crate) fn with_structure(&self, graph: Dag, rows: Vec<Row>) -> CausalTeam {
        CausalTeam {
            sig: self.sig.clone(),
            graph: Arc::new(graph),
            functions: self.functions.clone(),
            rows,
            mode: self.mode,
            explicit: self.explicit,
        }
    }

    /// Same team, reinterpreted as a multiteam (counts kept).
    pub fn as_multiteam(&self) -> CausalTeam {
        let mut t = self.clone();
        t.mode = TeamMode::Multi;
        t
    }

    /// Same team as a set team: duplicates collapse to count 1.
    pub fn as_set_team(&self) -> CausalTeam {
        let mut t = self.clone();
        t.mode = TeamMode::Set;
        t.rows = dedup_rows(std::mem::take(&mut t.rows));
        t
    }

    /// Causal subteam keeping the rows (by index) for which `keep` holds.
    /// Apply `explicit_closure` first if the subteam is to be evaluated.
    pub fn subteam_by_index(&self, keep: impl Fn(usize) -> bool) -> CausalTeam {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, r)| r.clone())
            .collect();
        self.with_rows(rows)
    }

    /// Singleton subteam on row `i` (multiplicity kept).
    pub fn singleton(&self, i: usize) -> CausalTeam {
        self.with_rows(vec![self.rows[i].clone()])
    }

    pub fn empty_subteam(&self) -> CausalTeam {
        self.with_rows(Vec::new())
    }

    /// The explicit team: every function table extended by the entries that
    /// can be read off the rows.
    pub fn explicit_closure(&self) -> CausalTeam {
        if self.explicit {
            return self.clone();
        }
        let mut functions = (*self.functions).clone();
        for (v, table) in functions.iter_mut().enumerate() {
            if !self.graph.is_endogenous(v) {
                continue;
            }
            for row in &self.rows {
                let Some(out) = row.values[v].as_proper() else { continue };
                let args: Option<Vec<Atom>> = table
                    .parents
                    .iter()
                    .map(|&p| row.values[p].as_proper().cloned())
                    .collect();
                if let Some(args) = args {
                    table.entries.entry(args).or_insert_with(|| out.clone());
                }
            }
        }
        CausalTeam {
            functions: Arc::new(functions),
            explicit: true,
            ..self.clone()
        }
    }

    /// The fully explicit team. Ranges are implicitly closed under formal
    /// terms, so this coincides with the explicit closure; interventions on
    /// the result emit terms wherever a lookup is undefined.
    pub fn fully_explicit(&self) -> CausalTeam {
        self.explicit_closure()
    }

    /// Causal subteam of the explicit team: rows whose singleton satisfies
    /// the classical selector `theta`.
    pub fn select_subteam(&self, theta: &Formula) -> Result<CausalTeam> {
        if !theta.is_classical() {
            return Err(Error::AntecedentNotClassical);
        }
        let base = self.explicit_closure();
        let mut keep = Vec::with_capacity(base.rows.len());
        for r in &base.rows {
            keep.push(eval_classical(&base, &r.values, theta)?);
        }
        Ok(base.subteam_by_index(|i| keep[i]))
    }

    /// Value of variable `name` in row `i`.
    pub fn value(&self, i: usize, name: &str) -> Result<&Value> {
        Ok(&self.rows[i].values[self.var_index(name)?])
    }

    pub fn to_json(&self) -> String {
        let doc = self.to_document();
        let mut s = serde_json::to_string_pretty(&doc).expect("team documents always serialize");
        s.push('\n');
        s
    }

    fn to_document(&self) -> OutDoc<'_> {
        let variables = (0..self.len_vars())
            .map(|v| OutVar {
                name: self.name(v),
                range: self.range(v),
            })
            .collect();
        let edges = self.graph.named_edges().into_iter().map(|(a, b)| [a, b]).collect();
        let mut functions = BTreeMap::new();
        for v in 0..self.len_vars() {
            if let Some(f) = self.function(v) {
                functions.insert(
                    self.name(v),
                    OutFn {
                        parents: f.parents.iter().map(|&p| self.name(p)).collect(),
                        table: f
                            .entries
                            .iter()
                            .map(|(k, val)| OutEntry { args: k, value: val })
                            .collect(),
                    },
                );
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|r| OutRow {
                values: (0..self.len_vars()).map(|v| (self.name(v), &r.values[v])).collect(),
                count: r.count,
            })
            .collect();
        OutDoc {
            mode: match self.mode {
                TeamMode::Set => "set",
                TeamMode::Multi => "multi",
            },
            variables,
            edges,
            functions,
            rows,
        }
    }

    /// Plain-text table over the given column order, one row per line.
    pub fn render_table(&self, columns: &[&str]) -> Result<String> {
        let idx = columns.iter().map(|c| self.var_index(c)).collect::<Result<Vec<_>>>()?;
        let mut out = columns.join(" ");
        if self.is_multiteam() {
            out.push_str(" #");
        }
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = idx.iter().map(|&v| r.values[v].to_string()).collect();
            out.push_str(&cells.join(" "));
            if self.is_multiteam() {
                out.push_str(&format!(" {}", r.count));
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Evaluates a classical formula on a single assignment.
pub(crate) fn eval_classical(team: &CausalTeam, row: &[Value], theta: &Formula) -> Result<bool> {
    Ok(match theta {
        Formula::Eq(v, a) | Formula::Neq(v, a) => {
            let i = team.var_index(v)?;
            let val = row[i]
                .as_proper()
                .ok_or_else(|| Error::FormalTermEncountered(v.clone()))?;
            (val == a) == matches!(theta, Formula::Eq(..))
        }
        Formula::And(a, b) => eval_classical(team, row, a)? && eval_classical(team, row, b)?,
        Formula::TensorOr(a, b) => eval_classical(team, row, a)? || eval_classical(team, row, b)?,
        _ => return Err(Error::AntecedentNotClassical),
    })
}

pub(crate) fn dedup_rows(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for mut r in rows {
        if seen.insert(r.values.clone()) {
            r.count = 1;
            out.push(r);
        }
    }
    out
}

#[derive(Serialize)]
struct OutDoc<'a> {
    mode: &'static str,
    variables: Vec<OutVar<'a>>,
    edges: Vec<[String; 2]>,
    functions: BTreeMap<&'a str, OutFn<'a>>,
    rows: Vec<OutRow<'a>>,
}

#[derive(Serialize)]
struct OutVar<'a> {
    name: &'a str,
    range: &'a [Atom],
}

#[derive(Serialize)]
struct OutFn<'a> {
    parents: Vec<&'a str>,
    table: Vec<OutEntry<'a>>,
}

#[derive(Serialize)]
struct OutEntry<'a> {
    args: &'a [Atom],
    value: &'a Atom,
}

#[derive(Serialize)]
struct OutRow<'a> {
    values: BTreeMap<&'a str, &'a Value>,
    count: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InDoc {
    #[serde(default)]
    mode: Option<String>,
    variables: Vec<InVar>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    functions: BTreeMap<String, InFn>,
    #[serde(default)]
    rows: Vec<InRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InVar {
    name: String,
    range: Vec<Atom>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InFn {
    parents: Vec<String>,
    #[serde(default)]
    table: Vec<InEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InEntry {
    args: Vec<Atom>,
    value: Atom,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InRow {
    values: BTreeMap<String, Atom>,
    count: Option<u64>,
}

/// Parses and validates a team file.
pub fn load_team(document: &str) -> Result<CausalTeam> {
    let doc: InDoc = serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
    let mode = match doc.mode.as_deref() {
        None | Some("set") => TeamMode::Set,
        Some("multi") => TeamMode::Multi,
        Some(other) => return Err(Error::Schema(format!("unknown mode {other:?}"))),
    };
    let mut b = TeamBuilder::new(mode);
    for v in doc.variables {
        b = b.variable(&v.name, v.range);
    }
    for (x, y) in &doc.edges {
        b = b.edge(x, y);
    }
    for (y, f) in doc.functions {
        b = b.declared_parents(&y, f.parents);
        for e in f.table {
            b = b.entry(&y, e.args, e.value);
        }
    }
    for r in doc.rows {
        let count = r.count.unwrap_or(1);
        b = b.row_counted(r.values.into_iter().map(|(k, a)| (k, Value::Proper(a))).collect(), count);
    }
    b.build()
}

pub fn load_team_file(path: &std::path::Path) -> Result<CausalTeam> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_team(&text)
}

/// Incremental construction of a validated team.
#[derive(Debug, Clone)]
pub struct TeamBuilder {
    mode: TeamMode,
    variables: Vec<(String, Vec<Atom>)>,
    edges: Vec<(String, String)>,
    parents: Vec<(String, Vec<String>)>,
    entries: Vec<(String, Vec<Atom>, Atom)>,
    rows: Vec<(Vec<(String, Value)>, u64)>,
}

impl TeamBuilder {
    pub fn new(mode: TeamMode) -> Self {
        TeamBuilder {
            mode,
            variables: Vec::new(),
            edges: Vec::new(),
            parents: Vec::new(),
            entries: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn variable(mut self, name: &str, range: impl IntoIterator<Item = impl Into<Atom>>) -> Self {
        self.variables
            .push((name.to_string(), range.into_iter().map(Into::into).collect()));
        self
    }

    pub fn edge(mut self, from: &str, to: &str) -> Self {
        self.edges.push((from.to_string(), to.to_string()));
        self
    }

    fn declared_parents(mut self, var: &str, parents: Vec<String>) -> Self {
        self.parents.push((var.to_string(), parents));
        self
    }

    /// Adds `f_var(args) = value`; `args` follow the alphabetical parent order.
    pub fn entry(
        mut self,
        var: &str,
        args: impl IntoIterator<Item = impl Into<Atom>>,
        value: impl Into<Atom>,
    ) -> Self {
        self.entries.push((
            var.to_string(),
            args.into_iter().map(Into::into).collect(),
            value.into(),
        ));
        self
    }

    /// Adds a row given as (name, value) pairs.
    pub fn row_counted(mut self, values: Vec<(String, Value)>, count: u64) -> Self {
        self.rows.push((values, count));
        self
    }

    /// Adds a row of integers listed in the order the variables were declared.
    pub fn row(self, values: &[i64]) -> Self {
        self.row_n(values, 1)
    }

    pub fn row_n(self, values: &[i64], count: u64) -> Self {
        let named = self
            .variables
            .iter()
            .zip(values)
            .map(|((n, _), &v)| (n.clone(), Value::int(v)))
            .collect();
        self.row_counted(named, count)
    }

    /// Adds a row of arbitrary values in declaration order.
    pub fn row_values(self, values: Vec<Value>, count: u64) -> Self {
        let named = self.variables.iter().map(|(n, _)| n.clone()).zip(values).collect();
        self.row_counted(named, count)
    }

    pub fn build(self) -> Result<CausalTeam> {
        let mut vars = self.variables;
        for (name, range) in &vars {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Schema(format!("invalid variable name {name:?}")));
            }
            if name == "Key" {
                return Err(Error::Schema("the variable name Key is reserved".into()));
            }
            if range.is_empty() {
                return Err(Error::Schema(format!("range of {name} is empty")));
            }
        }
        vars.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = vars.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Schema(format!("duplicate variable {}", w[0].0)));
        }
        let names: Vec<String> = vars.iter().map(|v| v.0.clone()).collect();
        let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let lookup = |n: &str| index.get(n).copied().ok_or_else(|| Error::UnknownVariable(n.to_string()));
        let mut ranges = Vec::with_capacity(vars.len());
        for (name, mut r) in vars {
            let before = r.len();
            r.sort();
            r.dedup();
            if r.len() != before {
                return Err(Error::Schema(format!("range of {name} lists a value twice")));
            }
            ranges.push(r);
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (a, b) in &self.edges {
            edges.push((lookup(a)?, lookup(b)?));
        }
        let graph = Dag::new(names.clone(), &edges)?;

        let mut functions: Vec<FunctionTable> = (0..names.len())
            .map(|v| FunctionTable {
                parents: graph.parents(v).to_vec(),
                entries: BTreeMap::new(),
            })
            .collect();
        for (var, declared) in &self.parents {
            let v = lookup(var)?;
            if !graph.is_endogenous(v) {
                return Err(Error::Schema(format!("function given for exogenous variable {var}")));
            }
            let expected: Vec<&str> = graph.parents(v).iter().map(|&p| names[p].as_str()).collect();
            if declared.iter().map(String::as_str).ne(expected.iter().copied()) {
                return Err(Error::Schema(format!(
                    "parents of {var} must be {expected:?} (alphabetical graph parents)"
                )));
            }
        }
        for (var, args, value) in self.entries {
            let v = lookup(&var)?;
            if !graph.is_endogenous(v) {
                return Err(Error::Schema(format!("function given for exogenous variable {var}")));
            }
            let table = &mut functions[v];
            if args.len() != table.parents.len() {
                return Err(Error::Schema(format!(
                    "table entry for {var} has {} arguments, expected {}",
                    args.len(),
                    table.parents.len()
                )));
            }
            for (a, &p) in args.iter().zip(&table.parents) {
                check_range(&names[p], &ranges[p], a)?;
            }
            check_range(&var, &ranges[v], &value)?;
            if table.entries.insert(args, value).is_some() {
                return Err(Error::Schema(format!("duplicate table entry for {var}")));
            }
        }

        let mut rows = Vec::with_capacity(self.rows.len());
        for (named, count) in self.rows {
            if count == 0 {
                return Err(Error::Schema("row count must be at least 1".into()));
            }
            if self.mode == TeamMode::Set && count != 1 {
                return Err(Error::Schema("row count must be 1 in set mode".into()));
            }
            let mut values: Vec<Option<Value>> = vec![None; names.len()];
            for (n, val) in named {
                let v = lookup(&n)?;
                if values[v].is_some() {
                    return Err(Error::Schema(format!("row assigns {n} twice")));
                }
                if let Value::Proper(a) = &val {
                    check_range(&n, &ranges[v], a)?;
                }
                values[v] = Some(val);
            }
            let values = values
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| Error::Schema(format!("row misses variable {}", names[i]))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(Row { values, count });
        }
        if self.mode == TeamMode::Set {
            rows = dedup_rows(rows);
        }

        check_conditions(&names, &graph, &functions, &rows)?;

        Ok(CausalTeam {
            sig: Arc::new(Signature { names, index, ranges }),
            graph: Arc::new(graph),
            functions: Arc::new(functions),
            rows,
            mode: self.mode,
            explicit: false,
        })
    }
}

fn check_range(name: &str, range: &[Atom], a: &Atom) -> Result<()> {
    if range.binary_search(a).is_ok() {
        Ok(())
    } else {
        Err(Error::RangeViolation {
            variable: name.to_string(),
            value: a.to_string(),
        })
    }
}

fn check_conditions(names: &[String], graph: &Dag, functions: &[FunctionTable], rows: &[Row]) -> Result<()> {
    for v in 0..names.len() {
        if !graph.is_endogenous(v) {
            continue;
        }
        let f = &functions[v];
        let mut seen: HashMap<Vec<&Atom>, (usize, &Atom)> = HashMap::new();
        for (i, r) in rows.iter().enumerate() {
            let args: Option<Vec<&Atom>> = f.parents.iter().map(|&p| r.values[p].as_proper()).collect();
            let (Some(args), Some(out)) = (args, r.values[v].as_proper()) else {
                continue;
            };
            if let Some(&(j, prev)) = seen.get(&args) {
                if prev != out {
                    return Err(Error::ConditionB {
                        variable: names[v].clone(),
                        first: j,
                        second: i,
                    });
                }
            } else {
                seen.insert(args.clone(), (i, out));
            }
            let key: Vec<Atom> = args.into_iter().cloned().collect();
            if let Some(expected) = f.get(&key) {
                if expected != out {
                    return Err(Error::ConditionC {
                        variable: names[v].clone(),
                        row: i,
                        expected: expected.to_string(),
                        found: out.to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    /// Four rows over U, X, Y, Z with Z reading all three.
    fn closure_example() -> CausalTeam {
        CausalTeam::builder(TeamMode::Set)
            .variable("U", 1..=4)
            .variable("X", 1..=4)
            .variable("Y", 1..=4)
            .variable("Z", 1..=4)
            .edge("U", "Z")
            .edge("X", "Y")
            .edge("Y", "Z")
            .edge("X", "Z")
            .entry("Z", [4, 1, 2], 3)
            .row(&[2, 1, 2, 4])
            .row(&[3, 1, 2, 4])
            .row(&[1, 3, 3, 1])
            .row(&[1, 4, 1, 1])
            .row(&[4, 4, 1, 1])
            .build()
            .unwrap()
    }

    fn atoms(v: &[i64]) -> Vec<Atom> {
        v.iter().map(|&i| Atom::Int(i)).collect()
    }

    #[test]
    fn closure_reads_entries_off_rows() {
        let t = closure_example();
        let z = t.var_index("Z").unwrap();
        assert_eq!(t.function(z).unwrap().entries.len(), 1);
        let e = t.explicit_closure();
        let f = e.function(z).unwrap();
        assert_eq!(f.get(&atoms(&[2, 1, 2])), Some(&Atom::Int(4)));
        assert_eq!(f.get(&atoms(&[4, 1, 2])), Some(&Atom::Int(3)));
        assert_eq!(f.get(&atoms(&[1, 3, 3])), Some(&Atom::Int(1)));
        assert_eq!(f.entries.len(), 6);
        let y = t.var_index("Y").unwrap();
        assert_eq!(e.function(y).unwrap().get(&atoms(&[1])), Some(&Atom::Int(2)));
        assert_eq!(e.rows(), t.rows());
        assert_eq!(e.explicit_closure(), e);
    }

    #[test]
    fn closure_of_empty_team_keeps_functions() {
        let t = closure_example().empty_subteam();
        let e = t.explicit_closure();
        let z = t.var_index("Z").unwrap();
        assert_eq!(e.function(z), t.function(z));
    }

    #[test]
    fn selection_example() {
        let t = CausalTeam::builder(TeamMode::Set)
            .variable("Z", 1..=3)
            .variable("Y", 1..=3)
            .variable("X", 1..=3)
            .row(&[1, 2, 3])
            .row(&[2, 1, 1])
            .row(&[3, 2, 1])
            .row(&[3, 2, 2])
            .build()
            .unwrap();
        let s = t.select_subteam(&parse("Z=3").unwrap()).unwrap();
        assert_eq!(s.render_table(&["Z", "Y", "X"]).unwrap(), "Z Y X\n3 2 1\n3 2 2\n");
        assert_eq!(t.select_subteam(&parse("X=1 | X!=1").unwrap()).unwrap(), t.explicit_closure());
        assert!(t.select_subteam(&parse("Z=4").unwrap()).unwrap().is_empty());
        assert!(matches!(
            t.select_subteam(&parse("dep(X;Y)").unwrap()),
            Err(Error::AntecedentNotClassical)
        ));
    }

    const PEARL: &str = r#"{
      "mode": "multi",
      "variables": [{"name":"U1","range":[0,1]},{"name":"U2","range":[0,1]},
                    {"name":"X","range":[0,1]},{"name":"Y","range":[0,1]}],
      "edges": [["U1","X"],["X","Y"],["U2","Y"]],
      "functions": {
        "X": {"parents":["U1"],"table":[{"args":[0],"value":0},{"args":[1],"value":1}]},
        "Y": {"parents":["U2","X"],"table":[{"args":[0,0],"value":1},{"args":[0,1],"value":0},
                                          {"args":[1,0],"value":0},{"args":[1,1],"value":1}]}
      },
      "rows": [{"values":{"U1":0,"U2":0,"X":0,"Y":1}},{"values":{"U1":0,"U2":1,"X":0,"Y":0}},
               {"values":{"U1":1,"U2":0,"X":1,"Y":0}},{"values":{"U1":1,"U2":1,"X":1,"Y":1}}]
    }"#;

    #[test]
    fn load_pearl() {
        let t = load_team(PEARL).unwrap();
        assert_eq!(t.cardinality(), 4);
        assert!(t.is_parametric());
        assert!(t.is_multiteam());
        let again = load_team(&t.to_json()).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn load_errors() {
        let self_loop = r#"{"variables":[{"name":"Y","range":[0]}],"edges":[["Y","Y"]],"rows":[]}"#;
        assert!(matches!(load_team(self_loop), Err(Error::CyclicGraph(_))));
        let cond_b = r#"{"variables":[{"name":"X","range":[1,2]},{"name":"Y","range":[1,2]}],
            "edges":[["X","Y"]],"rows":[{"values":{"X":1,"Y":1}},{"values":{"X":1,"Y":2}}]}"#;
        assert!(matches!(load_team(cond_b), Err(Error::ConditionB { .. })));
        let cond_c = r#"{"variables":[{"name":"X","range":[1,2]},{"name":"Y","range":[1,2]}],
            "edges":[["X","Y"]],"functions":{"Y":{"parents":["X"],"table":[{"args":[1],"value":2}]}},
            "rows":[{"values":{"X":1,"Y":1}}]}"#;
        assert!(matches!(load_team(cond_c), Err(Error::ConditionC { .. })));
        let out_of_range = r#"{"variables":[{"name":"X","range":[1,2]}],"rows":[{"values":{"X":3}}]}"#;
        assert!(matches!(load_team(out_of_range), Err(Error::RangeViolation { .. })));
        let key = r#"{"variables":[{"name":"Key","range":[1]}],"rows":[]}"#;
        assert!(matches!(load_team(key), Err(Error::Schema(_))));
        let bad_parents = r#"{"variables":[{"name":"X","range":[1]},{"name":"Y","range":[1]},{"name":"Z","range":[1]}],
            "edges":[["X","Z"],["Y","Z"]],"functions":{"Z":{"parents":["Y","X"],"table":[]}},"rows":[]}"#;
        assert!(matches!(load_team(bad_parents), Err(Error::Schema(_))));
        let count_in_set = r#"{"variables":[{"name":"X","range":[1]}],"rows":[{"values":{"X":1},"count":2}]}"#;
        assert!(matches!(load_team(count_in_set), Err(Error::Schema(_))));
        assert!(matches!(load_team("{"), Err(Error::Schema(_))));
    }

    #[test]
    fn set_mode_deduplicates_on_load() {
        let t = CausalTeam::builder(TeamMode::Set)
            .variable("X", [1, 2])
            .row(&[1])
            .row(&[2])
            .row(&[1])
            .build()
            .unwrap();
        assert_eq!(t.rows().len(), 2);
        let m = CausalTeam::builder(TeamMode::Multi)
            .variable("X", [1, 2])
            .row(&[1])
            .row_n(&[1], 2)
            .build()
            .unwrap();
        assert_eq!(m.cardinality(), 3);
    }

    #[test]
    fn terms_serialize_as_objects() {
        let v = Value::term("Z", vec![Value::int(1), Value::term("Y", vec![Value::int(2)])]);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"term":"f_Z","args":[1,{"term":"f_Y","args":[2]}]}"#
        );
        assert_eq!(v.to_string(), "f_Z(1,f_Y(2))");
    }
}
