//! Random causal teams and a registry of machine-checked laws.
//!
//! Universal laws are checked on seeded random instances; a violated
//! instance is shrunk by greedy row removal before it is reported.
//! Counterexample laws replay fixed teams and compare verdicts.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::causality::contributing_cause;
use crate::error::{Error, Result};
use crate::intervene::{do_intervention, InterventionSpec};
use crate::model::{Atom, CausalTeam, TeamBuilder, TeamMode, Value};
use crate::prob::{
    check_intervened_product, check_markov_axiom, check_markov_condition, check_product_formula,
    conditional_probability, joint_distribution, joint_from_exogenous, prob_independent, probability_of,
    tuple_formula, Probability,
};
use crate::semantics::{holds, holds_with, row_satisfies, EvalOptions};
use crate::syntax::{complement, Formula, ProbRhs, Rel};

/// Names given to generated variables, in declaration order.
pub const VARIABLE_NAMES: [&str; 6] = ["U", "V", "W", "X", "Y", "Z"];
const MAX_PARENTS: usize = 3;
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 0x0C4A_05A1;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub min_vars: usize,
    pub max_vars: usize,
    pub min_range: usize,
    pub max_range: usize,
    pub edge_prob: f64,
    pub min_rows: usize,
    pub max_rows: usize,
    /// Total function tables; otherwise each entry survives with probability 1/2.
    pub parametric: bool,
    pub multiteam: bool,
    /// Rows enumerate every exogenous tuple, weighted by a product of
    /// independent marginals. Implies a multiteam; ignores the row bounds.
    pub exogenous_product: bool,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            min_vars: 2,
            max_vars: 4,
            min_range: 2,
            max_range: 3,
            edge_prob: 0.5,
            min_rows: 1,
            max_rows: 8,
            parametric: true,
            multiteam: false,
            exogenous_product: false,
            seed: DEFAULT_SEED,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = 2 <= self.min_vars
            && self.min_vars <= self.max_vars
            && self.max_vars <= VARIABLE_NAMES.len()
            && 2 <= self.min_range
            && self.min_range <= self.max_range
            && self.max_range <= 4
            && (0.0..=1.0).contains(&self.edge_prob)
            && 1 <= self.min_rows
            && self.min_rows <= self.max_rows
            && self.max_rows <= 12;
        if ok {
            Ok(())
        } else {
            Err(Error::Schema(format!("invalid generator configuration {self:?}")))
        }
    }

    fn cap_vars(&mut self, n: usize) {
        self.max_vars = self.max_vars.min(n);
        self.min_vars = self.min_vars.min(self.max_vars);
    }

    fn cap_range(&mut self, n: usize) {
        self.max_range = self.max_range.min(n);
        self.min_range = self.min_range.min(self.max_range);
    }

    fn cap_rows(&mut self, n: usize) {
        self.max_rows = self.max_rows.min(n);
        self.min_rows = self.min_rows.min(self.max_rows);
    }
}

/// Deterministic team for `cfg.seed`.
pub fn generate_team(cfg: &GeneratorConfig) -> CausalTeam {
    generate_with(&mut ChaCha8Rng::seed_from_u64(cfg.seed), cfg)
}

/// Random DAG, random tables, rows propagated from random exogenous tuples.
pub fn generate_with(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> CausalTeam {
    let n = rng.gen_range(cfg.min_vars..=cfg.max_vars);
    let sizes: Vec<i64> = (0..n)
        .map(|_| rng.gen_range(cfg.min_range..=cfg.max_range) as i64)
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..n {
        for i in 0..j {
            if parents[order[j]].len() < MAX_PARENTS && rng.gen_bool(cfg.edge_prob) {
                parents[order[j]].push(order[i]);
            }
        }
    }
    for p in &mut parents {
        p.sort_unstable();
    }
    let mut tables: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); n];
    for v in 0..n {
        if parents[v].is_empty() {
            continue;
        }
        for args in product(&parents[v].iter().map(|&p| sizes[p]).collect::<Vec<_>>()) {
            let out = rng.gen_range(0..sizes[v]);
            tables[v].insert(args, out);
        }
    }
    let propagate = |exo: &dyn Fn(usize) -> i64| -> Vec<i64> {
        let mut vals = vec![0i64; n];
        for &v in &order {
            vals[v] = if parents[v].is_empty() {
                exo(v)
            } else {
                let args: Vec<i64> = parents[v].iter().map(|&p| vals[p]).collect();
                tables[v][&args]
            };
        }
        vals
    };
    let mut rows: Vec<(Vec<i64>, u64)> = Vec::new();
    if cfg.exogenous_product {
        let exo: Vec<usize> = (0..n).filter(|&v| parents[v].is_empty()).collect();
        let weights: Vec<Vec<u64>> = (0..n)
            .map(|v| (0..sizes[v]).map(|_| rng.gen_range(1..=3)).collect())
            .collect();
        for tuple in product(&exo.iter().map(|&v| sizes[v]).collect::<Vec<_>>()) {
            let lookup = |v: usize| tuple[exo.iter().position(|&e| e == v).expect("exogenous")];
            let count = exo.iter().zip(&tuple).map(|(&v, &a)| weights[v][a as usize]).product();
            rows.push((propagate(&lookup), count));
        }
    } else {
        let k = rng.gen_range(cfg.min_rows..=cfg.max_rows);
        for _ in 0..k {
            let draws: Vec<i64> = (0..n).map(|v| rng.gen_range(0..sizes[v])).collect();
            rows.push((propagate(&|v| draws[v]), 1));
        }
    }
    let multi = cfg.multiteam || cfg.exogenous_product;
    let mut b = TeamBuilder::new(if multi { TeamMode::Multi } else { TeamMode::Set });
    for v in 0..n {
        b = b.variable(VARIABLE_NAMES[v], 0..sizes[v]);
    }
    for v in 0..n {
        for &p in &parents[v] {
            b = b.edge(VARIABLE_NAMES[p], VARIABLE_NAMES[v]);
        }
    }
    for v in 0..n {
        for (args, out) in &tables[v] {
            if cfg.parametric || rng.gen_bool(0.5) {
                b = b.entry(VARIABLE_NAMES[v], args.iter().copied(), *out);
            }
        }
    }
    for (vals, count) in rows {
        b = b.row_n(&vals, count);
    }
    b.build().expect("generated teams satisfy the causal-team conditions")
}

/// All tuples `0..sizes[i]`, lexicographically.
fn product(sizes: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..s).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

// ------------------------------------------------------------------ formulas

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaShape {
    /// Literals under `&` and `|`.
    Classical,
    /// CO: classical connectives, `=>` with classical antecedent, `[]->`.
    Observational,
    /// CO with dual negation: the flat fragment.
    Flat,
    /// Dependence atoms, `||`, and dual negation of flat formulas on top of CO.
    DownwardClosed,
}

/// A random formula over the variables of `team`, of depth at most `depth`.
pub fn random_formula(rng: &mut ChaCha8Rng, team: &CausalTeam, shape: FormulaShape, depth: usize) -> Formula {
    Gen::new(rng, team, 2).formula(shape, depth)
}

struct Gen<'r> {
    rng: &'r mut ChaCha8Rng,
    names: Vec<String>,
    ranges: Vec<Vec<Atom>>,
    /// Remaining `|` connectives; each one can cost a split search.
    ors: usize,
}

impl<'r> Gen<'r> {
    fn new(rng: &'r mut ChaCha8Rng, team: &CausalTeam, ors: usize) -> Self {
        Gen {
            rng,
            names: team.names().to_vec(),
            ranges: (0..team.len_vars()).map(|v| team.range(v).to_vec()).collect(),
            ors,
        }
    }

    fn var(&mut self) -> usize {
        self.rng.gen_range(0..self.names.len())
    }

    fn value(&mut self, v: usize) -> Atom {
        self.ranges[v].choose(self.rng).expect("nonempty range").clone()
    }

    fn eq(&mut self, v: usize) -> Formula {
        let a = self.value(v);
        Formula::Eq(self.names[v].clone(), a)
    }

    fn literal(&mut self) -> Formula {
        let v = self.var();
        let a = self.value(v);
        if self.rng.gen_bool(0.5) {
            Formula::Eq(self.names[v].clone(), a)
        } else {
            Formula::Neq(self.names[v].clone(), a)
        }
    }

    /// Between `lo` and `hi` distinct variables, sorted.
    fn vars(&mut self, lo: usize, hi: usize) -> Vec<usize> {
        let hi = hi.min(self.names.len());
        let k = self.rng.gen_range(lo.min(hi)..=hi);
        let mut all: Vec<usize> = (0..self.names.len()).collect();
        all.shuffle(self.rng);
        all.truncate(k);
        all.sort_unstable();
        all
    }

    fn binding_on(&mut self, vs: &[usize]) -> Vec<(String, Atom)> {
        vs.iter().map(|&v| (self.names[v].clone(), self.value(v))).collect()
    }

    fn binding(&mut self) -> Vec<(String, Atom)> {
        let vs = self.vars(1, 2);
        self.binding_on(&vs)
    }

    fn dep(&mut self) -> Formula {
        let y = self.var();
        let xs: Vec<String> = self
            .vars(0, 2)
            .into_iter()
            .filter(|&v| v != y)
            .map(|v| self.names[v].clone())
            .collect();
        Formula::Dep(xs, self.names[y].clone())
    }

    fn classical(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.4) {
            return self.literal();
        }
        let a = self.classical(depth - 1);
        let b = self.classical(depth - 1);
        if self.rng.gen_bool(0.5) {
            Formula::and(a, b)
        } else {
            Formula::or(a, b)
        }
    }

    fn atom(&mut self, shape: FormulaShape) -> Formula {
        if shape == FormulaShape::DownwardClosed && self.rng.gen_bool(0.3) {
            self.dep()
        } else {
            self.literal()
        }
    }

    fn formula(&mut self, shape: FormulaShape, depth: usize) -> Formula {
        use FormulaShape::*;
        if depth == 0 || self.rng.gen_bool(0.25) {
            return self.atom(shape);
        }
        let d = depth - 1;
        let choices: &[u8] = match shape {
            Classical => &[0, 1],
            Observational => &[0, 1, 3, 4],
            Flat => &[0, 1, 3, 4, 5],
            DownwardClosed => &[0, 1, 2, 3, 4, 5],
        };
        match *choices.choose(self.rng).expect("nonempty") {
            1 if self.ors > 0 => {
                self.ors -= 1;
                let a = self.formula(shape, d);
                let b = self.formula(shape, d);
                Formula::or(a, b)
            }
            2 => {
                let a = self.formula(shape, d);
                let b = self.formula(shape, d);
                Formula::int_or(a, b)
            }
            3 => {
                let theta = self.classical(1);
                let chi = self.formula(shape, d);
                Formula::select(theta, chi)
            }
            4 => {
                let bs = self.binding();
                let chi = self.formula(shape, d);
                Formula::cf(bs, chi)
            }
            5 => {
                let inner = self.formula(Flat, d);
                Formula::dual_neg(inner)
            }
            _ => {
                let a = self.formula(shape, d);
                let b = self.formula(shape, d);
                Formula::and(a, b)
            }
        }
    }
}

// ------------------------------------------------------------ definability

fn units(team: &CausalTeam, phi: &Formula) -> Result<i64> {
    let m = team.as_multiteam();
    if m.is_empty() {
        return Ok(0);
    }
    let p = probability_of(&m, phi)?;
    Ok((p * Probability::from_integer(m.cardinality() as i64)).to_integer())
}

fn given_pr(given: &Formula, target: &Formula, rel: Rel, c: Probability) -> Formula {
    Formula::select(given.clone(), Formula::pr(target.clone(), rel, c))
}

/// `Pr(target | given) rel Pr(theta)` for `rel` in {<=, >=}, as a
/// `||`-disjunction over multiples of `1/card(T)`.
pub fn conditional_comparison(
    team: &CausalTeam,
    target: &Formula,
    given: &Formula,
    rel: Rel,
    theta: &Formula,
) -> Result<Formula> {
    if !matches!(rel, Rel::Le | Rel::Ge) {
        return Err(Error::NotSupportedShape(format!("comparison {rel:?}")));
    }
    let n = team.cardinality().max(1) as i64;
    let disjuncts = (0..=n)
        .map(|m| {
            let c = Probability::new(m, n);
            Formula::and(given_pr(given, target, rel, c), Formula::pr(theta.clone(), rel.flip().flip_strict(), c))
        })
        .collect();
    Ok(Formula::int_or_all(disjuncts).expect("at least one disjunct"))
}

/// `Pr(first | given_first) = Pr(second | given_second)` as a disjunction
/// over a grid fine enough for both conditionals.
pub fn equal_conditionals(
    team: &CausalTeam,
    first: &Formula,
    given_first: &Formula,
    second: &Formula,
    given_second: &Formula,
) -> Result<Formula> {
    let a = units(team, given_first)?.max(1);
    let b = units(team, given_second)?.max(1);
    let grid = a.lcm(&b);
    let disjuncts = (0..=grid)
        .map(|m| {
            let c = Probability::new(m, grid);
            Formula::and_all([
                given_pr(given_first, first, Rel::Le, c),
                given_pr(given_first, first, Rel::Ge, c),
                given_pr(given_second, second, Rel::Le, c),
                given_pr(given_second, second, Rel::Ge, c),
            ])
            .expect("four conjuncts")
        })
        .collect();
    Ok(Formula::int_or_all(disjuncts).expect("at least one disjunct"))
}

fn is_zero(given: Option<&Formula>, target: &Formula) -> Formula {
    match given {
        Some(g) => given_pr(g, target, Rel::Le, Probability::zero()),
        None => Formula::pr(target.clone(), Rel::Le, Probability::zero()),
    }
}

/// `first ⫫ second` (conditional on `given` when present), encoded with
/// `||`, `=>` and probability atoms. A null condition makes it true.
pub fn independence_encoding(
    team: &CausalTeam,
    first: &Formula,
    second: &Formula,
    given: Option<&Formula>,
) -> Result<Formula> {
    let mut parts = Vec::new();
    if let Some(g) = given {
        parts.push(is_zero(None, g));
    }
    parts.push(is_zero(given, first));
    parts.push(is_zero(given, second));
    match given {
        Some(g) => {
            let both = Formula::and(first.clone(), g.clone());
            parts.push(equal_conditionals(team, second, &both, second, g)?);
        }
        None => parts.push(Formula::and(
            conditional_comparison(team, second, first, Rel::Le, second)?,
            conditional_comparison(team, second, first, Rel::Ge, second)?,
        )),
    }
    Ok(Formula::int_or_all(parts).expect("nonempty"))
}

/// `⋀_{x,y} Y=y ⫫_{X=x} Y=y`, which defines `dep(X;Y)` on the given team.
pub fn dependence_encoding(team: &CausalTeam, xs: &[&str], y: &str) -> Result<Formula> {
    let xi = xs.iter().map(|x| team.var_index(x)).collect::<Result<Vec<_>>>()?;
    let yi = team.var_index(y)?;
    let mut conjuncts = Vec::new();
    for tuple in atom_tuples(team, &xi) {
        let cond = Formula::and_all(
            xi.iter()
                .zip(&tuple)
                .map(|(&v, a)| Formula::Eq(team.name(v).to_string(), a.clone())),
        );
        for b in team.range(yi) {
            let target = Formula::Eq(y.to_string(), b.clone());
            let atom = match &cond {
                Some(c) => independence_encoding(team, &target, &target, Some(c))?,
                None => independence_encoding(team, &target, &target, None)?,
            };
            conjuncts.push(atom);
        }
    }
    Ok(Formula::and_all(conjuncts).expect("ranges are nonempty"))
}

fn atom_tuples(team: &CausalTeam, vars: &[usize]) -> Vec<Vec<Atom>> {
    let mut out = vec![Vec::new()];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Atom>| {
                team.range(v).iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
    }
    out
}

trait FlipStrict {
    fn flip_strict(self) -> Rel;
}

impl FlipStrict for Rel {
    /// `<` to `<=` and `>` to `>=`; after `flip` this turns `<=` into `>=`.
    fn flip_strict(self) -> Rel {
        match self {
            Rel::Lt => Rel::Le,
            Rel::Gt => Rel::Ge,
            r => r,
        }
    }
}

// ------------------------------------------------------------------ harness

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawKind {
    Universal,
    Counterexample,
}

/// Registry entry.
#[derive(Debug, Clone, Copy)]
pub struct LawInfo {
    pub id: &'static str,
    pub kind: LawKind,
    pub statement: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawOutcome {
    Holds,
    /// A violated instance: the shrunk team as JSON plus the formulas and
    /// the failed check.
    Fails { team: String, detail: String },
    CounterexampleConfirmed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub trials: usize,
    /// Trials whose premises held, so the conclusion was actually tested.
    pub nonvacuous: usize,
    pub outcome: LawOutcome,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, LawOutcome::Fails { .. })
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            LawOutcome::Holds => write!(
                f,
                "PASS {} holds trials={} nonvacuous={}",
                self.law, self.trials, self.nonvacuous
            ),
            LawOutcome::CounterexampleConfirmed => write!(f, "PASS {} counterexample-confirmed", self.law),
            LawOutcome::Fails { team, detail } => {
                write!(f, "FAIL {} trials={}\n  {}\n  team: {}", self.law, self.trials, detail, team)
            }
        }
    }
}

/// Result of checking one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    Vacuous,
    Holds,
    Violated(String),
}

type Bindings = Vec<(String, Atom)>;

type ProbeFn = Box<dyn Fn(&CausalTeam) -> Result<Probe>>;

/// A random instance: the team, the sampled formulas, and a replayable check.
struct Instance {
    team: CausalTeam,
    detail: String,
    probe: ProbeFn,
}

impl Instance {
    fn new(team: CausalTeam, detail: String, probe: impl Fn(&CausalTeam) -> Result<Probe> + 'static) -> Self {
        Instance {
            team,
            detail,
            probe: Box::new(probe),
        }
    }
}

type Trial = fn(&mut ChaCha8Rng, &GeneratorConfig) -> Result<Instance>;

/// One claimed verdict on a fixed team.
struct Claim {
    what: String,
    team: CausalTeam,
    expected: bool,
    actual: bool,
}

enum Body {
    Universal { tune: fn(&mut GeneratorConfig), trial: Trial },
    Counterexample(fn() -> Result<Vec<Claim>>),
}

struct Law {
    info: LawInfo,
    body: Body,
}

fn universal(id: &'static str, statement: &'static str, tune: fn(&mut GeneratorConfig), trial: Trial) -> Law {
    Law {
        info: LawInfo {
            id,
            kind: LawKind::Universal,
            statement,
        },
        body: Body::Universal { tune, trial },
    }
}

fn counterexample(id: &'static str, statement: &'static str, claims: fn() -> Result<Vec<Claim>>) -> Law {
    Law {
        info: LawInfo {
            id,
            kind: LawKind::Counterexample,
            statement,
        },
        body: Body::Counterexample(claims),
    }
}

fn laws() -> Vec<Law> {
    vec![
        universal("DOWNWARD", "T |= phi and S ⊆ T imply S |= phi, for phi downward closed", small_rows, downward),
        universal("EMPTY", "the empty team satisfies every downward-closed formula", parametric, empty),
        universal("FLAT", "T |= phi iff {s} |= phi for every s in T, for phi in CO_neg", flat_rows, flat),
        universal("WEM", "|= phi | ¬phi for phi in CO_neg", flat_rows, wem),
        counterexample("SEM-FAIL", "{X:1},{X:2} satisfies neither X=1 nor X!=1", sem_fail),
        universal("CEM-HOLDS", "|= X=x []-> (phi | ¬phi) for phi in CO_neg", flat_rows, cem_holds),
        counterexample("CEM'-FAIL", "T |= theta []-> chi or T |= theta []-> ¬chi fails on two fixed teams", cem_prime_fail),
        universal("D", "psi []-> (chi | chi') implies (psi []-> chi) | (psi []-> chi')", small_rows, distribution),
        universal("IMP/EXP", "T_{X=x & Y=y} = (T_{X=x})_{Y=y} for disjoint X, Y", parametric, imp_exp),
        universal("PERM", "(T_{X=x})_{Y=y} = (T_{Y=y})_{X=x} for disjoint X, Y", keep, perm),
        universal("FULLIMPEXP", "T_{X=x & Y=y} = (T_{X=x})_{Y=y} when shared variables get equal values", keep, full_imp_exp),
        universal("FULLPERM", "(T_{X=x})_{Y=y} = (T_{Y=y})_{X=x} when shared variables get equal values", keep, full_perm),
        universal("REP", "(T_{X=x})_{X=x} = T_{X=x}", keep, rep),
        universal("REWRITE", "(T_{X=x})_{X=x'} = T_{X=x'}", keep, rewrite),
        universal("EFF", "|= (X=x & W=w) []-> X=x", keep, eff),
        universal("DEC", "|= |_{x in Ran(X)} (Y=y []-> X=x) on parametric teams", parametric, dec),
        universal("UNI", "Y=y []-> X=x implies Y=y []-> X!=x' for x' != x", parametric, uni),
        universal("CE", "X []-> W=w and (X & W=w) []-> Y=y imply X []-> Y=y", parametric, ce),
        universal("CI", "X []-> W=w and X []-> Y=y imply (X & W=w) []-> Y=y", parametric, ci),
        universal(
            "OR/AND/NEG-IN-OUT",
            "X []-> (a | b) ≡ (X []-> a) | (X []-> b); likewise for &; X []-> ¬a ≡ ¬(X []-> a)",
            small_rows,
            connective_in_out,
        ),
        universal(
            "INTSPLIT",
            "every cover U', V' of T_{X=x} lifts to a cover U, V of T with U_{X=x} = U', V_{X=x} = V'",
            set_teams,
            int_split,
        ),
        universal("CF-IN-OUT", "X=x []-> (Y=y []-> psi) ≡ (X'=x' & Y=y) []-> psi with X' = X minus Y", parametric, cf_in_out),
        universal("SEL-E/I", "theta => chi ≡ ¬theta | chi for downward-closed chi", small_rows, sel_e_i),
        universal("SEL-IN-OUT", "X []-> (psi => chi) ≡ (X []-> psi) => (X []-> chi)", parametric, sel_in_out),
        universal("MP-OR", "theta and ¬theta | chi imply chi, for flat theta, chi", flat_rows, mp_or),
        universal("REC", "the contributing-cause relation is acyclic", rec_limits, rec),
        universal(
            "SELIMP-RULES",
            "theta => chi implies (theta & psi) => chi and theta => (chi | psi); theta => (chi => psi) ≡ (theta & chi) => psi",
            small_rows,
            selimp_rules,
        ),
        universal(
            "DEPRULES",
            "dep(X;Y) implies X=x => dep(;Y); &_x ||_y (X=x => Y=y) and &_x ||_y (X=x []-> Y=y) imply dep(X;Y)",
            dep_limits,
            dep_rules,
        ),
        counterexample(
            "NONCOMM",
            "[]-> and => do not commute, in either direction",
            noncommutativity,
        ),
        counterexample(
            "CF-VS-SEL",
            "Y=0 []-> chi does not imply Y=0 => chi when the intervention only changes the graph",
            cf_vs_sel,
        ),
        counterexample(
            "INDEP-SEL",
            "¬theta | chi does not imply theta => chi for the independence atom",
            indep_sel,
        ),
        universal("DEDUCTION", "(all S ⊆ T: S |= theta ⇒ S |= chi) iff all S ⊆ T: S |= theta => chi", tiny_rows, deduction),
        universal("PROBSPACE", "normalization, complement and additivity of Pr on CO events", multiteams, probspace),
        universal("COMPLEMENT", "{s} |= psi^c iff {s} ⊭ psi; (psi^c)^c = psi without =>", parametric, complement_law),
        universal("CONDSEL", "T |= chi1 => Pr(chi2) rel e iff Pr(chi2 | chi1) rel e", multiteams, cond_sel),
        universal(
            "INTOBS",
            "T |= U=u => (X=x []-> Pr(Y=y)=e) iff Pr(X=x []-> Y=y | U=u) = e",
            parametric_multiteams,
            int_obs,
        ),
        universal("CONDDEF", "conditional comparisons and independence are definable with ||", multiteams, cond_def),
        universal("CONSERV", "the exogenous distribution pushed through the equations gives Pr", conserv_limits, conserv),
        universal("DEPDEF", "dep(X;Y) ≡ &_{x,y} Y=y ⫫_{X=x} Y=y", depdef_limits, dep_def),
        universal("MA-MC", "the Markov Axiom Scheme implies the Markov Condition", markov_limits, ma_mc),
        universal(
            "MARKOV-PRODUCT",
            "the Markov Axiom Scheme implies the product formula and its truncated form",
            markov_limits,
            markov_product_law,
        ),
    ]
}

/// Every registered law, in registry order.
pub fn registry() -> Vec<LawInfo> {
    laws().into_iter().map(|l| l.info).collect()
}

fn canonical_id(id: &str) -> String {
    match id.trim().to_ascii_uppercase().as_str() {
        "MP∨" | "MP_OR" | "MPOR" => "MP-OR".into(),
        "MA⇒MC" | "MA=>MC" => "MA-MC".into(),
        "CEM-FAIL'" | "CEM′-FAIL" => "CEM'-FAIL".into(),
        other => other.to_string(),
    }
}

/// Runs one law. Universal laws get `trials` random instances.
pub fn check_law(id: &str, cfg: &GeneratorConfig, trials: usize) -> Result<LawReport> {
    let wanted = canonical_id(id);
    let law = laws()
        .into_iter()
        .find(|l| l.info.id == wanted)
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))?;
    run_law(&law, cfg, trials)
}

/// Runs every registered law.
pub fn check_all(cfg: &GeneratorConfig, trials: usize) -> Result<Vec<LawReport>> {
    laws().iter().map(|l| run_law(l, cfg, trials)).collect()
}

fn law_seed(seed: u64, id: &str) -> u64 {
    let mut h = DefaultHasher::new();
    id.hash(&mut h);
    seed ^ h.finish()
}

fn run_law(law: &Law, cfg: &GeneratorConfig, trials: usize) -> Result<LawReport> {
    cfg.validate()?;
    let id = law.info.id;
    match &law.body {
        Body::Counterexample(claims) => {
            let claims = claims()?;
            let wrong: Vec<&Claim> = claims.iter().filter(|c| c.expected != c.actual).collect();
            let outcome = match wrong.first() {
                None => LawOutcome::CounterexampleConfirmed,
                Some(c) => LawOutcome::Fails {
                    team: c.team.to_json(),
                    detail: wrong
                        .iter()
                        .map(|c| format!("{}: expected {}, evaluated {}", c.what, verdict(c.expected), verdict(c.actual)))
                        .collect::<Vec<_>>()
                        .join("; "),
                },
            };
            Ok(LawReport {
                law: id.into(),
                trials: claims.len(),
                nonvacuous: claims.len(),
                outcome,
            })
        }
        Body::Universal { tune, trial } => {
            let mut c = cfg.clone();
            tune(&mut c);
            c.validate()?;
            let mut rng = ChaCha8Rng::seed_from_u64(law_seed(cfg.seed, id));
            let mut nonvacuous = 0;
            for k in 0..trials {
                let inst = trial(&mut rng, &c)?;
                match (inst.probe)(&inst.team)? {
                    Probe::Vacuous => {}
                    Probe::Holds => nonvacuous += 1,
                    Probe::Violated(first) => {
                        let small = shrink(&inst.team, &inst.probe);
                        let why = match (inst.probe)(&small)? {
                            Probe::Violated(w) => w,
                            _ => first,
                        };
                        return Ok(LawReport {
                            law: id.into(),
                            trials: k + 1,
                            nonvacuous,
                            outcome: LawOutcome::Fails {
                                team: small.to_json(),
                                detail: format!("{}; {}", inst.detail, why),
                            },
                        });
                    }
                }
            }
            Ok(LawReport {
                law: id.into(),
                trials,
                nonvacuous,
                outcome: LawOutcome::Holds,
            })
        }
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "SAT"
    } else {
        "UNSAT"
    }
}

/// Greedy row removal while the instance stays violated.
fn shrink(team: &CausalTeam, probe: &ProbeFn) -> CausalTeam {
    let mut cur = team.clone();
    'outer: loop {
        for i in 0..cur.rows().len() {
            let cand = cur.subteam_by_index(|j| j != i);
            if matches!(probe(&cand), Ok(Probe::Violated(_))) {
                cur = cand;
                continue 'outer;
            }
        }
        return cur;
    }
}

// ------------------------------------------------------------ config tuning

fn keep(_: &mut GeneratorConfig) {}

fn small_rows(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.cap_rows(8);
}

fn flat_rows(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.cap_rows(6);
}

fn tiny_rows(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.cap_rows(6);
    c.cap_vars(3);
}

fn parametric(c: &mut GeneratorConfig) {
    c.parametric = true;
}

fn set_teams(c: &mut GeneratorConfig) {
    c.multiteam = false;
}

fn multiteams(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.multiteam = true;
}

fn parametric_multiteams(c: &mut GeneratorConfig) {
    c.multiteam = true;
    c.parametric = true;
}

fn rec_limits(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.cap_vars(4);
    c.cap_range(3);
    c.cap_rows(4);
}

fn dep_limits(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.cap_vars(4);
    c.cap_range(3);
    c.cap_rows(6);
}

fn conserv_limits(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.multiteam = true;
    c.cap_vars(5);
}

fn depdef_limits(c: &mut GeneratorConfig) {
    c.multiteam = true;
    c.cap_vars(4);
    c.cap_range(3);
}

fn markov_limits(c: &mut GeneratorConfig) {
    c.parametric = true;
    c.multiteam = true;
    c.cap_vars(4);
    c.cap_range(3);
}

// ------------------------------------------------------------------ helpers

fn exhaustive() -> EvalOptions {
    EvalOptions {
        exhaustive: true,
        ..EvalOptions::default()
    }
}

fn spec(bs: &[(String, Atom)]) -> InterventionSpec {
    InterventionSpec::new(bs.to_vec())
}

fn show_bindings(bs: &[(String, Atom)]) -> String {
    bs.iter().map(|(v, a)| format!("{v}={a}")).collect::<Vec<_>>().join(" & ")
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Probe {
    if ok {
        Probe::Holds
    } else {
        Probe::Violated(what())
    }
}

/// Premises all hold ⇒ conclusion holds.
fn entails(t: &CausalTeam, premises: &[Formula], conclusion: &Formula) -> Result<Probe> {
    for p in premises {
        if !holds(t, p)? {
            return Ok(Probe::Vacuous);
        }
    }
    Ok(check(holds(t, conclusion)?, || format!("premises hold but {conclusion} fails")))
}

/// Both sides agree; vacuous when both fail.
fn equivalent(t: &CausalTeam, a: &Formula, b: &Formula, opts: &EvalOptions) -> Result<Probe> {
    let (x, y) = (holds_with(t, a, opts)?, holds_with(t, b, opts)?);
    if x != y {
        return Ok(Probe::Violated(format!("{a} is {} but {b} is {}", verdict(x), verdict(y))));
    }
    Ok(if x { Probe::Holds } else { Probe::Vacuous })
}

/// Runs the checks in order; the first violation wins, and the result is
/// vacuous only when every check is.
fn all_of(probes: Vec<Probe>) -> Probe {
    let mut any = false;
    for p in probes {
        match p {
            Probe::Violated(_) => return p,
            Probe::Holds => any = true,
            Probe::Vacuous => {}
        }
    }
    if any {
        Probe::Holds
    } else {
        Probe::Vacuous
    }
}

fn same_team(a: &CausalTeam, b: &CausalTeam, label: &str) -> Probe {
    check(a == b, || {
        let cols: Vec<&str> = a.names().iter().map(String::as_str).collect();
        format!(
            "{label}: teams differ\n{}vs\n{}",
            a.render_table(&cols).unwrap_or_default(),
            b.render_table(&cols).unwrap_or_default()
        )
    })
}

fn intervene(t: &CausalTeam, bs: &[(String, Atom)]) -> Result<CausalTeam> {
    do_intervention(t, &spec(bs))
}

fn union(a: &[(String, Atom)], b: &[(String, Atom)]) -> Vec<(String, Atom)> {
    spec(a).and(&spec(b)).normalized()
}

/// Disjoint binding sets of one or two variables each, when possible.
fn disjoint_bindings(g: &mut Gen) -> (Bindings, Bindings) {
    let mut all: Vec<usize> = (0..g.names.len()).collect();
    all.shuffle(g.rng);
    let kx = g.rng.gen_range(1..=(all.len() / 2).clamp(1, 2));
    let ky = g.rng.gen_range(1..=(all.len() - kx).clamp(1, 2));
    let xs = all[..kx].to_vec();
    let ys = all[kx..kx + ky].to_vec();
    (g.binding_on(&xs), g.binding_on(&ys))
}

/// Overlapping binding sets whose shared variables receive equal values.
fn agreeing_bindings(g: &mut Gen) -> (Bindings, Bindings) {
    let mut all: Vec<usize> = (0..g.names.len()).collect();
    all.shuffle(g.rng);
    let shared = g.binding_on(&all[..1]);
    let rest = &all[1..];
    let mut x = shared.clone();
    let mut y = shared;
    for &v in rest {
        match g.rng.gen_range(0..3) {
            0 => x.push((g.names[v].clone(), g.value(v))),
            1 => y.push((g.names[v].clone(), g.value(v))),
            _ => {}
        }
    }
    (x, y)
}

/// The value of `var` in the first row of `t`, if proper.
fn first_value(t: &CausalTeam, var: usize) -> Option<Atom> {
    t.rows().first().and_then(|r| r.values[var].as_proper().cloned())
}

fn subteam_masks(n: usize) -> Vec<u64> {
    if n <= 6 {
        return (0..1u64 << n).collect();
    }
    let full = (1u64 << n) - 1;
    let mut out: Vec<u64> = (0..n).map(|i| full & !(1 << i)).collect();
    out.extend([0, full & 0x5555, full & 0xAAAA, full & 0x3333, full & 0xCCCC, full & 0x0F0F]);
    out
}

// -------------------------------------------------------------- team laws

fn downward(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let phi = Gen::new(rng, &t, 1).formula(FormulaShape::DownwardClosed, 4);
    Ok(Instance::new(t, format!("phi: {phi}"), move |t| {
        if !holds(t, &phi)? {
            return Ok(Probe::Vacuous);
        }
        for mask in subteam_masks(t.rows().len()) {
            let s = t.subteam_by_index(|i| mask >> i & 1 == 1);
            if !holds(&s, &phi)? {
                return Ok(Probe::Violated(format!("subteam with row mask {mask:b} fails")));
            }
        }
        Ok(Probe::Holds)
    }))
}

fn empty(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let phi = Gen::new(rng, &t, 2).formula(FormulaShape::DownwardClosed, 4);
    Ok(Instance::new(t, format!("phi: {phi}"), move |t| {
        Ok(check(holds(&t.empty_subteam(), &phi)?, || "empty team fails".into()))
    }))
}

fn flat(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let phi = Gen::new(rng, &t, 2).formula(FormulaShape::Flat, 4);
    Ok(Instance::new(t, format!("phi: {phi}"), move |t| {
        let whole = holds_with(t, &phi, &exhaustive())?;
        let mut rows = true;
        for i in 0..t.rows().len() {
            rows &= holds(&t.singleton(i), &phi)?;
        }
        Ok(check(whole == rows, || {
            format!("team verdict {} but singleton verdicts give {}", verdict(whole), verdict(rows))
        }))
    }))
}

fn wem(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let phi = Gen::new(rng, &t, 2).formula(FormulaShape::Flat, 4);
    let lem = Formula::or(phi.clone(), Formula::dual_neg(phi));
    Ok(Instance::new(t, format!("formula: {lem}"), move |t| {
        Ok(check(holds_with(t, &lem, &exhaustive())?, || "excluded middle fails".into()))
    }))
}

fn cem_holds(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 2);
    let bs = g.binding();
    let phi = g.formula(FormulaShape::Flat, 3);
    let cem = Formula::cf(bs, Formula::or(phi.clone(), Formula::dual_neg(phi)));
    Ok(Instance::new(t, format!("formula: {cem}"), move |t| {
        Ok(check(holds_with(t, &cem, &exhaustive())?, || "conditional excluded middle fails".into()))
    }))
}

fn distribution(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let bs = g.binding();
    let chi = g.formula(FormulaShape::DownwardClosed, 3);
    let chi2 = g.formula(FormulaShape::DownwardClosed, 3);
    let premise = Formula::cf(bs.clone(), Formula::or(chi.clone(), chi2.clone()));
    let conclusion = Formula::or(Formula::cf(bs.clone(), chi), Formula::cf(bs, chi2));
    Ok(Instance::new(t, format!("premise: {premise}"), move |t| {
        entails(t, std::slice::from_ref(&premise), &conclusion)
    }))
}

fn imp_exp(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let (x, y) = disjoint_bindings(&mut g);
    let chi = g.formula(FormulaShape::Observational, 3);
    let detail = format!("X: {}; Y: {}; chi: {chi}", show_bindings(&x), show_bindings(&y));
    Ok(Instance::new(t, detail, move |t| {
        let nested = intervene(&intervene(t, &x)?, &y)?;
        let joint = intervene(t, &union(&x, &y))?;
        let lhs = Formula::cf(union(&x, &y), chi.clone());
        let rhs = Formula::cf(x.clone(), Formula::cf(y.clone(), chi.clone()));
        Ok(all_of(vec![
            same_team(&joint, &nested, "T_{X&Y} vs (T_X)_Y"),
            equivalent(t, &lhs, &rhs, &EvalOptions::default())?,
        ]))
    }))
}

fn perm(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let (x, y) = disjoint_bindings(&mut Gen::new(rng, &t, 0));
    let detail = format!("X: {}; Y: {}", show_bindings(&x), show_bindings(&y));
    Ok(Instance::new(t, detail, move |t| {
        let xy = intervene(&intervene(t, &x)?, &y)?;
        let yx = intervene(&intervene(t, &y)?, &x)?;
        Ok(same_team(&xy, &yx, "(T_X)_Y vs (T_Y)_X"))
    }))
}

fn full_imp_exp(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let (x, y) = agreeing_bindings(&mut Gen::new(rng, &t, 0));
    let detail = format!("X: {}; Y: {}", show_bindings(&x), show_bindings(&y));
    Ok(Instance::new(t, detail, move |t| {
        let nested = intervene(&intervene(t, &x)?, &y)?;
        let joint = intervene(t, &union(&x, &y))?;
        Ok(same_team(&joint, &nested, "T_{X&Y} vs (T_X)_Y"))
    }))
}

fn full_perm(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let (x, y) = agreeing_bindings(&mut Gen::new(rng, &t, 0));
    let detail = format!("X: {}; Y: {}", show_bindings(&x), show_bindings(&y));
    Ok(Instance::new(t, detail, move |t| {
        let xy = intervene(&intervene(t, &x)?, &y)?;
        let yx = intervene(&intervene(t, &y)?, &x)?;
        Ok(same_team(&xy, &yx, "(T_X)_Y vs (T_Y)_X"))
    }))
}

fn rep(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let x = Gen::new(rng, &t, 0).binding();
    let detail = format!("X: {}", show_bindings(&x));
    Ok(Instance::new(t, detail, move |t| {
        let once = intervene(t, &x)?;
        let twice = intervene(&once, &x)?;
        Ok(same_team(&twice, &once, "(T_X)_X vs T_X"))
    }))
}

fn rewrite(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let vs = g.vars(1, 2);
    let x = g.binding_on(&vs);
    let x2 = g.binding_on(&vs);
    let detail = format!("X=x: {}; X=x': {}", show_bindings(&x), show_bindings(&x2));
    Ok(Instance::new(t, detail, move |t| {
        let over = intervene(&intervene(t, &x)?, &x2)?;
        let direct = intervene(t, &x2)?;
        Ok(same_team(&over, &direct, "(T_{X=x})_{X=x'} vs T_{X=x'}"))
    }))
}

fn eff(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let vs = g.vars(1, 3);
    let bs = g.binding_on(&vs);
    let (xv, xa) = bs[g.rng.gen_range(0..bs.len())].clone();
    let phi = Formula::cf(bs, Formula::Eq(xv, xa));
    Ok(Instance::new(t, format!("formula: {phi}"), move |t| {
        Ok(check(holds(t, &phi)?, || "effectiveness fails".into()))
    }))
}

fn dec(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let ys = g.binding();
    let x = g.var();
    let disjuncts = t
        .range(x)
        .iter()
        .map(|a| Formula::cf(ys.clone(), Formula::Eq(t.name(x).to_string(), a.clone())))
        .collect();
    let phi = Formula::or_all(disjuncts).expect("nonempty range");
    Ok(Instance::new(t, format!("formula: {phi}"), move |t| {
        Ok(check(holds(t, &phi)?, || "definiteness fails".into()))
    }))
}

fn uni(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let ys = g.binding();
    let x = g.var();
    let after = intervene(&t, &ys)?;
    let xa = first_value(&after, x).unwrap_or_else(|| g.value(x));
    let name = t.name(x).to_string();
    let premise = Formula::cf(ys.clone(), Formula::Eq(name.clone(), xa.clone()));
    let conclusions: Vec<Formula> = t
        .range(x)
        .iter()
        .filter(|b| **b != xa)
        .map(|b| Formula::cf(ys.clone(), Formula::Neq(name.clone(), b.clone())))
        .collect();
    Ok(Instance::new(t, format!("premise: {premise}"), move |t| {
        let mut probes = Vec::new();
        for c in &conclusions {
            probes.push(entails(t, std::slice::from_ref(&premise), c)?);
        }
        Ok(all_of(probes))
    }))
}

/// X binding, a variable W outside it with the value W takes in the first
/// row of `T_X`, and a variable Y with its value after `extra`.
fn effect_setup(g: &mut Gen, t: &CausalTeam) -> Result<Option<(Bindings, (String, Atom))>> {
    let x = g.binding();
    let outside: Vec<usize> = (0..t.len_vars()).filter(|v| !x.iter().any(|(n, _)| n == t.name(*v))).collect();
    let Some(&w) = outside.choose(g.rng) else { return Ok(None) };
    let after = intervene(t, &x)?;
    let wa = first_value(&after, w).unwrap_or_else(|| g.value(w));
    Ok(Some((x, (t.name(w).to_string(), wa))))
}

fn ce(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let Some((x, w)) = effect_setup(&mut g, &t)? else {
        return Ok(Instance::new(t, "no variable outside X".into(), |_| Ok(Probe::Vacuous)));
    };
    let y = g.var();
    let xw = union(&x, std::slice::from_ref(&w));
    let ya = first_value(&intervene(&t, &xw)?, y).unwrap_or_else(|| g.value(y));
    let yf = Formula::Eq(t.name(y).to_string(), ya);
    let premises = vec![
        Formula::cf(x.clone(), Formula::Eq(w.0.clone(), w.1.clone())),
        Formula::cf(xw, yf.clone()),
    ];
    let conclusion = Formula::cf(x, yf);
    let detail = format!("premises: {}, {}", premises[0], premises[1]);
    Ok(Instance::new(t, detail, move |t| entails(t, &premises, &conclusion)))
}

fn ci(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let Some((x, w)) = effect_setup(&mut g, &t)? else {
        return Ok(Instance::new(t, "no variable outside X".into(), |_| Ok(Probe::Vacuous)));
    };
    let y = g.var();
    let ya = first_value(&intervene(&t, &x)?, y).unwrap_or_else(|| g.value(y));
    let yf = Formula::Eq(t.name(y).to_string(), ya);
    let premises = vec![
        Formula::cf(x.clone(), Formula::Eq(w.0.clone(), w.1.clone())),
        Formula::cf(x.clone(), yf.clone()),
    ];
    let conclusion = Formula::cf(union(&x, std::slice::from_ref(&w)), yf);
    let detail = format!("premises: {}, {}", premises[0], premises[1]);
    Ok(Instance::new(t, detail, move |t| entails(t, &premises, &conclusion)))
}

fn connective_in_out(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let x = g.binding();
    let a = g.formula(FormulaShape::DownwardClosed, 3);
    let b = g.formula(FormulaShape::DownwardClosed, 3);
    let c = g.formula(FormulaShape::Flat, 3);
    let cf = |phi: Formula| Formula::cf(x.clone(), phi);
    let pairs = vec![
        (cf(Formula::or(a.clone(), b.clone())), Formula::or(cf(a.clone()), cf(b.clone()))),
        (cf(Formula::and(a.clone(), b.clone())), Formula::and(cf(a), cf(b))),
        (cf(Formula::dual_neg(c.clone())), Formula::dual_neg(cf(c))),
    ];
    let detail = pairs.iter().map(|(l, r)| format!("{l} ≡ {r}")).collect::<Vec<_>>().join("; ");
    Ok(Instance::new(t, detail, move |t| {
        let mut probes = Vec::new();
        for (l, r) in &pairs {
            probes.push(equivalent(t, l, r, &EvalOptions::default())?);
        }
        Ok(all_of(probes))
    }))
}

fn side(seed: u64, values: &[Value]) -> u64 {
    let mut h = DefaultHasher::new();
    seed.hash(&mut h);
    values.hash(&mut h);
    h.finish() % 3
}

fn int_split(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let x = Gen::new(rng, &t, 0).binding();
    let seed: u64 = rng.gen();
    let detail = format!("X: {}", show_bindings(&x));
    Ok(Instance::new(t, detail, move |t| {
        let t = t.explicit_closure();
        let images: Vec<Vec<Value>> = (0..t.rows().len())
            .map(|i| Ok(intervene(&t.singleton(i), &x)?.rows()[0].values.clone()))
            .collect::<Result<_>>()?;
        // cover of T_X: side 0 left, 1 right, 2 both
        let left = |v: &Vec<Value>| side(seed, v) != 1;
        let right = |v: &Vec<Value>| side(seed, v) != 0;
        let tx = intervene(&t, &x)?;
        let u_prime: BTreeSet<Vec<Value>> = tx.rows().iter().map(|r| r.values.clone()).filter(left).collect();
        let v_prime: BTreeSet<Vec<Value>> = tx.rows().iter().map(|r| r.values.clone()).filter(right).collect();
        let u = t.subteam_by_index(|i| u_prime.contains(&images[i]));
        let v = t.subteam_by_index(|i| v_prime.contains(&images[i]));
        let got = |s: &CausalTeam| -> Result<BTreeSet<Vec<Value>>> {
            Ok(intervene(s, &x)?.rows().iter().map(|r| r.values.clone()).collect())
        };
        let covered = (0..t.rows().len()).all(|i| u_prime.contains(&images[i]) || v_prime.contains(&images[i]));
        Ok(check(covered && got(&u)? == u_prime && got(&v)? == v_prime, || {
            "lifted cover does not intervene to the chosen cover".into()
        }))
    }))
}

fn cf_in_out(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let x = g.binding();
    let y = g.binding();
    let psi = g.formula(FormulaShape::Observational, 3);
    let x_rest: Vec<(String, Atom)> = x.iter().filter(|(v, _)| !y.iter().any(|(w, _)| w == v)).cloned().collect();
    let merged = union(&x_rest, &y);
    let lhs = Formula::cf(x.clone(), Formula::cf(y.clone(), psi.clone()));
    let rhs = Formula::cf(merged.clone(), psi);
    let detail = format!("{lhs} ≡ {rhs}");
    Ok(Instance::new(t, detail, move |t| {
        let nested = intervene(&intervene(t, &x)?, &y)?;
        let direct = intervene(t, &merged)?;
        Ok(all_of(vec![
            same_team(&nested, &direct, "(T_X)_Y vs T_{X'&Y}"),
            equivalent(t, &lhs, &rhs, &EvalOptions::default())?,
        ]))
    }))
}

fn sel_e_i(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let theta = g.classical(2);
    let chi = g.formula(FormulaShape::DownwardClosed, 3);
    let sel = Formula::select(theta.clone(), chi.clone());
    let dis = Formula::or(Formula::dual_neg(theta), chi);
    Ok(Instance::new(t, format!("{sel} ≡ {dis}"), move |t| {
        equivalent(t, &sel, &dis, &exhaustive())
    }))
}

fn sel_in_out(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let x = g.binding();
    let psi = g.classical(2);
    let chi = g.formula(FormulaShape::DownwardClosed, 3);
    let lhs = Formula::cf(x.clone(), Formula::select(psi.clone(), chi.clone()));
    let rhs = Formula::select(Formula::cf(x.clone(), psi), Formula::cf(x, chi));
    Ok(Instance::new(t, format!("{lhs} ≡ {rhs}"), move |t| {
        equivalent(t, &lhs, &rhs, &EvalOptions::default())
    }))
}

fn mp_or(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let mut theta = g.formula(FormulaShape::Flat, 3);
    for _ in 0..8 {
        if holds(&t, &theta)? {
            break;
        }
        theta = g.formula(FormulaShape::Flat, 3);
    }
    let chi = g.formula(FormulaShape::Flat, 3);
    let premises = vec![theta.clone(), Formula::or(Formula::dual_neg(theta), chi.clone())];
    let detail = format!("premises: {}, {}", premises[0], premises[1]);
    Ok(Instance::new(t, detail, move |t| {
        for p in &premises {
            if !holds_with(t, p, &exhaustive())? {
                return Ok(Probe::Vacuous);
            }
        }
        Ok(check(holds(t, &chi)?, || format!("{chi} fails")))
    }))
}

/// A directed cycle of the contributing-cause relation, if any.
pub fn contributing_cycle(team: &CausalTeam) -> Result<Option<Vec<String>>> {
    let n = team.len_vars();
    let mut adj = vec![Vec::new(); n];
    for (a, out) in adj.iter_mut().enumerate() {
        for b in 0..n {
            if a != b && contributing_cause(team, team.name(a), team.name(b))?.is_some() {
                out.push(b);
            }
        }
    }
    // colors: 0 unseen, 1 on stack, 2 done
    fn visit(v: usize, adj: &[Vec<usize>], color: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        color[v] = 1;
        stack.push(v);
        for &w in &adj[v] {
            if color[w] == 1 {
                let at = stack.iter().position(|&s| s == w).expect("on stack");
                return Some(stack[at..].to_vec());
            }
            if color[w] == 0 {
                if let Some(c) = visit(w, adj, color, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        color[v] = 2;
        None
    }
    let mut color = vec![0u8; n];
    for v in 0..n {
        if color[v] == 0 {
            if let Some(c) = visit(v, &adj, &mut color, &mut Vec::new()) {
                return Ok(Some(c.into_iter().map(|v| team.name(v).to_string()).collect()));
            }
        }
    }
    Ok(None)
}

fn rec(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    Ok(Instance::new(t, "contributing-cause relation".into(), |t| {
        Ok(match contributing_cycle(t)? {
            None => Probe::Holds,
            Some(c) => Probe::Violated(format!("cycle {}", c.join(" -> "))),
        })
    }))
}

fn selimp_rules(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let theta = g.classical(2);
    let extra = g.classical(1);
    let chi = g.formula(FormulaShape::DownwardClosed, 3);
    let psi = g.formula(FormulaShape::DownwardClosed, 2);
    let base = Formula::select(theta.clone(), chi.clone());
    let strengthened = Formula::select(Formula::and(theta.clone(), extra.clone()), chi.clone());
    let weakened = Formula::select(theta.clone(), Formula::or(chi.clone(), psi));
    let curried = Formula::select(theta.clone(), Formula::select(extra.clone(), chi.clone()));
    let uncurried = Formula::select(Formula::and(theta, extra), chi);
    let detail = format!("base: {base}; curried: {curried}");
    Ok(Instance::new(t, detail, move |t| {
        let premise = std::slice::from_ref(&base);
        Ok(all_of(vec![
            entails(t, premise, &strengthened)?,
            entails(t, premise, &weakened)?,
            equivalent(t, &curried, &uncurried, &EvalOptions::default())?,
        ]))
    }))
}

fn eq_tuple(team: &CausalTeam, vars: &[usize], tuple: &[Atom]) -> Vec<(String, Atom)> {
    vars.iter().zip(tuple).map(|(&v, a)| (team.name(v).to_string(), a.clone())).collect()
}

fn dep_rules(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let y = g.var();
    let xs: Vec<usize> = g.vars(1, 2).into_iter().filter(|&v| v != y).collect();
    let yname = t.name(y).to_string();
    let xnames: Vec<String> = xs.iter().map(|&v| t.name(v).to_string()).collect();
    let dep = Formula::Dep(xnames, yname.clone());
    let tuples = atom_tuples(&t, &xs);
    let mut constant_given = Vec::new();
    let mut selective = Vec::new();
    let mut counterfactual = Vec::new();
    for tuple in &tuples {
        let bs = eq_tuple(&t, &xs, tuple);
        let cond = Formula::and_all(bs.iter().map(|(v, a)| Formula::Eq(v.clone(), a.clone())));
        let ys = |wrap: &dyn Fn(Formula) -> Formula| {
            Formula::int_or_all(t.range(y).iter().map(|b| wrap(Formula::Eq(yname.clone(), b.clone()))).collect())
                .expect("nonempty range")
        };
        match cond {
            Some(c) => {
                constant_given.push(Formula::select(c.clone(), Formula::Dep(Vec::new(), yname.clone())));
                selective.push(ys(&|f| Formula::select(c.clone(), f)));
                counterfactual.push(ys(&|f| Formula::cf(bs.clone(), f)));
            }
            None => {
                constant_given.push(Formula::Dep(Vec::new(), yname.clone()));
                selective.push(ys(&|f| f));
                counterfactual.push(ys(&|f| f));
            }
        }
    }
    let sel = Formula::and_all(selective).expect("nonempty");
    let cfs = Formula::and_all(counterfactual).expect("nonempty");
    let detail = format!("dep: {dep}");
    Ok(Instance::new(t, detail, move |t| {
        let mut probes = Vec::new();
        for c in &constant_given {
            probes.push(entails(t, std::slice::from_ref(&dep), c)?);
        }
        probes.push(entails(t, std::slice::from_ref(&sel), &dep)?);
        probes.push(entails(t, std::slice::from_ref(&cfs), &dep)?);
        Ok(all_of(probes))
    }))
}

fn deduction(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let theta = g.classical(2);
    let chi = g.formula(FormulaShape::DownwardClosed, 3);
    let sel = Formula::select(theta.clone(), chi.clone());
    let detail = format!("theta: {theta}; chi: {chi}");
    Ok(Instance::new(t, detail, move |t| {
        let mut semantic = true;
        let mut internal = true;
        for mask in 0..1u64 << t.rows().len() {
            let s = t.subteam_by_index(|i| mask >> i & 1 == 1);
            if holds(&s, &theta)? && !holds(&s, &chi)? {
                semantic = false;
            }
            if !holds(&s, &sel)? {
                internal = false;
            }
        }
        Ok(check(semantic == internal, || {
            format!("consequence over subteams is {semantic} but validity of {sel} is {internal}")
        }))
    }))
}

// ------------------------------------------------------- probability laws

fn probspace(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 2);
    let a = g.formula(FormulaShape::Observational, 3);
    let b = g.formula(FormulaShape::Observational, 3);
    let ac = complement(&a)?;
    let disjoint = Formula::and(b, ac.clone());
    let detail = format!("psi1: {a}; psi2: {disjoint}");
    Ok(Instance::new(t, detail, move |t| {
        if t.is_empty() {
            return Ok(Probe::Vacuous);
        }
        let pa = probability_of(t, &a)?;
        let pc = probability_of(t, &ac)?;
        let pd = probability_of(t, &disjoint)?;
        let whole = probability_of(t, &Formula::or(a.clone(), ac.clone()))?;
        let sum = probability_of(t, &Formula::or(a.clone(), disjoint.clone()))?;
        Ok(if whole != Probability::one() {
            Probe::Violated(format!("Pr(psi | psi^c) = {whole}"))
        } else if pa + pc != Probability::one() {
            Probe::Violated(format!("Pr(psi) + Pr(psi^c) = {}", pa + pc))
        } else if sum != pa + pd {
            Probe::Violated(format!("Pr(psi1 | psi2) = {sum} but the sum is {}", pa + pd))
        } else {
            Probe::Holds
        })
    }))
}

fn implication_free(phi: &Formula) -> bool {
    match phi {
        Formula::Selective(..) => false,
        Formula::And(a, b) | Formula::TensorOr(a, b) => implication_free(a) && implication_free(b),
        Formula::Counterfactual(_, a) => implication_free(a),
        _ => true,
    }
}

fn complement_law(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let psi = Gen::new(rng, &t, 2).formula(FormulaShape::Observational, 4);
    let pc = complement(&psi)?;
    let detail = format!("psi: {psi}; psi^c: {pc}");
    Ok(Instance::new(t, detail, move |t| {
        let t = t.explicit_closure();
        for i in 0..t.rows().len() {
            if row_satisfies(&t, i, &psi)? == row_satisfies(&t, i, &pc)? {
                return Ok(Probe::Violated(format!("row {i} gives the same verdict to both")));
            }
        }
        if implication_free(&psi) && complement(&pc)? != psi {
            return Ok(Probe::Violated("complement is not an involution".into()));
        }
        Ok(Probe::Holds)
    }))
}

fn random_bound(rng: &mut ChaCha8Rng) -> Probability {
    let d = rng.gen_range(1..=6);
    Probability::new(rng.gen_range(0..=d), d)
}

fn cond_sel(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let given = g.classical(2);
    let target = g.formula(FormulaShape::Observational, 2);
    let other = g.formula(FormulaShape::Observational, 2);
    let rel = *[Rel::Le, Rel::Ge, Rel::Lt, Rel::Gt].choose(g.rng).expect("nonempty");
    let mut eps = random_bound(g.rng);
    if g.rng.gen_bool(0.5) {
        if let Ok(c) = conditional_probability(&t.as_multiteam(), &target, &given) {
            eps = c;
        }
    }
    let detail = format!("given: {given}; target: {target}; other: {other}; {rel:?} {eps}");
    Ok(Instance::new(t, detail, move |t| {
        let pg = if t.is_empty() {
            Probability::zero()
        } else {
            probability_of(t, &given)?
        };
        let sel = Formula::select(given.clone(), Formula::pr(target.clone(), rel, eps));
        let versus = Formula::select(
            given.clone(),
            Formula::ProbCmp {
                lhs: Box::new(target.clone()),
                rel,
                rhs: ProbRhs::Prob(Box::new(other.clone())),
            },
        );
        let (a, b) = (holds(t, &sel)?, holds(t, &versus)?);
        if pg.is_zero() {
            return Ok(check(!a && !b, || "null condition must falsify the atom".into()));
        }
        let ct = conditional_probability(t, &target, &given)?;
        let co = conditional_probability(t, &other, &given)?;
        Ok(all_of(vec![
            check(a == rel.holds(ct, eps), || format!("{sel} is {} but Pr = {ct}", verdict(a))),
            check(b == rel.holds(ct, co), || format!("{versus} is {} but {ct} vs {co}", verdict(b))),
        ]))
    }))
}

fn int_obs(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let u = g.var();
    let uf = g.eq(u);
    let x = g.vars(1, 1);
    let xb = g.binding_on(&x);
    let y = g.var();
    let yf = g.eq(y);
    let detail = format!("U: {uf}; X: {}; Y: {yf}", show_bindings(&xb));
    Ok(Instance::new(t, detail, move |t| {
        if t.is_empty() || probability_of(t, &uf)?.is_zero() {
            return Ok(Probe::Vacuous);
        }
        let eps = conditional_probability(t, &Formula::cf(xb.clone(), yf.clone()), &uf)?;
        let off = eps + Probability::new(1, t.cardinality() as i64 + 1);
        let stated = |e| Formula::select(uf.clone(), Formula::cf(xb.clone(), Formula::pr_eq(yf.clone(), e)));
        let after = intervene(t, &xb)?;
        let eps_after = if probability_of(&after, &uf)?.is_zero() {
            None
        } else {
            Some(conditional_probability(&after, &yf, &uf)?)
        };
        let mut probes = vec![
            check(holds(t, &stated(eps))?, || format!("{} fails", stated(eps))),
            check(!holds(t, &stated(off))?, || format!("{} holds", stated(off))),
        ];
        if let Some(e) = eps_after {
            let swapped = Formula::cf(xb.clone(), Formula::select(uf.clone(), Formula::pr_eq(yf.clone(), e)));
            probes.push(check(holds(t, &swapped)?, || format!("{swapped} fails")));
        }
        Ok(all_of(probes))
    }))
}

fn cond_def(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 1);
    let given = g.classical(1);
    let target = g.formula(FormulaShape::Observational, 2);
    let theta = g.formula(FormulaShape::Observational, 2);
    let detail = format!("given: {given}; target: {target}; theta: {theta}");
    Ok(Instance::new(t, detail, move |t| {
        if t.is_empty() {
            return Ok(Probe::Vacuous);
        }
        let indep = independence_encoding(t, &given, &target, None)?;
        let mut probes = vec![check(holds(t, &indep)? == prob_independent(t, &given, &target, None)?, || {
            "independence encoding disagrees".into()
        })];
        if !probability_of(t, &given)?.is_zero() {
            let c = conditional_probability(t, &target, &given)?;
            let pt = probability_of(t, &theta)?;
            for rel in [Rel::Le, Rel::Ge] {
                let enc = conditional_comparison(t, &target, &given, rel, &theta)?;
                let got = holds(t, &enc)?;
                probes.push(check(got == rel.holds(c, pt), || {
                    format!("encoding of Pr(target|given) {rel:?} Pr(theta) is {} for {c} vs {pt}", verdict(got))
                }));
            }
        }
        Ok(all_of(probes))
    }))
}

fn conserv(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    Ok(Instance::new(t, "joint distributions".into(), |t| {
        if t.is_empty() {
            return Ok(Probe::Vacuous);
        }
        let pushed = joint_from_exogenous(t)?;
        if pushed != joint_distribution(t)? {
            return Ok(Probe::Violated("pushed-forward joint differs from the observed joint".into()));
        }
        for tuple in atom_tuples(t, &(0..t.len_vars()).collect::<Vec<_>>()) {
            let phi = tuple_formula(t, &tuple).expect("at least two variables");
            let expected = pushed.get(&tuple).copied().unwrap_or_else(Probability::zero);
            let p = probability_of(t, &phi)?;
            if p != expected {
                return Ok(Probe::Violated(format!("Pr({phi}) = {p} but the exogenous joint gives {expected}")));
            }
        }
        Ok(Probe::Holds)
    }))
}

fn dep_def(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = generate_with(rng, cfg);
    let mut g = Gen::new(rng, &t, 0);
    let y = g.var();
    let xs: Vec<String> = g
        .vars(1, 2)
        .into_iter()
        .filter(|&v| v != y)
        .map(|v| t.name(v).to_string())
        .collect();
    let y = t.name(y).to_string();
    let detail = format!("dep({}; {y})", xs.join(","));
    Ok(Instance::new(t, detail, move |t| {
        let names: Vec<&str> = xs.iter().map(String::as_str).collect();
        let direct = holds(t, &Formula::dep(&names, &y))?;
        let encoded = holds(t, &dependence_encoding(t, &names, &y)?)?;
        Ok(check(direct == encoded, || {
            format!("dep is {} but its encoding is {}", verdict(direct), verdict(encoded))
        }))
    }))
}

fn markov_team(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> CausalTeam {
    let mut c = cfg.clone();
    c.exogenous_product = rng.gen_bool(0.75);
    generate_with(rng, &c)
}

fn ma_mc(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = markov_team(rng, cfg);
    Ok(Instance::new(t, "Markov axiom".into(), |t| {
        if t.is_empty() || !check_markov_axiom(t)?.holds {
            return Ok(Probe::Vacuous);
        }
        let mc = check_markov_condition(t)?;
        Ok(match mc.violation {
            Some(v) if !mc.holds => Probe::Violated(format!("Markov condition fails: {v}")),
            _ => check(mc.holds, || "Markov condition fails".into()),
        })
    }))
}

fn markov_product_law(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Instance> {
    let t = markov_team(rng, cfg);
    let x = Gen::new(rng, &t, 0).binding();
    let detail = format!("intervention: {}", show_bindings(&x));
    Ok(Instance::new(t, detail, move |t| {
        if t.is_empty() || !check_markov_axiom(t)?.holds {
            return Ok(Probe::Vacuous);
        }
        if let Some(tuple) = check_product_formula(t)? {
            return Ok(Probe::Violated(format!("product formula fails at {tuple:?}")));
        }
        if let Some(tuple) = check_intervened_product(t, &spec(&x))? {
            return Ok(Probe::Violated(format!("truncated product fails at {tuple:?}")));
        }
        Ok(Probe::Holds)
    }))
}

// ------------------------------------------------------- fixed witnesses

fn claim(what: &str, team: &CausalTeam, phi: &str, expected: bool) -> Result<Claim> {
    let f = crate::syntax::parse(phi)?;
    Ok(Claim {
        what: format!("{what}: {phi}"),
        team: team.clone(),
        expected,
        actual: holds(team, &f)?,
    })
}

fn claim_formula(what: &str, team: &CausalTeam, phi: &Formula, expected: bool) -> Result<Claim> {
    Ok(Claim {
        what: format!("{what}: {phi}"),
        team: team.clone(),
        expected,
        actual: holds(team, phi)?,
    })
}

/// The team {X:1},{X:2}.
pub fn sem_team() -> CausalTeam {
    TeamBuilder::new(TeamMode::Set)
        .variable("X", [1, 2])
        .row(&[1])
        .row(&[2])
        .build()
        .expect("valid team")
}

fn sem_fail() -> Result<Vec<Claim>> {
    let t = sem_team();
    [
        claim("SEM", &t, "X=1", false),
        claim("SEM", &t, "X!=1", false),
        claim("SEM", &t, "!X=1", false),
        claim("WEM", &t, "X=1 | !X=1", true),
    ]
    .into_iter()
    .collect()
}

/// Two rows (1,1), (1,2) over X, Y with no arrows.
pub fn cem_team() -> CausalTeam {
    TeamBuilder::new(TeamMode::Set)
        .variable("X", [1, 2])
        .variable("Y", [1, 2])
        .row(&[1, 1])
        .row(&[1, 2])
        .build()
        .expect("valid team")
}

/// X, Z exogenous, `Y := X + Z`, with the given (X, Z) rows.
pub fn sum_team(rows: &[[i64; 2]], xs: &[i64], zs: &[i64]) -> CausalTeam {
    let ys: BTreeSet<i64> = xs.iter().flat_map(|x| zs.iter().map(move |z| x + z)).collect();
    let mut b = TeamBuilder::new(TeamMode::Set)
        .variable("X", xs.iter().copied())
        .variable("Y", ys.iter().copied())
        .variable("Z", zs.iter().copied())
        .edge("X", "Y")
        .edge("Z", "Y");
    for &x in xs {
        for &z in zs {
            b = b.entry("Y", [x, z], x + z);
        }
    }
    for &[x, z] in rows {
        b = b.row(&[x, x + z, z]);
    }
    b.build().expect("valid team")
}

fn cem_prime_fail() -> Result<Vec<Claim>> {
    let t = cem_team();
    let s = sum_team(&[[1, 1], [2, 2]], &[1, 2], &[1, 2]);
    let mut out: Vec<Claim> = [
        claim("CEM' on T", &t, "do X=1 []-> Y=1", false),
        claim("CEM' on T", &t, "do X=1 []-> Y!=1", false),
        claim("CEM' on T", &t, "do X=1 []-> !Y=1", false),
        claim("CEM' on S", &s, "do X=1 []-> Y=2", false),
        claim("CEM' on S", &s, "do X=1 []-> Y!=2", false),
        claim("CEM' on S", &s, "do X=1 []-> !Y=2", false),
        claim("CEM on S", &s, "do X=1 []-> (Y=2 | !Y=2)", true),
    ]
    .into_iter()
    .collect::<Result<_>>()?;
    let after = do_intervention(&s, &InterventionSpec::single("X", 1))?;
    out.push(Claim {
        what: "S_{X=1} has rows 112, 123".into(),
        team: s.clone(),
        expected: true,
        actual: after.render_table(&["X", "Z", "Y"])? == "X Z Y\n1 1 2\n1 2 3\n",
    });
    Ok(out)
}

/// The first noncommutativity team: (X,Z) rows (1,1), (1,2), (2,3).
pub fn noncomm_t() -> CausalTeam {
    sum_team(&[[1, 1], [1, 2], [2, 3]], &[1, 2], &[1, 2, 3])
}

/// The second noncommutativity team: (X,Z) rows (1,1), (1,2), (2,1).
pub fn noncomm_s() -> CausalTeam {
    sum_team(&[[1, 1], [1, 2], [2, 1]], &[1, 2], &[1, 2, 3])
}

fn noncommutativity() -> Result<Vec<Claim>> {
    let t = noncomm_t();
    let s = noncomm_s();
    let sm = s.as_multiteam();
    [
        claim("T", &t, "X=1 => (do X=1 []-> (Y=2 | Y=3))", true),
        claim("T", &t, "do X=1 []-> (X=1 => (Y=2 | Y=3))", false),
        claim("S", &s, "do Z=1 []-> (Y=3 => Y=3)", true),
        claim("S", &s, "Y=3 => (do Z=1 []-> Y=3)", false),
        claim("S multiteam", &sm, "do Z=1 []-> (Y=3 => Pr(Y=3) = 1)", true),
        claim("S multiteam", &sm, "Y=3 => (do Z=1 []-> Pr(Y=3) = 1)", false),
    ]
    .into_iter()
    .collect()
}

/// Boolean chain X -> Y -> Z with X -> Z, `Y := X`, `Z := X and Y`, one row 000.
pub fn boolean_team() -> CausalTeam {
    let mut b = TeamBuilder::new(TeamMode::Set)
        .variable("X", [0, 1])
        .variable("Y", [0, 1])
        .variable("Z", [0, 1])
        .edge("X", "Y")
        .edge("X", "Z")
        .edge("Y", "Z")
        .entry("Y", [0], 0)
        .entry("Y", [1], 1);
    for x in 0..2 {
        for y in 0..2 {
            b = b.entry("Z", [x, y], x & y);
        }
    }
    b.row(&[0, 0, 0]).build().expect("valid team")
}

/// Rows 000, 111 over X, Y, Z with `Z := Y` and arrows X -> Z, Y -> Z.
pub fn ndep_team() -> CausalTeam {
    let mut b = TeamBuilder::new(TeamMode::Set)
        .variable("X", [0, 1])
        .variable("Y", [0, 1])
        .variable("Z", [0, 1])
        .edge("X", "Z")
        .edge("Y", "Z");
    for x in 0..2 {
        for y in 0..2 {
            b = b.entry("Z", [x, y], y);
        }
    }
    b.row(&[0, 0, 0]).row(&[1, 1, 1]).build().expect("valid team")
}

fn cf_vs_sel() -> Result<Vec<Claim>> {
    let t = boolean_team();
    let s = ndep_team();
    let ndep = Formula::NDep(vec!["X".into()], "Z".into());
    let x0 = Formula::eq("X", 0);
    let inner = Formula::select(x0.clone(), ndep);
    [
        claim("T", &t, "do Y=0 []-> (do X=1 []-> Z!=1)", true),
        claim("T", &t, "Y=0 => (do X=1 []-> Z!=1)", false),
        claim_formula("S", &s, &Formula::cf1("X", 0, inner.clone()), true),
        claim_formula("S", &s, &Formula::select(x0.clone(), inner.clone()), false),
        claim_formula("S", &s, &Formula::select(x0, Formula::cf1("X", 0, inner)), false),
    ]
    .into_iter()
    .collect()
}

/// The four rows of {1,2} x {1,2} over X, Y.
pub fn indep_team() -> CausalTeam {
    TeamBuilder::new(TeamMode::Set)
        .variable("X", [1, 2])
        .variable("Y", [1, 2])
        .row(&[1, 1])
        .row(&[1, 2])
        .row(&[2, 1])
        .row(&[2, 2])
        .build()
        .expect("valid team")
}

fn indep_sel() -> Result<Vec<Claim>> {
    let u = indep_team();
    [
        claim("U", &u, "X!=1 | indep(X, Y)", true),
        claim("U", &u, "X=1 => indep(X, Y)", false),
    ]
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(id: &str, trials: usize) -> LawReport {
        check_law(id, &GeneratorConfig::default(), trials).unwrap()
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GeneratorConfig {
            seed: 17,
            ..GeneratorConfig::default()
        };
        assert_eq!(generate_team(&cfg), generate_team(&cfg));
    }

    #[test]
    fn zero_edge_probability_gives_exogenous_teams() {
        for seed in 0..20 {
            let cfg = GeneratorConfig {
                edge_prob: 0.0,
                seed,
                ..GeneratorConfig::default()
            };
            assert!(generate_team(&cfg).graph().edges().is_empty());
        }
    }

    #[test]
    fn parametric_generation_has_total_tables() {
        for seed in 0..20 {
            let cfg = GeneratorConfig {
                seed,
                ..GeneratorConfig::default()
            };
            assert!(generate_team(&cfg).is_parametric());
        }
    }

    #[test]
    fn product_generation_passes_the_markov_axiom() {
        for seed in 0..20 {
            let cfg = GeneratorConfig {
                seed,
                exogenous_product: true,
                ..GeneratorConfig::default()
            };
            let t = generate_team(&cfg);
            assert!(t.is_multiteam());
            assert!(check_markov_axiom(&t).unwrap().holds);
        }
    }

    #[test]
    fn invalid_configuration_is_rejected() {
        let cfg = GeneratorConfig {
            max_vars: 7,
            ..GeneratorConfig::default()
        };
        assert!(check_law("REP", &cfg, 1).is_err());
    }

    #[test]
    fn unknown_law() {
        assert!(matches!(
            check_law("NOPE", &GeneratorConfig::default(), 1),
            Err(Error::UnknownLaw(_))
        ));
    }

    #[test]
    fn aliases() {
        assert_eq!(quick("MP∨", 5).law, "MP-OR");
        assert_eq!(quick("ma⇒mc", 5).law, "MA-MC");
    }

    #[test]
    fn rep_holds() {
        let r = quick("REP", 50);
        assert_eq!(r.outcome, LawOutcome::Holds);
        assert_eq!(r.nonvacuous, 50);
    }

    #[test]
    fn cem_prime_confirmed() {
        assert_eq!(quick("CEM'-FAIL", 1).outcome, LawOutcome::CounterexampleConfirmed);
    }

    #[test]
    fn a_false_law_is_caught_and_shrunk() {
        let probe: ProbeFn = Box::new(|t: &CausalTeam| {
            Ok(check(holds(t, &Formula::dep(&[], "X"))?, || "X is not constant".into()))
        });
        let t = TeamBuilder::new(TeamMode::Set)
            .variable("X", [0, 1, 2])
            .variable("Y", [0, 1])
            .row(&[0, 0])
            .row(&[0, 1])
            .row(&[1, 0])
            .row(&[2, 1])
            .build()
            .unwrap();
        let small = shrink(&t, &probe);
        assert_eq!(small.rows().len(), 2);
        assert!(matches!(probe(&small).unwrap(), Probe::Violated(_)));
    }

    #[test]
    fn dependence_encoding_small_case() {
        let t = TeamBuilder::new(TeamMode::Multi)
            .variable("X", [0, 1])
            .variable("Y", [0, 1])
            .row_n(&[0, 0], 2)
            .row(&[1, 1])
            .build()
            .unwrap();
        assert!(holds(&t, &dependence_encoding(&t, &["X"], "Y").unwrap()).unwrap());
        assert!(!holds(&t, &dependence_encoding(&t, &[], "Y").unwrap()).unwrap());
    }

    use std::collections::HashSet;

    #[test]
    fn registry_ids_are_unique() {
        let ids: HashSet<&str> = registry().iter().map(|l| l.id).collect();
        assert_eq!(ids.len(), registry().len());
    }
}
