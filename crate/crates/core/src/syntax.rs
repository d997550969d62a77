//! Formula language: AST, parser, printer, fragments and complement.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::Atom;
use crate::prob::Probability;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Le,
    Ge,
    Lt,
    Gt,
}

impl Rel {
    pub fn flip(self) -> Rel {
        match self {
            Rel::Le => Rel::Gt,
            Rel::Ge => Rel::Lt,
            Rel::Lt => Rel::Ge,
            Rel::Gt => Rel::Le,
        }
    }

    pub fn holds(self, a: Probability, b: Probability) -> bool {
        match self {
            Rel::Le => a <= b,
            Rel::Ge => a >= b,
            Rel::Lt => a < b,
            Rel::Gt => a > b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Rel::Le => "<=",
            Rel::Ge => ">=",
            Rel::Lt => "<",
            Rel::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProbRhs {
    Const(Probability),
    Prob(Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(String, Atom),
    Neq(String, Atom),
    Dep(Vec<String>, String),
    NDep(Vec<String>, String),
    MargIndep(Vec<String>, Vec<String>),
    DualNeg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    TensorOr(Box<Formula>, Box<Formula>),
    IntuitOr(Box<Formula>, Box<Formula>),
    Selective(Box<Formula>, Box<Formula>),
    Counterfactual(Vec<(String, Atom)>, Box<Formula>),
    ProbCmp {
        lhs: Box<Formula>,
        rel: Rel,
        rhs: ProbRhs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fragment {
    C,
    CO,
    CD,
    CNeg,
    CONeg,
    CU,
    PCD,
    PC,
    PO,
    P,
    Extended,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Fragment::C => "C",
            Fragment::CO => "CO",
            Fragment::CD => "CD",
            Fragment::CNeg => "C_neg",
            Fragment::CONeg => "CO_neg",
            Fragment::CU => "C_u",
            Fragment::PCD => "PCD",
            Fragment::PC => "PC",
            Fragment::PO => "PO",
            Fragment::P => "P",
            Fragment::Extended => "extended",
        };
        f.write_str(s)
    }
}

// Constructors used throughout tests and the law harness.
impl Formula {
    pub fn eq(v: &str, a: impl Into<Atom>) -> Formula {
        Formula::Eq(v.to_string(), a.into())
    }

    pub fn neq(v: &str, a: impl Into<Atom>) -> Formula {
        Formula::Neq(v.to_string(), a.into())
    }

    pub fn dep(xs: &[&str], y: &str) -> Formula {
        Formula::Dep(xs.iter().map(|s| s.to_string()).collect(), y.to_string())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::TensorOr(Box::new(a), Box::new(b))
    }

    pub fn int_or(a: Formula, b: Formula) -> Formula {
        Formula::IntuitOr(Box::new(a), Box::new(b))
    }

    pub fn dual_neg(a: Formula) -> Formula {
        Formula::DualNeg(Box::new(a))
    }

    pub fn select(a: Formula, b: Formula) -> Formula {
        Formula::Selective(Box::new(a), Box::new(b))
    }

    pub fn cf(bindings: Vec<(String, Atom)>, b: Formula) -> Formula {
        Formula::Counterfactual(bindings, Box::new(b))
    }

    pub fn cf1(v: &str, a: impl Into<Atom>, b: Formula) -> Formula {
        Formula::cf(vec![(v.to_string(), a.into())], b)
    }

    pub fn pr(chi: Formula, rel: Rel, c: Probability) -> Formula {
        Formula::ProbCmp {
            lhs: Box::new(chi),
            rel,
            rhs: ProbRhs::Const(c),
        }
    }

    /// `Pr(chi) = c`, i.e. `Pr(chi) <= c & Pr(chi) >= c`.
    pub fn pr_eq(chi: Formula, c: Probability) -> Formula {
        Formula::and(Formula::pr(chi.clone(), Rel::Le, c), Formula::pr(chi, Rel::Ge, c))
    }

    /// Conjunction of a nonempty list, left-nested.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    /// Balanced intuitionistic disjunction of a nonempty list.
    pub fn int_or_all(items: Vec<Formula>) -> Option<Formula> {
        balanced(items, Formula::int_or)
    }

    /// Balanced tensor disjunction of a nonempty list.
    pub fn or_all(items: Vec<Formula>) -> Option<Formula> {
        balanced(items, Formula::or)
    }
}

fn balanced(mut items: Vec<Formula>, join: fn(Formula, Formula) -> Formula) -> Option<Formula> {
    match items.len() {
        0 => None,
        1 => items.pop(),
        n => {
            let right = items.split_off(n / 2);
            Some(join(balanced(items, join)?, balanced(right, join)?))
        }
    }
}

#[derive(Default, Clone, Copy)]
struct Features {
    dep: bool,
    ndep_or_indep: bool,
    neg: bool,
    sel: bool,
    cf: bool,
    nested_cf: bool,
    neg_over_cf_of_sel: bool,
    prob: bool,
    int_or: bool,
}

impl Formula {
    fn features(&self, f: &mut Features, under_cf: bool) {
        match self {
            Formula::Eq(..) | Formula::Neq(..) => {}
            Formula::Dep(..) => f.dep = true,
            Formula::NDep(..) | Formula::MargIndep(..) => f.ndep_or_indep = true,
            Formula::DualNeg(a) => {
                f.neg = true;
                a.features(f, under_cf);
            }
            Formula::And(a, b) | Formula::TensorOr(a, b) => {
                a.features(f, under_cf);
                b.features(f, under_cf);
            }
            Formula::IntuitOr(a, b) => {
                f.int_or = true;
                a.features(f, under_cf);
                b.features(f, under_cf);
            }
            Formula::Selective(a, b) => {
                f.sel = true;
                if under_cf {
                    f.neg_over_cf_of_sel = true;
                }
                a.features(f, under_cf);
                b.features(f, under_cf);
            }
            Formula::Counterfactual(_, b) => {
                f.cf = true;
                if under_cf {
                    f.nested_cf = true;
                }
                b.features(f, true);
            }
            Formula::ProbCmp { lhs, rhs, .. } => {
                f.prob = true;
                lhs.features(f, under_cf);
                if let ProbRhs::Prob(r) = rhs {
                    r.features(f, under_cf);
                }
            }
        }
    }

    /// Smallest named fragment containing the formula.
    pub fn classify(&self) -> Fragment {
        let mut f = Features::default();
        self.features(&mut f, false);
        if f.ndep_or_indep {
            return Fragment::Extended;
        }
        if f.prob || f.int_or {
            if f.neg {
                return Fragment::Extended;
            }
            return match (f.dep || (f.sel && f.cf), f.cf, f.sel) {
                (true, _, _) => Fragment::PCD,
                (false, true, _) => Fragment::PC,
                (false, false, true) => Fragment::PO,
                _ => Fragment::P,
            };
        }
        if f.dep {
            return if f.neg { Fragment::Extended } else { Fragment::CD };
        }
        match (f.sel, f.neg) {
            (false, false) => Fragment::C,
            (false, true) if !f.nested_cf => Fragment::CU,
            (false, true) => Fragment::CNeg,
            (true, false) => Fragment::CO,
            (true, true) => Fragment::CONeg,
        }
    }

    /// Atoms `V=v`, `V!=v` combined by `&` and `|`.
    pub fn is_classical(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Neq(..) => true,
            Formula::And(a, b) | Formula::TensorOr(a, b) => a.is_classical() && b.is_classical(),
            _ => false,
        }
    }

    /// Membership in CO: literals, `&`, `|`, `=>`, `[]->`.
    pub fn is_co(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Neq(..) => true,
            Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::Selective(a, b) => a.is_co() && b.is_co(),
            Formula::Counterfactual(_, b) => b.is_co(),
            _ => false,
        }
    }

    /// Membership in CO_neg (the flat fragment): CO plus dual negation.
    pub fn is_flat(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Neq(..) => true,
            Formula::DualNeg(a) => a.is_flat(),
            Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::Selective(a, b) => {
                a.is_flat() && b.is_flat()
            }
            Formula::Counterfactual(_, b) => b.is_flat(),
            _ => false,
        }
    }

    /// No NDep, independence or probability atoms: satisfaction is
    /// preserved under subteams and multiplicities are irrelevant.
    pub fn is_downward_closed(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Neq(..) | Formula::Dep(..) => true,
            Formula::NDep(..) | Formula::MargIndep(..) | Formula::ProbCmp { .. } => false,
            Formula::DualNeg(a) => a.is_flat(),
            Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::IntuitOr(a, b) | Formula::Selective(a, b) => {
                a.is_downward_closed() && b.is_downward_closed()
            }
            Formula::Counterfactual(_, b) => b.is_downward_closed(),
        }
    }

    pub fn mentions_probability(&self) -> bool {
        match self {
            Formula::ProbCmp { .. } => true,
            Formula::Eq(..) | Formula::Neq(..) | Formula::Dep(..) | Formula::NDep(..) | Formula::MargIndep(..) => {
                false
            }
            Formula::DualNeg(a) | Formula::Counterfactual(_, a) => a.mentions_probability(),
            Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::IntuitOr(a, b) | Formula::Selective(a, b) => {
                a.mentions_probability() || b.mentions_probability()
            }
        }
    }

    /// Variables occurring in atoms (not in counterfactual antecedents).
    pub fn atom_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Formula::Eq(v, _) | Formula::Neq(v, _) => out.push(v.clone()),
            Formula::Dep(xs, y) | Formula::NDep(xs, y) => {
                out.extend(xs.iter().cloned());
                out.push(y.clone());
            }
            Formula::MargIndep(xs, ys) => {
                out.extend(xs.iter().cloned());
                out.extend(ys.iter().cloned());
            }
            Formula::DualNeg(a) | Formula::Counterfactual(_, a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::IntuitOr(a, b) | Formula::Selective(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::ProbCmp { lhs, rhs, .. } => {
                lhs.collect_vars(out);
                if let ProbRhs::Prob(r) = rhs {
                    r.collect_vars(out);
                }
            }
        }
    }

    /// Connective depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Neq(..) | Formula::Dep(..) | Formula::NDep(..) | Formula::MargIndep(..) => 0,
            Formula::DualNeg(a) | Formula::Counterfactual(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::TensorOr(a, b) | Formula::IntuitOr(a, b) | Formula::Selective(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::ProbCmp { lhs, rhs, .. } => {
                let r = match rhs {
                    ProbRhs::Prob(r) => r.depth(),
                    ProbRhs::Const(_) => 0,
                };
                1 + lhs.depth().max(r)
            }
        }
    }
}

/// Complementary negation on CO: exact on singleton teams.
pub fn complement(phi: &Formula) -> Result<Formula> {
    Ok(match phi {
        Formula::Eq(v, a) => Formula::Neq(v.clone(), a.clone()),
        Formula::Neq(v, a) => Formula::Eq(v.clone(), a.clone()),
        Formula::And(a, b) => Formula::or(complement(a)?, complement(b)?),
        Formula::TensorOr(a, b) => Formula::and(complement(a)?, complement(b)?),
        Formula::Selective(a, b) => {
            if !a.is_classical() {
                return Err(Error::NotInCO);
            }
            Formula::and((**a).clone(), complement(b)?)
        }
        Formula::Counterfactual(bs, b) => Formula::cf(bs.clone(), complement(b)?),
        _ => return Err(Error::NotInCO),
    })
}

// ---------------------------------------------------------------- printing

const L_IMPL: u8 = 0;
const L_INTOR: u8 = 1;
const L_OR: u8 = 2;
const L_AND: u8 = 3;
const L_UNARY: u8 = 4;

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, L_IMPL)
    }
}

fn write_atom(f: &mut fmt::Formatter<'_>, a: &Atom) -> fmt::Result {
    match a {
        Atom::Int(i) => write!(f, "{i}"),
        Atom::Str(s) if is_identifier(s) && !is_keyword(s) => write!(f, "{s}"),
        Atom::Str(s) => write!(f, "{s:?}"),
    }
}

fn write_prob(f: &mut fmt::Formatter<'_>, p: &Probability) -> fmt::Result {
    if p.is_integer() {
        write!(f, "{}", p.numer())
    } else {
        write!(f, "{}/{}", p.numer(), p.denom())
    }
}

fn write_bindings(f: &mut fmt::Formatter<'_>, bs: &[(String, Atom)]) -> fmt::Result {
    for (i, (v, a)) in bs.iter().enumerate() {
        if i > 0 {
            write!(f, " & ")?;
        }
        write!(f, "{v}=")?;
        write_atom(f, a)?;
    }
    Ok(())
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula, ctx: u8) -> fmt::Result {
    let paren = match phi {
        Formula::Selective(..) | Formula::Counterfactual(..) => ctx > L_IMPL,
        Formula::IntuitOr(..) => ctx > L_INTOR,
        Formula::TensorOr(..) => ctx > L_OR,
        Formula::And(..) => ctx > L_AND,
        _ => false,
    };
    if paren {
        write!(f, "(")?;
    }
    match phi {
        Formula::Eq(v, a) => {
            write!(f, "{v}=")?;
            write_atom(f, a)?;
        }
        Formula::Neq(v, a) => {
            write!(f, "{v}!=")?;
            write_atom(f, a)?;
        }
        Formula::Dep(xs, y) => write!(f, "dep({}; {y})", xs.join(", "))?,
        Formula::NDep(xs, y) => write!(f, "ndep({}; {y})", xs.join(", "))?,
        Formula::MargIndep(xs, ys) => {
            if xs.len() == 1 && ys.len() == 1 {
                write!(f, "indep({}, {})", xs[0], ys[0])?
            } else {
                write!(f, "indep({}; {})", xs.join(", "), ys.join(", "))?
            }
        }
        Formula::DualNeg(a) => {
            write!(f, "!")?;
            write_formula(f, a, L_UNARY + 1)?;
        }
        Formula::And(a, b) => {
            write_formula(f, a, L_AND)?;
            write!(f, " & ")?;
            write_formula(f, b, L_AND + 1)?;
        }
        Formula::TensorOr(a, b) => {
            write_formula(f, a, L_OR)?;
            write!(f, " | ")?;
            write_formula(f, b, L_OR + 1)?;
        }
        Formula::IntuitOr(a, b) => {
            write_formula(f, a, L_INTOR)?;
            write!(f, " ++ ")?;
            write_formula(f, b, L_INTOR + 1)?;
        }
        Formula::Selective(a, b) => {
            write_formula(f, a, L_INTOR)?;
            write!(f, " => ")?;
            write_formula(f, b, L_IMPL)?;
        }
        Formula::Counterfactual(bs, b) => {
            write!(f, "do ")?;
            write_bindings(f, bs)?;
            if !bs.is_empty() {
                write!(f, " ")?;
            }
            write!(f, "[]-> ")?;
            write_formula(f, b, L_IMPL)?;
        }
        Formula::ProbCmp { lhs, rel, rhs } => {
            write!(f, "Pr({lhs}) {} ", rel.symbol())?;
            match rhs {
                ProbRhs::Const(c) => write_prob(f, c)?,
                ProbRhs::Prob(r) => write!(f, "Pr({r})")?,
            }
        }
    }
    if paren {
        write!(f, ")")?;
    }
    Ok(())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "do" | "dep" | "ndep" | "indep" | "Pr")
}

// ----------------------------------------------------------------- parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Decimal(String),
    Str(String),
    Sym(&'static str),
}

const SYMBOLS: [&str; 17] = [
    "[]->", "++", "=>", "!=", "<=", ">=", "&", "|", "!", "=", "<", ">", "(", ")", ",", ";", "/",
];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        for s in SYMBOLS {
            if text[i..].starts_with(s) {
                out.push((i, Tok::Sym(s)));
                i += s.len();
                continue 'outer;
            }
        }
        let start = i;
        if c.is_ascii_digit() || (c == '-' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) || c == '.' {
            i += 1;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let lit = &text[start..i];
            if lit.contains('.') {
                out.push((start, Tok::Decimal(lit.to_string())));
            } else {
                let n = lit.parse::<i64>().map_err(|e| Error::Syntax {
                    position: start,
                    message: format!("bad integer {lit}: {e}"),
                })?;
                out.push((start, Tok::Int(n)));
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        if c == '"' {
            i += 1;
            let mut s = String::new();
            loop {
                match bytes.get(i) {
                    None => {
                        return Err(Error::Syntax {
                            position: start,
                            message: "unterminated string".into(),
                        })
                    }
                    Some(b'"') => {
                        i += 1;
                        break;
                    }
                    Some(b'\\') if i + 1 < bytes.len() => {
                        s.push(bytes[i + 1] as char);
                        i += 2;
                    }
                    Some(_) => {
                        let ch = text[i..].chars().next().expect("in bounds");
                        s.push(ch);
                        i += ch.len_utf8();
                    }
                }
            }
            out.push((start, Tok::Str(s)));
            continue;
        }
        return Err(Error::Syntax {
            position: i,
            message: format!("unexpected character {c:?}"),
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

/// Parses one formula.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    if p.toks.is_empty() {
        return Err(p.error("empty formula"));
    }
    let phi = p.implication()?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(phi)
}

/// Parses one formula per non-blank, non-comment line.
pub fn parse_lines(text: &str) -> Result<Vec<Formula>> {
    text.lines()
        .filter(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(parse)
        .collect()
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.position(),
            message: message.to_string(),
        }
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {sym}")))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected a variable name")),
        }
    }

    fn value(&mut self) -> Result<Atom> {
        let a = match self.peek() {
            Some(Tok::Int(i)) => Atom::Int(*i),
            Some(Tok::Ident(s)) if !is_keyword(s) => Atom::Str(s.clone()),
            Some(Tok::Str(s)) => Atom::Str(s.clone()),
            _ => return Err(self.error("expected a value")),
        };
        self.pos += 1;
        Ok(a)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.int_or()?;
        if self.eat("=>") {
            if !lhs.is_classical() {
                return Err(Error::AntecedentNotClassical);
            }
            let rhs = self.implication()?;
            return Ok(Formula::select(lhs, rhs));
        }
        Ok(lhs)
    }

    fn int_or(&mut self) -> Result<Formula> {
        let mut lhs = self.or()?;
        while self.eat("++") {
            let rhs = self.or()?;
            lhs = Formula::int_or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat("|") {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("!") {
            let start = self.position();
            let inner = self.unary()?;
            return match inner {
                Formula::ProbCmp { lhs, rel, rhs } => Ok(Formula::ProbCmp {
                    lhs,
                    rel: rel.flip(),
                    rhs,
                }),
                other if other.is_flat() => Ok(Formula::dual_neg(other)),
                _ => Err(Error::Syntax {
                    position: start,
                    message: "dual negation applies only to flat formulas and probability atoms".into(),
                }),
            };
        }
        self.primary()
    }

    fn var_list(&mut self, stop: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == stop) {
            return Ok(out);
        }
        out.push(self.ident()?);
        while self.eat(",") {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.eat("(") {
            let inner = self.implication()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.is_keyword("do") {
            self.pos += 1;
            let mut bindings = Vec::new();
            if !self.eat("[]->") {
                loop {
                    let v = self.ident()?;
                    if !self.eat("=") {
                        return Err(Error::AntecedentNotConjunctionOfEq);
                    }
                    bindings.push((v, self.value()?));
                    if self.eat("[]->") {
                        break;
                    }
                    if !(self.eat("&") || self.eat(",")) {
                        return Err(Error::AntecedentNotConjunctionOfEq);
                    }
                }
            }
            let body = self.implication()?;
            return Ok(Formula::cf(bindings, body));
        }
        if self.is_keyword("dep") || self.is_keyword("ndep") {
            let negated = self.is_keyword("ndep");
            self.pos += 1;
            self.expect("(")?;
            let first = self.var_list(";")?;
            let (xs, y) = if self.eat(";") {
                (first, self.ident()?)
            } else if first.len() == 1 {
                (Vec::new(), first.into_iter().next().expect("one element"))
            } else {
                return Err(self.error("expected ; before the dependent variable"));
            };
            self.expect(")")?;
            return Ok(if negated { Formula::NDep(xs, y) } else { Formula::Dep(xs, y) });
        }
        if self.is_keyword("indep") {
            self.pos += 1;
            self.expect("(")?;
            let first = self.var_list(";")?;
            let (xs, ys) = if self.eat(";") {
                (first, self.var_list(")")?)
            } else if first.len() == 2 {
                (vec![first[0].clone()], vec![first[1].clone()])
            } else {
                return Err(self.error("indep takes two variables or two ;-separated lists"));
            };
            if xs.is_empty() || ys.is_empty() {
                return Err(self.error("indep needs variables on both sides"));
            }
            self.expect(")")?;
            return Ok(Formula::MargIndep(xs, ys));
        }
        if self.is_keyword("Pr") {
            let lhs = self.prob_arg()?;
            let rel = match self.peek() {
                Some(Tok::Sym("<=")) => Some(Rel::Le),
                Some(Tok::Sym(">=")) => Some(Rel::Ge),
                Some(Tok::Sym("<")) => Some(Rel::Lt),
                Some(Tok::Sym(">")) => Some(Rel::Gt),
                Some(Tok::Sym("=")) => None,
                _ => return Err(self.error("expected a comparison after Pr(...)")),
            };
            self.pos += 1;
            let rhs = if self.is_keyword("Pr") {
                ProbRhs::Prob(Box::new(self.prob_arg()?))
            } else {
                ProbRhs::Const(self.constant()?)
            };
            let atom = |rel| Formula::ProbCmp {
                lhs: Box::new(lhs.clone()),
                rel,
                rhs: rhs.clone(),
            };
            return Ok(match rel {
                Some(r) => atom(r),
                None => Formula::and(atom(Rel::Le), atom(Rel::Ge)),
            });
        }
        let v = self.ident()?;
        if self.eat("=") {
            return Ok(Formula::Eq(v, self.value()?));
        }
        if self.eat("!=") {
            return Ok(Formula::Neq(v, self.value()?));
        }
        Err(self.error("expected = or != after a variable"))
    }

    fn prob_arg(&mut self) -> Result<Formula> {
        self.pos += 1;
        self.expect("(")?;
        let start = self.position();
        let inner = self.implication()?;
        self.expect(")")?;
        if !inner.is_co() {
            return Err(Error::Syntax {
                position: start,
                message: "argument of Pr must be a causal-observational formula".into(),
            });
        }
        Ok(inner)
    }

    fn constant(&mut self) -> Result<Probability> {
        let start = self.position();
        let value = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat("/") {
                    match self.peek() {
                        Some(Tok::Int(d)) if *d != 0 => {
                            let d = *d;
                            self.pos += 1;
                            Probability::new(n, d)
                        }
                        _ => return Err(self.error("expected a nonzero denominator")),
                    }
                } else {
                    Probability::from_integer(n)
                }
            }
            Some(Tok::Decimal(s)) => {
                self.pos += 1;
                parse_decimal(&s).ok_or_else(|| Error::Syntax {
                    position: start,
                    message: format!("bad decimal {s}"),
                })?
            }
            _ => return Err(self.error("expected a probability constant")),
        };
        if value < Probability::zero() || value > Probability::one() {
            return Err(Error::Syntax {
                position: start,
                message: "probability constant outside [0,1]".into(),
            });
        }
        Ok(value)
    }
}

fn parse_decimal(s: &str) -> Option<Probability> {
    let (int, frac) = s.split_once('.')?;
    if frac.contains('.') || frac.len() > 15 || (int.is_empty() && frac.is_empty()) {
        return None;
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some(Probability::new(int.checked_mul(denom)?.checked_add(frac)?, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn pearl_formula_shape() {
        let f = p("(X=1 & Y=1) => (do X=0 []-> Y=0)");
        assert_eq!(
            f,
            Formula::select(
                Formula::and(Formula::eq("X", 1), Formula::eq("Y", 1)),
                Formula::cf1("X", 0, Formula::eq("Y", 0))
            )
        );
        assert_eq!(f.to_string(), "X=1 & Y=1 => do X=0 []-> Y=0");
    }

    #[test]
    fn atoms() {
        assert_eq!(p("dep(X,Z; Y)"), Formula::dep(&["X", "Z"], "Y"));
        assert_eq!(p("dep(Y)"), Formula::dep(&[], "Y"));
        assert_eq!(p("dep(;Y)"), Formula::dep(&[], "Y"));
        assert_eq!(p("indep(X,Y)"), Formula::MargIndep(vec!["X".into()], vec!["Y".into()]));
        assert_eq!(p("X=a"), Formula::eq("X", "a"));
        assert_eq!(p("X=\"hello world\"").to_string(), "X=\"hello world\"");
    }

    #[test]
    fn probability_constants() {
        assert!(parse("Pr(Y=0) >= 1").is_ok());
        assert!(matches!(parse("Pr(Y=0) >= 1.5"), Err(Error::Syntax { .. })));
        assert_eq!(p("Pr(Y=0) <= 0.25"), Formula::pr(Formula::eq("Y", 0), Rel::Le, Probability::new(1, 4)));
        assert_eq!(p("Pr(Y=0) <= 2/6"), Formula::pr(Formula::eq("Y", 0), Rel::Le, Probability::new(1, 3)));
        assert_eq!(p("!Pr(Y=0) <= 1/2"), Formula::pr(Formula::eq("Y", 0), Rel::Gt, Probability::new(1, 2)));
        assert_eq!(p("Pr(Y=0) = 1/2"), Formula::pr_eq(Formula::eq("Y", 0), Probability::new(1, 2)));
        assert!(parse("Pr(dep(X;Y)) <= 1").is_err());
        assert!(parse("Pr(Y=0) <= 1/0").is_err());
    }

    #[test]
    fn restrictions() {
        assert!(matches!(parse("dep(X;Y) => Y=1"), Err(Error::AntecedentNotClassical)));
        assert!(matches!(parse("do X!=1 []-> Y=1"), Err(Error::AntecedentNotConjunctionOfEq)));
        assert!(parse("!dep(X;Y)").is_err());
        assert!(parse("do X=1 & X=2 []-> Y=1").is_ok());
        assert!(parse("X=1 )").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(
            p("!A=1 & B=1 | C=1 ++ D=1"),
            Formula::int_or(
                Formula::or(
                    Formula::and(Formula::dual_neg(Formula::eq("A", 1)), Formula::eq("B", 1)),
                    Formula::eq("C", 1)
                ),
                Formula::eq("D", 1)
            )
        );
        assert_eq!(
            p("A=1 => B=1 => C=1"),
            Formula::select(Formula::eq("A", 1), Formula::select(Formula::eq("B", 1), Formula::eq("C", 1)))
        );
        assert_eq!(
            p("do X=1 []-> Y=1 | Z=1"),
            Formula::cf1("X", 1, Formula::or(Formula::eq("Y", 1), Formula::eq("Z", 1)))
        );
        assert_eq!(p("X=1 # comment"), Formula::eq("X", 1));
    }

    #[test]
    fn classification() {
        assert_eq!(p("X=1").classify(), Fragment::C);
        assert_eq!(p("X=1 => dep(Y;Z)").classify(), Fragment::CD);
        assert_eq!(p("do X=1 []-> Pr(Y=1) >= 1/2").classify(), Fragment::PC);
        assert_eq!(p("X=1 => Pr(Y=1) >= 1/2").classify(), Fragment::PO);
        assert_eq!(p("Pr(Y=1) >= 1/2").classify(), Fragment::P);
        assert_eq!(p("X=1 => do Y=1 []-> Pr(Z=1) >= 1/2").classify(), Fragment::PCD);
        assert_eq!(p("X=1 => Y=1").classify(), Fragment::CO);
        assert_eq!(p("!(do X=1 []-> Y=1)").classify(), Fragment::CU);
        assert_eq!(p("!(do X=1 []-> do Y=1 []-> Z=1)").classify(), Fragment::CNeg);
        assert_eq!(p("!(X=1 => Y=1)").classify(), Fragment::CONeg);
        assert_eq!(p("ndep(X;Y)").classify(), Fragment::Extended);
        assert_eq!(p("do X=1 []-> do Y=1 []-> Z=1").classify(), Fragment::C);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&p("X=1")).unwrap(), p("X!=1"));
        assert_eq!(complement(&p("X=1 => Y=2")).unwrap(), p("X=1 & Y!=2"));
        assert_eq!(complement(&p("do X=1 []-> Y=2")).unwrap(), p("do X=1 []-> Y!=2"));
        assert_eq!(complement(&p("X=1 & Y=2")).unwrap(), p("X!=1 | Y!=2"));
        assert!(matches!(complement(&p("dep(X;Y)")), Err(Error::NotInCO)));
    }

    #[test]
    fn print_round_trip() {
        for s in [
            "X=1 & (Y=2 | Z=3)",
            "(X=1 => Y=1) & Z=1",
            "(do X=1 []-> Y=1) | Z=2",
            "do X=1 & Y=2 []-> Pr(Z=1) >= Pr(Z=2)",
            "!(X=1 & Y=1) ++ dep(; Y)",
            "A=1 & (B=1 & C=1)",
            "X=1 => Y=1 => Z=1",
            "indep(A, B; C)",
            "ndep(X, Y; Z)",
        ] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s}");
        }
    }
}
