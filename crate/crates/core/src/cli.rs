//! Command-line front end.
//!
//! Every command prints a machine-readable verdict on its first line:
//! `SAT`/`UNSAT`, `FALSIFIABLE`/`NOT-FALSIFIABLE`, `ADMISSIBLE`/`NOT-ADMISSIBLE`,
//! `Pr=p/q`, `VALID`, a cause witness or `NONE`, `HOLDS`/`FAILS`, and
//! `PASS`/`FAIL` per law. Exit status is 0 when the verdict is positive,
//! 1 when negative and 2 on usage or validation errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::causality::{detect, CauseKind};
use crate::error::{Error, Result};
use crate::intervene::{do_intervention, InterventionSpec};
use crate::laws::{check_all, check_law, GeneratorConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::model::{load_team_file, CausalTeam};
use crate::prob::{check_markov_axiom, check_markov_condition, conditional_probability, decimal, probability_of, Probability};
use crate::semantics::{satisfies, satisfies_admissible, satisfies_falsifiable};
use crate::syntax::parse;

#[derive(Debug, Parser)]
#[command(name = "causal-teams", version, about = "Model checker for causal teams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Standard,
    Falsifiable,
    Admissible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MarkovCheck {
    Axiom,
    Condition,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a team file and check the causal-team conditions.
    Validate { file: PathBuf },
    /// Evaluate a formula on a team.
    Check {
        file: PathBuf,
        formula: String,
        #[arg(long, value_enum, default_value_t = Mode::Standard)]
        mode: Mode,
    },
    /// Apply an intervention and print or save the resulting team.
    Intervene {
        file: PathBuf,
        /// Bindings such as `X=1,Y=2`.
        #[arg(long = "do", value_name = "BINDINGS")]
        bindings: String,
        out: Option<PathBuf>,
    },
    /// Probability of a formula, or a conditional probability.
    Prob {
        file: PathBuf,
        formula: Option<String>,
        #[arg(long, conflicts_with = "formula")]
        cond: Option<String>,
        #[arg(long)]
        given: Option<String>,
        #[arg(long)]
        decimal: bool,
    },
    /// Search for a causal relation of the given kind (DC, TC, PDC, PTC, CC).
    Cause {
        file: PathBuf,
        kind: String,
        cause: String,
        effect: String,
    },
    /// Check the Markov Axiom Scheme or the Markov Condition.
    Markov {
        file: PathBuf,
        #[arg(value_enum)]
        check: MarkovCheck,
    },
    /// Run the law harness.
    Laws {
        #[arg(long = "law")]
        law: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(positive) => i32::from(!positive),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn load(path: &Path) -> Result<CausalTeam> {
    load_team_file(path)
}

fn show(p: Probability, as_decimal: bool) -> String {
    if as_decimal {
        decimal(p)
    } else {
        p.to_string()
    }
}

/// Runs a parsed command; `Ok(true)` for a positive verdict.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Validate { file } => {
            let t = load(file)?;
            writeln!(
                out,
                "VALID {} variables, {} rows, {} mode",
                t.len_vars(),
                t.rows().len(),
                if t.is_multiteam() { "multi" } else { "set" }
            )
            .map_err(io)?;
            Ok(true)
        }
        Command::Check { file, formula, mode } => {
            let t = load(file)?;
            let phi = parse(formula)?;
            let (verdict, yes, no) = match mode {
                Mode::Standard => (satisfies(&t, &phi)?, "SAT", "UNSAT"),
                Mode::Falsifiable => (satisfies_falsifiable(&t, &phi)?, "FALSIFIABLE", "NOT-FALSIFIABLE"),
                Mode::Admissible => (satisfies_admissible(&t, &phi)?, "ADMISSIBLE", "NOT-ADMISSIBLE"),
            };
            writeln!(out, "{}", if verdict.satisfied { yes } else { no }).map_err(io)?;
            if let Some(w) = verdict.witness {
                writeln!(out, "{w}").map_err(io)?;
            }
            Ok(verdict.satisfied)
        }
        Command::Intervene { file, bindings, out: target } => {
            let t = load(file)?;
            let spec = InterventionSpec::parse(bindings)?;
            let json = do_intervention(&t, &spec)?.to_json();
            match target {
                Some(path) => {
                    std::fs::write(path, json).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    writeln!(out, "WROTE {}", path.display()).map_err(io)?;
                }
                None => write!(out, "{json}").map_err(io)?,
            }
            Ok(true)
        }
        Command::Prob {
            file,
            formula,
            cond,
            given,
            decimal,
        } => {
            let t = load(file)?.as_multiteam();
            let target = formula
                .as_deref()
                .or(cond.as_deref())
                .ok_or_else(|| Error::Schema("prob needs a formula or --cond".into()))?;
            let target = parse(target)?;
            let p = match given {
                Some(g) => conditional_probability(&t, &target, &parse(g)?)?,
                None => probability_of(&t, &target)?,
            };
            writeln!(out, "Pr={}", show(p, *decimal)).map_err(io)?;
            Ok(true)
        }
        Command::Cause {
            file,
            kind,
            cause,
            effect,
        } => {
            let t = load(file)?;
            let k = CauseKind::parse(kind).ok_or_else(|| Error::Schema(format!("unknown cause kind {kind:?}")))?;
            match detect(&t, k, cause, effect)? {
                Some(w) => {
                    writeln!(out, "{w}").map_err(io)?;
                    Ok(true)
                }
                None => {
                    writeln!(out, "NONE {} {cause}->{effect}", k.tag()).map_err(io)?;
                    Ok(false)
                }
            }
        }
        Command::Markov { file, check } => {
            let t = load(file)?;
            let report = match check {
                MarkovCheck::Axiom => check_markov_axiom(&t)?,
                MarkovCheck::Condition => check_markov_condition(&t)?,
            };
            if report.holds {
                writeln!(out, "HOLDS checks={}", report.checks).map_err(io)?;
            } else {
                writeln!(out, "FAILS checks={}", report.checks).map_err(io)?;
                if let Some(v) = &report.violation {
                    writeln!(out, "{v}").map_err(io)?;
                }
            }
            Ok(report.holds)
        }
        Command::Laws { law, trials, seed } => {
            let cfg = GeneratorConfig {
                seed: *seed,
                ..GeneratorConfig::default()
            };
            let reports = match law {
                Some(id) => vec![check_law(id, &cfg, *trials)?],
                None => check_all(&cfg, *trials)?,
            };
            for r in &reports {
                writeln!(out, "{r}").map_err(io)?;
            }
            Ok(reports.iter().all(|r| r.passed()))
        }
    }
}
