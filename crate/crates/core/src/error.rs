use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("graph has a directed cycle through {0}")]
    CyclicGraph(String),
    #[error("condition (b) violated for {variable}: rows {first} and {second} agree on the parents but not on {variable}")]
    ConditionB {
        variable: String,
        first: usize,
        second: usize,
    },
    #[error("condition (c) violated for {variable} in row {row}: function table says {expected}, row has {found}")]
    ConditionC {
        variable: String,
        row: usize,
        expected: String,
        found: String,
    },
    #[error("value {value} is not in the range of {variable}")]
    RangeViolation { variable: String, value: String },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("inconsistent intervention: {0} receives two different values")]
    InconsistentSpec(String),
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("antecedent of => must be classical (atoms, & and | only)")]
    AntecedentNotClassical,
    #[error("antecedent of []-> must be a conjunction of equalities")]
    AntecedentNotConjunctionOfEq,
    #[error("formula is not in the causal-observational fragment")]
    NotInCO,
    #[error("formal term in column {0}; use the falsifiable or admissible relation")]
    FormalTermEncountered(String),
    #[error("cover search over {rows} rows exceeds the cap of {cap}")]
    TeamTooLargeForSplit { rows: usize, cap: usize },
    #[error("connective not supported by this relation: {0}")]
    UnsupportedConnective(String),
    #[error("formula shape not supported: {0}")]
    NotSupportedShape(String),
    #[error("probability on the empty team is undefined")]
    EmptyTeam,
    #[error("conditioning event has probability zero")]
    ZeroCondition,
    #[error("domain of {vars} variables exceeds the cap of {cap}")]
    DomainTooLarge { vars: usize, cap: usize },
    #[error("team is not parametric: table of {0} is partial")]
    NotParametric(String),
    #[error("search space of {size} candidates exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("unknown law {0}")]
    UnknownLaw(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
