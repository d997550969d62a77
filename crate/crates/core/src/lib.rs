//! Causal team semantics: interventions, counterfactual and probabilistic
//! formulas, causal notions and a law-checking harness.

pub mod causality;
pub mod cli;
pub mod error;
pub mod graph;
pub mod intervene;
pub mod laws;
pub mod model;
pub mod prob;
pub mod semantics;
pub mod syntax;

pub use error::{Error, Result};
pub use graph::Dag;
pub use intervene::{do_intervention, InterventionSpec};
pub use model::{load_team, load_team_file, Atom, CausalTeam, Row, TeamBuilder, TeamMode, Term, Value};
pub use prob::Probability;
pub use semantics::{satisfies, satisfies_admissible, satisfies_falsifiable, satisfies_with, EvalOptions, Verdict};
pub use syntax::{complement, parse, Formula, Fragment, Rel};
