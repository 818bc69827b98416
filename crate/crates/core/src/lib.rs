//! ρLog: a rule-based strategy language over unranked terms and hedges,
//! with sequence, function and context variables, strategy combinators and
//! proximity-based approximate matching.

pub mod degree;
pub mod engine;
pub mod error;
pub mod matching;
pub mod proximity;
pub mod subst;
pub mod syntax;
pub mod term;

pub use degree::Degree;
pub use engine::{
    load_program, Answer, Answers, ClauseDb, Engine, EngineConfig, EngineError, LoadError, Mode,
};
pub use error::ModelError;
pub use matching::{match_hedge, match_term, MatchError};
pub use proximity::{prox_match_hedge, ProximityRelation};
pub use subst::{compose_subst, Binding, Substitution};
pub use term::{
    apply_context, enumerate_contexts, Context, Head, Sequence, Symbol, Term, VarKind, VarName,
};
