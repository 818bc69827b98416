use thiserror::Error;

/// Violations of the term and substitution invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("`{0}` is not a valid function symbol")]
    InvalidSymbol(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidVariable(String),
    #[error("variable {var} expects {expected}")]
    KindMismatch { var: String, expected: &'static str },
    #[error("sequence variable `{0}` cannot stand in term position")]
    SequenceInTermPosition(String),
    #[error("`{0}` is not a context (exactly one hole required)")]
    NotAContext(String),
    #[error("binding for {0} must be hole-free")]
    HoleInBinding(String),
}
