use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("literal 0 is not a literal")]
    ZeroLiteral,
    #[error("variable {0} is out of range")]
    VariableOutOfRange(i64),
    #[error("tautological clause: variable {var} occurs with both signs")]
    TautologicalClause { var: u32 },
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("clauses are not resolvable: {clashes} clashing literals")]
    NotResolvable { clashes: usize },
    #[error("operation needs at least one variable")]
    EmptyVariableSet,
    #[error("clause-set is not hitting")]
    NotHitting,
    #[error("clause-set is not an unsatisfiable hitting clause-set")]
    NotUnsatHitting,
    #[error("clause-set is not minimally unsatisfiable")]
    NotMu,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("variable {0} already occurs in the clause-set")]
    VariableCollision(u32),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid bounds function: {0}")]
    InvalidBoundsFunction(String),
    #[error("{n} variables exceed the limit of {limit}")]
    TooManyVariables { n: usize, limit: usize },
    #[error("malformed catalog: {0}")]
    Catalog(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::ParameterOutOfRange(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionViolated(msg.into())
}
