use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("unknown variable '{name}' at line {line}, column {column}")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("mixed context at line {line}, column {column}: {message}")]
    MixedContext {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Lib(#[from] folichar_core::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "SyntaxError",
            CliError::UnknownVariable { .. } => "UnknownVariable",
            CliError::MixedContext { .. } => "MixedContext",
            CliError::Usage(_) => "Usage",
            CliError::Io { .. } => "Io",
            CliError::Lib(e) if e.is_budget() => "BudgetExceeded",
            CliError::Lib(_) => "ComputationError",
        }
    }

    /// 3 for an exhausted step budget, 2 for every other failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_budget() => 3,
            _ => 2,
        }
    }

    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            CliError::Syntax { line, column, .. }
            | CliError::UnknownVariable { line, column, .. }
            | CliError::MixedContext { line, column, .. } => Some((*line, *column)),
            _ => None,
        }
    }
}

impl From<folichar_core::PolyError> for CliError {
    fn from(e: folichar_core::PolyError) -> Self {
        CliError::Lib(e.into())
    }
}
