use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("element {element} does not belong to {structure}")]
    ForeignElement { element: String, structure: String },

    #[error("not an absorption monoid: {0}")]
    NotAMonoid(String),

    #[error("not a sub-monoid: {0}")]
    NotASubmonoid(String),

    #[error("not a morphism: {0}")]
    NotAMorphism(String),

    #[error("not a sub-module: {0}")]
    NotASubmodule(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("scalar mismatch: module scalars are {found}, expected {expected}")]
    ScalarMismatch { expected: String, found: String },

    #[error("transition system is nondeterministic at ({state}, {letter})")]
    Nondeterministic { state: String, letter: String },

    #[error("scalars are not a free absorption monoid")]
    ScalarsNotFree,

    #[error("construction needs finite inputs: {0}")]
    InfiniteInput(String),

    #[error("normalization budget of {0} rewrite steps exceeded")]
    BudgetExceeded(usize),

    #[error("construction is not closed: {0}")]
    NotClosed(String),

    #[error("map is not injective: {0}")]
    NotInjective(String),

    #[error("map is not a d-map: {0}")]
    NotADMap(String),

    #[error("allowed swap cell {cell:?} is sent onto a forbidden cell")]
    SwapViolation { cell: (u32, u32) },

    #[error("index {index} out of range (must be {bound})")]
    IndexOutOfRange { index: usize, bound: String },

    #[error("invalid simplex point: {0}")]
    InvalidSimplexPoint(String),

    #[error("{}line {line}: {message}", file.as_ref().map(|f| format!("{f}: ")).unwrap_or_default())]
    Parse {
        file: Option<String>,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn foreign(element: impl ToString, structure: impl ToString) -> Self {
        Error::ForeignElement {
            element: element.to_string(),
            structure: structure.to_string(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: None,
            line,
            message: message.into(),
        }
    }
}
