use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator `{0}` has a nonzero constant term")]
    ConstantTerm(String),
    #[error("ideal is not primary to the maximal ideal: {0}")]
    NotMPrimary(String),
    #[error("Groebner basis computation exceeded degree cap {0}")]
    DegreeCap(u32),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    UnsupportedField(u64),
    #[error("operation requires a nonzero module")]
    ZeroModule,
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("budget exceeded in {what}: {needed} field elements requested, cap {cap}")]
    BudgetExceeded { what: String, needed: u64, cap: u64 },
    #[error("sequence of length {0} is too short")]
    TooShort(usize),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("corpus error: {0}")]
    Corpus(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
