use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {family}{rank}: {constraint}")]
    InvalidType {
        family: String,
        rank: usize,
        constraint: &'static str,
    },
    #[error("unknown root system family `{0}`")]
    UnknownFamily(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("root index {0} out of range")]
    RootIndex(usize),
    #[error("({g:?}, root {root}) is not an extended root of the system")]
    NotInSystem { g: Vec<i64>, root: usize },
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
