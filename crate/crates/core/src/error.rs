use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported algebra `{0}`: only simply-laced A_n (n>=2), D_n (n>=4), E6, E7, E8 are accepted")]
    UnsupportedAlgebra(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("element has components outside the Levi factor")]
    NotInLevi,
    #[error("root {0} does not lie in V+")]
    NotInVplus(String),
    #[error("element has components outside V-")]
    NotInVminus,
    #[error("root {0} is not a generator of the opposite nilradical")]
    LetterNotInNbar(String),
    #[error("infinitesimal-character equation is degenerate (linear coefficient vanishes)")]
    DegenerateCharacterEquation,
    #[error("span is not stable under the action: {0}")]
    NotInvariant(String),
    #[error("structure table failed its consistency check: {0}")]
    Inconsistent(String),
    #[error("structure-constant cache is corrupt (line {line}): {reason}")]
    CacheCorrupt { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
