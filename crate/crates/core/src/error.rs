use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported prime {0} (supported: 2, 3, 5)")]
    UnsupportedPrime(u8),
    #[error("unsupported dimension {0} (supported: 2..=6)")]
    UnsupportedDimension(usize),
    #[error("entry {value} is not a residue modulo {p}")]
    EntryOutOfRange { value: u64, p: u8 },
    #[error("operands disagree on shape or characteristic: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree {0} is out of range")]
    Degree(usize),
    #[error("matrix code {value} is out of range (must be < {p}^{digits})")]
    CodeOutOfRange { value: u128, p: u8, digits: usize },
    #[error("position {position} is out of range 1..={n}")]
    Position { position: usize, n: usize },
    #[error("first column of the matrix is not e_{position}")]
    FirstColumn { position: usize },
    #[error("cube is not a presemifield")]
    NotPresemifield,
    #[error("not a semifield: {0}")]
    NotSemifield(String),
    #[error("argument must be a nonzero element")]
    ZeroElement,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
