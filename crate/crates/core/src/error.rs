use thiserror::Error;

/// Errors raised by the algebraic and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible ground sets: {0} vs {1}")]
    IncompatibleGroundSets(usize, usize),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("invalid Young diagram: {0}")]
    InvalidDiagram(String),
    #[error("box ({0}, {1}) lies outside the diagram")]
    BoxOutside(usize, usize),
    #[error("strand-count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size cap exceeded: {what} = {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("symplectic form requires even N (got N = {0})")]
    OddSymplecticDimension(usize),
    #[error("degenerate N: {0}")]
    DegenerateN(String),
    #[error("non-integer or non-semisimple spectrum: {0}")]
    NonIntegerEigenvalue(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("invalid stranded graph: {0}")]
    InvalidGraph(String),
    #[error("invalid propagator: {0}")]
    InvalidPropagator(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
