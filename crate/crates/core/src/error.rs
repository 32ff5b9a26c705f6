use thiserror::Error;

use crate::quiver::RootVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: arrow `{arrow}` is a loop at vertex {vertex}; quivers must be loop-free")]
    Loop {
        line: usize,
        arrow: String,
        vertex: usize,
    },

    #[error("vertex {vertex} out of range 1..={vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),

    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("quiver is not of Dynkin type, so it has no maximal green sequence{}", format_growth(.growth))]
    NonDynkin { growth: Vec<(u64, usize)> },

    #[error("zero vector has no gcd")]
    ZeroVector,

    #[error("chain is not a maximal chain from the identity: {0}")]
    InvalidChain(String),

    #[error("word is not reduced: step {index} (simple {simple}) decreases length")]
    NonReduced { index: usize, simple: usize },

    #[error("word has length {length} but the longest element has length {expected}")]
    NotMaximal { length: usize, expected: usize },

    #[error("cover from {from} to {to} does not add exactly one root")]
    CoverNotSingleton { from: String, to: String },

    #[error("vertex sets of the two digraphs differ")]
    VertexSetMismatch,

    #[error("label set is not a torsion class of this lattice")]
    InvalidTorsionClass,

    #[error("charge {0} lies outside the closed upper half-plane")]
    OutsideHalfPlane(String),

    #[error("central charge is not discrete: roots {0} and {1} have equal phase")]
    NotDiscrete(RootVector, RootVector),

    #[error("invalid central charge: {0}")]
    InvalidCharge(String),

    #[error("field mismatch between representations")]
    FieldMismatch,

    #[error("representations live over different quivers")]
    QuiverMismatch,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("entry {0} is not defined in the field")]
    EntryNotInField(String),

    #[error("matrix for `{arrow}` has shape {actual:?}, expected {expected:?}")]
    ShapeMismatch {
        arrow: String,
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("representation does not satisfy the preprojective relations")]
    RelationsViolated,

    #[error("inconsistent input: Ext^1 dimension evaluates to {0}")]
    NegativeExt(i64),

    #[error("module is not a brick")]
    NotBrick,

    #[error("submodule enumeration refused: {0}")]
    EnumerationBound(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("unknown quiver `{0}`")]
    UnknownQuiver(String),
}

fn format_growth(growth: &[(u64, usize)]) -> String {
    if growth.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = growth
        .iter()
        .map(|(h, c)| format!("height<={h}: {c}"))
        .collect();
    format!("; real roots keep growing ({})", parts.join(", "))
}
