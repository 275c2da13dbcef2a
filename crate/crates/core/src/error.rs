use thiserror::Error;

/// Errors produced while parsing, validating or analysing automata.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unknown state `{name}`")]
    UnknownState { line: usize, name: String },

    #[error("line {line}: duplicate state `{name}`")]
    DuplicateState { line: usize, name: String },

    #[error("state `{0}`: output row is not a permutation of the alphabet")]
    BadPermutation(String),

    #[error("missing `alphabet` declaration")]
    MissingAlphabet,

    #[error("state `{0}`: output permutation is not a power of the cycle (0 1 ... k-1)")]
    NotCyclic(String),

    #[error("symbol at position {position} is outside the alphabet")]
    BadSymbol { position: usize },

    #[error("alphabet sizes differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("label component {component} out of range ({components} components)")]
    BadComponent { component: usize, components: usize },

    #[error("denominator constant term {constant} is not a unit mod {modulus}")]
    NonUnitConstantTerm { constant: u64, modulus: u64 },

    #[error("abelian moduli differ: {0:?} vs {1:?}")]
    ModuliMismatch(Vec<u64>, Vec<u64>),

    #[error("no initial state designated")]
    MissingInitial,

    #[error("operation requires a binary alphabet, got k = {0}")]
    NotBinary(usize),

    #[error("level {level} has more than {cap} words")]
    LevelTooLarge { level: usize, cap: u64 },

    #[error("cycle detection visited {0} vectors without repeating")]
    CycleCapExceeded(usize),

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
