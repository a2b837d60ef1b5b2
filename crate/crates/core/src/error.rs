//! Crate-wide error type.

use thiserror::Error;

use crate::generator::AxiomKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("duplicate symbol '{0}'")]
    DuplicateSymbol(char),

    #[error("symbol '{0}' is not in the alphabet")]
    UnknownSymbol(char),

    #[error("alphabets differ; both processes must share one alphabet")]
    AlphabetMismatch,

    #[error("no projector supplied for symbol '{0}'")]
    MissingProjector(char),

    #[error("non-finite entry in {0}")]
    NonFinite(String),

    #[error("state vector has (near-)zero norm and cannot be normalized")]
    ZeroStateVector,

    #[error("unitarity violated: ||U\u{2020}U - I||_F = {residual:.3e}")]
    Unitarity { residual: f64 },

    #[error("projector axiom '{axiom}' violated for symbol(s) {symbols:?}: residual {residual:.3e}")]
    ProjectorAxiom {
        axiom: AxiomKind,
        symbols: Vec<char>,
        residual: f64,
    },

    #[error("outcome '{symbol}' has probability {probability:.3e}, below the renormalization threshold")]
    ForbiddenOutcome { symbol: char, probability: f64 },

    #[error("fixed-point iteration did not converge after {iterations} iterations (last residual {residual:.3e})")]
    NonConvergence { iterations: u64, residual: f64 },

    #[error("{words} words of length {length} exceed the enumeration cap {cap}; use a smaller length or raise the cap")]
    CapExceeded {
        words: u128,
        length: usize,
        cap: u64,
    },

    #[error("density matrix axiom '{axiom}' violated: residual {residual:.3e}")]
    DensityAxiom { axiom: &'static str, residual: f64 },

    #[error("classical generator axiom '{axiom}' violated: residual {residual:.3e}")]
    ClassicalAxiom { axiom: &'static str, residual: f64 },

    #[error("model file: {0}")]
    ModelFile(String),
}
