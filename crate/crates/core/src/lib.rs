//! Simulation and analysis of finite-state quantum generators.
//!
//! A generator is a finite-dimensional quantum system driven by a unitary
//! `U` and measured at every step by a complete family of orthogonal
//! projectors `{P(s)}`, one per output symbol. Each step applies the
//! transition operator `T(s) = U·P(s)` to a row state vector and emits the
//! symbol `s` of the observed outcome. The crate computes exact
//! probabilities of measurement-outcome words, the stationary observed
//! process, forbidden-word structure, block entropies, and word-density
//! data, and ships the two built-in spin-1 models (`spin1-y`, `spin1-x`)
//! together with classical labeled-Markov-chain oracles for cross-checking.
//!
//! Conventions used throughout:
//!
//! - states are row vectors `⟨ψ|`, updated on the right: `⟨ψ'| = ⟨ψ|·T(s)`;
//! - the probability of a word `w = s₁…s_L` is the squared norm of the
//!   unnormalized state `⟨ψ|·T(s₁)…T(s_L)`, or the corresponding trace form
//!   when the start is a density matrix;
//! - matrix equality is always tolerance-based, never bitwise.

pub mod error;
pub mod generator;
pub mod language;
pub mod linalg;
pub mod model_file;
pub mod models;
pub mod process;
pub mod rng;

pub use error::{Error, Result};
pub use generator::{Alphabet, AxiomCheck, AxiomKind, QuantumGenerator, ValidationReport};
pub use language::{
    block_entropy, entropy_profile, entropy_rate_estimate, enumerate_distribution, figure2_data,
    forbidden_words, EntropyPoint, Fig2Point, ForbiddenWordReport, LanguageOptions,
    WordDistribution,
};
pub use linalg::{Complex64, ComplexMatrix, StateVector};
pub use model_file::ModelFile;
pub use models::{
    classical_even, classical_golden_mean, classical_word_probability, compare_generators,
    max_word_deviation, sample_classical, spin1_generator, spin1_unitary, spin_operator,
    ClassicalGenerator, SpinAxis,
};
pub use process::{
    conditional_distribution, ensemble_step, next_symbol_distribution, sample_stationary,
    sample_trajectory, stationary_state, stationary_state_from, word_operator, word_probability,
    word_probability_pure, DensityMatrix, Word, WordSource,
};
pub use rng::Xoshiro256StarStar;
