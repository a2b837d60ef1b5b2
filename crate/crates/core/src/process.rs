//! Word probabilities, the stationary observed process, conditional
//! next-symbol distributions, and trajectory sampling.
//!
//! With the row-vector convention, observing symbol `s` sends an ensemble
//! `ρ` to `T(s)†·ρ·T(s)`, so the one-step ensemble update is
//! `E(ρ) = Σ_s T(s)†·ρ·T(s)`. The process is stationary exactly when
//! started from a fixed point of `E`, and the probability of a word
//! `w = s₁…s_L` is `Tr(ρ·M(w)·M(w)†)` with `M(w) = T(s₁)…T(s_L)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::generator::{Alphabet, QuantumGenerator};
use crate::linalg::{Complex64, ComplexMatrix, StateVector};
use crate::models::ClassicalGenerator;
use crate::rng::{select_index, Xoshiro256StarStar};

/// Convergence threshold for the stationary fixed-point iteration.
pub const DEFAULT_FIXPOINT_TOL: f64 = 1e-13;

/// Iteration cap for the stationary fixed-point search.
pub const DEFAULT_MAX_FIXPOINT_ITERATIONS: u64 = 1_000_000;

/// Probabilities at or below this threshold classify a word as forbidden.
pub const DEFAULT_FORBIDDEN_EPSILON: f64 = 1e-12;

/// Round-off allowance when clamping probabilities into [0, 1].
pub const DEFAULT_CLAMP_TOL: f64 = 1e-12;

/// Clamps a computed probability into [0, 1]. Overshoot beyond `tol` means
/// the inputs violate the model axioms somewhere; it is logged rather than
/// silently absorbed.
pub(crate) fn clamp_probability(p: f64, tol: f64) -> f64 {
    if p < 0.0 {
        if p < -tol {
            log::warn!("probability {p:.3e} undershoots 0 by more than {tol:.1e}; clamping");
        }
        0.0
    } else if p > 1.0 {
        if p > 1.0 + tol {
            log::warn!("probability {p:.3e} overshoots 1 by more than {tol:.1e}; clamping");
        }
        1.0
    } else {
        p
    }
}

/// Hermitian, positive-semidefinite, trace-one ensemble over internal
/// states.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace, and positive semidefiniteness
    /// (probed with a fixed set of pseudo-random vectors; the dimensions in
    /// play are far too small to warrant an eigensolver).
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.all_finite() {
            return Err(Error::NonFinite("density matrix".to_string()));
        }
        let hermitian_residual = matrix
            .frobenius_distance(&matrix.adjoint())
            .expect("same dim");
        if hermitian_residual > tol {
            return Err(Error::DensityAxiom {
                axiom: "hermitian",
                residual: hermitian_residual,
            });
        }
        let tr = matrix.trace();
        let trace_residual = ((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt();
        if trace_residual > tol {
            return Err(Error::DensityAxiom {
                axiom: "unit trace",
                residual: trace_residual,
            });
        }
        let mut rng = Xoshiro256StarStar::new(0x5EED_D017);
        let dim = matrix.dim();
        for _ in 0..32 {
            let probe = StateVector::new(
                (0..dim)
                    .map(|_| {
                        Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0)
                    })
                    .collect(),
            );
            let image = probe.apply(&matrix.adjoint()).expect("same dim");
            let q = probe.inner(&image).expect("same dim");
            let scale = probe.norm_sqr();
            if q.re / scale < -tol {
                return Err(Error::DensityAxiom {
                    axiom: "positive semidefinite",
                    residual: -q.re / scale,
                });
            }
        }
        Ok(Self { matrix })
    }

    /// `I/dim`, the maximally mixed ensemble.
    pub fn maximally_mixed(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim);
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        for i in 0..dim {
            m.set(i, i, w);
        }
        Self { matrix: m }
    }

    /// Rank-one ensemble `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let norm_sqr = psi.norm_sqr();
        if norm_sqr < 1e-24 {
            return Err(Error::ZeroStateVector);
        }
        let dim = psi.dim();
        let amps = psi.amplitudes();
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                // Row convention: the ket |ψ⟩ has components conj(ψ_i).
                m.set(i, j, amps[i].conj() * amps[j] / norm_sqr);
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }
}

/// A finite symbol sequence over some alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    symbols: Vec<char>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses a word, checking every symbol against the alphabet.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            alphabet.index_of(ch)?;
            symbols.push(ch);
        }
        Ok(Self { symbols })
    }

    pub fn from_symbols(symbols: Vec<char>) -> Self {
        Self { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn push(&mut self, symbol: char) {
        self.symbols.push(symbol);
    }

    /// True if `factor` occurs as a contiguous block of this word.
    pub fn contains_factor(&self, factor: &Word) -> bool {
        if factor.is_empty() {
            return true;
        }
        if factor.len() > self.len() {
            return false;
        }
        self.symbols
            .windows(factor.len())
            .any(|w| w == factor.symbols.as_slice())
    }

    /// All proper contiguous factors (every factor except the word itself).
    pub fn proper_factors(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.len();
        (1..n).flat_map(move |len| {
            (0..=n - len).map(move |start| Word::from_symbols(self.symbols[start..start + len].to_vec()))
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `M(w) = T(s₁)·T(s₂)·…·T(s_L)`; the identity for the empty word.
pub fn word_operator(generator: &QuantumGenerator, word: &Word) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::identity(generator.dim());
    for &s in word.symbols() {
        m = m.mat_mul(generator.transition(s)?)?;
    }
    Ok(m)
}

/// Word probability from a pure start: `⟨ψ|M(w)M(w)†|ψ⟩`, evaluated by
/// propagating the unnormalized row vector.
pub fn word_probability_pure(
    generator: &QuantumGenerator,
    start: &StateVector,
    word: &Word,
) -> Result<f64> {
    if start.dim() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            actual: start.dim(),
        });
    }
    let mut psi = start.clone();
    for &s in word.symbols() {
        psi = psi.apply(generator.transition(s)?)?;
    }
    Ok(clamp_probability(psi.norm_sqr(), DEFAULT_CLAMP_TOL))
}

/// Word probability from an ensemble start: `Tr(ρ·M(w)·M(w)†)`, evaluated
/// by propagating `σ ← T(s)†·σ·T(s)`. Reduces to the pure-state form when
/// `ρ = |ψ⟩⟨ψ|`.
pub fn word_probability(
    generator: &QuantumGenerator,
    start: &DensityMatrix,
    word: &Word,
) -> Result<f64> {
    if start.dim() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            actual: start.dim(),
        });
    }
    let mut sigma = start.matrix().clone();
    for &s in word.symbols() {
        sigma = sigma.conjugate_with(generator.transition(s)?)?;
    }
    Ok(clamp_probability(sigma.trace().re, DEFAULT_CLAMP_TOL))
}

/// One application of the ensemble map `E(ρ) = Σ_s T(s)†·ρ·T(s)`.
pub fn ensemble_step(generator: &QuantumGenerator, rho: &DensityMatrix) -> DensityMatrix {
    let dim = generator.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for idx in 0..generator.alphabet().len() {
        let t = generator.transition_by_index(idx);
        let term = rho.matrix().conjugate_with(t).expect("same dim");
        out = out.add(&term).expect("same dim");
    }
    DensityMatrix::from_matrix_unchecked(out)
}

/// Stationary ensemble: the fixed point of `E`, found by power iteration
/// from the maximally mixed state at default tolerances.
pub fn stationary_state(generator: &QuantumGenerator) -> Result<DensityMatrix> {
    stationary_state_from(
        generator,
        DensityMatrix::maximally_mixed(generator.dim()),
        DEFAULT_FIXPOINT_TOL,
        DEFAULT_MAX_FIXPOINT_ITERATIONS,
    )
}

/// Power iteration of `E` from an arbitrary starting ensemble. The trace
/// is renormalized each step to absorb round-off drift.
pub fn stationary_state_from(
    generator: &QuantumGenerator,
    start: DensityMatrix,
    fixpoint_tol: f64,
    max_iterations: u64,
) -> Result<DensityMatrix> {
    if start.dim() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            actual: start.dim(),
        });
    }
    let mut rho = start;
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iterations {
        let mut next = ensemble_step(generator, &rho);
        let tr = next.matrix.trace().re;
        if tr > 0.0 {
            next = DensityMatrix::from_matrix_unchecked(
                next.matrix.scale(Complex64::new(1.0 / tr, 0.0)),
            );
        }
        residual = next
            .matrix
            .frobenius_distance(&rho.matrix)
            .expect("same dim");
        rho = next;
        if residual < fixpoint_tol {
            return Ok(rho);
        }
        let _ = iteration;
    }
    Err(Error::NonConvergence {
        iterations: max_iterations,
        residual,
    })
}

/// Next-symbol distribution from a pure state: `s ↦ ‖⟨ψ|T(s)‖²`, in
/// alphabet order, normalized by `⟨ψ|ψ⟩` so the values sum to one.
pub fn conditional_distribution(
    generator: &QuantumGenerator,
    psi: &StateVector,
) -> Result<Vec<(char, f64)>> {
    let norm_sqr = psi.norm_sqr();
    if norm_sqr < 1e-24 {
        return Err(Error::ZeroStateVector);
    }
    generator
        .alphabet()
        .symbols()
        .iter()
        .map(|&s| {
            let w = generator.step_unnormalized(psi, s)?.norm_sqr() / norm_sqr;
            Ok((s, clamp_probability(w, DEFAULT_CLAMP_TOL)))
        })
        .collect()
}

/// Next-symbol distribution from an ensemble: `s ↦ Tr(T(s)†·ρ·T(s))`.
pub fn next_symbol_distribution(
    generator: &QuantumGenerator,
    rho: &DensityMatrix,
) -> Result<Vec<(char, f64)>> {
    if rho.dim() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            actual: rho.dim(),
        });
    }
    let trace = rho.matrix().trace().re;
    if trace <= 0.0 {
        return Err(Error::ZeroStateVector);
    }
    Ok(generator
        .alphabet()
        .symbols()
        .iter()
        .enumerate()
        .map(|(idx, &s)| {
            let t = generator.transition_by_index(idx);
            let w = rho.matrix().conjugate_with(t).expect("same dim").trace().re / trace;
            (s, clamp_probability(w, DEFAULT_CLAMP_TOL))
        })
        .collect())
}

/// Samples `n` symbols by repeated measurement of a pure state, starting
/// from `start` (normalized on entry). Deterministic for a given seed:
/// one uniform draw per step, symbol chosen by cumulative sums in alphabet
/// order with strict inequality.
pub fn sample_trajectory(
    generator: &QuantumGenerator,
    start: &StateVector,
    n: usize,
    seed: u64,
) -> Result<Word> {
    if start.dim() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            actual: start.dim(),
        });
    }
    let mut psi = start.normalized()?;
    let mut rng = Xoshiro256StarStar::new(seed);
    let symbols = generator.alphabet().symbols();
    let mut word = Word::empty();
    let mut weights = vec![0.0; symbols.len()];
    for _ in 0..n {
        let mut images = Vec::with_capacity(symbols.len());
        for (idx, w) in weights.iter_mut().enumerate() {
            let image = psi
                .apply(generator.transition_by_index(idx))
                .expect("same dim");
            *w = image.norm_sqr();
            images.push(image);
        }
        let choice = select_index(&weights, rng.next_f64());
        let p = weights[choice];
        psi = images
            .swap_remove(choice)
            .scale(Complex64::new(1.0 / p.sqrt(), 0.0));
        word.push(symbols[choice]);
    }
    Ok(word)
}

/// Samples `n` symbols of the observed process started in the ensemble
/// `rho` (typically the stationary state), tracking the conditional
/// ensemble instead of a pure state. Same draw rule as
/// [`sample_trajectory`].
pub fn sample_stationary(
    generator: &QuantumGenerator,
    rho: &DensityMatrix,
    n: usize,
    seed: u64,
) -> Result<Word> {
    if rho.dim() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            actual: rho.dim(),
        });
    }
    let mut sigma = rho.matrix().clone();
    let mut rng = Xoshiro256StarStar::new(seed);
    let symbols = generator.alphabet().symbols();
    let mut word = Word::empty();
    let mut weights = vec![0.0; symbols.len()];
    for _ in 0..n {
        let trace = sigma.trace().re;
        let mut images = Vec::with_capacity(symbols.len());
        for (idx, w) in weights.iter_mut().enumerate() {
            let image = sigma
                .conjugate_with(generator.transition_by_index(idx))
                .expect("same dim");
            *w = image.trace().re / trace;
            images.push(image);
        }
        let choice = select_index(&weights, rng.next_f64());
        let p = weights[choice] * trace;
        sigma = images.swap_remove(choice).scale(Complex64::new(1.0 / p, 0.0));
        word.push(symbols[choice]);
    }
    Ok(word)
}

/// A process that assigns probabilities to symbol words: a quantum
/// generator with a stationary or pure start, or a classical labeled
/// Markov chain. Enumeration walks prefixes incrementally, so extending a
/// prefix costs one small matrix (or vector) product.
pub enum WordSource<'a> {
    Stationary {
        generator: &'a QuantumGenerator,
        density: DensityMatrix,
    },
    Pure {
        generator: &'a QuantumGenerator,
        start: StateVector,
    },
    Classical { generator: &'a ClassicalGenerator },
}

/// Incremental prefix state carried by [`WordSource`] walks.
#[derive(Clone)]
pub(crate) enum SourcePrefix {
    Sigma(ComplexMatrix),
    Vector(StateVector),
    Weights(Vec<f64>),
}

impl<'a> WordSource<'a> {
    /// Stationary-start process for a quantum generator.
    pub fn stationary(generator: &'a QuantumGenerator) -> Result<Self> {
        Ok(Self::Stationary {
            generator,
            density: stationary_state(generator)?,
        })
    }

    /// Quantum process started from a given ensemble.
    pub fn from_density(generator: &'a QuantumGenerator, density: DensityMatrix) -> Result<Self> {
        if density.dim() != generator.dim() {
            return Err(Error::DimensionMismatch {
                expected: generator.dim(),
                actual: density.dim(),
            });
        }
        Ok(Self::Stationary { generator, density })
    }

    /// Quantum process started from a pure state (normalized on entry).
    pub fn pure(generator: &'a QuantumGenerator, start: &StateVector) -> Result<Self> {
        if start.dim() != generator.dim() {
            return Err(Error::DimensionMismatch {
                expected: generator.dim(),
                actual: start.dim(),
            });
        }
        Ok(Self::Pure {
            generator,
            start: start.normalized()?,
        })
    }

    /// Classical oracle process from its stationary distribution.
    pub fn classical(generator: &'a ClassicalGenerator) -> Self {
        Self::Classical { generator }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Self::Stationary { generator, .. } => generator.alphabet(),
            Self::Pure { generator, .. } => generator.alphabet(),
            Self::Classical { generator } => generator.alphabet(),
        }
    }

    pub(crate) fn root(&self) -> SourcePrefix {
        match self {
            Self::Stationary { density, .. } => SourcePrefix::Sigma(density.matrix().clone()),
            Self::Pure { start, .. } => SourcePrefix::Vector(start.clone()),
            Self::Classical { generator } => {
                SourcePrefix::Weights(generator.stationary().to_vec())
            }
        }
    }

    pub(crate) fn extend(&self, prefix: &SourcePrefix, symbol_index: usize) -> SourcePrefix {
        match (self, prefix) {
            (Self::Stationary { generator, .. }, SourcePrefix::Sigma(sigma)) => {
                SourcePrefix::Sigma(
                    sigma
                        .conjugate_with(generator.transition_by_index(symbol_index))
                        .expect("same dim"),
                )
            }
            (Self::Pure { generator, .. }, SourcePrefix::Vector(psi)) => SourcePrefix::Vector(
                psi.apply(generator.transition_by_index(symbol_index))
                    .expect("same dim"),
            ),
            (Self::Classical { generator }, SourcePrefix::Weights(weights)) => {
                SourcePrefix::Weights(generator.propagate(weights, symbol_index))
            }
            _ => unreachable!("prefix kind always matches its source"),
        }
    }

    pub(crate) fn prefix_probability(&self, prefix: &SourcePrefix) -> f64 {
        let raw = match prefix {
            SourcePrefix::Sigma(sigma) => sigma.trace().re,
            SourcePrefix::Vector(psi) => psi.norm_sqr(),
            SourcePrefix::Weights(weights) => weights.iter().sum(),
        };
        clamp_probability(raw, DEFAULT_CLAMP_TOL)
    }

    /// Probability of a single word.
    pub fn word_probability(&self, word: &Word) -> Result<f64> {
        let alphabet = self.alphabet();
        let mut prefix = self.root();
        for &s in word.symbols() {
            prefix = self.extend(&prefix, alphabet.index_of(s)?);
        }
        Ok(self.prefix_probability(&prefix))
    }
}
