//! The quantum finite-state generator type and its structural axioms.
//!
//! A generator couples a unitary evolution operator `U` with one projector
//! `P(s)` per output symbol. Construction validates every axiom the model
//! relies on: `U` unitary, each `P(s)` Hermitian and idempotent, distinct
//! projectors orthogonal, and the family complete (`Σ_s P(s) = I`).
//! Completeness is what makes the word probabilities a distribution.
//! Transition operators `T(s) = U·P(s)` are derived once and cached.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, StateVector};

/// Default tolerance for the structural axiom checks.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-10;

/// Probabilities below this (relative to 1) cannot be renormalized.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-12;

/// Ordered set of distinct single-character output symbols. The declared
/// order fixes word ordering everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, &s) in symbols.iter().enumerate() {
            if symbols[..i].contains(&s) {
                return Err(Error::DuplicateSymbol(s));
            }
        }
        Ok(Self { symbols })
    }

    /// The binary alphabet `0`, `1` used by all built-in models.
    pub fn binary() -> Self {
        Self {
            symbols: vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one symbol
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: char) -> Result<usize> {
        self.symbols
            .iter()
            .position(|&s| s == symbol)
            .ok_or(Error::UnknownSymbol(symbol))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Which structural axiom a validation check covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Unitarity,
    Hermitian,
    Idempotent,
    Orthogonal,
    Complete,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AxiomKind::Unitarity => "unitarity",
            AxiomKind::Hermitian => "hermitian",
            AxiomKind::Idempotent => "idempotent",
            AxiomKind::Orthogonal => "orthogonal",
            AxiomKind::Complete => "complete",
        };
        write!(f, "{name}")
    }
}

/// One axiom check with its measured residual.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub kind: AxiomKind,
    /// Symbols involved; empty for unitarity and completeness.
    pub symbols: Vec<char>,
    pub residual: f64,
    pub pass: bool,
}

impl AxiomCheck {
    pub fn label(&self) -> String {
        match self.kind {
            AxiomKind::Unitarity => "unitarity U\u{2020}U = I".to_string(),
            AxiomKind::Hermitian => format!("P('{}') hermitian", self.symbols[0]),
            AxiomKind::Idempotent => format!("P('{}') idempotent", self.symbols[0]),
            AxiomKind::Orthogonal => format!(
                "P('{}')\u{00b7}P('{}') orthogonal",
                self.symbols[0], self.symbols[1]
            ),
            AxiomKind::Complete => "completeness \u{03a3} P(s) = I".to_string(),
        }
    }
}

/// Full set of axiom checks run against a candidate generator.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub tol: f64,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// A validated quantum finite-state generator. Immutable after
/// construction; all operations on it are pure.
#[derive(Debug, Clone)]
pub struct QuantumGenerator {
    dim: usize,
    alphabet: Alphabet,
    unitary: ComplexMatrix,
    projectors: Vec<ComplexMatrix>,
    transitions: Vec<ComplexMatrix>,
}

impl QuantumGenerator {
    /// Validates the axioms at the default tolerance and builds the
    /// generator, caching `T(s) = U·P(s)`.
    pub fn build(
        dim: usize,
        alphabet: Alphabet,
        unitary: ComplexMatrix,
        projectors: Vec<(char, ComplexMatrix)>,
    ) -> Result<Self> {
        Self::build_with_tol(dim, alphabet, unitary, projectors, DEFAULT_VALIDATION_TOL)
    }

    pub fn build_with_tol(
        dim: usize,
        alphabet: Alphabet,
        unitary: ComplexMatrix,
        projectors: Vec<(char, ComplexMatrix)>,
        tol: f64,
    ) -> Result<Self> {
        let ordered = order_projectors(dim, &alphabet, &unitary, &projectors)?;
        let report = run_axiom_checks(&alphabet, &unitary, &ordered, tol);
        if let Some(fail) = report.first_failure() {
            return Err(match fail.kind {
                AxiomKind::Unitarity => Error::Unitarity {
                    residual: fail.residual,
                },
                kind => Error::ProjectorAxiom {
                    axiom: kind,
                    symbols: fail.symbols.clone(),
                    residual: fail.residual,
                },
            });
        }
        let transitions: Vec<ComplexMatrix> = ordered
            .iter()
            .map(|p| unitary.mat_mul(p).expect("dimensions checked above"))
            .collect();
        // Unitarity plus the projector axioms force every transition
        // amplitude into the closed unit disk.
        debug_assert!(transitions
            .iter()
            .all(|t| t.max_abs_entry() <= 1.0 + tol));
        Ok(Self {
            dim,
            alphabet,
            unitary,
            projectors: ordered,
            transitions,
        })
    }

    /// Runs every axiom check and reports all residuals without failing.
    pub fn validation_report(
        dim: usize,
        alphabet: &Alphabet,
        unitary: &ComplexMatrix,
        projectors: &[(char, ComplexMatrix)],
        tol: f64,
    ) -> Result<ValidationReport> {
        let ordered = order_projectors(dim, alphabet, unitary, projectors)?;
        Ok(run_axiom_checks(alphabet, unitary, &ordered, tol))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn projector(&self, symbol: char) -> Result<&ComplexMatrix> {
        Ok(&self.projectors[self.alphabet.index_of(symbol)?])
    }

    pub fn transition(&self, symbol: char) -> Result<&ComplexMatrix> {
        Ok(&self.transitions[self.alphabet.index_of(symbol)?])
    }

    pub(crate) fn transition_by_index(&self, index: usize) -> &ComplexMatrix {
        &self.transitions[index]
    }

    /// One unrenormalized step: `⟨ψ|·T(s)`. The squared norm of the result
    /// is the probability weight of outcome `s` from `ψ`.
    pub fn step_unnormalized(&self, psi: &StateVector, symbol: char) -> Result<StateVector> {
        let idx = self.alphabet.index_of(symbol)?;
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: psi.dim(),
            });
        }
        psi.apply(&self.transitions[idx])
    }

    /// One measured step: the renormalized post-outcome state together
    /// with the outcome probability. An outcome whose weight falls below
    /// the zero threshold cannot occur and cannot be renormalized.
    pub fn step_normalized(&self, psi: &StateVector, symbol: char) -> Result<(StateVector, f64)> {
        let unnormalized = self.step_unnormalized(psi, symbol)?;
        let p = unnormalized.norm_sqr();
        if p < DEFAULT_ZERO_THRESHOLD {
            return Err(Error::ForbiddenOutcome {
                symbol,
                probability: p,
            });
        }
        let state = unnormalized.scale(Complex64::new(1.0 / p.sqrt(), 0.0));
        Ok((state, p.min(1.0)))
    }
}

fn order_projectors(
    dim: usize,
    alphabet: &Alphabet,
    unitary: &ComplexMatrix,
    projectors: &[(char, ComplexMatrix)],
) -> Result<Vec<ComplexMatrix>> {
    if dim == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    if unitary.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: unitary.dim(),
        });
    }
    if !unitary.all_finite() {
        return Err(Error::NonFinite("unitary".to_string()));
    }
    let mut ordered: Vec<Option<ComplexMatrix>> = vec![None; alphabet.len()];
    for (symbol, matrix) in projectors {
        let idx = alphabet.index_of(*symbol)?;
        if ordered[idx].is_some() {
            return Err(Error::DuplicateSymbol(*symbol));
        }
        if matrix.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: matrix.dim(),
            });
        }
        if !matrix.all_finite() {
            return Err(Error::NonFinite(format!("projector for '{symbol}'")));
        }
        ordered[idx] = Some(matrix.clone());
    }
    ordered
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or(Error::MissingProjector(alphabet.symbol(i))))
        .collect()
}

fn run_axiom_checks(
    alphabet: &Alphabet,
    unitary: &ComplexMatrix,
    projectors: &[ComplexMatrix],
    tol: f64,
) -> ValidationReport {
    let dim = unitary.dim();
    let identity = ComplexMatrix::identity(dim);
    let mut checks = Vec::new();

    let residual = unitary
        .adjoint()
        .mat_mul(unitary)
        .and_then(|m| m.frobenius_distance(&identity))
        .expect("square by construction");
    checks.push(AxiomCheck {
        kind: AxiomKind::Unitarity,
        symbols: vec![],
        residual,
        pass: residual <= tol,
    });

    for (i, p) in projectors.iter().enumerate() {
        let s = alphabet.symbol(i);
        let residual = p.frobenius_distance(&p.adjoint()).expect("same dim");
        checks.push(AxiomCheck {
            kind: AxiomKind::Hermitian,
            symbols: vec![s],
            residual,
            pass: residual <= tol,
        });
        let residual = p
            .mat_mul(p)
            .and_then(|sq| sq.frobenius_distance(p))
            .expect("same dim");
        checks.push(AxiomCheck {
            kind: AxiomKind::Idempotent,
            symbols: vec![s],
            residual,
            pass: residual <= tol,
        });
    }

    for i in 0..projectors.len() {
        for j in (i + 1)..projectors.len() {
            let residual = projectors[i]
                .mat_mul(&projectors[j])
                .expect("same dim")
                .frobenius_norm();
            checks.push(AxiomCheck {
                kind: AxiomKind::Orthogonal,
                symbols: vec![alphabet.symbol(i), alphabet.symbol(j)],
                residual,
                pass: residual <= tol,
            });
        }
    }

    let mut sum = ComplexMatrix::zeros(dim);
    for p in projectors {
        sum = sum.add(p).expect("same dim");
    }
    let residual = sum.frobenius_distance(&identity).expect("same dim");
    checks.push(AxiomCheck {
        kind: AxiomKind::Complete,
        symbols: vec![],
        residual,
        pass: residual <= tol,
    });

    ValidationReport { tol, checks }
}
