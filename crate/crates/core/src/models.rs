//! Built-in spin-1 generators and classical oracle chains.
//!
//! The spin-1 system evolves under a fixed rotation (y-axis by π/4, then
//! x-axis by π/2) and is measured through the yes/no observable
//! "is the squared spin component along a chosen axis zero?". Measuring
//! `J_y²` generates the Golden Mean process (no `00` factor); measuring
//! `J_x²` generates the Even process (1-blocks between 0s have even
//! length). The classical generators here present the same two languages
//! as labeled Markov chains and serve as independent oracles for the
//! quantum word statistics.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generator::{Alphabet, QuantumGenerator};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::process::{Word, WordSource};
use crate::rng::{select_index, Xoshiro256StarStar};

/// Measurement axis for the squared spin component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

impl fmt::Display for SpinAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinAxis::X => write!(f, "x"),
            SpinAxis::Y => write!(f, "y"),
            SpinAxis::Z => write!(f, "z"),
        }
    }
}

impl FromStr for SpinAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(SpinAxis::X),
            "y" | "Y" => Ok(SpinAxis::Y),
            "z" | "Z" => Ok(SpinAxis::Z),
            _ => Err(Error::ModelFile(format!("unknown spin axis '{s}'"))),
        }
    }
}

/// The spin-1 evolution operator: rotation around the y-axis by π/4
/// followed by rotation around the x-axis by π/2.
///
/// ```text
///        ( 1/√2  1/√2   0 )
///    U = (  0     0    -1 )
///        (-1/√2  1/√2   0 )
/// ```
pub fn spin1_unitary() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[
        vec![s, s, 0.0],
        vec![0.0, 0.0, -1.0],
        vec![-s, s, 0.0],
    ])
    .expect("square")
}

/// Spin-1 operator `J_x`, `J_y`, or `J_z` in the representation where each
/// has entries 0, ±i only.
pub fn spin_operator(axis: SpinAxis) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(0.0, 0.0);
    let rows = match axis {
        SpinAxis::X => [vec![o, o, o], vec![o, o, i], vec![o, -i, o]],
        SpinAxis::Y => [vec![o, o, i], vec![o, o, o], vec![-i, o, o]],
        SpinAxis::Z => [vec![o, i, o], vec![-i, o, o], vec![o, o, o]],
    };
    ComplexMatrix::from_rows(&rows).expect("square")
}

/// Builds the spin-1 generator measuring `J_axis²`: `P(0) = I − J²`
/// answers "squared spin component along the axis is zero",
/// `P(1) = J²` answers "nonzero".
pub fn spin1_generator(axis: SpinAxis) -> QuantumGenerator {
    let j = spin_operator(axis);
    let j_sq = j.mat_mul(&j).expect("same dim");
    let p0 = ComplexMatrix::identity(3).sub(&j_sq).expect("same dim");
    QuantumGenerator::build(
        3,
        Alphabet::binary(),
        spin1_unitary(),
        vec![('0', p0), ('1', j_sq)],
    )
    .expect("spin-1 projector families satisfy every axiom")
}

/// Labeled Markov chain: one substochastic matrix per symbol plus the
/// stationary distribution of the summed chain. Used as an independent
/// oracle for quantum word probabilities.
#[derive(Debug, Clone)]
pub struct ClassicalGenerator {
    alphabet: Alphabet,
    n_states: usize,
    /// Row-major `n_states × n_states` matrix per symbol, alphabet order.
    per_symbol: Vec<Vec<f64>>,
    stationary: Vec<f64>,
}

impl ClassicalGenerator {
    const AXIOM_TOL: f64 = 1e-12;

    pub fn new(
        alphabet: Alphabet,
        n_states: usize,
        per_symbol: Vec<(char, Vec<f64>)>,
        stationary: Vec<f64>,
    ) -> Result<Self> {
        if n_states == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        let mut ordered: Vec<Option<Vec<f64>>> = vec![None; alphabet.len()];
        for (symbol, matrix) in per_symbol {
            let idx = alphabet.index_of(symbol)?;
            if ordered[idx].is_some() {
                return Err(Error::DuplicateSymbol(symbol));
            }
            if matrix.len() != n_states * n_states {
                return Err(Error::DimensionMismatch {
                    expected: n_states * n_states,
                    actual: matrix.len(),
                });
            }
            ordered[idx] = Some(matrix);
        }
        let per_symbol: Vec<Vec<f64>> = ordered
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or(Error::MissingProjector(alphabet.symbol(i))))
            .collect::<Result<_>>()?;
        if stationary.len() != n_states {
            return Err(Error::DimensionMismatch {
                expected: n_states,
                actual: stationary.len(),
            });
        }
        let c = Self {
            alphabet,
            n_states,
            per_symbol,
            stationary,
        };
        for (axiom, residual) in c.residuals() {
            if residual > Self::AXIOM_TOL {
                return Err(Error::ClassicalAxiom { axiom, residual });
            }
        }
        Ok(c)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    pub fn matrix_for(&self, symbol: char) -> Result<&[f64]> {
        Ok(&self.per_symbol[self.alphabet.index_of(symbol)?])
    }

    /// Residual of every structural requirement, label plus magnitude.
    pub fn residuals(&self) -> Vec<(&'static str, f64)> {
        let n = self.n_states;
        let negative = self
            .per_symbol
            .iter()
            .flatten()
            .chain(self.stationary.iter())
            .fold(0.0_f64, |acc, &x| acc.max(-x));

        // Σ_s T(s) must be row-stochastic.
        let mut row_residual = 0.0_f64;
        for i in 0..n {
            let row_sum: f64 = self
                .per_symbol
                .iter()
                .map(|m| m[i * n..(i + 1) * n].iter().sum::<f64>())
                .sum();
            row_residual = row_residual.max((row_sum - 1.0).abs());
        }

        // π·Σ_s T(s) = π and Σπ = 1.
        let mut pi_image = vec![0.0; n];
        for m in &self.per_symbol {
            for i in 0..n {
                for j in 0..n {
                    pi_image[j] += self.stationary[i] * m[i * n + j];
                }
            }
        }
        let stationarity = pi_image
            .iter()
            .zip(&self.stationary)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()));
        let normalization = (self.stationary.iter().sum::<f64>() - 1.0).abs();

        vec![
            ("nonnegative entries", negative),
            ("row-stochastic sum", row_residual),
            ("stationary distribution", stationarity),
            ("distribution normalized", normalization),
        ]
    }

    /// One enumeration step: `w ← w·T(s)` on a sub-distribution row vector.
    pub(crate) fn propagate(&self, weights: &[f64], symbol_index: usize) -> Vec<f64> {
        let n = self.n_states;
        let m = &self.per_symbol[symbol_index];
        let mut out = vec![0.0; n];
        for i in 0..n {
            let w = weights[i];
            if w == 0.0 {
                continue;
            }
            for j in 0..n {
                out[j] += w * m[i * n + j];
            }
        }
        out
    }
}

/// Two-state chain for the Golden Mean process: after a 0 the next symbol
/// is 1 with certainty; otherwise 0 and 1 are equally likely.
pub fn classical_golden_mean() -> ClassicalGenerator {
    ClassicalGenerator::new(
        Alphabet::binary(),
        2,
        vec![
            // state A emits 0 and moves to B; B never emits 0
            ('0', vec![0.0, 0.5, 0.0, 0.0]),
            // A keeps emitting 1 in place; B emits 1 and returns to A
            ('1', vec![0.5, 0.0, 1.0, 0.0]),
        ],
        vec![2.0 / 3.0, 1.0 / 3.0],
    )
    .expect("golden mean oracle is consistent")
}

/// Two-state chain for the Even process: 1-runs between 0s have even
/// length. State A may emit 0 (staying) or start a 1-run into B; state B
/// must emit 1 back to A, closing pairs of 1s.
pub fn classical_even() -> ClassicalGenerator {
    ClassicalGenerator::new(
        Alphabet::binary(),
        2,
        vec![
            ('0', vec![0.5, 0.0, 0.0, 0.0]),
            ('1', vec![0.0, 0.5, 1.0, 0.0]),
        ],
        vec![2.0 / 3.0, 1.0 / 3.0],
    )
    .expect("even oracle is consistent")
}

/// Oracle word probability: `π · T(s₁)…T(s_L) · 𝟙`.
pub fn classical_word_probability(generator: &ClassicalGenerator, word: &Word) -> Result<f64> {
    let mut weights = generator.stationary().to_vec();
    for &s in word.symbols() {
        weights = generator.propagate(&weights, generator.alphabet().index_of(s)?);
    }
    Ok(weights.iter().sum())
}

/// Samples `n` symbols from a classical generator: the initial state is
/// drawn from π, then each step draws a (symbol, next state) pair. Same
/// cumulative strict-inequality rule as the quantum samplers, with
/// symbol-major ordering of the pairs.
pub fn sample_classical(generator: &ClassicalGenerator, n: usize, seed: u64) -> Word {
    let mut rng = Xoshiro256StarStar::new(seed);
    let n_states = generator.n_states();
    let mut state = select_index(generator.stationary(), rng.next_f64());
    let mut word = Word::empty();
    let k = generator.alphabet().len();
    let mut weights = vec![0.0; k * n_states];
    for _ in 0..n {
        for (s_idx, m) in generator.per_symbol.iter().enumerate() {
            for j in 0..n_states {
                weights[s_idx * n_states + j] = m[state * n_states + j];
            }
        }
        let pick = select_index(&weights, rng.next_f64());
        word.push(generator.alphabet().symbol(pick / n_states));
        state = pick % n_states;
    }
    word
}

/// Largest word-probability deviation between two processes over all words
/// of length 1 through `max_len`, together with a word attaining it.
pub fn max_word_deviation(
    a: &WordSource<'_>,
    b: &WordSource<'_>,
    max_len: usize,
    cap: u64,
) -> Result<(f64, Option<Word>)> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let k = a.alphabet().len() as u128;
    let leaves = k
        .checked_pow(max_len as u32)
        .ok_or(Error::CapExceeded {
            words: u128::MAX,
            length: max_len,
            cap,
        })?;
    if leaves > cap as u128 {
        return Err(Error::CapExceeded {
            words: leaves,
            length: max_len,
            cap,
        });
    }

    let mut best = 0.0_f64;
    let mut best_word: Option<Word> = None;
    let mut stack = vec![(a.root(), b.root(), Word::empty())];
    while let Some((pa, pb, word)) = stack.pop() {
        if !word.is_empty() {
            let dev = (a.prefix_probability(&pa) - b.prefix_probability(&pb)).abs();
            if dev > best {
                best = dev;
                best_word = Some(word.clone());
            }
        }
        if word.len() < max_len {
            for idx in 0..a.alphabet().len() {
                let mut next = word.clone();
                next.push(a.alphabet().symbol(idx));
                stack.push((a.extend(&pa, idx), b.extend(&pb, idx), next));
            }
        }
    }
    Ok((best, best_word))
}

/// Deviation between a quantum generator (stationary start) and a
/// classical oracle over all words of length up to `max_len`.
pub fn compare_generators(
    quantum: &QuantumGenerator,
    classical: &ClassicalGenerator,
    max_len: usize,
) -> Result<f64> {
    let qs = WordSource::stationary(quantum)?;
    let cs = WordSource::classical(classical);
    let (dev, _) = max_word_deviation(&qs, &cs, max_len, 1 << 20)?;
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::StateVector;

    fn word(text: &str) -> Word {
        Word::parse(text, &Alphabet::binary()).unwrap()
    }

    #[test]
    fn spin1_unitary_matches_the_printed_matrix() {
        let u = spin1_unitary();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(u.get(0, 0).re, s);
        assert_eq!(u.get(0, 1).re, s);
        assert_eq!(u.get(1, 2).re, -1.0);
        assert_eq!(u.get(2, 0).re, -s);
        assert_eq!(u.get(2, 1).re, s);
        // Row 2 is exactly (0, 0, -1).
        assert_eq!(u.get(1, 0).re, 0.0);
        assert_eq!(u.get(1, 1).re, 0.0);
        assert!(u.entries().iter().all(|e| e.im == 0.0));
    }

    #[test]
    fn spin1_unitary_is_unitary_to_machine_precision() {
        let u = spin1_unitary();
        let residual = u
            .adjoint()
            .mat_mul(&u)
            .unwrap()
            .frobenius_distance(&ComplexMatrix::identity(3))
            .unwrap();
        assert!(residual < 1e-15);
    }

    #[test]
    fn spin1_unitary_is_not_an_involution() {
        let u = spin1_unitary();
        let u2 = u.mat_mul(&u).unwrap();
        assert!(u2.frobenius_distance(&ComplexMatrix::identity(3)).unwrap() > 1.0);
    }

    #[test]
    fn spin_operator_entries_match_the_representation() {
        let jy = spin_operator(SpinAxis::Y);
        assert_eq!(jy.get(0, 2), Complex64::new(0.0, 1.0));
        assert_eq!(jy.get(2, 0), Complex64::new(0.0, -1.0));
        assert_eq!(jy.get(1, 1), Complex64::new(0.0, 0.0));
        for axis in [SpinAxis::X, SpinAxis::Y, SpinAxis::Z] {
            let j = spin_operator(axis);
            assert!(j.adjoint().approx_eq(&j, 0.0), "J_{axis} hermitian");
        }
    }

    #[test]
    fn squared_spin_operators_are_diagonal_projectors() {
        let jy = spin_operator(SpinAxis::Y);
        let jy2 = jy.mat_mul(&jy).unwrap();
        assert!(jy2.approx_eq(&ComplexMatrix::from_diagonal(&[1.0, 0.0, 1.0]), 0.0));
        let jx = spin_operator(SpinAxis::X);
        let jx2 = jx.mat_mul(&jx).unwrap();
        assert!(jx2.approx_eq(&ComplexMatrix::from_diagonal(&[0.0, 1.0, 1.0]), 0.0));
        let jz = spin_operator(SpinAxis::Z);
        let jz2 = jz.mat_mul(&jz).unwrap();
        assert!(jz2.approx_eq(&ComplexMatrix::from_diagonal(&[1.0, 1.0, 0.0]), 0.0));
    }

    #[test]
    fn spin1_generators_use_the_expected_projectors() {
        let gy = spin1_generator(SpinAxis::Y);
        assert!(gy
            .projector('0')
            .unwrap()
            .approx_eq(&ComplexMatrix::from_diagonal(&[0.0, 1.0, 0.0]), 0.0));
        assert!(gy
            .projector('1')
            .unwrap()
            .approx_eq(&ComplexMatrix::from_diagonal(&[1.0, 0.0, 1.0]), 0.0));

        let gx = spin1_generator(SpinAxis::X);
        assert!(gx
            .projector('0')
            .unwrap()
            .approx_eq(&ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0]), 0.0));
        assert!(gx
            .projector('1')
            .unwrap()
            .approx_eq(&ComplexMatrix::from_diagonal(&[0.0, 1.0, 1.0]), 0.0));

        for axis in [SpinAxis::X, SpinAxis::Y, SpinAxis::Z] {
            let g = spin1_generator(axis);
            let sum = g
                .projector('0')
                .unwrap()
                .add(g.projector('1').unwrap())
                .unwrap();
            assert!(sum.approx_eq(&ComplexMatrix::identity(3), 0.0));
        }
    }

    #[test]
    fn both_spin_models_share_the_unitary() {
        let gy = spin1_generator(SpinAxis::Y);
        let gx = spin1_generator(SpinAxis::X);
        assert!(gy.unitary().approx_eq(gx.unitary(), 0.0));
    }

    #[test]
    fn golden_mean_oracle_headline_numbers() {
        let c = classical_golden_mean();
        assert_eq!(classical_word_probability(&c, &Word::empty()).unwrap(), 1.0);
        assert!((classical_word_probability(&c, &word("0")).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(classical_word_probability(&c, &word("00")).unwrap(), 0.0);
        assert!((classical_word_probability(&c, &word("11")).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        // After a 0 the next symbol is 1 with certainty.
        let p0 = classical_word_probability(&c, &word("0")).unwrap();
        let p01 = classical_word_probability(&c, &word("01")).unwrap();
        assert!((p01 / p0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn even_oracle_headline_numbers() {
        let c = classical_even();
        assert_eq!(classical_word_probability(&c, &word("010")).unwrap(), 0.0);
        assert!(
            (classical_word_probability(&c, &word("0110")).unwrap() - 1.0 / 12.0).abs() < 1e-15
        );
        let mut total = 0.0;
        for rank in 0..32u32 {
            let text: String = (0..5)
                .map(|i| if rank >> (4 - i) & 1 == 1 { '1' } else { '0' })
                .collect();
            total += classical_word_probability(&c, &word(&text)).unwrap();
        }
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn oracle_invariants_hold_exactly() {
        for c in [classical_golden_mean(), classical_even()] {
            for (axiom, residual) in c.residuals() {
                assert!(residual < 1e-15, "{axiom}: {residual}");
            }
        }
    }

    #[test]
    fn golden_mean_oracle_zero_words_are_exactly_the_00_factors() {
        let c = classical_golden_mean();
        let forbidden_factor = word("00");
        for len in 1..=10usize {
            for rank in 0..(1u32 << len) {
                let text: String = (0..len)
                    .map(|i| if rank >> (len - 1 - i) & 1 == 1 { '1' } else { '0' })
                    .collect();
                let w = word(&text);
                let p = classical_word_probability(&c, &w).unwrap();
                if w.contains_factor(&forbidden_factor) {
                    assert_eq!(p, 0.0, "word {text}");
                } else {
                    assert!(p > 0.0, "word {text}");
                }
            }
        }
    }

    #[test]
    fn quantum_and_classical_golden_mean_agree() {
        let dev = compare_generators(&spin1_generator(SpinAxis::Y), &classical_golden_mean(), 8)
            .unwrap();
        assert!(dev < 1e-10, "max deviation {dev}");
    }

    #[test]
    fn quantum_and_classical_even_agree() {
        let dev =
            compare_generators(&spin1_generator(SpinAxis::X), &classical_even(), 8).unwrap();
        assert!(dev < 1e-10, "max deviation {dev}");
    }

    #[test]
    fn mismatched_models_show_a_large_gap() {
        let dev =
            compare_generators(&spin1_generator(SpinAxis::Y), &classical_even(), 3).unwrap();
        assert!(dev >= 1.0 / 12.0, "deviation {dev} unexpectedly small");
    }

    #[test]
    fn max_word_deviation_reports_a_witness_word() {
        let gy = spin1_generator(SpinAxis::Y);
        let even = classical_even();
        let qs = WordSource::stationary(&gy).unwrap();
        let cs = WordSource::classical(&even);
        let (dev, witness) = max_word_deviation(&qs, &cs, 3, 1 << 20).unwrap();
        assert!(dev > 0.2);
        let w = witness.unwrap();
        let a = qs.word_probability(&w).unwrap();
        let b = cs.word_probability(&w).unwrap();
        assert!(((a - b).abs() - dev).abs() < 1e-15);
    }

    #[test]
    fn classical_sampler_respects_the_language() {
        let w = sample_classical(&classical_golden_mean(), 20_000, 5).to_string();
        assert!(!w.contains("00"));
        let w = sample_classical(&classical_even(), 20_000, 5).to_string();
        for block in w.split('0').skip(1).take(w.matches('0').count().saturating_sub(1)) {
            assert!(block.len() % 2 == 0, "odd internal 1-block");
        }
    }

    #[test]
    fn z_axis_generator_validates_too() {
        let g = spin1_generator(SpinAxis::Z);
        let psi = StateVector::basis(3, 0);
        let dist = crate::process::conditional_distribution(&g, &psi).unwrap();
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
