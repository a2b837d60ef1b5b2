//! Python bindings: `Generator` and `Oracle` classes plus a `compare`
//! helper, mirroring the library's main operations.
//!
//! Complex matrices cross the boundary as nested lists of `(re, im)`
//! tuples; distributions as `dict[str, float]`; forbidden-word reports as
//! sorted lists of strings.

use std::collections::BTreeMap;
use std::path::Path;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qfg::{
    block_entropy, classical_even, classical_golden_mean, classical_word_probability,
    entropy_profile, enumerate_distribution, figure2_data, forbidden_words, max_word_deviation,
    sample_classical, sample_stationary, sample_trajectory, stationary_state, Alphabet,
    ClassicalGenerator, ComplexMatrix, DensityMatrix, ForbiddenWordReport, LanguageOptions,
    ModelFile, QuantumGenerator, SpinAxis, StateVector, Word, WordSource,
};

fn py_err(err: qfg::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn matrix_to_py(m: &ComplexMatrix) -> Vec<Vec<(f64, f64)>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| (m.get(i, j).re, m.get(i, j).im)).collect())
        .collect()
}

fn options(epsilon: f64, cap: u64) -> LanguageOptions {
    LanguageOptions { epsilon, cap }
}

/// A validated quantum finite-state generator with a fixed start state
/// (stationary unless the model file supplied one).
#[pyclass]
struct Generator {
    name: String,
    inner: QuantumGenerator,
    initial: Option<StateVector>,
    stationary: DensityMatrix,
}

impl Generator {
    fn from_parts(
        name: String,
        inner: QuantumGenerator,
        initial: Option<StateVector>,
    ) -> PyResult<Self> {
        let stationary = stationary_state(&inner).map_err(py_err)?;
        Ok(Self {
            name,
            inner,
            initial,
            stationary,
        })
    }

    fn source(&self) -> PyResult<WordSource<'_>> {
        match &self.initial {
            Some(psi) => WordSource::pure(&self.inner, psi).map_err(py_err),
            None => WordSource::from_density(&self.inner, self.stationary.clone()).map_err(py_err),
        }
    }

    fn parse_word(&self, text: &str) -> PyResult<Word> {
        Word::parse(text, self.inner.alphabet()).map_err(py_err)
    }
}

#[pymethods]
impl Generator {
    /// Built-in spin-1 model measuring the squared spin component along
    /// the given axis: "y" generates the Golden Mean process, "x" the
    /// Even process, "z" is the third observable.
    #[staticmethod]
    fn spin1(axis: &str) -> PyResult<Self> {
        let axis: SpinAxis = axis.parse().map_err(py_err)?;
        Self::from_parts(
            format!("spin1-{axis}"),
            qfg::spin1_generator(axis),
            None,
        )
    }

    /// Parses a model-file JSON document.
    #[staticmethod]
    #[pyo3(signature = (text, tol=1e-10))]
    fn from_json(text: &str, tol: f64) -> PyResult<Self> {
        let file = ModelFile::from_json(text).map_err(py_err)?;
        let (inner, initial) = file.build(tol).map_err(py_err)?;
        Self::from_parts("model".to_string(), inner, initial)
    }

    /// Loads a model file from disk.
    #[staticmethod]
    #[pyo3(signature = (path, tol=1e-10))]
    fn from_file(path: &str, tol: f64) -> PyResult<Self> {
        let file = ModelFile::from_path(Path::new(path)).map_err(py_err)?;
        let (inner, initial) = file.build(tol).map_err(py_err)?;
        Self::from_parts(path.to_string(), inner, initial)
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn alphabet(&self) -> String {
        self.inner.alphabet().to_string()
    }

    /// Structural axiom checks as (label, residual, pass) triples.
    #[pyo3(signature = (tol=1e-10))]
    fn axiom_checks(&self, tol: f64) -> PyResult<Vec<(String, f64, bool)>> {
        let projectors: Vec<(char, ComplexMatrix)> = self
            .inner
            .alphabet()
            .symbols()
            .iter()
            .map(|&s| (s, self.inner.projector(s).expect("own symbol").clone()))
            .collect();
        let report = QuantumGenerator::validation_report(
            self.inner.dim(),
            self.inner.alphabet(),
            self.inner.unitary(),
            &projectors,
            tol,
        )
        .map_err(py_err)?;
        Ok(report
            .checks
            .iter()
            .map(|c| (c.label(), c.residual, c.pass))
            .collect())
    }

    fn unitary(&self) -> Vec<Vec<(f64, f64)>> {
        matrix_to_py(self.inner.unitary())
    }

    fn transition(&self, symbol: char) -> PyResult<Vec<Vec<(f64, f64)>>> {
        Ok(matrix_to_py(self.inner.transition(symbol).map_err(py_err)?))
    }

    fn stationary_state(&self) -> Vec<Vec<(f64, f64)>> {
        matrix_to_py(self.stationary.matrix())
    }

    /// Probability of observing `word` from the generator's start state.
    fn word_probability(&self, word: &str) -> PyResult<f64> {
        let w = self.parse_word(word)?;
        self.source()?.word_probability(&w).map_err(py_err)
    }

    /// Exact distribution over all words of one length.
    #[pyo3(signature = (length, epsilon=1e-12, cap=1048576))]
    fn distribution(&self, length: usize, epsilon: f64, cap: u64) -> PyResult<BTreeMap<String, f64>> {
        let dist = enumerate_distribution(&self.source()?, length, &options(epsilon, cap))
            .map_err(py_err)?;
        Ok(dist.iter().map(|(w, p)| (w.to_string(), p)).collect())
    }

    /// Forbidden and irreducible forbidden words up to `max_length`,
    /// each sorted by (length, lexicographic).
    #[pyo3(signature = (max_length, epsilon=1e-12, cap=1048576))]
    fn forbidden_words(
        &self,
        max_length: usize,
        epsilon: f64,
        cap: u64,
    ) -> PyResult<(Vec<String>, Vec<String>)> {
        let report = forbidden_words(&self.source()?, max_length, &options(epsilon, cap))
            .map_err(py_err)?;
        let render = |set| {
            ForbiddenWordReport::sorted_by_length(set)
                .iter()
                .map(|w| w.to_string())
                .collect()
        };
        Ok((render(&report.forbidden), render(&report.irreducible)))
    }

    /// Block entropy H(length) in bits.
    #[pyo3(signature = (length, epsilon=1e-12, cap=1048576))]
    fn block_entropy(&self, length: usize, epsilon: f64, cap: u64) -> PyResult<f64> {
        let dist = enumerate_distribution(&self.source()?, length, &options(epsilon, cap))
            .map_err(py_err)?;
        Ok(block_entropy(&dist))
    }

    /// Entropy-rate estimate H(length) - H(length-1) in bits per symbol.
    #[pyo3(signature = (length, epsilon=1e-12, cap=1048576))]
    fn entropy_rate(&self, length: usize, epsilon: f64, cap: u64) -> PyResult<f64> {
        qfg::entropy_rate_estimate(&self.source()?, length, &options(epsilon, cap)).map_err(py_err)
    }

    /// (length, H, rate) rows for lengths 1..=max_length.
    #[pyo3(signature = (max_length, epsilon=1e-12, cap=1048576))]
    fn entropy_profile(
        &self,
        max_length: usize,
        epsilon: f64,
        cap: u64,
    ) -> PyResult<Vec<(usize, f64, f64)>> {
        let profile = entropy_profile(&self.source()?, max_length, &options(epsilon, cap))
            .map_err(py_err)?;
        Ok(profile
            .iter()
            .map(|p| (p.length, p.block_entropy, p.rate))
            .collect())
    }

    /// Word-density points (x, log2_density); forbidden words carry
    /// -inf in the second slot.
    #[pyo3(signature = (length, epsilon=1e-12, cap=1048576))]
    fn figure2(&self, length: usize, epsilon: f64, cap: u64) -> PyResult<Vec<(f64, f64)>> {
        let points =
            figure2_data(&self.source()?, length, &options(epsilon, cap)).map_err(py_err)?;
        Ok(points.iter().map(|p| (p.x, p.log2_density)).collect())
    }

    /// Samples a symbol string. Starts from the model's initial state if
    /// it has one, otherwise from the stationary ensemble.
    #[pyo3(signature = (length, seed=0))]
    fn sample(&self, length: usize, seed: u64) -> PyResult<String> {
        let word = match &self.initial {
            Some(psi) => sample_trajectory(&self.inner, psi, length, seed).map_err(py_err)?,
            None => {
                sample_stationary(&self.inner, &self.stationary, length, seed).map_err(py_err)?
            }
        };
        Ok(word.to_string())
    }

    /// Next-symbol distribution conditioned on having observed `word`,
    /// computed as probability ratios from the start state.
    fn conditional_after(&self, word: &str) -> PyResult<BTreeMap<String, f64>> {
        let w = self.parse_word(word)?;
        let source = self.source()?;
        let base = source.word_probability(&w).map_err(py_err)?;
        if base <= 1e-12 {
            return Err(PyValueError::new_err(format!(
                "word '{word}' has probability {base:.3e}; cannot condition on it"
            )));
        }
        let mut out = BTreeMap::new();
        for &s in self.inner.alphabet().symbols() {
            let mut ws = w.clone();
            ws.push(s);
            let p = source.word_probability(&ws).map_err(py_err)?;
            out.insert(s.to_string(), p / base);
        }
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "Generator(name='{}', dim={}, alphabet='{}', start={})",
            self.name,
            self.inner.dim(),
            self.inner.alphabet(),
            if self.initial.is_some() { "pure" } else { "stationary" },
        )
    }
}

/// Classical labeled Markov chain used as an independent oracle.
#[pyclass]
struct Oracle {
    name: String,
    inner: ClassicalGenerator,
}

#[pymethods]
impl Oracle {
    /// Two-state presentation of the Golden Mean process.
    #[staticmethod]
    fn golden_mean() -> Self {
        Self {
            name: "oracle-golden-mean".to_string(),
            inner: classical_golden_mean(),
        }
    }

    /// Two-state presentation of the Even process.
    #[staticmethod]
    fn even() -> Self {
        Self {
            name: "oracle-even".to_string(),
            inner: classical_even(),
        }
    }

    fn n_states(&self) -> usize {
        self.inner.n_states()
    }

    fn alphabet(&self) -> String {
        self.inner.alphabet().to_string()
    }

    fn stationary(&self) -> Vec<f64> {
        self.inner.stationary().to_vec()
    }

    fn word_probability(&self, word: &str) -> PyResult<f64> {
        let w = Word::parse(word, self.inner.alphabet()).map_err(py_err)?;
        classical_word_probability(&self.inner, &w).map_err(py_err)
    }

    #[pyo3(signature = (length, epsilon=1e-12, cap=1048576))]
    fn distribution(&self, length: usize, epsilon: f64, cap: u64) -> PyResult<BTreeMap<String, f64>> {
        let source = WordSource::classical(&self.inner);
        let dist =
            enumerate_distribution(&source, length, &options(epsilon, cap)).map_err(py_err)?;
        Ok(dist.iter().map(|(w, p)| (w.to_string(), p)).collect())
    }

    #[pyo3(signature = (length, seed=0))]
    fn sample(&self, length: usize, seed: u64) -> String {
        sample_classical(&self.inner, length, seed).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Oracle(name='{}', states={})", self.name, self.inner.n_states())
    }
}

/// Largest word-probability deviation between a generator and an oracle
/// over all words of length 1..=max_length.
#[pyfunction]
#[pyo3(signature = (generator, oracle, max_length, cap=1048576))]
fn compare(generator: &Generator, oracle: &Oracle, max_length: usize, cap: u64) -> PyResult<f64> {
    let a = generator.source()?;
    let b = WordSource::classical(&oracle.inner);
    let (deviation, _) = max_word_deviation(&a, &b, max_length, cap).map_err(py_err)?;
    Ok(deviation)
}

/// Single-character symbols of the binary alphabet, in order.
#[pyfunction]
fn binary_alphabet() -> Vec<String> {
    Alphabet::binary()
        .symbols()
        .iter()
        .map(|s| s.to_string())
        .collect()
}

#[pymodule]
fn qfg_python(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Generator>()?;
    m.add_class::<Oracle>()?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(binary_alphabet, m)?)?;
    Ok(())
}
