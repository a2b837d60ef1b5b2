//! Stochastic-language analysis: word distributions, forbidden words,
//! block entropies, and word-density data.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::generator::Alphabet;
use crate::process::{Word, WordSource, DEFAULT_FORBIDDEN_EPSILON};

/// Default cap on the number of words an enumeration may touch
/// (2^20, i.e. length 20 for a binary alphabet).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// Thresholds shared by the language-level queries.
#[derive(Debug, Clone, Copy)]
pub struct LanguageOptions {
    /// Words with probability at or below this are classified forbidden.
    pub epsilon: f64,
    /// Maximum number of length-L words an enumeration may produce.
    pub cap: u64,
}

impl Default for LanguageOptions {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_FORBIDDEN_EPSILON,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

fn checked_word_count(alphabet_len: usize, length: usize, cap: u64) -> Result<u64> {
    let count = (alphabet_len as u128)
        .checked_pow(length as u32)
        .unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            words: count,
            length,
            cap,
        });
    }
    Ok(count as u64)
}

/// Compensated (Kahan) accumulator; keeps entropy sums reproducible and
/// accurate over up to 2^20 terms.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Exact probabilities of every word of one fixed length, in lexicographic
/// order induced by the alphabet. Zeros are stored explicitly, so the
/// support of the distribution is always the full |A|^L grid.
#[derive(Debug, Clone)]
pub struct WordDistribution {
    alphabet: Alphabet,
    length: usize,
    probabilities: Vec<f64>,
}

impl WordDistribution {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn word_count(&self) -> usize {
        self.probabilities.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Decodes the word at a lexicographic rank.
    pub fn word_at(&self, rank: usize) -> Word {
        let k = self.alphabet.len();
        let mut symbols = vec![self.alphabet.symbol(0); self.length];
        let mut r = rank;
        for pos in (0..self.length).rev() {
            symbols[pos] = self.alphabet.symbol(r % k);
            r /= k;
        }
        Word::from_symbols(symbols)
    }

    /// Looks a word up by value; errors on symbols outside the alphabet,
    /// returns `None` if the length differs.
    pub fn probability(&self, word: &Word) -> Result<Option<f64>> {
        if word.len() != self.length {
            return Ok(None);
        }
        let k = self.alphabet.len();
        let mut rank = 0usize;
        for &s in word.symbols() {
            rank = rank * k + self.alphabet.index_of(s)?;
        }
        Ok(Some(self.probabilities[rank]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        (0..self.probabilities.len()).map(|r| (self.word_at(r), self.probabilities[r]))
    }

    /// Total mass, compensated summation.
    pub fn total(&self) -> f64 {
        let mut acc = KahanSum::default();
        for &p in &self.probabilities {
            acc.add(p);
        }
        acc.value()
    }
}

/// Enumerates the exact length-`length` word distribution by depth-first
/// prefix extension. A prefix whose probability has already fallen to
/// `epsilon` or below cannot recover (prefix probabilities are
/// nonincreasing), so its whole subtree is recorded as zeros without
/// further products.
pub fn enumerate_distribution(
    source: &WordSource<'_>,
    length: usize,
    options: &LanguageOptions,
) -> Result<WordDistribution> {
    let k = source.alphabet().len();
    let count = checked_word_count(k, length, options.cap)? as usize;
    let mut probabilities = vec![0.0; count];

    // stride[d] = number of leaves under a node at depth d+1
    let mut stack = vec![(source.root(), 0usize, 0usize)];
    while let Some((prefix, depth, rank)) = stack.pop() {
        let p = source.prefix_probability(&prefix);
        if depth == length {
            probabilities[rank] = p;
            continue;
        }
        if p <= options.epsilon {
            continue; // entire subtree stays at the preset zeros
        }
        let stride = k.pow((length - depth - 1) as u32);
        for idx in 0..k {
            stack.push((source.extend(&prefix, idx), depth + 1, rank + idx * stride));
        }
    }

    Ok(WordDistribution {
        alphabet: source.alphabet().clone(),
        length,
        probabilities,
    })
}

/// Forbidden words (probability ≤ ε) up to a maximum length, plus the
/// irreducible ones: forbidden words none of whose proper contiguous
/// factors is forbidden.
#[derive(Debug, Clone)]
pub struct ForbiddenWordReport {
    pub max_length: usize,
    pub epsilon: f64,
    pub forbidden: BTreeSet<Word>,
    pub irreducible: BTreeSet<Word>,
}

impl ForbiddenWordReport {
    /// Words ordered by (length, lexicographic), the reporting order.
    pub fn sorted_by_length(set: &BTreeSet<Word>) -> Vec<&Word> {
        let mut words: Vec<&Word> = set.iter().collect();
        words.sort_by_key(|w| (w.len(), w.symbols().to_vec()));
        words
    }
}

pub fn forbidden_words(
    source: &WordSource<'_>,
    max_length: usize,
    options: &LanguageOptions,
) -> Result<ForbiddenWordReport> {
    checked_word_count(source.alphabet().len(), max_length, options.cap)?;
    let alphabet = source.alphabet().clone();
    let k = alphabet.len();
    let mut forbidden = BTreeSet::new();

    // DFS; once a prefix is forbidden every extension is too, so the
    // subtree is enumerated symbolically without touching the source.
    let mut stack = vec![(Some(source.root()), Word::empty())];
    while let Some((prefix, word)) = stack.pop() {
        let dead = match &prefix {
            Some(p) => {
                let probability = source.prefix_probability(p);
                !word.is_empty() && probability <= options.epsilon
            }
            None => true,
        };
        if dead && !word.is_empty() {
            forbidden.insert(word.clone());
        }
        if word.len() < max_length {
            for idx in 0..k {
                let mut next = word.clone();
                next.push(alphabet.symbol(idx));
                let next_prefix = if dead {
                    None
                } else {
                    prefix.as_ref().map(|p| source.extend(p, idx))
                };
                stack.push((next_prefix, next));
            }
        }
    }

    let irreducible = forbidden
        .iter()
        .filter(|w| w.proper_factors().all(|f| !forbidden.contains(&f)))
        .cloned()
        .collect();

    Ok(ForbiddenWordReport {
        max_length,
        epsilon: options.epsilon,
        forbidden,
        irreducible,
    })
}

/// Shannon block entropy `H(L) = −Σ_w Pr(w)·log₂ Pr(w)` in bits, with
/// `0·log 0 = 0`.
pub fn block_entropy(distribution: &WordDistribution) -> f64 {
    let mut acc = KahanSum::default();
    for &p in distribution.probabilities() {
        if p > 0.0 {
            acc.add(-p * p.log2());
        }
    }
    acc.value()
}

/// Block entropy and entropy-rate estimate at one length.
#[derive(Debug, Clone, Copy)]
pub struct EntropyPoint {
    pub length: usize,
    /// `H(length)` in bits.
    pub block_entropy: f64,
    /// `H(length) − H(length−1)` in bits per symbol.
    pub rate: f64,
}

/// `H(ℓ)` and `H(ℓ)−H(ℓ−1)` for every ℓ = 1..=max_length, from a single
/// depth-first walk over the prefix tree.
pub fn entropy_profile(
    source: &WordSource<'_>,
    max_length: usize,
    options: &LanguageOptions,
) -> Result<Vec<EntropyPoint>> {
    checked_word_count(source.alphabet().len(), max_length, options.cap)?;
    let k = source.alphabet().len();
    let mut sums = vec![KahanSum::default(); max_length + 1];

    let mut stack = vec![(source.root(), 0usize)];
    while let Some((prefix, depth)) = stack.pop() {
        let p = source.prefix_probability(&prefix);
        if p <= options.epsilon {
            continue;
        }
        if depth > 0 {
            sums[depth].add(-p * p.log2());
        }
        if depth < max_length {
            for idx in 0..k {
                stack.push((source.extend(&prefix, idx), depth + 1));
            }
        }
    }

    let mut points = Vec::with_capacity(max_length);
    let mut previous = 0.0;
    for (length, acc) in sums.iter().enumerate().skip(1) {
        let h = acc.value();
        points.push(EntropyPoint {
            length,
            block_entropy: h,
            rate: h - previous,
        });
        previous = h;
    }
    Ok(points)
}

/// `H(L) − H(L−1)` in bits per symbol.
pub fn entropy_rate_estimate(
    source: &WordSource<'_>,
    length: usize,
    options: &LanguageOptions,
) -> Result<f64> {
    let profile = entropy_profile(source, length, options)?;
    Ok(profile
        .last()
        .map(|point| point.rate)
        .unwrap_or(0.0))
}

/// One point of the word-density plot: the word read as a base-|A| real
/// number in [0, 1), against the log₂ of its probability density.
#[derive(Debug, Clone, Copy)]
pub struct Fig2Point {
    pub x: f64,
    /// `log₂(|A|^L · Pr(w))`; `NEG_INFINITY` marks forbidden words.
    pub log2_density: f64,
}

/// Density data for all words of one length, in lexicographic order.
/// Dividing each probability by the uniform measure |A|^{-L} makes the
/// distributions comparable across lengths: the uniform process sits at 0.
pub fn figure2_data(
    source: &WordSource<'_>,
    length: usize,
    options: &LanguageOptions,
) -> Result<Vec<Fig2Point>> {
    let distribution = enumerate_distribution(source, length, options)?;
    let count = distribution.word_count();
    let scale = count as f64;
    Ok(distribution
        .probabilities()
        .iter()
        .enumerate()
        .map(|(rank, &p)| Fig2Point {
            x: rank as f64 / scale,
            log2_density: if p <= options.epsilon {
                f64::NEG_INFINITY
            } else {
                (scale * p).log2()
            },
        })
        .collect())
}
