//! Long-run statistical consistency of the samplers against the exact
//! word probabilities.

use std::collections::HashMap;

use qfg::{
    enumerate_distribution, sample_stationary, spin1_generator, stationary_state,
    LanguageOptions, SpinAxis, WordSource,
};

#[test]
fn sampled_factor_frequencies_match_word_probabilities() {
    let g = spin1_generator(SpinAxis::Y);
    let rho = stationary_state(&g).unwrap();
    let n = 1_000_000usize;
    let text = sample_stationary(&g, &rho, n, 424_242).unwrap().to_string();
    let bytes = text.as_bytes();

    let source = WordSource::stationary(&g).unwrap();
    for len in 1..=3usize {
        let mut counts: HashMap<&[u8], usize> = HashMap::new();
        for window in bytes.windows(len) {
            *counts.entry(window).or_insert(0) += 1;
        }
        let windows = (n - len + 1) as f64;
        let dist = enumerate_distribution(&source, len, &LanguageOptions::default()).unwrap();
        for (word, probability) in dist.iter() {
            let text = word.to_string();
            let observed = counts
                .get(text.as_bytes())
                .copied()
                .unwrap_or(0) as f64
                / windows;
            assert!(
                (observed - probability).abs() < 0.005,
                "word {text}: observed {observed:.5}, exact {probability:.5}"
            );
        }
    }
}
