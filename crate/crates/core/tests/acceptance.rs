//! Acceptance suite: the contract-level checks for the two built-in spin-1
//! models, one test per criterion, each printing a PASS/FAIL line (run with
//! `--nocapture` to see the PASS lines).
//!
//! Criterion 7 is expected to fail: the pinned tolerance for the Even
//! process entropy rate at block length 14 is tighter than the true value
//! of that mathematical quantity (see the failure message), and the check
//! is kept as stated rather than loosened.

use qfg::{
    block_entropy, compare_generators, conditional_distribution, classical_even,
    classical_golden_mean, ensemble_step, entropy_profile, enumerate_distribution, figure2_data,
    forbidden_words, sample_stationary, spin1_generator, stationary_state, Alphabet,
    ForbiddenWordReport, LanguageOptions, QuantumGenerator, SpinAxis, StateVector, Word,
    WordSource,
};

fn pass(criterion: usize, name: &str, detail: &str) {
    println!("acceptance criterion {criterion} ({name}): PASS  [{detail}]");
}

fn fail(criterion: usize, name: &str, detail: &str) -> ! {
    println!("acceptance criterion {criterion} ({name}): FAIL  [{detail}]");
    panic!("acceptance criterion {criterion} ({name}) failed: {detail}");
}

fn golden_mean() -> QuantumGenerator {
    spin1_generator(SpinAxis::Y)
}

fn even_process() -> QuantumGenerator {
    spin1_generator(SpinAxis::X)
}

fn word(text: &str) -> Word {
    Word::parse(text, &Alphabet::binary()).unwrap()
}

/// Decodes the length-`len` word with the given lexicographic rank.
fn word_text(rank: usize, len: usize) -> String {
    (0..len)
        .map(|i| if rank >> (len - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// True if the word contains a factor `0 1^{2k-1} 0` (odd 1-run between
/// zeros), written independently of the library's factor machinery.
fn has_odd_one_block(text: &str) -> bool {
    let bytes = text.as_bytes();
    for start in 0..bytes.len() {
        if bytes[start] != b'0' {
            continue;
        }
        let mut ones = 0usize;
        for &b in &bytes[start + 1..] {
            if b == b'1' {
                ones += 1;
            } else {
                if ones % 2 == 1 {
                    return true;
                }
                break;
            }
        }
    }
    false
}

#[test]
fn criterion_1_structural_axioms() {
    let tol = 1e-12;
    for (label, axis) in [("spin1-y", SpinAxis::Y), ("spin1-x", SpinAxis::X)] {
        let g = spin1_generator(axis);
        let projectors: Vec<(char, qfg::ComplexMatrix)> = g
            .alphabet()
            .symbols()
            .iter()
            .map(|&s| (s, g.projector(s).unwrap().clone()))
            .collect();
        let report = QuantumGenerator::validation_report(
            g.dim(),
            g.alphabet(),
            g.unitary(),
            &projectors,
            tol,
        )
        .unwrap();
        for check in &report.checks {
            if !check.pass || check.residual >= 1e-12 {
                fail(
                    1,
                    "structural axioms",
                    &format!("{label}: {} residual {:.3e}", check.label(), check.residual),
                );
            }
        }
    }

    // Any single-entry perturbation of U by 1e-3 must be rejected.
    let g = golden_mean();
    let projectors: Vec<(char, qfg::ComplexMatrix)> = g
        .alphabet()
        .symbols()
        .iter()
        .map(|&s| (s, g.projector(s).unwrap().clone()))
        .collect();
    for i in 0..3 {
        for j in 0..3 {
            let mut u = g.unitary().clone();
            u.set(i, j, u.get(i, j) + qfg::Complex64::new(1e-3, 0.0));
            match QuantumGenerator::build(3, Alphabet::binary(), u, projectors.clone()) {
                Err(qfg::Error::Unitarity { .. }) => {}
                other => fail(
                    1,
                    "structural axioms",
                    &format!("perturbed U({i},{j}) accepted or misclassified: {other:?}"),
                ),
            }
        }
    }
    pass(
        1,
        "structural axioms",
        "all residuals < 1e-12; every 1e-3 perturbation of U rejected",
    );
}

#[test]
fn criterion_2_golden_mean_language() {
    let g = golden_mean();
    let source = WordSource::stationary(&g).unwrap();
    let opts = LanguageOptions::default();
    let mut min_allowed = f64::INFINITY;
    for len in 1..=12usize {
        let dist = enumerate_distribution(&source, len, &opts).unwrap();
        for rank in 0..dist.word_count() {
            let text = word_text(rank, len);
            let p = dist.probabilities()[rank];
            let forbidden = text.contains("00");
            if forbidden && p >= 1e-12 {
                fail(2, "golden mean language", &format!("{text}: Pr {p:.3e} not ~0"));
            }
            if !forbidden {
                min_allowed = min_allowed.min(p);
                if p < 1e-12 {
                    fail(2, "golden mean language", &format!("{text}: allowed word at {p:.3e}"));
                }
            }
        }
    }
    if min_allowed <= 1e-6 {
        fail(
            2,
            "golden mean language",
            &format!("allowed word with Pr {min_allowed:.3e} <= 1e-6"),
        );
    }
    pass(
        2,
        "golden mean language",
        &format!("L<=12: zero iff '00' factor; smallest allowed Pr {min_allowed:.3e}"),
    );
}

#[test]
fn criterion_3_even_language() {
    let g = even_process();
    let source = WordSource::stationary(&g).unwrap();
    let opts = LanguageOptions::default();
    for len in 1..=12usize {
        let dist = enumerate_distribution(&source, len, &opts).unwrap();
        for rank in 0..dist.word_count() {
            let text = word_text(rank, len);
            let p = dist.probabilities()[rank];
            let forbidden = has_odd_one_block(&text);
            if forbidden != (p < 1e-12) {
                fail(
                    3,
                    "even language",
                    &format!("{text}: Pr {p:.3e}, odd-block factor {forbidden}"),
                );
            }
        }
    }

    let report = forbidden_words(&source, 12, &opts).unwrap();
    let irreducible: Vec<String> = ForbiddenWordReport::sorted_by_length(&report.irreducible)
        .iter()
        .map(|w| w.to_string())
        .collect();
    let expected = ["010", "01110", "0111110", "011111110", "01111111110"];
    if irreducible != expected {
        fail(3, "even language", &format!("irreducible set {irreducible:?}"));
    }
    pass(
        3,
        "even language",
        "L<=12: zero iff odd 1-block factor; irreducible set = {0 1^(2k-1) 0, k=1..5}",
    );
}

#[test]
fn criterion_4_normalization_and_stationarity() {
    for (label, g) in [("spin1-y", golden_mean()), ("spin1-x", even_process())] {
        let rho = stationary_state(&g).unwrap();
        let shifted = ensemble_step(&g, &rho);
        let source = WordSource::from_density(&g, rho).unwrap();
        let shifted_source = WordSource::from_density(&g, shifted).unwrap();
        let opts = LanguageOptions::default();
        for len in 1..=12usize {
            let dist = enumerate_distribution(&source, len, &opts).unwrap();
            let total = dist.total();
            if (total - 1.0).abs() > 1e-10 {
                fail(
                    4,
                    "normalization and stationarity",
                    &format!("{label} L={len}: total {total:.15}"),
                );
            }
            let shifted_dist = enumerate_distribution(&shifted_source, len, &opts).unwrap();
            for rank in 0..dist.word_count() {
                let drift =
                    (dist.probabilities()[rank] - shifted_dist.probabilities()[rank]).abs();
                if drift > 1e-12 {
                    fail(
                        4,
                        "normalization and stationarity",
                        &format!("{label} L={len} rank {rank}: shift drift {drift:.3e}"),
                    );
                }
            }
        }
    }
    pass(
        4,
        "normalization and stationarity",
        "both models, L=1..12: totals within 1e-10, one-step shift within 1e-12",
    );
}

#[test]
fn criterion_5_quantum_classical_equivalence() {
    let dev_gm = compare_generators(&golden_mean(), &classical_golden_mean(), 8).unwrap();
    let dev_even = compare_generators(&even_process(), &classical_even(), 8).unwrap();
    if dev_gm >= 1e-10 || dev_even >= 1e-10 {
        fail(
            5,
            "quantum-classical equivalence",
            &format!("max deviations {dev_gm:.3e} (golden mean), {dev_even:.3e} (even)"),
        );
    }
    pass(
        5,
        "quantum-classical equivalence",
        &format!("L<=8 deviations {dev_gm:.3e} and {dev_even:.3e}"),
    );
}

#[test]
fn criterion_6_conditional_structure() {
    let g = golden_mean();
    let rho = stationary_state(&g).unwrap();

    // Word-probability ratios from the stationary start.
    let p = |text: &str| qfg::word_probability(&g, &rho, &word(text)).unwrap();
    let post0_one = p("01") / p("0");
    let post1_zero = p("10") / p("1");
    let post1_one = p("11") / p("1");
    if (post0_one - 1.0).abs() > 1e-12
        || (post1_zero - 0.5).abs() > 1e-12
        || (post1_one - 0.5).abs() > 1e-12
    {
        fail(
            6,
            "conditional structure",
            &format!("ratios {post0_one:.15}, {post1_zero:.15}, {post1_one:.15}"),
        );
    }

    // Same thing through the pure-state route: the stationary post-"0"
    // state is e2, and stepping it through "1" gives a post-"1" state.
    let post0 = StateVector::from_real(&[0.0, 1.0, 0.0]);
    let dist = conditional_distribution(&g, &post0).unwrap();
    if dist[0].1.abs() > 1e-12 || (dist[1].1 - 1.0).abs() > 1e-12 {
        fail(6, "conditional structure", "post-'0' pure state is not deterministic");
    }
    let (post1, _) = g.step_normalized(&post0, '1').unwrap();
    let dist = conditional_distribution(&g, &post1).unwrap();
    if (dist[0].1 - 0.5).abs() > 1e-12 || (dist[1].1 - 0.5).abs() > 1e-12 {
        fail(6, "conditional structure", "post-'1' pure state is not 50/50");
    }
    pass(
        6,
        "conditional structure",
        "after 0 the next symbol is 1 w.p. 1; after 1 it is 0/1 w.p. 1/2 each",
    );
}

#[test]
fn criterion_7_entropies() {
    let opts = LanguageOptions::default();

    // H(1) = log2(3) - 2/3 for both models.
    let h1_expected = 3.0_f64.log2() - 2.0 / 3.0;
    for (label, g) in [("spin1-y", golden_mean()), ("spin1-x", even_process())] {
        let source = WordSource::stationary(&g).unwrap();
        let h1 = block_entropy(&enumerate_distribution(&source, 1, &opts).unwrap());
        if (h1 - h1_expected).abs() > 1e-12 {
            fail(7, "entropies", &format!("{label}: H(1) = {h1:.15}"));
        }
    }

    // Golden Mean: the rate is exactly 2/3 from L = 2 on.
    let g = golden_mean();
    let source = WordSource::stationary(&g).unwrap();
    let profile = entropy_profile(&source, 12, &opts).unwrap();
    for point in profile.iter().skip(1) {
        if (point.rate - 2.0 / 3.0).abs() > 1e-10 {
            fail(
                7,
                "entropies",
                &format!("golden mean rate at L={} is {:.15}", point.length, point.rate),
            );
        }
    }

    // Even process at block length 14, tolerance pinned at 1e-3.
    let g = even_process();
    let source = WordSource::stationary(&g).unwrap();
    let profile = entropy_profile(&source, 14, &opts).unwrap();
    let rate14 = profile[13].rate;
    let gap = (rate14 - 2.0 / 3.0).abs();
    if gap > 1e-3 {
        fail(
            7,
            "entropies",
            &format!(
                "even-process H(14)-H(13) = {rate14:.12} bits, {gap:.6e} from 2/3; \
                 the exact value of this difference is 0.669909147130 (gap 3.24e-3), \
                 so the pinned 1e-3 tolerance cannot be met at block length 14 \
                 (the gap first drops below 1e-3 at block length 17)"
            ),
        );
    }
    pass(7, "entropies", "H(1), golden-mean rates, and even-process rate all within tolerance");
}

#[test]
fn criterion_8_sampler() {
    let n = 1_000_000usize;

    let g = golden_mean();
    let rho = stationary_state(&g).unwrap();
    let text = sample_stationary(&g, &rho, n, 20_260_809).unwrap().to_string();
    if text.contains("00") {
        fail(8, "sampler", "golden-mean sample contains '00'");
    }
    let ones = text.bytes().filter(|&b| b == b'1').count() as f64 / n as f64;
    if !(0.661..=0.672).contains(&ones) {
        fail(8, "sampler", &format!("golden-mean frequency of 1 = {ones:.6}"));
    }

    let g = even_process();
    let rho = stationary_state(&g).unwrap();
    let text = sample_stationary(&g, &rho, n, 20_260_809).unwrap().to_string();
    let blocks: Vec<&str> = text.split('0').collect();
    for block in &blocks[1..blocks.len().saturating_sub(1)] {
        if block.len() % 2 == 1 {
            fail(8, "sampler", &format!("even-process sample has odd 1-block of {}", block.len()));
        }
    }
    pass(
        8,
        "sampler",
        &format!("10^6 symbols per model; golden-mean freq(1) = {ones:.6}; even blocks all even"),
    );
}

#[test]
fn criterion_9_figure2_reproduction() {
    let g = even_process();
    let source = WordSource::stationary(&g).unwrap();
    let len = 10usize;
    let points = figure2_data(&source, len, &LanguageOptions::default()).unwrap();
    if points.len() != 1 << len {
        fail(9, "figure-2 data", &format!("{} points", points.len()));
    }
    for (rank, point) in points.iter().enumerate() {
        let expected_x = rank as f64 / (1 << len) as f64;
        if point.x != expected_x {
            fail(9, "figure-2 data", &format!("x[{rank}] = {} != {expected_x}", point.x));
        }
        let forbidden = has_odd_one_block(&word_text(rank, len));
        if forbidden != (point.log2_density == f64::NEG_INFINITY) {
            fail(
                9,
                "figure-2 data",
                &format!("rank {rank}: marker mismatch (forbidden={forbidden})"),
            );
        }
        if !forbidden && !point.log2_density.is_finite() {
            fail(9, "figure-2 data", &format!("rank {rank}: non-finite density"));
        }
    }
    pass(
        9,
        "figure-2 data",
        "length-10 grid complete; -inf exactly at odd-1-block words",
    );
}
