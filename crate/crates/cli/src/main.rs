//! `qfg` command-line tool: validate generator models, enumerate word
//! distributions, report forbidden words, estimate entropies, sample
//! trajectories, emit word-density data, and cross-check models against
//! the classical oracles.
//!
//! Exit codes: 0 success (and `compare` equivalence), 1 semantic mismatch
//! from `compare`, 2 model validation or parse failure, 3 enumeration cap
//! exceeded, 4 I/O or internal failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qfg::{
    classical_even, classical_golden_mean, enumerate_distribution, entropy_profile, figure2_data,
    forbidden_words, max_word_deviation, sample_classical, sample_stationary, sample_trajectory,
    stationary_state, ClassicalGenerator, Error, ForbiddenWordReport, LanguageOptions,
    QuantumGenerator, SpinAxis, StateVector, WordSource,
};

#[derive(Parser)]
#[command(
    name = "qfg",
    version,
    about = "Quantum finite-state generators: word statistics and language analysis"
)]
struct Cli {
    /// Validation tolerance for the structural axioms.
    #[arg(long, global = true, default_value_t = qfg::generator::DEFAULT_VALIDATION_TOL)]
    tol: f64,

    /// Probability threshold separating forbidden from allowed words.
    #[arg(long, global = true, default_value_t = qfg::process::DEFAULT_FORBIDDEN_EPSILON)]
    epsilon: f64,

    /// Maximum number of words an enumeration may produce.
    #[arg(long, global = true, default_value_t = qfg::language::DEFAULT_ENUMERATION_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every structural axiom of a model and print the residuals.
    Validate {
        /// Built-in model name or path to a model file.
        #[arg(long)]
        model: String,
    },
    /// Write the exact word distribution at one length as CSV.
    Words {
        #[arg(long)]
        model: String,
        /// Word length L; the output has one row per length-L word.
        #[arg(long = "max-len")]
        max_len: usize,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report forbidden and irreducible forbidden words up to a length.
    Forbidden {
        #[arg(long)]
        model: String,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Block entropies H(l) and rates H(l)-H(l-1) for l = 1..=L, as CSV.
    Entropy {
        #[arg(long)]
        model: String,
        #[arg(long = "max-len")]
        max_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a symbol stream from the model.
    Sample {
        #[arg(long)]
        model: String,
        /// Number of symbols to emit.
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Word-density data: x = word as base-|A| real, y = log2 density.
    Figdata {
        #[arg(long)]
        model: String,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a model against a classical oracle over all short words.
    Compare {
        #[arg(long)]
        model: String,
        /// Oracle name: oracle-golden-mean or oracle-even.
        #[arg(long)]
        oracle: String,
        #[arg(long = "max-len")]
        max_len: usize,
        /// Deviations at or above this exit with status 1.
        #[arg(long, default_value_t = 1e-10)]
        threshold: f64,
    },
    /// List the nonzero transition-operator entries as an edge list.
    Structure {
        #[arg(long)]
        model: String,
    },
}

enum Model {
    Quantum {
        name: String,
        generator: QuantumGenerator,
        initial: Option<StateVector>,
    },
    Classical {
        name: String,
        generator: ClassicalGenerator,
    },
}

impl Model {
    fn name(&self) -> &str {
        match self {
            Model::Quantum { name, .. } => name,
            Model::Classical { name, .. } => name,
        }
    }

    fn source(&self) -> Result<WordSource<'_>, Error> {
        match self {
            Model::Quantum {
                generator,
                initial: Some(psi),
                ..
            } => WordSource::pure(generator, psi),
            Model::Quantum {
                generator,
                initial: None,
                ..
            } => WordSource::stationary(generator),
            Model::Classical { generator, .. } => Ok(WordSource::classical(generator)),
        }
    }
}

fn load_model(name_or_path: &str, tol: f64) -> Result<Model, Error> {
    let quantum = |axis: SpinAxis| Model::Quantum {
        name: name_or_path.to_string(),
        generator: qfg::spin1_generator(axis),
        initial: None,
    };
    match name_or_path {
        "spin1-y" => Ok(quantum(SpinAxis::Y)),
        "spin1-x" => Ok(quantum(SpinAxis::X)),
        "spin1-z" => Ok(quantum(SpinAxis::Z)),
        "oracle-golden-mean" => Ok(Model::Classical {
            name: name_or_path.to_string(),
            generator: classical_golden_mean(),
        }),
        "oracle-even" => Ok(Model::Classical {
            name: name_or_path.to_string(),
            generator: classical_even(),
        }),
        path => {
            let file = qfg::ModelFile::from_path(Path::new(path))?;
            let (generator, initial) = file.build(tol)?;
            Ok(Model::Quantum {
                name: path.to_string(),
                generator,
                initial,
            })
        }
    }
}

/// 15 significant digits; infinities print as the bare tokens inf/-inf.
fn sig15(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{x:.14e}")
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        Error::NonConvergence { .. } => 4,
        _ => 2,
    }
}

fn cmd_validate(model: &Model, tol: f64) -> Result<u8, Error> {
    let mut all_pass = true;
    match model {
        Model::Quantum { generator, name, .. } => {
            println!(
                "model {name}: quantum generator, dim {}, alphabet \"{}\"",
                generator.dim(),
                generator.alphabet()
            );
            let projectors: Vec<(char, qfg::ComplexMatrix)> = generator
                .alphabet()
                .symbols()
                .iter()
                .map(|&s| (s, generator.projector(s).expect("own symbol").clone()))
                .collect();
            let report = QuantumGenerator::validation_report(
                generator.dim(),
                generator.alphabet(),
                generator.unitary(),
                &projectors,
                tol,
            )?;
            for check in &report.checks {
                let verdict = if check.pass { "PASS" } else { "FAIL" };
                println!(
                    "  {:<34} residual {:>10}   {verdict}",
                    check.label(),
                    format!("{:.3e}", check.residual)
                );
                all_pass &= check.pass;
            }
        }
        Model::Classical { generator, name } => {
            println!(
                "model {name}: classical generator, {} states, alphabet \"{}\"",
                generator.n_states(),
                generator.alphabet()
            );
            for (axiom, residual) in generator.residuals() {
                let pass = residual <= tol;
                let verdict = if pass { "PASS" } else { "FAIL" };
                println!(
                    "  {axiom:<34} residual {:>10}   {verdict}",
                    format!("{residual:.3e}")
                );
                all_pass &= pass;
            }
        }
    }
    println!("result: {}", if all_pass { "PASS" } else { "FAIL" });
    Ok(if all_pass { 0 } else { 2 })
}

fn cmd_words(model: &Model, len: usize, out: &Option<PathBuf>, opts: &LanguageOptions) -> Result<u8, Error> {
    let source = model.source()?;
    let dist = enumerate_distribution(&source, len, opts)?;
    let scale = dist.word_count() as f64;
    let mut csv = String::from("word,probability,density,log2_density\n");
    for (word, p) in dist.iter() {
        if p <= opts.epsilon {
            csv.push_str(&format!("{word},{},-inf,-inf\n", sig15(p)));
        } else {
            let density = scale * p;
            csv.push_str(&format!(
                "{word},{},{},{}\n",
                sig15(p),
                sig15(density),
                sig15(density.log2())
            ));
        }
    }
    write_output(out, &csv).map_err(io_error)?;
    Ok(0)
}

fn cmd_forbidden(model: &Model, max_len: usize, opts: &LanguageOptions) -> Result<u8, Error> {
    let source = model.source()?;
    let report = forbidden_words(&source, max_len, opts)?;
    println!(
        "model {}: forbidden words up to length {} (epsilon {:.1e})",
        model.name(),
        max_len,
        opts.epsilon
    );
    println!("forbidden ({}):", report.forbidden.len());
    for word in ForbiddenWordReport::sorted_by_length(&report.forbidden) {
        println!("{word}");
    }
    println!("irreducible ({}):", report.irreducible.len());
    for word in ForbiddenWordReport::sorted_by_length(&report.irreducible) {
        println!("{word}");
    }
    Ok(0)
}

fn cmd_entropy(model: &Model, max_len: usize, out: &Option<PathBuf>, opts: &LanguageOptions) -> Result<u8, Error> {
    let source = model.source()?;
    let profile = entropy_profile(&source, max_len, opts)?;
    let mut csv = String::from("length,block_entropy,entropy_rate\n");
    for point in profile {
        csv.push_str(&format!(
            "{},{},{}\n",
            point.length,
            sig15(point.block_entropy),
            sig15(point.rate)
        ));
    }
    write_output(out, &csv).map_err(io_error)?;
    Ok(0)
}

fn cmd_sample(model: &Model, len: usize, seed: u64, out: &Option<PathBuf>) -> Result<u8, Error> {
    let word = match model {
        Model::Quantum {
            generator,
            initial: Some(psi),
            ..
        } => sample_trajectory(generator, psi, len, seed)?,
        Model::Quantum {
            generator,
            initial: None,
            ..
        } => {
            let rho = stationary_state(generator)?;
            sample_stationary(generator, &rho, len, seed)?
        }
        Model::Classical { generator, .. } => sample_classical(generator, len, seed),
    };
    let mut content = word.to_string();
    if !content.is_empty() {
        content.push('\n');
    }
    write_output(out, &content).map_err(io_error)?;
    Ok(0)
}

fn cmd_figdata(model: &Model, len: usize, out: &Option<PathBuf>, opts: &LanguageOptions) -> Result<u8, Error> {
    let source = model.source()?;
    let points = figure2_data(&source, len, opts)?;
    let mut csv = String::from("x,log2_density\n");
    for point in points {
        csv.push_str(&format!("{},{}\n", point.x, sig15(point.log2_density)));
    }
    write_output(out, &csv).map_err(io_error)?;
    Ok(0)
}

fn cmd_compare(
    model: &Model,
    oracle_name: &str,
    max_len: usize,
    threshold: f64,
    opts: &LanguageOptions,
) -> Result<u8, Error> {
    let oracle = match oracle_name {
        "oracle-golden-mean" => classical_golden_mean(),
        "oracle-even" => classical_even(),
        other => {
            return Err(Error::ModelFile(format!(
                "unknown oracle '{other}' (expected oracle-golden-mean or oracle-even)"
            )))
        }
    };
    let source = model.source()?;
    let oracle_source = WordSource::classical(&oracle);
    let (deviation, witness) = max_word_deviation(&source, &oracle_source, max_len, opts.cap)?;
    println!(
        "comparing {} against {oracle_name} over words of length 1..={max_len}",
        model.name()
    );
    match &witness {
        Some(word) => println!(
            "max |Pr_model(w) - Pr_oracle(w)| = {:.6e} at word \"{word}\"",
            deviation
        ),
        None => println!("max |Pr_model(w) - Pr_oracle(w)| = {deviation:.6e}"),
    }
    if deviation < threshold {
        println!("threshold {threshold:.1e}: EQUIVALENT");
        Ok(0)
    } else {
        println!("threshold {threshold:.1e}: DIFFER");
        Ok(1)
    }
}

fn cmd_structure(model: &Model) -> Result<u8, Error> {
    match model {
        Model::Quantum { generator, name, .. } => {
            println!("model {name}: transition-operator edges (|amplitude| > 1e-12)");
            for &s in generator.alphabet().symbols() {
                let t = generator.transition(s)?;
                for i in 0..generator.dim() {
                    for j in 0..generator.dim() {
                        let a = t.get(i, j);
                        if a.norm() > 1e-12 {
                            println!(
                                "  q{i} -'{s}'-> q{j}   amplitude {:+.6} {:+.6}i",
                                a.re, a.im
                            );
                        }
                    }
                }
            }
        }
        Model::Classical { generator, name } => {
            println!("model {name}: labeled-chain edges (probability > 0)");
            let n = generator.n_states();
            for &s in generator.alphabet().symbols() {
                let m = generator.matrix_for(s)?;
                for i in 0..n {
                    for j in 0..n {
                        let p = m[i * n + j];
                        if p > 0.0 {
                            println!("  q{i} -'{s}'-> q{j}   probability {p}");
                        }
                    }
                }
            }
        }
    }
    Ok(0)
}

fn io_error(e: std::io::Error) -> Error {
    Error::ModelFile(format!("i/o: {e}"))
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let opts = LanguageOptions {
        epsilon: cli.epsilon,
        cap: cli.cap,
    };
    match &cli.command {
        Command::Validate { model } => cmd_validate(&load_model(model, cli.tol)?, cli.tol),
        Command::Words { model, max_len, out } => {
            cmd_words(&load_model(model, cli.tol)?, *max_len, out, &opts)
        }
        Command::Forbidden { model, max_len } => {
            cmd_forbidden(&load_model(model, cli.tol)?, *max_len, &opts)
        }
        Command::Entropy { model, max_len, out } => {
            cmd_entropy(&load_model(model, cli.tol)?, *max_len, out, &opts)
        }
        Command::Sample { model, len, seed, out } => {
            cmd_sample(&load_model(model, cli.tol)?, *len, *seed, out)
        }
        Command::Figdata { model, len, out } => {
            cmd_figdata(&load_model(model, cli.tol)?, *len, out, &opts)
        }
        Command::Compare {
            model,
            oracle,
            max_len,
            threshold,
        } => cmd_compare(&load_model(model, cli.tol)?, oracle, *max_len, *threshold, &opts),
        Command::Structure { model } => cmd_structure(&load_model(model, cli.tol)?),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let code = exit_code_for(&err);
            eprintln!("error: {err}");
            ExitCode::from(code)
        }
    }
}
