//! `lkrep`: Krammer matrices, braid word problem, Temperley-Lieb images and
//! the specialised quotient from the command line.
//!
//! Exit codes: 0 yes/success, 1 no/check failed, 2 parse or input error,
//! 3 inadmissible sample, 4 degenerate sample.

mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lkrep::braid::BraidWord;
use lkrep::krammer::{self, LabelledMatrix, PairBasis};
use lkrep::reduce::{self, QuotientReport, ReduceError};
use lkrep::ring::{parse_rational, BigRational};
use lkrep::sample::{check_admissible, parse_samples};
use lkrep::tl::{self, TLElement};
use lkrep::RingMatrix;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "lkrep",
    version,
    about = "Exact Krammer and Temperley-Lieb computations for braid groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Comma-separated sample list for q^(1/2), e.g. "2/3,3/5".
    #[arg(long, env = "LK_SAMPLES", default_value = "2/3,3/5", global = true)]
    samples: String,
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Krammer matrix of a braid word.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether a braid word is the identity.
    Trivial {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether two braid words are equal.
    Equal {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
    },
    /// Expand the Temperley-Lieb image of a braid word in the diagram basis.
    Tl {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Build the specialised quotient at one sample and compare it with the
    /// (n-2,2) module.
    Quotient {
        #[arg(long)]
        n: usize,
        /// Sample q^(1/2) as p/q; defaults to the first entry of the sample list.
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
    },
    /// Run the invariant suite up to n_max.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Inadmissible(String),
    Degenerate(String),
    Negative(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Input(_) => 2,
            CliError::Inadmissible(_) => 3,
            CliError::Degenerate(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m)
            | CliError::Inadmissible(m)
            | CliError::Degenerate(m)
            | CliError::Negative(m) => m,
        }
    }
}

const RETRY_HINT: &str = "retry with a different --s0 or LK_SAMPLES";

fn input<E: ToString>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

impl From<ReduceError> for CliError {
    fn from(e: ReduceError) -> Self {
        if e.is_inadmissible() {
            CliError::Inadmissible(e.to_string())
        } else if e.is_degenerate() {
            CliError::Degenerate(format!("{e}; {RETRY_HINT}"))
        } else if matches!(e, ReduceError::NoIntertwiner { .. }) {
            CliError::Negative(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

fn parse_word(text: &str, n: usize) -> Result<BraidWord, CliError> {
    BraidWord::parse(text, n).map_err(input)
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serialisable output")
    );
}

/// Matrix grid with `F(i,j)` labels on both axes.
fn render_labelled(m: &RingMatrix, labels: &[String]) -> String {
    let cells: Vec<String> = m.entries().iter().map(ToString::to_string).collect();
    let width = cells
        .iter()
        .chain(labels)
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    let label_width = labels.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut out = format!("{:label_width$}", "");
    for l in labels {
        out.push_str(&format!("  {l:>width$}"));
    }
    for (r, l) in labels.iter().enumerate() {
        out.push_str(&format!("\n{l:label_width$}"));
        for c in 0..m.cols() {
            out.push_str(&format!("  {:>width$}", cells[r * m.cols() + c]));
        }
    }
    out
}

fn cmd_matrix(format: Format, n: usize, word: &str) -> Result<(), CliError> {
    let w = parse_word(word, n)?;
    let m = krammer::rep_matrix(&w);
    match format {
        Format::Json => emit_json(&LabelledMatrix::new(n, m)),
        Format::Text => {
            let shown = if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            };
            println!("rho({shown}) for n = {n}, basis F(i,j)");
            println!("{}", render_labelled(&m, &PairBasis::new(n).labels()));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Decision<'a> {
    n: usize,
    words: Vec<String>,
    verdict: &'a str,
}

fn decide(
    format: Format,
    n: usize,
    words: Vec<String>,
    yes: bool,
    verdicts: (&str, &str),
) -> Result<(), CliError> {
    let verdict = if yes { verdicts.0 } else { verdicts.1 };
    match format {
        Format::Json => emit_json(&Decision { n, words, verdict }),
        Format::Text => println!("{verdict}"),
    }
    if yes {
        Ok(())
    } else {
        Err(CliError::Negative(String::new()))
    }
}

fn cmd_trivial(format: Format, n: usize, word: &str) -> Result<(), CliError> {
    let w = parse_word(word, n)?;
    let yes = krammer::is_trivial(&w);
    decide(
        format,
        n,
        vec![w.to_string()],
        yes,
        ("trivial", "nontrivial"),
    )
}

fn cmd_equal(format: Format, n: usize, w1: &str, w2: &str) -> Result<(), CliError> {
    let (a, b) = (parse_word(w1, n)?, parse_word(w2, n)?);
    let yes = krammer::words_equal(&a, &b).map_err(input)?;
    decide(
        format,
        n,
        vec![a.to_string(), b.to_string()],
        yes,
        ("equal", "distinct"),
    )
}

fn cmd_tl(format: Format, n: usize, word: &str) -> Result<(), CliError> {
    let w = parse_word(word, n)?;
    let image: TLElement = tl::braid_to_tl(&w);
    match format {
        Format::Json => emit_json(&image),
        Format::Text => {
            let shown = if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            };
            println!(
                "image of {shown} in TL_{n} ({} diagrams)",
                image.num_terms()
            );
            println!("{image}");
        }
    }
    Ok(())
}

fn print_report(r: &QuotientReport) {
    let mark = |b: bool| if b { "PASS" } else { "FAIL" };
    println!("n = {}, q^(1/2) = {}", r.n, r.s0);
    println!("dim V = {}", r.dim_ambient);
    println!(
        "dim W = {} (iota kernel size {})",
        r.dim_w, r.iota_kernel_size
    );
    println!("dim V/W = {} (expected {})", r.dim_quotient, r.expected_dim);
    println!("braid relations: {}", mark(r.checks.braid));
    println!("hecke relation: {}", mark(r.checks.hecke));
    println!("z relations: {}", mark(r.checks.z));
    println!(
        "dim W matches iota kernel: {}",
        mark(r.checks.dim_w_matches_iota_kernel)
    );
    match &r.intertwiner {
        Some(t) => {
            println!("intertwiner: found ({})", mark(r.checks.intertwiner));
            print!("{t}");
        }
        None => println!("intertwiner: not found"),
    }
    for (k, g) in r.quotient_generators.iter().enumerate() {
        println!("s{} on V/W:", k + 1);
        print!("{g}");
    }
}

fn cmd_quotient(format: Format, n: usize, s0: &BigRational) -> Result<(), CliError> {
    let report = reduce::verify_theorem_tl(n, s0)?;
    match format {
        Format::Json => emit_json(&report),
        Format::Text => print_report(&report),
    }
    if report.checks.all() {
        Ok(())
    } else {
        Err(CliError::Negative("quotient checks failed".into()))
    }
}

fn cmd_verify(
    format: Format,
    n_max: usize,
    seed: u64,
    samples: Vec<BigRational>,
) -> Result<(), CliError> {
    if n_max < 2 {
        return Err(CliError::Input(format!(
            "--n-max must be at least 2, got {n_max}"
        )));
    }
    let summary = verify::run(n_max, seed, samples);
    match format {
        Format::Json => emit_json(&summary),
        Format::Text => {
            for c in &summary.checks {
                println!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
        }
    }
    if summary.all_passed() {
        Ok(())
    } else if summary.any_degenerate() {
        Err(CliError::Degenerate(format!(
            "degenerate sample; {RETRY_HINT}"
        )))
    } else {
        Err(CliError::Negative("some checks failed".into()))
    }
}

fn admissible_samples(text: &str) -> Result<Vec<BigRational>, CliError> {
    let samples = parse_samples(text).map_err(input)?;
    if samples.is_empty() {
        return Err(CliError::Input("sample list is empty".into()));
    }
    for s in &samples {
        check_admissible(s).map_err(|e| CliError::Inadmissible(e.to_string()))?;
    }
    Ok(samples)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Matrix { n, word } => cmd_matrix(format, n, &word),
        Command::Trivial { n, word } => cmd_trivial(format, n, &word),
        Command::Equal { n, w1, w2 } => cmd_equal(format, n, &w1, &w2),
        Command::Tl { n, word } => cmd_tl(format, n, &word),
        Command::Quotient { n, s0 } => {
            let s0 = match s0 {
                Some(text) => parse_rational(&text).map_err(input)?,
                None => admissible_samples(&cli.samples)?.remove(0),
            };
            cmd_quotient(format, n, &s0)
        }
        Command::Verify { n_max, seed } => {
            let samples = admissible_samples(&cli.samples)?;
            cmd_verify(format, n_max, seed, samples)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message().is_empty() {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(e.code())
        }
    }
}
