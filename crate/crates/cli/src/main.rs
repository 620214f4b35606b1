use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permcrit::harness::{
    beta_sweep, evaluate_state, verify_distinctness, verify_norm_preserving, verify_rule5,
    verify_soundness, BetaSweepReport, ClassCensus, DistinctnessReport, EvaluationReport,
    NormPreservingReport, Rule5Report, SoundnessReport, VerificationConfig,
    DEFAULT_VIOLATION_TOLERANCE,
};
use permcrit::numerics::io::{builtin_state, read_state};
use permcrit::numerics::maximally_mixed;
use permcrit::{enumerate_classes, CriterionClass, DensityMatrix, Error};

#[derive(Parser)]
#[command(
    name = "permcrit",
    version,
    about = "Independent permutation separability criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List one canonical representative per independent criterion.
    Enumerate {
        #[arg(long)]
        parties: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Count classes by formula and enumeration, optionally by brute force.
    Count {
        #[arg(long)]
        parties: usize,
        /// Also run the brute-force oracle over all (2r)! permutations (r <= 4).
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Evaluate every class (or selected ones) on a state.
    Evaluate(EvaluateArgs),
    /// Randomized verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        opts: VerifyArgs,
    },
    /// Noise thresholds of the four-party criteria on two chess-board copies.
    BetaSweep {
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long = "tol", default_value_t = DEFAULT_VIOLATION_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct EvaluateArgs {
    /// JSON state file.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    state: Option<PathBuf>,
    /// chessboard, bell, or mixed (needs --dim and --parties).
    #[arg(long)]
    builtin: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    parties: Option<usize>,
    #[arg(long = "tol", default_value_t = DEFAULT_VIOLATION_TOLERANCE)]
    tolerance: f64,
    /// Restrict to these class ids (comma separated).
    #[arg(long = "class", value_delimiter = ',')]
    classes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Rule5,
    Distinctness,
    NormPreserving,
    Soundness,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    parties: usize,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// Rank of the random states (default: full, or 3 for distinctness).
    #[arg(long)]
    rank: Option<usize>,
    /// Permit r = 7 and 8.
    #[arg(long)]
    allow_large: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    AssertionFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::AssertionFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(value).expect("reports serialize")
        ),
        Format::Table => print!("{}", table()),
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Enumerate { parties, format } => {
            let classes = enumerate_classes(parties)?;
            match format {
                Format::Json => print!("{}", classes_json(&classes)),
                Format::Table => print!("{}", classes_table(&classes)),
            }
            Ok(Outcome::Pass)
        }
        Command::Count {
            parties,
            oracle,
            format,
        } => {
            let census = ClassCensus::compute(parties, oracle)?;
            emit(format, &census, || census_table(&census));
            Ok(if census.consistent() {
                Outcome::Pass
            } else {
                Outcome::AssertionFailed
            })
        }
        Command::Evaluate(args) => {
            let (rho, source) = load_state(&args)?;
            let selection = (!args.classes.is_empty()).then_some(args.classes.as_slice());
            let report = evaluate_state(&rho, &source, selection, args.tolerance)?;
            emit(args.format, &report, || EvaluationReport::to_table(&report));
            Ok(Outcome::Pass)
        }
        Command::Verify { suite, opts } => {
            let mut config =
                VerificationConfig::new(opts.parties, opts.dim, opts.samples, opts.seed);
            config.allow_large = opts.allow_large;
            config.state_rank = opts.rank;
            let passed = match suite {
                Suite::Rule5 => {
                    let r = verify_rule5(&config)?;
                    emit(opts.format, &r, || rule5_table(&r));
                    r.passed
                }
                Suite::Distinctness => {
                    let r = verify_distinctness(&config)?;
                    emit(opts.format, &r, || distinctness_table(&r));
                    if !r.all_distinct {
                        eprintln!(
                            "warning: {} of {} samples had two classes within {:e}",
                            r.warnings,
                            r.samples.len(),
                            config.distinctness_threshold
                        );
                    }
                    true
                }
                Suite::NormPreserving => {
                    let r = verify_norm_preserving(&config)?;
                    emit(opts.format, &r, || norm_preserving_table(&r));
                    r.passed
                }
                Suite::Soundness => {
                    let r = verify_soundness(&config)?;
                    emit(opts.format, &r, || soundness_table(&r));
                    r.passed
                }
            };
            Ok(if passed {
                Outcome::Pass
            } else {
                Outcome::AssertionFailed
            })
        }
        Command::BetaSweep {
            steps,
            tolerance,
            format,
        } => {
            let report = beta_sweep(steps, tolerance)?;
            emit(format, &report, || sweep_table(&report));
            Ok(Outcome::Pass)
        }
    }
}

fn load_state(args: &EvaluateArgs) -> Result<(DensityMatrix, String), Error> {
    let (rho, source) = match (&args.state, args.builtin.as_deref()) {
        (Some(path), _) => (read_state(path)?, path.display().to_string()),
        (None, Some("mixed")) => {
            let (Some(d), Some(r)) = (args.dim, args.parties) else {
                return Err(Error::InvalidArgument(
                    "builtin mixed needs --dim and --parties".into(),
                ));
            };
            (maximally_mixed(d, r)?, "mixed".to_string())
        }
        (None, Some(name)) => (builtin_state(name)?, name.to_string()),
        (None, None) => unreachable!("clap requires --state or --builtin"),
    };
    if args.dim.is_some_and(|d| d != rho.dim()) || args.parties.is_some_and(|r| r != rho.parties())
    {
        return Err(Error::InvalidArgument(format!(
            "state {source} has d = {}, r = {}, which does not match the requested shape",
            rho.dim(),
            rho.parties()
        )));
    }
    Ok((rho, source))
}

/// One class per line so permutations stay on a single line.
fn classes_json(classes: &[CriterionClass]) -> String {
    let items: Vec<String> = classes
        .iter()
        .map(|c| serde_json::to_string(c).expect("classes serialize"))
        .collect();
    if items.is_empty() {
        return "[]\n".to_string();
    }
    format!("[\n  {}\n]\n", items.join(",\n  "))
}

fn classes_table(classes: &[CriterionClass]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5}  {:<10} {:<10} {:<24} cycles",
        "id", "roles", "label", "permutation"
    );
    for c in classes {
        let sigma = c.to_permutation();
        let _ = writeln!(
            out,
            "{:>5}  {:<10} {:<10} {:<24} {}",
            c.id,
            c.canonical.to_string(),
            c.label,
            sigma.to_string(),
            sigma.cycle_notation()
        );
    }
    let _ = writeln!(out, "{} classes", classes.len());
    out
}

fn census_table(c: &ClassCensus) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "parties:     {}", c.parties);
    let _ = writeln!(out, "formula:     {}", c.formula_count);
    let _ = writeln!(out, "enumerated:  {}", c.enumerated_count);
    if let Some(o) = c.oracle_count {
        let _ = writeln!(out, "oracle:      {o}");
    }
    let _ = writeln!(out, "per row:");
    for (label, n) in &c.per_row_counts {
        let _ = writeln!(out, "  {label:<16} {n}");
    }
    let _ = writeln!(
        out,
        "consistent:  {}",
        if c.consistent() { "yes" } else { "NO" }
    );
    out
}

fn config_line(c: &VerificationConfig) -> String {
    format!(
        "r = {}, d = {}, samples = {}, seed = {}",
        c.parties, c.dim, c.samples, c.seed
    )
}

fn rule5_table(r: &Rule5Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "rule5: {}, {} classes",
        config_line(&r.config),
        r.classes
    );
    let _ = writeln!(out, "max deviation: {:e}", r.max_deviation);
    if let Some(w) = &r.worst {
        let _ = writeln!(
            out,
            "worst: class {} ({} {}) at seed {}",
            w.class_id, w.roles, w.label, w.sample_seed
        );
    }
    for f in &r.failures {
        let _ = writeln!(
            out,
            "FAIL class {} ({} {}) seed {}: deviation {:e}",
            f.class_id, f.roles, f.label, f.sample_seed, f.value
        );
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}

fn distinctness_table(r: &DistinctnessReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "distinctness: {}, {} classes",
        config_line(&r.config),
        r.classes
    );
    for s in &r.samples {
        let pair = match &s.closest {
            Some(((a, la), (b, lb))) => format!("{a} ({la}) / {b} ({lb})"),
            None => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "seed {:>20}  min gap {:e}  closest {}{}",
            s.sample_seed,
            s.min_gap,
            pair,
            if s.distinct { "" } else { "  WARNING" }
        );
    }
    let _ = writeln!(out, "overall min gap: {:e}", r.min_gap);
    let _ = writeln!(
        out,
        "{}",
        if r.all_distinct {
            "all distinct".to_string()
        } else {
            format!("{} warning(s)", r.warnings)
        }
    );
    out
}

fn norm_preserving_table(r: &NormPreservingReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "norm-preserving: {}", config_line(&r.config));
    let _ = writeln!(out, "max deviation: {:e}", r.max_deviation);
    if let Some(nu) = &r.worst_permutation {
        let _ = writeln!(out, "worst permutation: {nu}");
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}

fn soundness_table(r: &SoundnessReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "soundness: {}, {} classes",
        config_line(&r.config),
        r.classes
    );
    let _ = writeln!(out, "max norm: {:.15}", r.max_norm);
    for v in &r.violations {
        let _ = writeln!(
            out,
            "FAIL class {} ({} {}) seed {}: norm {:.15}",
            v.class_id, v.roles, v.label, v.sample_seed, v.value
        );
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}

fn sweep_table(r: &BetaSweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "beta sweep: {} grid steps, violation when norm > 1 + {:e}",
        r.steps, r.tolerance
    );
    let _ = writeln!(
        out,
        "{:>5}  {:<6} {:<8} {:>18} {:>18}",
        "id", "roles", "label", "norm at 0", "threshold"
    );
    for c in &r.classes {
        let _ = writeln!(
            out,
            "{:>5}  {:<6} {:<8} {:>18.15} {:>18.15}",
            c.class_id, c.roles, c.label, c.norm_at_zero, c.threshold
        );
    }
    let _ = writeln!(out, "per row:");
    let _ = writeln!(
        out,
        "  {:<8} {:>7} {:>18} {:>18}",
        "label", "classes", "min threshold", "max threshold"
    );
    for row in &r.rows {
        let _ = writeln!(
            out,
            "  {:<8} {:>7} {:>18.15} {:>18.15}",
            row.label, row.classes, row.min_threshold, row.max_threshold
        );
    }
    out
}
