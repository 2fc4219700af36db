mod commands;
mod examples;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minfam::{Error, FieldSpec, PrimeField, Rationals};

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "minfam", version, about = "Invariants and minimal curve families of graded matrices over a DVR")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-degree table of alpha, beta, q# and q, with b0 and the rank.
    Qprofile(RunArgs),
    /// Minimal shift, degree and genus of the minimal family.
    MinimalFamily(RunArgs),
    /// Admissibility of a degree profile p, given as JSON {"degree": multiplicity}.
    CheckP {
        #[command(flatten)]
        run: RunArgs,
        /// The profile to check, e.g. '{"2": 3}'.
        #[arg(long = "p")]
        p: String,
    },
    /// Runs every built-in fixture and compares against the expected values.
    Examples {
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
        /// Print the comparison as JSON.
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
        #[arg(long, default_value_t = minfam::families::DEFAULT_SEED)]
        seed: u64,
        /// Zeroes the first entry of sigma1 in every fixture.
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// Writes the matrix of a fixture in the input JSON format.
    Export {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Built-in fixture: 3.2, 3.3 or 3.4.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub fixture: Option<String>,
    /// Matrix file in JSON.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// rationals or prime:P; defaults to the field of the input, else prime:32003.
    #[arg(long, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    #[arg(long, default_value_t = minfam::families::DEFAULT_SEED)]
    pub seed: u64,
    /// Degree window min:max.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(i64, i64)>,
    #[arg(long)]
    pub minor_budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Proceed when the maximal minors have a common zero.
    #[arg(long)]
    pub assume_locally_free: bool,
    /// Record surjectivity of L2 onto the sections of N as assumed.
    #[arg(long)]
    pub assume_surjective: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ExportFormat {
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FieldArg {
    Rationals,
    Prime,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected min:max")?;
    let lo = a.trim().parse().map_err(|_| format!("bad window start `{a}`"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad window end `{b}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Stable exit codes.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Inhomogeneous { .. }
        | Error::Shape(_)
        | Error::InvalidField(_)
        | Error::FieldMismatch(..)
        | Error::Json(_)
        | Error::Io(_)
        | Error::DegreeMismatch(_)
        | Error::UnknownFixture(_)
        | Error::MassMismatch { .. } => 2,
        Error::Hypothesis(_) => 3,
        Error::Budget(_) | Error::WindowExhausted { .. } | Error::NotStabilized { .. } => 4,
        Error::Dissociated => 5,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.command {
        Command::Qprofile(args) => with_field(&args, commands::qprofile),
        Command::MinimalFamily(args) => with_field(&args, commands::minimal_family),
        Command::CheckP { run, p } => with_field(&run, |a, input| commands::check_p(a, input, &p)),
        Command::Examples {
            field,
            export,
            seed,
            perturb,
        } => {
            let json = export.is_some();
            match field {
                Some(FieldArg::Rationals) => examples::run(&Rationals, seed, perturb, json),
                _ => examples::run(&PrimeField::default(), seed, perturb, json),
            }
        }
        Command::Export { fixture, field } => match field.unwrap_or_default() {
            FieldSpec::Rationals => commands::export(&Rationals, &fixture),
            FieldSpec::Prime { characteristic } => commands::export(&PrimeField::new(characteristic)?, &fixture),
        },
    }
}

/// Resolves the field and input, then runs `f` over that field.
fn with_field(
    args: &RunArgs,
    f: impl Fn(&RunArgs, commands::Input) -> Result<Output, Error>,
) -> Result<Output, Error> {
    let input = commands::Input::resolve(args)?;
    f(args, input)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
