use std::fmt::Write as _;

use minfam::families::{minimal_family_with, sheaf_degree, FamilyOptions, MinimalFamilyReport, RETRY_CAP};
use minfam::fixtures::example;
use minfam::grmatrix::{CharFunction, GradedMatrix, MatrixFile};
use minfam::qprofile::{check_p_admissible, compute_q_profile, implied_shift, Admissibility, ProfileOptions, QProfile};
use minfam::{Error, Field, FieldSpec, PrimeField, Rationals};
use serde::Serialize;

use crate::{Format, RunArgs};

/// What a command prints, and its exit status.
pub struct Output {
    pub text: String,
    pub code: u8,
    pub warnings: Vec<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: 0,
            warnings: Vec::new(),
        }
    }
}

/// The input matrix over the field it was read with.
pub enum Input {
    Prime(GradedMatrix<PrimeField>),
    Rationals(GradedMatrix<Rationals>),
}

macro_rules! dispatch {
    ($input:expr, $m:ident => $body:expr) => {
        match $input {
            Input::Prime($m) => $body,
            Input::Rationals($m) => $body,
        }
    };
}

impl Input {
    pub fn resolve(args: &RunArgs) -> Result<Self, Error> {
        if let Some(name) = &args.fixture {
            return Ok(match args.field.unwrap_or_default() {
                FieldSpec::Rationals => Input::Rationals(example(&Rationals, name)?.matrix),
                FieldSpec::Prime { characteristic } => {
                    Input::Prime(example(&PrimeField::new(characteristic)?, name)?.matrix)
                }
            });
        }
        let path = args.input.as_ref().expect("clap requires an input");
        let file = MatrixFile::from_json(&std::fs::read_to_string(path)?)?;
        Ok(match args.field.unwrap_or(file.field) {
            FieldSpec::Rationals => Input::Rationals(file.to_matrix(&Rationals)?),
            FieldSpec::Prime { characteristic } => Input::Prime(file.to_matrix(&PrimeField::new(characteristic)?)?),
        })
    }
}

fn profile_options(args: &RunArgs) -> ProfileOptions {
    let mut opts = ProfileOptions {
        window: args.window,
        assume_locally_free: args.assume_locally_free,
        assume_surjective: args.assume_surjective,
        ..Default::default()
    };
    if let Some(b) = args.minor_budget {
        opts.minor_budget = b;
    }
    opts
}

#[derive(Serialize)]
struct ProfileReport<'a> {
    field: String,
    q: CharFunction,
    #[serde(flatten)]
    profile: &'a QProfile,
}

pub fn qprofile(args: &RunArgs, input: Input) -> Result<Output, Error> {
    dispatch!(input, m => {
        let profile = compute_q_profile(&m, &profile_options(args))?;
        let text = match args.format {
            Format::Json => {
                let report = ProfileReport { field: m.field().spec().to_string(), q: profile.q(), profile: &profile };
                serde_json::to_string_pretty(&report)? + "\n"
            }
            Format::Table => profile_table(&profile),
        };
        Ok(Output { text, code: 0, warnings: profile.warnings.clone() })
    })
}

pub fn profile_table(p: &QProfile) -> String {
    let q = p.q();
    let mut out = String::new();
    let _ = writeln!(out, "{:>4} | {:>5} | {:>4} | {:>3} | {:>3}", "n", "alpha", "beta", "q#", "q");
    let _ = writeln!(out, "{}", "-".repeat(31));
    for r in &p.rows {
        let _ = writeln!(
            out,
            "{:>4} | {:>5} | {:>4} | {:>3} | {:>3}",
            r.n,
            r.alpha,
            r.beta,
            r.q_sharp,
            q.get(r.n)
        );
    }
    let b0 = p.b0.map_or("-".to_string(), |b| b.to_string());
    let _ = writeln!(out, "b0 = {b0}");
    let _ = writeln!(out, "r = {}", p.stable_rank);
    let _ = writeln!(out, "q = {q}");
    if p.dissociated {
        let _ = writeln!(out, "dissociated");
    }
    if !p.stabilized {
        let _ = writeln!(out, "q# has not stabilized inside the window");
    }
    out
}

pub fn minimal_family(args: &RunArgs, input: Input) -> Result<Output, Error> {
    let opts = FamilyOptions {
        profile: profile_options(args),
        seed: args.seed,
        retry_cap: RETRY_CAP,
    };
    dispatch!(input, m => {
        let report = minimal_family_with(&m, &opts)?;
        let text = match args.format {
            Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            Format::Table => family_table(&report),
        };
        Ok(Output { text, code: 0, warnings: report.warnings.clone() })
    })
}

pub fn family_table(r: &MinimalFamilyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "q     = {}", r.q);
    let _ = writeln!(out, "deg N = {}", r.deg_n);
    let _ = writeln!(out, "h0    = {}", r.h0);
    let _ = writeln!(out, "d0    = {}", r.d0);
    let _ = writeln!(out, "g0    = {}", r.g0);
    let _ = writeln!(out, "P(n)  = {}", r.hilbert_polynomial);
    let _ = writeln!(out, "seed  = {:#x} (retries {})", r.seed, r.retries);
    let c = &r.certificate;
    let _ = writeln!(
        out,
        "certificate: rank {} at the closed point, {}-minors coprime ({:?})",
        c.rank, c.minor_size, c.coprime_by
    );
    out
}

#[derive(Serialize)]
struct CheckReport {
    #[serde(flatten)]
    verdict: Admissibility,
    shift: Option<i64>,
}

pub fn check_p(args: &RunArgs, input: Input, p: &str) -> Result<Output, Error> {
    let p: CharFunction = serde_json::from_str(p)?;
    dispatch!(input, m => {
        let profile = compute_q_profile(&m, &profile_options(args))?;
        let verdict = check_p_admissible(&p, &profile)?;
        let shift = if verdict.admissible { Some(implied_shift(&p, sheaf_degree(&m)?)) } else { None };
        let code = if verdict.admissible { 0 } else { 1 };
        let text = match args.format {
            Format::Json => serde_json::to_string_pretty(&CheckReport { verdict, shift })? + "\n",
            Format::Table => match shift {
                Some(h) => format!("admissible: p = {p}, shift h = {h}\n"),
                None => format!(
                    "rejected: condition {} fails at n = {}: {}\n",
                    verdict.violated.unwrap_or(0),
                    verdict.witness.unwrap_or(0),
                    verdict.reason
                ),
            },
        };
        Ok(Output { text, code, warnings: profile.warnings.clone() })
    })
}

pub fn export<K: Field>(field: &K, fixture: &str) -> Result<Output, Error> {
    let ex = example(field, fixture)?;
    Ok(Output::ok(MatrixFile::from_matrix(&ex.matrix).to_json()? + "\n"))
}
