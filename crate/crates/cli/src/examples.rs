use std::fmt::Write as _;

use minfam::families::minimal_family;
use minfam::fixtures::{example_with, ExampleDescriptor, EXAMPLE_NAMES};
use minfam::qprofile::{compute_q_profile, ProfileOptions};
use minfam::{Error, Field};
use serde::Serialize;

use crate::commands::Output;

/// One compared value.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub fixture: String,
    pub quantity: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

fn check(fixture: &str, quantity: impl Into<String>, expected: impl ToString, got: impl ToString) -> Check {
    let (expected, got) = (expected.to_string(), got.to_string());
    Check {
        fixture: fixture.to_string(),
        quantity: quantity.into(),
        pass: expected == got,
        expected,
        got,
    }
}

fn failure(fixture: &str, stage: &str, e: &Error) -> Check {
    Check {
        fixture: fixture.to_string(),
        quantity: stage.to_string(),
        expected: "success".into(),
        got: format!("error: {e}"),
        pass: false,
    }
}

/// Compares everything computed for one fixture with its expected values.
pub fn check_fixture<K: Field>(field: &K, name: &str, seed: u64, perturb: bool) -> Vec<Check> {
    let ex: ExampleDescriptor<K> = match example_with(field, name, perturb) {
        Ok(ex) => ex,
        Err(e) => return vec![failure(name, "fixture", &e)],
    };
    let want = &ex.expected;
    let mut out = Vec::new();
    if let Some((count, degree)) = want.sigma2 {
        let got = &ex.sigma2_degrees;
        out.push(check(name, "sigma2 generators", count, got.len()));
        let uniform = got.iter().all(|&d| d == degree);
        out.push(check(name, "sigma2 degrees", format!("all {degree}"), if uniform { format!("all {degree}") } else { format!("{got:?}") }));
    }
    let profile = match compute_q_profile(&ex.matrix, &ProfileOptions::default()) {
        Ok(p) => p,
        Err(e) => {
            out.push(failure(name, "q profile", &e));
            return out;
        }
    };
    for &(n, a, b) in &want.alpha_beta {
        out.push(check(name, format!("alpha_{n}"), a, profile.alpha(n)));
        out.push(check(name, format!("beta_{n}"), b, profile.beta(n)));
    }
    let b0 = profile.b0.map_or("-".into(), |b| b.to_string());
    out.push(check(name, "b0", want.b0, b0));
    let q = profile.q();
    if want.q_complete {
        out.push(check(name, "q", &want.q, &q));
    } else {
        for (n, m) in want.q.iter() {
            out.push(check(name, format!("q({n})"), m, q.get(n)));
        }
    }
    match minimal_family(&ex.matrix, seed) {
        Ok(r) => {
            if let Some(h0) = want.h0 {
                out.push(check(name, "h0", h0, r.h0));
            }
            out.push(check(name, "d0", want.d0, r.d0));
            out.push(check(name, "g0", want.g0, &r.g0));
        }
        Err(e) => out.push(failure(name, "minimal family", &e)),
    }
    out
}

/// All fixtures, in parallel, reported in a fixed order.
pub fn run<K: Field>(field: &K, seed: u64, perturb: bool, json: bool) -> Result<Output, Error> {
    let checks: Vec<Check> = std::thread::scope(|scope| {
        let handles: Vec<_> = EXAMPLE_NAMES
            .iter()
            .map(|name| scope.spawn(move || check_fixture(field, name, seed, perturb)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("fixture thread panicked"))
            .collect()
    });
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let code = if failed.is_empty() { 0 } else { 1 };
    let text = if json {
        serde_json::to_string_pretty(&checks)? + "\n"
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "{:<7} | {:<18} | {:>10} | {:>10} | result", "fixture", "quantity", "expected", "got");
        let _ = writeln!(out, "{}", "-".repeat(64));
        for c in &checks {
            let _ = writeln!(
                out,
                "{:<7} | {:<18} | {:>10} | {:>10} | {}",
                c.fixture,
                c.quantity,
                c.expected,
                c.got,
                if c.pass { "pass" } else { "FAIL" }
            );
        }
        if failed.is_empty() {
            let _ = writeln!(out, "all {} checks pass", checks.len());
        } else {
            let _ = writeln!(out, "{} of {} checks fail:", failed.len(), checks.len());
            for c in failed {
                let _ = writeln!(out, "  {} {}: expected {}, got {}", c.fixture, c.quantity, c.expected, c.got);
            }
        }
        out
    };
    Ok(Output {
        text,
        code,
        warnings: Vec::new(),
    })
}
