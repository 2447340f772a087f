//! Command-line front end for the `cauchy-conv` binary.
//!
//! Exit codes: 0 on success (and every verified cell equal), 1 when a
//! verification cell disagrees, 2 for usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combinatorics::{cauchy_numbers, StirlingTable};
use crate::error::Error;
use crate::exactnum::ExactRational;
use crate::irwinhall::{density_eval, irwin_hall_density};
use crate::render::{Cell, OutputFormat, Table};
use crate::verify::{monte_carlo_check, sweep, SweepOptions, DEFAULT_DOUBLE_SUM_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest Stirling table bound a command may ask for.
pub const MAX_TABLE_BOUND: usize = 2000;

pub const SEED_ENV: &str = "CAUCHY_CONV_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "cauchy-conv",
    version,
    about = "Exact Cauchy numbers, Stirling triangles, uniform-sum densities and convolution identity checks"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Markdown, global = true)]
    pub format: OutputFormat,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StirlingKind {
    First,
    Second,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cauchy numbers c_0..c_{n-max}.
    Cauchy {
        #[arg(long)]
        n_max: usize,
    },
    /// Stirling triangle rows 0..=n-max.
    Stirling {
        #[arg(long, value_enum)]
        kind: StirlingKind,
        #[arg(long)]
        n_max: usize,
    },
    /// Exact value of the density of a sum of m uniforms at a rational point.
    Density {
        #[arg(long, value_parser = parse_positive)]
        m: usize,
        /// Point in [0, m], written `p/q` or as an integer.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        at: ExactRational,
    },
    /// Check the convolution identity over a box of (m, mu, n) cells.
    Verify {
        #[arg(long, value_parser = parse_positive)]
        m_max: usize,
        #[arg(long)]
        mu_max: usize,
        #[arg(long)]
        n_max: usize,
        /// Worker threads for cell evaluation.
        #[arg(long, default_value_t = 1, value_parser = parse_positive)]
        parallelism: usize,
        /// Skip the brute-force double sum above this many terms.
        #[arg(long, default_value_t = DEFAULT_DOUBLE_SUM_BUDGET)]
        double_sum_budget: u64,
        /// Perturb one second-kind Stirling entry before verifying.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Monte Carlo estimate of the factorial moment E (S_m)_{mu+n}.
    Montecarlo {
        #[arg(long, value_parser = parse_positive)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        mu: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000, value_parser = parse_samples)]
        samples: u64,
        /// Master seed; falls back to $CAUCHY_CONV_SEED, then to entropy.
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
    },
}

fn parse_rational(s: &str) -> Result<ExactRational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_samples(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(v) if v < 2 => Err("at least two samples are required".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Output of one command and whether it signals an identity violation.
pub struct Outcome {
    pub table: Table,
    pub violation: bool,
    /// Printed to standard error after the output is written.
    pub note: Option<String>,
}

fn check_bound(bound: usize) -> Result<(), Error> {
    if bound > MAX_TABLE_BOUND {
        return Err(Error::InvalidArgument(format!(
            "implied table bound {bound} exceeds the limit {MAX_TABLE_BOUND}"
        )));
    }
    Ok(())
}

pub fn cmd_cauchy(n_max: usize) -> Result<Outcome, Error> {
    check_bound(n_max)?;
    let table = StirlingTable::build(n_max);
    let mut out = Table::new("cauchy", vec!["n", "c_n"]);
    for (n, c) in cauchy_numbers(n_max, &table)?.into_iter().enumerate() {
        out.push(vec![n.into(), c.into()]);
    }
    Ok(Outcome { table: out, violation: false, note: None })
}

pub fn cmd_stirling(kind: StirlingKind, n_max: usize) -> Result<Outcome, Error> {
    check_bound(n_max)?;
    let table = StirlingTable::build(n_max);
    let mut out = Table::new("stirling", vec!["n", "k", "value"]);
    let label = match kind {
        StirlingKind::First => "first",
        StirlingKind::Second => "second",
    };
    out.meta.insert("kind".into(), Value::String(label.into()));
    for n in 0..=n_max {
        let row = match kind {
            StirlingKind::First => table.first_kind_row(n)?,
            StirlingKind::Second => table.second_kind_row(n)?,
        };
        for (k, v) in row.iter().enumerate() {
            out.push(vec![n.into(), k.into(), ExactRational::from(v.clone()).into()]);
        }
    }
    Ok(Outcome { table: out, violation: false, note: None })
}

pub fn cmd_density(m: usize, at: &ExactRational) -> Result<Outcome, Error> {
    let rho = irwin_hall_density(m)?;
    let value = density_eval(&rho, at)?;
    let mut out = Table::new("density", vec!["m", "at", "value"]);
    out.push(vec![m.into(), at.clone().into(), value.into()]);
    Ok(Outcome { table: out, violation: false, note: None })
}

pub fn cmd_verify(
    m_max: usize,
    mu_max: usize,
    n_max: usize,
    options: SweepOptions,
    inject_fault: bool,
) -> Result<Outcome, Error> {
    let bound = m_max + mu_max + n_max;
    check_bound(bound)?;
    let start = Instant::now();
    let mut table = StirlingTable::build(bound);
    if inject_fault {
        table = table.with_perturbed_second_kind(m_max + 1, m_max, 1);
    }
    let reports = sweep(m_max, mu_max, n_max, &table, options)?;
    let elapsed = start.elapsed();

    let mut out = Table::new(
        "verify",
        vec![
            "m",
            "mu",
            "n",
            "lhs_double_sum",
            "lhs_single_sum",
            "integral_value",
            "stirling_sum_value",
            "double_sum_skipped",
            "mu_zero_case",
            "all_equal",
        ],
    );
    for r in &reports {
        out.push(vec![
            r.m.into(),
            r.mu.into(),
            r.n.into(),
            r.lhs_double_sum.clone().into(),
            r.lhs_single_sum.clone().into(),
            r.integral_value.clone().into(),
            r.stirling_sum_value.clone().into(),
            r.double_sum_skipped().into(),
            r.is_mu_zero_case().into(),
            r.all_equal.into(),
        ]);
    }
    let failing = reports.iter().filter(|r| !r.all_equal).count();
    let skipped = reports.iter().filter(|r| r.double_sum_skipped()).count();
    let line = format!(
        "summary: {} cells, {} unequal, {} double sums skipped, {:.3} s",
        reports.len(),
        failing,
        skipped,
        elapsed.as_secs_f64()
    );
    out.meta.insert(
        "bounds".into(),
        json!({"m_max": m_max, "mu_max": mu_max, "n_max": n_max}),
    );
    out.summary = Some((
        line.clone(),
        json!({
            "cells": reports.len(),
            "unequal": failing,
            "double_sums_skipped": skipped,
            "all_equal": failing == 0,
            "elapsed_seconds": elapsed.as_secs_f64(),
        }),
    ));
    Ok(Outcome { table: out, violation: failing > 0, note: Some(line) })
}

pub fn cmd_montecarlo(m: usize, mu: usize, n: usize, samples: u64, seed: Option<u64>) -> Result<Outcome, Error> {
    let seed = seed.unwrap_or_else(rand::random);
    let rep = monte_carlo_check(m, mu, n, samples, seed)?;
    let mut out = Table::new(
        "montecarlo",
        vec!["m", "mu", "n", "samples", "seed", "estimate", "standard_error", "exact_value", "z_score"],
    );
    out.push(vec![
        rep.m.into(),
        rep.mu.into(),
        rep.n.into(),
        rep.samples.into(),
        rep.seed.into(),
        rep.estimate.into(),
        rep.standard_error.into(),
        Cell::Rational(rep.exact_value),
        rep.z_score.into(),
    ]);
    Ok(Outcome { table: out, violation: false, note: None })
}

pub fn execute(config: &RunConfig) -> Result<Outcome, Error> {
    match &config.command {
        Command::Cauchy { n_max } => cmd_cauchy(*n_max),
        Command::Stirling { kind, n_max } => cmd_stirling(*kind, *n_max),
        Command::Density { m, at } => cmd_density(*m, at),
        Command::Verify {
            m_max,
            mu_max,
            n_max,
            parallelism,
            double_sum_budget,
            inject_fault,
        } => cmd_verify(
            *m_max,
            *mu_max,
            *n_max,
            SweepOptions {
                double_sum_budget: Some(*double_sum_budget),
                parallelism: *parallelism,
            },
            *inject_fault,
        ),
        Command::Montecarlo { m, mu, n, samples, seed } => cmd_montecarlo(*m, *mu, *n, *samples, *seed),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match execute(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = outcome.table.render(config.format);
    let written = match &config.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return EXIT_USAGE;
    }
    if let Some(note) = outcome.note {
        eprintln!("{note}");
    }
    if outcome.violation {
        EXIT_IDENTITY_VIOLATION
    } else {
        EXIT_OK
    }
}
