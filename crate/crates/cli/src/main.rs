//! # `symbreak`
//!
//! Reads a ground program in smodels format, detects its symmetries and
//! writes the program back with symmetry-breaking rules appended. Sits
//! between grounder and solver: `gringo ... | symbreak | clasp`.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use symbreak_core::oracle::{check_soundness_with, OracleError, DEFAULT_ORACLE_BUDGET};
use symbreak_core::pipeline::{self, Config, PipelineError};
use symbreak_core::{
    emit_stats, is_syntactic_symmetry, parse_program, write_program, GroundProgram, ParseError,
    SearchConfig, DEFAULT_AUX_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Append symmetry-breaking rules and write the program.
    Break,
    /// Print the detected generators in cycle notation.
    Detect,
    /// Check the breaking rules against an exact answer-set enumeration.
    Verify,
}

#[derive(Parser, Debug)]
#[command(author, version, about, long_about = None)]
struct Args {
    /// Input program. Reads from `stdin` if not given.
    input: Option<PathBuf>,
    /// Output path. Writes to `stdout` if not given.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Break)]
    mode: Mode,
    /// Maximum number of auxiliary atoms per broken symmetry.
    #[arg(long, default_value_t = DEFAULT_AUX_LIMIT)]
    limit: usize,
    /// Node budget of each automorphism search.
    #[arg(long, default_value_t = SearchConfig::default().node_budget)]
    budget: u64,
    /// Levels of the stabilizer chain used for binary rules.
    #[arg(long, default_value_t = pipeline::DEFAULT_STABILIZER_LEVELS)]
    stab_levels: usize,
    /// Atoms the verifier may guess (it enumerates 2^n candidates).
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    oracle_budget: usize,
    /// Skip row-interchangeability detection.
    #[arg(long)]
    no_rows: bool,
    /// Skip binary rules from the stabilizer chain.
    #[arg(long)]
    no_binary: bool,
    /// Print run statistics to stderr.
    #[arg(long)]
    stats: bool,
    /// Print the colored graph to stderr.
    #[arg(long)]
    dump_graph: bool,
}

impl Args {
    fn config(&self) -> Config {
        Config {
            aux_limit: self.limit,
            search: SearchConfig {
                node_budget: self.budget,
            },
            stabilizer_levels: self.stab_levels,
            rows: !self.no_rows,
            binary: !self.no_binary,
        }
    }
}

/// A failed verification.
#[derive(Debug)]
struct Violation(String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for Violation {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<ParseError>() || cause.is::<PipelineError>() {
            return 1;
        }
        if matches!(
            cause.downcast_ref::<OracleError>(),
            Some(OracleError::BudgetExceeded { .. })
        ) {
            return 2;
        }
        if cause.is::<io::Error>() {
            return 3;
        }
        if cause.is::<Violation>() {
            return 4;
        }
    }
    1
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("cannot read standard input")?;
            Ok(s)
        }
    }
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn detect(args: &Args, p: &GroundProgram, out: &mut dyn Write) -> Result<()> {
    let detection = pipeline::detect(p, &args.config());
    if args.dump_graph {
        eprint!("{}", detection.graph.dump());
    }
    if !detection.complete {
        eprintln!("warning: automorphism search budget exhausted, generators may be incomplete");
    }
    for g in &detection.generators {
        writeln!(out, "{}", g.to_cycle_string(p))?;
    }
    if args.stats {
        eprintln!(
            "generators={} rejected={}",
            detection.generators.len(),
            detection.rejected
        );
    }
    Ok(())
}

fn break_symmetries(args: &Args, p: &GroundProgram, out: &mut dyn Write) -> Result<()> {
    let outcome = pipeline::run(p, &args.config())?;
    if args.dump_graph {
        eprint!("{}", outcome.detection.graph.dump());
    }
    if !outcome.detection.complete {
        eprintln!("warning: automorphism search budget exhausted, breaking a subgroup only");
    }
    write_program(&outcome.program, out)?;
    if args.stats {
        eprintln!("{}", emit_stats(&outcome.stats));
    }
    Ok(())
}

fn verify(args: &Args, p: &GroundProgram, out: &mut dyn Write) -> Result<()> {
    let outcome = pipeline::run(p, &args.config())?;
    if args.stats {
        eprintln!("{}", emit_stats(&outcome.stats));
    }
    let invalid = outcome
        .symmetries
        .iter()
        .filter(|pi| !is_syntactic_symmetry(p, pi))
        .count();
    writeln!(
        out,
        "symmetries: {} used, {} not syntactic",
        outcome.symmetries.len(),
        invalid
    )?;
    let verdict =
        check_soundness_with(p, &outcome.symmetries, &outcome.program, args.oracle_budget)?;
    writeln!(
        out,
        "answer sets: {} before, {} after",
        verdict.before, verdict.after
    )?;
    writeln!(out, "every orbit represented: {}", yes_no(verdict.sound))?;
    writeln!(out, "no new answer sets: {}", yes_no(verdict.conservative))?;
    if verdict.before == 0 {
        writeln!(out, "unsat preserved: {}", yes_no(verdict.after == 0))?;
    }
    out.flush()?;
    if invalid > 0 {
        return Err(Violation(format!("{invalid} permutations are not symmetries")).into());
    }
    if !verdict.holds() {
        return Err(Violation(format!("{} answer-set orbits lost", verdict.lost.len())).into());
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(args: &Args) -> Result<()> {
    let text = read_input(args.input.as_ref())?;
    let program = parse_program(&text).context("cannot parse input program")?;
    let mut out = open_output(args.output.as_ref())?;
    match args.mode {
        Mode::Break => break_symmetries(args, &program, &mut out)?,
        Mode::Detect => detect(args, &program, &mut out)?,
        Mode::Verify => verify(args, &program, &mut out)?,
    }
    out.flush().context("cannot write output")?;
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
