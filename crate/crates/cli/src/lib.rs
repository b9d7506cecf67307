//! `qdisc` command-line tool: solve, certify, generate examples, report bounds.
//!
//! Exit codes: 0 success, 1 certificate not passed, 2 invalid input or usage,
//! 3 solver failure, 4 inconsistent bounds.

pub mod json;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use qdisc_core::certify::{check_global_optimality, check_qg_optimality};
use qdisc_core::ensembles::{
    example_closed_forms, example_ensemble, example_global_povm, example_local_povm, StateEnsemble,
};
use qdisc_core::solver::{bounds_report, solve_pg, solve_ppt, solve_qg, SolverConfig};

use json::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_PASSED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qdisc", version, about = "Certified optimal discrimination of bipartite quantum states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Pg,
    Qg,
    Ppt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertifyProblem {
    Pg,
    Qg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Ensemble,
    GlobalPovm,
    LocalPovm,
    ClosedForms,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for p_G, q_G or p_PPT and write the certified result.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Target certified duality gap.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Check the optimality conditions of a measurement and print the report.
    Certify {
        #[arg(long, value_enum)]
        problem: CertifyProblem,
        #[arg(long)]
        ensemble: PathBuf,
        /// A list of POVM elements, or the output of `solve`.
        #[arg(long)]
        povm: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Generate the two-qudit example family or its closed-form optima.
    Example {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        lambda: f64,
        /// `mixed` for I/d², or a path to a noise state.
        #[arg(long, default_value = "mixed")]
        sigma: String,
        #[arg(long, value_enum)]
        emit: Emit,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute p_G, q_G and p_PPT and check their ordering.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

/// A failure with its exit code and a one-line message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<qdisc_core::Error> for Failure {
    fn from(e: qdisc_core::Error) -> Self {
        let code = if e.is_solver_failure() { EXIT_SOLVER } else { EXIT_INVALID };
        Self { code, message: e.to_string() }
    }
}

fn read_json<D: DeserializeOwned>(path: &Path) -> Result<D, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("cannot parse {}: {e}", path.display())))
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

fn write_text(path: Option<&Path>, text: &str, out: &mut dyn std::io::Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::invalid(format!("cannot write output: {e}"))),
    }
}

fn read_ensemble(path: &Path) -> Result<StateEnsemble<f64>, Failure> {
    Ok(read_json::<EnsembleJson>(path)?.to_ensemble()?)
}

fn config(tol: f64) -> Result<SolverConfig<f64>, Failure> {
    let cfg = SolverConfig::default().with_target_gap(tol);
    cfg.validate()?;
    Ok(cfg)
}

/// Runs one command, writing reports to `out`. Returns the exit code on success paths.
pub fn run(cli: Cli, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Solve { problem, input, output, tol } => {
            let e = read_ensemble(&input)?;
            let cfg = config(tol)?;
            let result = match problem {
                Problem::Pg => solve_pg(&e, &cfg),
                Problem::Qg => solve_qg(&e, &cfg),
                Problem::Ppt => solve_ppt(&e, &cfg),
            }?;
            write_text(Some(&output), &to_json(&ResultJson::from_result(&result)), out)?;
            Ok(EXIT_OK)
        }
        Command::Certify { problem, ensemble, povm, tol } => {
            let e = read_ensemble(&ensemble)?;
            let file: PovmFile = read_json(&povm)?;
            let m = json::povm_from_json(file.elements(), e.d1(), e.d2())?;
            let report = match problem {
                CertifyProblem::Pg => check_global_optimality(&e, &m, tol),
                CertifyProblem::Qg => check_qg_optimality(&e, &m, tol),
            }?;
            write_text(None, &to_json(&CertificateJson::from(&report)), out)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_NOT_PASSED })
        }
        Command::Example { d, lambda, sigma, emit, output } => {
            let text = match emit {
                Emit::Ensemble => {
                    let sigma = match sigma.as_str() {
                        "mixed" => None,
                        path => Some(read_json::<MatrixJson>(Path::new(path))?.to_operator(d, d)?),
                    };
                    let e = example_ensemble(d, lambda, sigma.as_ref())?;
                    to_json(&EnsembleJson::from_ensemble(&e))
                }
                Emit::GlobalPovm => {
                    example_closed_forms(d, lambda)?;
                    to_json(&povm_json(&example_global_povm(d)?))
                }
                Emit::LocalPovm => {
                    example_closed_forms(d, lambda)?;
                    to_json(&povm_json(&example_local_povm(d)?))
                }
                Emit::ClosedForms => to_json(&ClosedFormsJson::new(&example_closed_forms(d, lambda)?, d, lambda)),
            };
            write_text(output.as_deref(), &text, out)?;
            Ok(EXIT_OK)
        }
        Command::Bounds { input, tol } => {
            let e = read_ensemble(&input)?;
            let report = bounds_report(&e, &config(tol)?)?;
            write_text(None, &to_json(&BoundsJson::from(&report)), out)?;
            Ok(if report.ordering_ok { EXIT_OK } else { EXIT_INCONSISTENT })
        }
    }
}

/// Parses `args` and runs the command, printing any failure as one line on standard error.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: invalid arguments"));
            return EXIT_INVALID;
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return EXIT_OK;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message.replace('\n', " "));
            f.code
        }
    }
}
