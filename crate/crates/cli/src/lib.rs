//! Command-line front end: reads an instance file, evaluates it and writes
//! one result per line.
//!
//! Exit codes: 0 on success, 1 for unreadable or invalid input, 2 when the
//! declared bit bound turns out to be violated.

pub mod instance;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mme_core::*;
use thiserror::Error;

pub use instance::{parse_instance, InstanceFile, Mode, ParseError, Value};

#[derive(Debug, Parser)]
#[command(name = "mme", version, about = "Multivariate multipoint evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::enum_variant_names)]
enum Command {
    /// Exact evaluation over the integers.
    EvalInt(Common),
    /// Approximate evaluation over the reals; prints `b/2^t`.
    EvalApprox(Common),
    /// Approximate evaluation over the complex numbers; prints `re,im`.
    EvalApproxComplex(Common),
    /// Exact evaluation over the rationals; prints `p/q`.
    EvalRat(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Instance file, or `-` for standard input.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Output file (default: standard output).
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Per-prime evaluator.
    #[arg(long, value_name = "NAME", default_value = "horner")]
    backend: Backend,
    /// Accuracy in bits, overriding the file's `t`.
    #[arg(long, value_name = "BITS")]
    t: Option<u64>,
    /// Output bit bound, overriding the file's `s`.
    #[arg(long, value_name = "BITS")]
    s: Option<u64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Eval(#[from] MmeError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Eval(MmeError::BoundViolation { .. } | MmeError::ReconstructionFailed(_)) => 2,
            _ => 1,
        }
    }
}

/// Runs the command line `argv` (including the program name) and returns
/// the exit code. Diagnostics go to standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("mme: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    let (mode, opts) = match command {
        Command::EvalInt(c) => (Mode::Int, c),
        Command::EvalApprox(c) => (Mode::Approx, c),
        Command::EvalApproxComplex(c) => (Mode::ApproxComplex, c),
        Command::EvalRat(c) => (Mode::Rat, c),
    };
    let text = read_input(&opts.input)?;
    let file = parse_instance(&text).map_err(|source| CliError::Parse { path: opts.input.display().to_string(), source })?;
    if file.mode != mode {
        return Err(CliError::Usage(format!(
            "instance has mode `{}` but the subcommand expects `{mode}`",
            file.mode
        )));
    }
    let lines = evaluate(&file, &opts)?;
    write_output(opts.output.as_ref(), &lines)
}

/// Evaluates a parsed instance; one formatted result per point.
pub fn evaluate_file(file: &InstanceFile, backend: Backend, s: Option<u64>, t: Option<u64>) -> Result<Vec<String>, CliError> {
    let opts = Common { input: PathBuf::new(), output: None, backend, t, s };
    evaluate(file, &opts)
}

fn evaluate(file: &InstanceFile, opts: &Common) -> Result<Vec<String>, CliError> {
    let (m, d) = (file.num_vars, file.degree_bound);
    let s = opts.s.or(file.s);
    let t = opts.t.or(file.t);
    let need_t = || t.ok_or_else(|| CliError::Usage(format!("mode `{}` needs `t` (header or --t)", file.mode)));
    let backend = &opts.backend;
    match file.mode {
        Mode::Int => {
            let f = DensePolynomial::new(m, d, file.coefficients.iter().map(as_int).collect())?;
            let pts: Vec<Vec<BigInt>> = file.points.iter().map(|p| p.iter().map(as_int).collect()).collect();
            let s = match s {
                Some(s) => s,
                None => {
                    let bits = f.coeffs().iter().chain(pts.iter().flatten()).map(BigInt::bits).max().unwrap_or(0);
                    naive_output_bound(d, m, bits.max(1))
                }
            };
            let inst = IntMmeInstance::new(f, pts, s)?;
            Ok(mme_integers(&inst, backend)?.iter().map(BigInt::to_string).collect())
        }
        Mode::Approx => {
            let t = need_t()?;
            let f = DensePolynomial::new(m, d, file.coefficients.iter().map(as_real).collect())?;
            let pts: Vec<Vec<Rational>> = file.points.iter().map(|p| p.iter().map(as_real).collect()).collect();
            let inst = ApproxInstance::from_rationals(&f, &pts, t)?;
            Ok(approx_mme_real(&inst, backend)?.into_iter().map(|b| Dyadic::new(b, t).to_string()).collect())
        }
        Mode::ApproxComplex => {
            let t = need_t()?;
            let coeffs = file
                .coefficients
                .iter()
                .map(|v| {
                    let (re, im) = as_complex(v);
                    ComplexOracle::coefficient_from_rationals(re, im)
                })
                .collect::<Result<Vec<_>>>()?;
            let f = DensePolynomial::new(m, d, coeffs)?;
            let pts = file
                .points
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|v| {
                            let (re, im) = as_complex(v);
                            ComplexOracle::from_rationals(re, im)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(approx_mme_complex(&f, &pts, t, backend)?.iter().map(ToString::to_string).collect())
        }
        Mode::Rat => {
            let s = s.ok_or_else(|| CliError::Usage("mode `rat` needs `s` (header or --s)".into()))?;
            let f = DensePolynomial::new(m, d, file.coefficients.iter().map(as_real).collect())?;
            let pts: Vec<Vec<Rational>> = file.points.iter().map(|p| p.iter().map(as_real).collect()).collect();
            let inst = RatMmeInstance::new(f, pts, s)?;
            Ok(mme_rationals(&inst, backend)?.iter().map(numerics::format_rational).collect())
        }
    }
}

// The parser only produces values matching the file's mode.
fn as_int(v: &Value) -> BigInt {
    match v {
        Value::Int(x) => x.clone(),
        other => unreachable!("integer expected, got {other}"),
    }
}

fn as_real(v: &Value) -> Rational {
    match v {
        Value::Real(x) => x.clone(),
        other => unreachable!("real expected, got {other}"),
    }
}

fn as_complex(v: &Value) -> (Rational, Rational) {
    match v {
        Value::Complex(re, im) => (re.clone(), im.clone()),
        other => unreachable!("complex expected, got {other}"),
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_output(path: Option<&PathBuf>, lines: &[String]) -> Result<(), CliError> {
    let mut body = lines.join("\n");
    if !lines.is_empty() {
        body.push('\n');
    }
    match path {
        Some(p) => fs::write(p, body).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}
