//! The line-oriented instance file format.
//!
//! ```text
//! # f = x1 * x2 at (1/2, 1/2)
//! mode approx
//! m 2
//! d 2
//! n 1
//! t 10
//! coefficients
//! 0 0 0 1
//! points
//! 1/2 1/2
//! ```
//!
//! Header lines are `key value` pairs for `mode` (`int`, `approx`,
//! `approx-complex` or `rat`), `m`, `d`, `n` and optionally `s` and `t`.
//! The `coefficients` section holds `d^m` whitespace-separated values in
//! row-major exponent order (last variable fastest), possibly over several
//! lines. The `points` section holds `n` lines of `m` values each. Text
//! after `#` is ignored.
//!
//! Values are integers in `int` mode; `p/q`, `a/2^k` or integers in `approx`
//! and `rat` mode; and `re,im` pairs of those in `approx-complex` mode.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use mme_core::numerics::{format_rational, parse_bigint, parse_rational};
use mme_core::{BigInt, Dyadic, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Int,
    Approx,
    ApproxComplex,
    Rat,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Int => "int",
            Mode::Approx => "approx",
            Mode::ApproxComplex => "approx-complex",
            Mode::Rat => "rat",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "int" => Ok(Mode::Int),
            "approx" => Ok(Mode::Approx),
            "approx-complex" => Ok(Mode::ApproxComplex),
            "rat" => Ok(Mode::Rat),
            other => Err(format!("unknown mode `{other}` (expected int, approx, approx-complex or rat)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One coefficient or coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Real(Rational),
    Complex(Rational, Rational),
}

impl Value {
    fn parse(mode: Mode, token: &str) -> Result<Value, String> {
        let err = |e: mme_core::MmeError| e.to_string();
        match mode {
            Mode::Int => parse_bigint(token).map(Value::Int).map_err(err),
            Mode::Approx | Mode::Rat => parse_real(token).map(Value::Real),
            Mode::ApproxComplex => {
                let (re, im) = token
                    .split_once(',')
                    .ok_or_else(|| format!("`{token}` is not a complex value `re,im`"))?;
                Ok(Value::Complex(parse_real(re)?, parse_real(im)?))
            }
        }
    }
}

/// `a/2^k`, `p/q` or an integer.
fn parse_real(token: &str) -> Result<Rational, String> {
    if token.contains("/2^") {
        token.parse::<Dyadic>().map(|x| x.to_rational()).map_err(|e| e.to_string())
    } else {
        parse_rational(token).map_err(|e| e.to_string())
    }
}

fn format_real(x: &Rational) -> String {
    if *x.denom() == BigInt::from(1) {
        x.numer().to_string()
    } else {
        format_rational(x)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(x) => write!(f, "{x}"),
            Value::Real(x) => f.write_str(&format_real(x)),
            Value::Complex(re, im) => write!(f, "{},{}", format_real(re), format_real(im)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub mode: Mode,
    pub num_vars: usize,
    pub degree_bound: usize,
    pub s: Option<u64>,
    pub t: Option<u64>,
    /// `d^m` values, last variable fastest.
    pub coefficients: Vec<Value>,
    pub points: Vec<Vec<Value>>,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Splits a line (comment already removed) into tokens with 1-based columns.
fn tokens(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], line: line_no, column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

#[derive(PartialEq)]
enum Section {
    Header,
    Coefficients,
    Points,
}

#[derive(Default)]
struct Header {
    mode: Option<Mode>,
    m: Option<usize>,
    d: Option<usize>,
    n: Option<usize>,
    s: Option<u64>,
    t: Option<u64>,
}

fn parse_number<T: FromStr>(tok: &Token<'_>, key: &str) -> Result<T, ParseError> {
    tok.text
        .parse()
        .map_err(|_| ParseError::new(tok.line, tok.column, format!("`{}` is not a valid value for `{key}`", tok.text)))
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &Token<'_>) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::new(key.line, key.column, format!("`{}` given twice", key.text)));
    }
    *slot = Some(value);
    Ok(())
}

impl Header {
    fn apply(&mut self, toks: &[Token<'_>]) -> Result<(), ParseError> {
        let key = &toks[0];
        let Some(value) = toks.get(1) else {
            return Err(ParseError::new(key.line, key.column, format!("`{}` needs a value", key.text)));
        };
        if let Some(extra) = toks.get(2) {
            return Err(ParseError::new(extra.line, extra.column, format!("unexpected `{}`", extra.text)));
        }
        match key.text {
            "mode" => {
                let mode = value.text.parse().map_err(|e| ParseError::new(value.line, value.column, e))?;
                set_once(&mut self.mode, mode, key)
            }
            "m" => set_once(&mut self.m, parse_number(value, "m")?, key),
            "d" => set_once(&mut self.d, parse_number(value, "d")?, key),
            "n" => set_once(&mut self.n, parse_number(value, "n")?, key),
            "s" => set_once(&mut self.s, parse_number(value, "s")?, key),
            "t" => set_once(&mut self.t, parse_number(value, "t")?, key),
            other => Err(ParseError::new(key.line, key.column, format!("unknown header key `{other}`"))),
        }
    }
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut header = Header::default();
    let mut section = Section::Header;
    let mut shape: Option<(Mode, usize, usize, usize)> = None;
    let mut coefficients = Vec::new();
    let mut points = Vec::new();
    let mut last_line = 0;

    let need = |h: &Header, line: usize| -> Result<(Mode, usize, usize, usize), ParseError> {
        let missing = |k: &str| ParseError::new(line, 1, format!("header is missing `{k}`"));
        let mode = h.mode.ok_or_else(|| missing("mode"))?;
        let m = h.m.ok_or_else(|| missing("m"))?;
        let d = h.d.ok_or_else(|| missing("d"))?;
        let n = h.n.ok_or_else(|| missing("n"))?;
        if d == 0 {
            return Err(ParseError::new(line, 1, "`d` must be at least 1"));
        }
        Ok((mode, m, d, n))
    };
    let expected_coeffs = |d: usize, m: usize, line: usize| {
        u32::try_from(m)
            .ok()
            .and_then(|m| d.checked_pow(m))
            .ok_or_else(|| ParseError::new(line, 1, "d^m is too large"))
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split_once('#').map_or(raw, |(code, _)| code);
        let toks = tokens(line, line_no);
        let Some(first) = toks.first() else { continue };
        match (first.text, &section) {
            ("coefficients", Section::Header) if toks.len() == 1 => {
                shape = Some(need(&header, line_no)?);
                section = Section::Coefficients;
            }
            ("points", Section::Coefficients) if toks.len() == 1 => {
                let (_, m, d, _) = shape.unwrap();
                let want = expected_coeffs(d, m, line_no)?;
                if coefficients.len() != want {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("expected d^m = {want} coefficients, found {}", coefficients.len()),
                    ));
                }
                section = Section::Points;
            }
            ("points", Section::Header) => {
                return Err(ParseError::new(line_no, first.column, "`points` before `coefficients`"));
            }
            (_, Section::Header) => header.apply(&toks)?,
            (_, Section::Coefficients) => {
                let (mode, ..) = shape.unwrap();
                for tok in &toks {
                    let v = Value::parse(mode, tok.text).map_err(|e| ParseError::new(tok.line, tok.column, e))?;
                    coefficients.push(v);
                }
            }
            (_, Section::Points) => {
                let (mode, m, _, n) = shape.unwrap();
                if toks.len() != m {
                    return Err(ParseError::new(
                        line_no,
                        first.column,
                        format!("a point needs {m} values, found {}", toks.len()),
                    ));
                }
                if points.len() == n {
                    return Err(ParseError::new(line_no, first.column, format!("more than n = {n} points")));
                }
                let pt = toks
                    .iter()
                    .map(|tok| Value::parse(mode, tok.text).map_err(|e| ParseError::new(tok.line, tok.column, e)))
                    .collect::<Result<Vec<_>, _>>()?;
                points.push(pt);
            }
        }
    }

    let end = last_line + 1;
    let (mode, m, d, n) = match section {
        Section::Header => return Err(ParseError::new(end, 1, "missing `coefficients` section")),
        Section::Coefficients => {
            let (_, m, d, _) = shape.unwrap();
            let want = expected_coeffs(d, m, end)?;
            return Err(ParseError::new(
                end,
                1,
                format!("missing `points` section after {} of d^m = {want} coefficients", coefficients.len()),
            ));
        }
        Section::Points => shape.unwrap(),
    };
    if points.len() != n {
        return Err(ParseError::new(end, 1, format!("expected n = {n} points, found {}", points.len())));
    }
    Ok(InstanceFile {
        mode,
        num_vars: m,
        degree_bound: d,
        s: header.s,
        t: header.t,
        coefficients,
        points,
    })
}

impl InstanceFile {
    /// Canonical text form; parsing it gives back `self`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode {}", self.mode);
        let _ = writeln!(out, "m {}", self.num_vars);
        let _ = writeln!(out, "d {}", self.degree_bound);
        let _ = writeln!(out, "n {}", self.points.len());
        if let Some(s) = self.s {
            let _ = writeln!(out, "s {s}");
        }
        if let Some(t) = self.t {
            let _ = writeln!(out, "t {t}");
        }
        out.push_str("coefficients\n");
        let row = self.degree_bound.max(1);
        for chunk in self.coefficients.chunks(row) {
            out.push_str(&join(chunk));
            out.push('\n');
        }
        out.push_str("points\n");
        for p in &self.points {
            out.push_str(&join(p));
            out.push('\n');
        }
        out
    }
}

fn join(values: &[Value]) -> String {
    values.iter().map(Value::to_string).collect::<Vec<_>>().join(" ")
}
