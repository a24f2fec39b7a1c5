//! Pluggable batch evaluators over a single residue ring.
//!
//! These stand behind the small-prime step of the prime-field pipeline. Any
//! implementation is acceptable as long as it returns exactly the per-point
//! values `f(a) mod q`.

use std::fmt;
use std::str::FromStr;

use crate::error::{MmeError, Result};
use crate::poly::DensePolynomial;
use crate::ring::ModRing;

pub trait MmeBackend: Sync {
    fn name(&self) -> &'static str;

    /// `f(a)` for every point `a`, computed in `ring`.
    fn evaluate_batch<R: ModRing>(
        &self,
        ring: &R,
        f: &DensePolynomial<R::Elem>,
        points: &[Vec<R::Elem>],
    ) -> Result<Vec<R::Elem>>;
}

fn check_points<E>(num_vars: usize, points: &[Vec<E>]) -> Result<()> {
    match points.iter().position(|p| p.len() != num_vars) {
        Some(i) => Err(MmeError::invalid(format!(
            "point {i} has {} coordinates, expected {num_vars}",
            points[i].len()
        ))),
        None => Ok(()),
    }
}

/// Nested Horner evaluation, innermost in the last variable.
#[derive(Clone, Copy, Debug, Default)]
pub struct HornerBackend;

impl MmeBackend for HornerBackend {
    fn name(&self) -> &'static str {
        "horner"
    }

    fn evaluate_batch<R: ModRing>(
        &self,
        ring: &R,
        f: &DensePolynomial<R::Elem>,
        points: &[Vec<R::Elem>],
    ) -> Result<Vec<R::Elem>> {
        check_points(f.num_vars(), points)?;
        let d = f.degree_bound();
        let mut buf = Vec::with_capacity(f.coeffs().len());
        Ok(points
            .iter()
            .map(|a| {
                buf.clear();
                buf.extend_from_slice(f.coeffs());
                let mut len = buf.len();
                for &x in a.iter().rev() {
                    len /= d;
                    for k in 0..len {
                        let chunk = &buf[k * d..(k + 1) * d];
                        let mut acc = chunk[d - 1];
                        for &c in chunk[..d - 1].iter().rev() {
                            acc = ring.add(ring.mul(acc, x), c);
                        }
                        buf[k] = acc;
                    }
                }
                buf[0]
            })
            .collect())
    }
}

/// Sum over all monomials with a per-point table of coordinate powers.
#[derive(Clone, Copy, Debug, Default)]
pub struct MonomialSumBackend;

impl MmeBackend for MonomialSumBackend {
    fn name(&self) -> &'static str {
        "monomial"
    }

    fn evaluate_batch<R: ModRing>(
        &self,
        ring: &R,
        f: &DensePolynomial<R::Elem>,
        points: &[Vec<R::Elem>],
    ) -> Result<Vec<R::Elem>> {
        check_points(f.num_vars(), points)?;
        let d = f.degree_bound();
        Ok(points
            .iter()
            .map(|a| {
                let powers: Vec<Vec<R::Elem>> = a
                    .iter()
                    .map(|&x| {
                        let mut row = Vec::with_capacity(d);
                        let mut cur = ring.one();
                        for _ in 0..d {
                            row.push(cur);
                            cur = ring.mul(cur, x);
                        }
                        row
                    })
                    .collect();
                f.terms().fold(ring.zero(), |acc, (e, &c)| {
                    let term = e
                        .iter()
                        .enumerate()
                        .fold(c, |t, (j, &k)| ring.mul(t, powers[j][k]));
                    ring.add(acc, term)
                })
            })
            .collect())
    }
}

/// Backend chosen by name at run time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Horner,
    MonomialSum,
}

impl Backend {
    pub const NAMES: [&'static str; 2] = ["horner", "monomial"];
}

impl MmeBackend for Backend {
    fn name(&self) -> &'static str {
        match self {
            Backend::Horner => HornerBackend.name(),
            Backend::MonomialSum => MonomialSumBackend.name(),
        }
    }

    fn evaluate_batch<R: ModRing>(
        &self,
        ring: &R,
        f: &DensePolynomial<R::Elem>,
        points: &[Vec<R::Elem>],
    ) -> Result<Vec<R::Elem>> {
        match self {
            Backend::Horner => HornerBackend.evaluate_batch(ring, f, points),
            Backend::MonomialSum => MonomialSumBackend.evaluate_batch(ring, f, points),
        }
    }
}

impl FromStr for Backend {
    type Err = MmeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "horner" => Ok(Backend::Horner),
            "monomial" => Ok(Backend::MonomialSum),
            other => Err(MmeError::invalid(format!(
                "unknown backend `{other}` (expected one of {})",
                Backend::NAMES.join(", ")
            ))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
