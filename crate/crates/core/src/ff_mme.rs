//! Multipoint evaluation over a prime field `F_p` (or its Gaussian
//! extension) by lifting to the integers and splitting across many small
//! primes, each handled by an [`MmeBackend`].
//!
//! Steps:
//! 1. for tiny `m` relative to `d`, trade degree for variables (Kronecker);
//! 2. pick the shortest prefix of primes whose product `M` exceeds the
//!    largest possible integer value of the lifted evaluation
//!    (`d^m * p * p^{dm}` for `F_p`);
//! 3. reduce every coefficient and coordinate modulo each small prime;
//! 4. evaluate per small prime;
//! 5. recombine each evaluation by CRT and reduce modulo `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::backend::MmeBackend;
use crate::crt::{crt_basis_for_bound, CrtBasis};
use crate::error::{MmeError, Result};
use crate::kronecker::{inverse_kronecker_with, psi_points, small_m_rewrite, KroneckerMode};
use crate::numerics::ceil_log2_u64;
use crate::poly::DensePolynomial;
use crate::primes::{first_k_primes, is_prime};
use crate::ring::{ModRing, PrimeField};

/// Knobs shared by the exact pipelines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MmeOptions {
    pub kronecker: KroneckerMode,
}

impl MmeOptions {
    pub fn with_kronecker(kronecker: KroneckerMode) -> Self {
        MmeOptions { kronecker }
    }
}

/// Evaluates `f` over `F_p` at every point.
pub fn mme_prime_field<B: MmeBackend>(
    f: &DensePolynomial<u64>,
    points: &[Vec<u64>],
    p: u64,
    backend: &B,
) -> Result<Vec<u64>> {
    mme_prime_field_with(f, points, p, backend, &MmeOptions::default())
}

pub fn mme_prime_field_with<B: MmeBackend>(
    f: &DensePolynomial<u64>,
    points: &[Vec<u64>],
    p: u64,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<u64>> {
    mme_residue_ring(&PrimeField::with_modulus(p), f, points, backend, opts)
}

/// Prime count `(dm + 1) ceil(log2 p) + m ceil(log2 d)` used to size the
/// first sieve; its primes always multiply past the `F_p` lift bound.
pub fn small_prime_count(d: usize, m: usize, p: u64) -> usize {
    (d * m + 1) * ceil_log2_u64(p) as usize + m * ceil_log2_u64(d as u64) as usize
}

fn basis_for_threshold(threshold: &BigInt, mut count: usize) -> Result<CrtBasis> {
    count = count.max(1);
    loop {
        match crt_basis_for_bound(threshold, &first_k_primes(count)) {
            Err(MmeError::PoolExhausted { .. }) => count *= 2,
            other => return other,
        }
    }
}

fn validate<R: ModRing>(ring: &R, f: &DensePolynomial<R::Elem>, points: &[Vec<R::Elem>]) -> Result<()> {
    let p = ring.modulus();
    if !is_prime(p) {
        return Err(MmeError::invalid(format!("modulus {p} is not prime")));
    }
    let in_range = |e: &R::Elem| (0..R::PARTS).all(|j| R::part(*e, j) < p);
    if let Some(i) = f.coeffs().iter().position(|c| !in_range(c)) {
        return Err(MmeError::invalid(format!("coefficient {i} is not reduced modulo {p}")));
    }
    for (i, a) in points.iter().enumerate() {
        if a.len() != f.num_vars() {
            return Err(MmeError::invalid(format!(
                "point {i} has {} coordinates, expected {}",
                a.len(),
                f.num_vars()
            )));
        }
        if !a.iter().all(in_range) {
            return Err(MmeError::invalid(format!("point {i} is not reduced modulo {p}")));
        }
    }
    Ok(())
}

/// [`mme_prime_field`] over any [`ModRing`] of prime characteristic.
pub fn mme_residue_ring<R: ModRing, B: MmeBackend>(
    ring: &R,
    f: &DensePolynomial<R::Elem>,
    points: &[Vec<R::Elem>],
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<R::Elem>> {
    validate(ring, f, points)?;
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let p = ring.modulus();

    let rewritten;
    let (f, points) = match small_m_rewrite(f.degree_bound(), f.num_vars(), opts.kronecker) {
        Some((base, block)) => {
            let g = inverse_kronecker_with(f, base, block, &ring.zero())?;
            let pts: Vec<Vec<R::Elem>> = points
                .iter()
                .map(|a| psi_points(a, base, block, |x, y| ring.mul(*x, *y)))
                .collect();
            rewritten = (g, pts);
            (&rewritten.0, rewritten.1.as_slice())
        }
        None => (f, points),
    };

    let (d, m) = (f.degree_bound(), f.num_vars());
    let threshold = R::lift_threshold(d, m, p);
    let basis = basis_for_threshold(&threshold, small_prime_count(d, m, p))?;

    let per_prime_polys = split_coeffs::<R>(f.coeffs(), |x| basis.reduce_u64(x), basis.len());
    let per_prime_points = split_points::<R>(points, |x| basis.reduce_u64(x), basis.len());

    let evals = basis
        .primes()
        .par_iter()
        .zip(per_prime_polys.into_par_iter())
        .zip(per_prime_points.into_par_iter())
        .map(|((&q, coeffs), pts)| {
            let small = R::with_modulus(q);
            let fq = DensePolynomial::new(m, d, coeffs)?;
            backend.evaluate_batch(&small, &fq, &pts)
        })
        .collect::<Result<Vec<_>>>()?;

    let big_p = BigInt::from(p);
    (0..points.len())
        .map(|i| {
            let mut parts = [0u64; 2];
            for (j, part) in parts.iter_mut().enumerate().take(R::PARTS) {
                let residues: Vec<u64> = evals.iter().map(|e| R::part(e[i], j)).collect();
                let lifted = if R::SIGNED_LIFT {
                    basis.reconstruct_signed(&residues)?
                } else {
                    basis.reconstruct(&residues)?
                };
                *part = lifted.mod_floor(&big_p).to_u64().expect("reduced below p");
            }
            Ok(R::from_parts(&parts[..R::PARTS]))
        })
        .collect()
}

/// Transposes per-coefficient residue vectors into one coefficient vector
/// per basis prime.
pub(crate) fn split_coeffs<R: ModRing>(
    coeffs: &[R::Elem],
    reduce: impl Fn(u64) -> Vec<u64> + Sync,
    primes: usize,
) -> Vec<Vec<R::Elem>> {
    let residues: Vec<Vec<Vec<u64>>> = coeffs
        .par_iter()
        .map(|&c| (0..R::PARTS).map(|j| reduce(R::part(c, j))).collect())
        .collect();
    transpose::<R>(&residues, primes)
}

pub(crate) fn split_points<R: ModRing>(
    points: &[Vec<R::Elem>],
    reduce: impl Fn(u64) -> Vec<u64> + Sync,
    primes: usize,
) -> Vec<Vec<Vec<R::Elem>>> {
    let flat: Vec<R::Elem> = points.iter().flatten().copied().collect();
    let per_prime = split_coeffs::<R>(&flat, reduce, primes);
    let width = points.first().map_or(0, Vec::len);
    per_prime
        .into_iter()
        .map(|v| {
            if width == 0 {
                vec![Vec::new(); points.len()]
            } else {
                v.chunks(width).map(<[_]>::to_vec).collect()
            }
        })
        .collect()
}

/// `residues[value][part][prime]` to `out[prime][value]`.
pub(crate) fn transpose<R: ModRing>(residues: &[Vec<Vec<u64>>], primes: usize) -> Vec<Vec<R::Elem>> {
    let mut parts = [0u64; 2];
    (0..primes)
        .map(|l| {
            residues
                .iter()
                .map(|r| {
                    for j in 0..R::PARTS {
                        parts[j] = r[j][l];
                    }
                    R::from_parts(&parts[..R::PARTS])
                })
                .collect()
        })
        .collect()
}
