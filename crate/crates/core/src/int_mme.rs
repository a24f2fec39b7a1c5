//! Exact evaluation over the integers given an output bit bound `s`.
//!
//! With every coefficient, coordinate and evaluation below `2^s` in
//! magnitude, it is enough to know each evaluation modulo primes whose
//! product exceeds `2^{s+1}`; the symmetric CRT lift then recovers the
//! signed value.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::backend::MmeBackend;
use crate::crt::{crt_basis_for_bound, CrtBasis};
use crate::error::{MmeError, Result};
use crate::ff_mme::{mme_residue_ring, transpose, MmeOptions};
use crate::numerics::{ceil_log2, fits_bits, pow2};
use crate::poly::DensePolynomial;
use crate::primes::first_k_primes;
use crate::ring::{GaussianField, GaussianInt, ModRing, PrimeField};

/// An integer instance whose inputs are checked against `2^s`; the same
/// bound on the evaluations is the caller's promise.
#[derive(Clone, Debug)]
pub struct IntMmeInstance {
    f: DensePolynomial<BigInt>,
    points: Vec<Vec<BigInt>>,
    s: u64,
}

impl IntMmeInstance {
    pub fn new(f: DensePolynomial<BigInt>, points: Vec<Vec<BigInt>>, s: u64) -> Result<Self> {
        check_instance::<PrimeField>(&f, &points, s)?;
        Ok(IntMmeInstance { f, points, s })
    }

    pub fn poly(&self) -> &DensePolynomial<BigInt> {
        &self.f
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn bit_bound(&self) -> u64 {
        self.s
    }
}

fn check_instance<R: ModRing>(f: &DensePolynomial<R::Int>, points: &[Vec<R::Int>], s: u64) -> Result<()> {
    if s == 0 {
        return Err(MmeError::invalid("bit bound s must be at least 1"));
    }
    let fits = |x: &R::Int| (0..R::PARTS).all(|j| fits_bits(R::int_part(x, j), s));
    if let Some(i) = f.coeffs().iter().position(|c| !fits(c)) {
        return Err(MmeError::invalid(format!("coefficient {i} is not below 2^{s}")));
    }
    for (i, a) in points.iter().enumerate() {
        if a.len() != f.num_vars() {
            return Err(MmeError::invalid(format!(
                "point {i} has {} coordinates, expected {}",
                a.len(),
                f.num_vars()
            )));
        }
        if !a.iter().all(fits) {
            return Err(MmeError::invalid(format!("a coordinate of point {i} is not below 2^{s}")));
        }
    }
    Ok(())
}

/// `ceil(s d m + s + m log2 d)`: a bit bound on any evaluation when the
/// inputs are below `2^s`. Constant polynomials (`d = 1`) give `s`.
pub fn naive_output_bound(d: usize, m: usize, s: u64) -> u64 {
    if d <= 1 {
        return s;
    }
    let log_term = ceil_log2(&BigInt::from(d).pow(m as u32));
    s * (d * m) as u64 + s + log_term
}

/// Shortest prefix of the primes whose product exceeds `2^{s+1}`.
pub fn integer_basis(s: u64) -> Result<CrtBasis> {
    let bound = pow2(s + 1);
    let mut count = usize::try_from(s + 1).map_err(|_| MmeError::invalid("bit bound too large"))?;
    loop {
        match crt_basis_for_bound(&bound, &first_k_primes(count)) {
            Err(MmeError::PoolExhausted { .. }) => count *= 2,
            other => return other,
        }
    }
}

/// Exact evaluations `f(a)` for every point of `inst`.
pub fn mme_integers<B: MmeBackend>(inst: &IntMmeInstance, backend: &B) -> Result<Vec<BigInt>> {
    mme_integers_with(inst, backend, &MmeOptions::default())
}

pub fn mme_integers_with<B: MmeBackend>(
    inst: &IntMmeInstance,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<BigInt>> {
    exact_mme::<PrimeField, B>(&inst.f, &inst.points, inst.s, backend, opts)
}

/// Exact evaluation over the Gaussian integers with a componentwise bit
/// bound `s` on inputs and outputs.
pub fn mme_gaussian_integers<B: MmeBackend>(
    f: &DensePolynomial<GaussianInt>,
    points: &[Vec<GaussianInt>],
    s: u64,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<GaussianInt>> {
    check_instance::<GaussianField>(f, points, s)?;
    exact_mme::<GaussianField, B>(f, points, s, backend, opts)
}

pub(crate) fn exact_mme<R: ModRing, B: MmeBackend>(
    f: &DensePolynomial<R::Int>,
    points: &[Vec<R::Int>],
    s: u64,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<R::Int>> {
    if f.degree_bound() == 1 || f.num_vars() == 0 {
        let c = &f.coeffs()[0];
        return Ok(vec![c.clone(); points.len()]);
    }
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let basis = integer_basis(s)?;
    let (d, m) = (f.degree_bound(), f.num_vars());

    let reduce_all = |values: &[R::Int]| -> Vec<Vec<R::Elem>> {
        let residues: Vec<Vec<Vec<u64>>> = values
            .par_iter()
            .map(|x| (0..R::PARTS).map(|j| basis.reduce(R::int_part(x, j))).collect())
            .collect();
        transpose::<R>(&residues, basis.len())
    };
    let per_prime_coeffs = reduce_all(f.coeffs());
    let flat: Vec<R::Int> = points.iter().flatten().cloned().collect();
    let per_prime_flat = reduce_all(&flat);

    let evals = basis
        .primes()
        .par_iter()
        .zip(per_prime_coeffs.into_par_iter())
        .zip(per_prime_flat.into_par_iter())
        .map(|((&q, coeffs), flat_pts)| {
            let ring = R::with_modulus(q);
            let fq = DensePolynomial::new(m, d, coeffs)?;
            let pts: Vec<Vec<R::Elem>> = flat_pts.chunks(m).map(<[_]>::to_vec).collect();
            mme_residue_ring(&ring, &fq, &pts, backend, opts)
        })
        .collect::<Result<Vec<_>>>()?;

    (0..points.len())
        .into_par_iter()
        .map(|i| {
            let parts = (0..R::PARTS)
                .map(|j| {
                    let residues: Vec<u64> = evals.iter().map(|e| R::part(e[i], j)).collect();
                    let value = basis.reconstruct_signed(&residues)?;
                    if !fits_bits(&value, s) {
                        return Err(MmeError::BoundViolation { index: i, bits: value.bits(), bound: s });
                    }
                    Ok(value)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(R::int_from_parts(parts))
        })
        .collect()
}
