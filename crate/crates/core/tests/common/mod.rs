//! Brute-force reference evaluators shared by the integration tests.
#![allow(dead_code)]

use mme_core::{BigInt, DensePolynomial, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Direct monomial sum over the integers.
pub fn eval_int(f: &DensePolynomial<BigInt>, a: &[BigInt]) -> BigInt {
    f.terms()
        .map(|(e, c)| e.iter().zip(a).fold(c.clone(), |acc, (&k, x)| acc * x.pow(k as u32)))
        .sum()
}

/// Direct monomial sum over the rationals.
pub fn eval_rat(f: &DensePolynomial<Rational>, a: &[Rational]) -> Rational {
    f.terms()
        .map(|(e, c)| e.iter().zip(a).fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k)))
        .sum()
}

/// Direct per-point evaluation modulo `p`, in `u128`.
pub fn eval_mod(f: &DensePolynomial<u64>, a: &[u64], p: u64) -> u64 {
    let p = p as u128;
    f.terms().fold(0u128, |acc, (e, &c)| {
        let term = e.iter().zip(a).fold(c as u128 % p, |t, (&k, &x)| {
            (0..k).fold(t, |t, _| t * x as u128 % p)
        });
        (acc + term) % p
    }) as u64
}

/// Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(Rational::zero(), Rational::zero())
    }

    pub fn mul(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn add(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

pub fn eval_gauss(f: &DensePolynomial<GaussRat>, a: &[GaussRat]) -> GaussRat {
    f.terms().fold(GaussRat::zero(), |acc, (e, c)| {
        let term = e
            .iter()
            .zip(a)
            .fold(c.clone(), |t, (&k, x)| (0..k).fold(t, |t, _| t.mul(x)));
        acc.add(&term)
    })
}

/// `|x - b / 2^t| < 2^-t`, exactly.
pub fn within(x: &Rational, b: &BigInt, t: u64) -> bool {
    let scale = BigInt::one() << t;
    (x - Rational::new(b.clone(), scale.clone())).abs() < Rational::new(BigInt::one(), scale)
}

/// Primality by trial division.
pub fn trial_division(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// Uniform integer in `(-2^bits, 2^bits)`.
pub fn rand_int(rng: &mut impl Rng, bits: u64) -> BigInt {
    use num_bigint::RandBigInt;
    let bound = BigInt::one() << bits;
    rng.gen_bigint_range(&(-&bound + 1), &bound)
}

/// Random rational in `(-1, 1)` with numerator and denominator below `2^bits`.
pub fn rand_unit_rational(rng: &mut impl Rng, bits: u32) -> Rational {
    let den: u64 = rng.gen_range(1..(1u64 << bits));
    let num: i64 = rng.gen_range(-(den as i64 - 1)..=(den as i64 - 1));
    Rational::new(num.into(), den.into())
}

/// Smallest `s` with every numerator and denominator of `values` below `2^s`.
pub fn honest_s(values: &[Rational]) -> u64 {
    values
        .iter()
        .map(|x| x.numer().bits().max(x.denom().bits()))
        .max()
        .unwrap_or(1)
        .max(1)
}
