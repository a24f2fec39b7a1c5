//! Residue rings the pipelines run over: the prime field `F_q` and the
//! Gaussian ring `F_q[z]/(z^2 + 1)`, each paired with its integer lift
//! (`Z` and `Z[z]/(z^2 + 1)` respectively).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::pow2;

/// A ring `Z_q`-algebra of small rank, together with its integer lift.
///
/// Elements are stored as `PARTS` residues in `[0, q)`; the lift of an
/// element is the integer tuple with those same components.
pub trait ModRing: Clone + Debug + Send + Sync {
    type Elem: Copy + Eq + Debug + Default + Send + Sync;
    type Int: Clone + Debug + PartialEq + Send + Sync;

    /// Components per element.
    const PARTS: usize;

    fn with_modulus(q: u64) -> Self;
    fn modulus(&self) -> u64;

    fn zero(&self) -> Self::Elem {
        Self::Elem::default()
    }
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;

    fn pow(&self, mut base: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn part(e: Self::Elem, j: usize) -> u64;
    /// Element from components; each must already lie in `[0, q)`.
    fn from_parts(parts: &[u64]) -> Self::Elem;
    /// Element whose components are `parts` reduced mod `q`.
    fn reduce_parts(&self, parts: &[u64]) -> Self::Elem {
        let q = self.modulus();
        let reduced: Vec<u64> = parts.iter().map(|&x| x % q).collect();
        Self::from_parts(&reduced)
    }

    fn int_part(x: &Self::Int, j: usize) -> &BigInt;
    fn int_from_parts(parts: Vec<BigInt>) -> Self::Int;

    /// Lifting an evaluation of a polynomial over this ring (components in
    /// `[0, p)`, individual degree `< d`, `m` variables) to the integer
    /// ring, a CRT modulus above this threshold recovers it exactly.
    fn lift_threshold(d: usize, m: usize, p: u64) -> BigInt;

    /// Whether lifted evaluation components may be negative, so that
    /// reconstruction must use the symmetric range.
    const SIGNED_LIFT: bool;
}

/// The prime field `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

#[inline]
fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, q: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % q as u128) as u64
}

impl ModRing for PrimeField {
    type Elem = u64;
    type Int = BigInt;
    const PARTS: usize = 1;
    const SIGNED_LIFT: bool = false;

    fn with_modulus(q: u64) -> Self {
        PrimeField { q }
    }

    fn modulus(&self) -> u64 {
        self.q
    }

    fn one(&self) -> u64 {
        1 % self.q
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        add_mod(a, b, self.q)
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.q)
    }

    fn part(e: u64, _j: usize) -> u64 {
        e
    }

    fn from_parts(parts: &[u64]) -> u64 {
        parts[0]
    }

    fn int_part(x: &BigInt, _j: usize) -> &BigInt {
        x
    }

    fn int_from_parts(mut parts: Vec<BigInt>) -> BigInt {
        parts.pop().unwrap_or_default()
    }

    /// `d^m * p * p^{dm}`.
    fn lift_threshold(d: usize, m: usize, p: u64) -> BigInt {
        let dm = (d * m) as u32;
        BigInt::from(d).pow(m as u32) * BigInt::from(p).pow(dm + 1)
    }
}

/// Gaussian integer `re + i*im`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussianInt { re, im }
    }

    pub fn real(re: BigInt) -> Self {
        GaussianInt { re, im: BigInt::zero() }
    }

    pub fn one() -> Self {
        GaussianInt::real(BigInt::one())
    }

    pub fn add(&self, other: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn mul(&self, other: &GaussianInt) -> GaussianInt {
        GaussianInt::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    /// Larger of the component bit lengths.
    pub fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

/// `F_q[z]/(z^2 + 1)`; a field when `q = 3 (mod 4)`, otherwise a product
/// of two copies of `F_q`. Either way it carries the multimodular argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussianField {
    q: u64,
}

impl ModRing for GaussianField {
    type Elem = [u64; 2];
    type Int = GaussianInt;
    const PARTS: usize = 2;
    const SIGNED_LIFT: bool = true;

    fn with_modulus(q: u64) -> Self {
        GaussianField { q }
    }

    fn modulus(&self) -> u64 {
        self.q
    }

    fn one(&self) -> [u64; 2] {
        [1 % self.q, 0]
    }

    #[inline]
    fn add(&self, a: [u64; 2], b: [u64; 2]) -> [u64; 2] {
        [add_mod(a[0], b[0], self.q), add_mod(a[1], b[1], self.q)]
    }

    #[inline]
    fn mul(&self, a: [u64; 2], b: [u64; 2]) -> [u64; 2] {
        let q = self.q;
        let ac = mul_mod(a[0], b[0], q);
        let bd = mul_mod(a[1], b[1], q);
        let ad = mul_mod(a[0], b[1], q);
        let bc = mul_mod(a[1], b[0], q);
        [add_mod(ac, q - bd, q), add_mod(ad, bc, q)]
    }

    fn part(e: [u64; 2], j: usize) -> u64 {
        e[j]
    }

    fn from_parts(parts: &[u64]) -> [u64; 2] {
        [parts[0], parts[1]]
    }

    fn int_part(x: &GaussianInt, j: usize) -> &BigInt {
        if j == 0 {
            &x.re
        } else {
            &x.im
        }
    }

    fn int_from_parts(parts: Vec<BigInt>) -> GaussianInt {
        let mut it = parts.into_iter();
        GaussianInt::new(it.next().unwrap_or_default(), it.next().unwrap_or_default())
    }

    /// Lifted components have modulus below `sqrt(2) p`, so each component
    /// of an evaluation is below `d^m (sqrt(2) p)^{dm+1}` in magnitude; the
    /// symmetric range needs twice that.
    fn lift_threshold(d: usize, m: usize, p: u64) -> BigInt {
        let dm = (d * m) as u32;
        let sqrt2_pow = pow2(u64::from(dm + 1).div_ceil(2));
        BigInt::from(2u32) * BigInt::from(d).pow(m as u32) * sqrt2_pow * BigInt::from(p).pow(dm + 1)
    }
}
