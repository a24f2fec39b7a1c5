//! Approximation oracles for reals in `(-1, 1)`.
//!
//! An oracle answers `query(k)` with an integer `b` in `[-2^k, 2^k]` such
//! that `|alpha - b / 2^k| < 2^-k`, and reports the sign of `alpha`.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{MmeError, Result};
use crate::numerics::{in_open_unit_interval, pow2, round_nearest, round_shift, sign_of, Rational};

pub trait ApproximationOracle: Send + Sync + fmt::Debug {
    /// An integer `b` with `|alpha - b / 2^k| < 2^-k`.
    fn query(&self, k: u64) -> BigInt;

    /// -1, 0 or 1.
    fn sign(&self) -> i8;
}

pub type OracleRef = Arc<dyn ApproximationOracle>;

/// Caches the latest answered query.
#[derive(Debug, Default)]
struct Memo(Mutex<Option<(u64, BigInt)>>);

impl Memo {
    fn get_or(&self, k: u64, compute: impl FnOnce() -> BigInt) -> BigInt {
        if let Some((cached_k, b)) = self.0.lock().unwrap().as_ref() {
            if *cached_k == k {
                return b.clone();
            }
        }
        let b = compute();
        *self.0.lock().unwrap() = Some((k, b.clone()));
        b
    }
}

/// Oracle backed by an exact rational.
#[derive(Debug)]
pub struct RationalOracle {
    value: Rational,
    memo: Memo,
}

impl RationalOracle {
    pub fn new(value: Rational) -> Result<Self> {
        if !in_open_unit_interval(&value) {
            return Err(MmeError::invalid(format!("{value} is not in (-1, 1)")));
        }
        Ok(RationalOracle { value, memo: Memo::default() })
    }

    /// Like `new` but also accepts `-1` and `1`, which the oracle contract
    /// can still represent since `b = +-2^k` is allowed. Used for
    /// coefficients, where the error analysis only needs `|c| <= 1`.
    pub fn new_closed(value: Rational) -> Result<Self> {
        if value.numer().abs() > value.denom().abs() {
            return Err(MmeError::invalid(format!("{value} is not in [-1, 1]")));
        }
        Ok(RationalOracle { value, memo: Memo::default() })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }
}

impl ApproximationOracle for RationalOracle {
    fn query(&self, k: u64) -> BigInt {
        self.memo.get_or(k, || {
            let scaled = &self.value * Rational::from_integer(pow2(k));
            let b = round_nearest(&scaled);
            let cap = pow2(k);
            if b.abs() > cap {
                cap * sign_of(&b)
            } else {
                b
            }
        })
    }

    fn sign(&self) -> i8 {
        sign_of(self.value.numer())
    }
}

/// Oracle for `x`, which must satisfy `|x| < 1`.
pub fn make_rational_oracle(x: Rational) -> Result<OracleRef> {
    Ok(Arc::new(RationalOracle::new(x)?))
}

/// Oracle for a coefficient `x` with `|x| <= 1`.
pub fn make_coefficient_oracle(x: Rational) -> Result<OracleRef> {
    Ok(Arc::new(RationalOracle::new_closed(x)?))
}

/// Oracle for `alpha^D` built from an oracle for `alpha` by repeated
/// squaring with a few guard bits per level.
#[derive(Debug)]
pub struct PowerOracle {
    base: OracleRef,
    exponent: u64,
    memo: Memo,
}

impl PowerOracle {
    pub fn new(base: OracleRef, exponent: u64) -> Result<Self> {
        if exponent == 0 {
            return Err(MmeError::invalid("power oracle exponent must be positive"));
        }
        Ok(PowerOracle { base, exponent, memo: Memo::default() })
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }
}

fn power_query(base: &dyn ApproximationOracle, exponent: u64, k: u64) -> BigInt {
    if exponent == 1 {
        return base.query(k);
    }
    if exponent % 2 == 0 {
        let t = k + 3;
        let a = power_query(base, exponent / 2, t);
        round_shift(&(&a * &a), 2 * t - k)
    } else {
        let t = k + 4;
        let b = base.query(t);
        let a = power_query(base, (exponent - 1) / 2, t);
        round_shift(&(&a * &a * b), 3 * t - k)
    }
}

/// `(exponent, precision)` of every recursion level of a power query,
/// outermost first; the last entry is the direct query on the base oracle.
pub fn power_schedule(exponent: u64, k: u64) -> Vec<(u64, u64)> {
    let mut out = vec![(exponent, k)];
    let (mut e, mut k) = (exponent, k);
    while e > 1 {
        if e % 2 == 0 {
            e /= 2;
            k += 3;
        } else {
            e = (e - 1) / 2;
            k += 4;
        }
        out.push((e, k));
    }
    out
}

impl ApproximationOracle for PowerOracle {
    fn query(&self, k: u64) -> BigInt {
        self.memo.get_or(k, || power_query(self.base.as_ref(), self.exponent, k))
    }

    fn sign(&self) -> i8 {
        match self.base.sign() {
            0 => 0,
            _ if self.exponent % 2 == 0 => 1,
            s => s,
        }
    }
}

/// Oracle for `alpha^exponent`; exponent 1 returns `base` itself.
pub fn power_oracle(base: &OracleRef, exponent: u64) -> Result<OracleRef> {
    if exponent == 1 {
        return Ok(Arc::clone(base));
    }
    Ok(Arc::new(PowerOracle::new(Arc::clone(base), exponent)?))
}

/// A complex number as a pair of oracles for its real and imaginary parts.
#[derive(Clone, Debug)]
pub struct ComplexOracle {
    pub re: OracleRef,
    pub im: OracleRef,
}

impl ComplexOracle {
    pub fn new(re: OracleRef, im: OracleRef) -> Self {
        ComplexOracle { re, im }
    }

    pub fn from_rationals(re: Rational, im: Rational) -> Result<Self> {
        Ok(ComplexOracle::new(make_rational_oracle(re)?, make_rational_oracle(im)?))
    }

    /// Coefficient whose parts may also be `+-1`.
    pub fn coefficient_from_rationals(re: Rational, im: Rational) -> Result<Self> {
        Ok(ComplexOracle::new(make_coefficient_oracle(re)?, make_coefficient_oracle(im)?))
    }
}
