//! Exact value domains: big integers, reduced rationals and dyadic fractions,
//! together with the half-down rounding rule used throughout the crate.
//!
//! Rounding: `round_nearest(x)` is the integer `n` with `-1/2 <= x - n < 1/2`,
//! so an exact half `a + 1/2` goes to `a` (and `-5/2` goes to `-3`).

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{MmeError, Result};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

/// Rounds `x` to the nearest integer, sending exact halves down.
pub fn round_nearest(x: &Rational) -> BigInt {
    round_div(x.numer(), x.denom())
}

/// `round_nearest(num / den)` for `den > 0`.
pub fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    // ceil((2 num - den) / (2 den))
    let twice_den: BigInt = den << 1u32;
    let shifted: BigInt = (num << 1u32) - den;
    -((-shifted).div_floor(&twice_den))
}

/// `round_nearest(x / 2^e)`.
pub fn round_shift(x: &BigInt, e: u64) -> BigInt {
    if e == 0 {
        return x.clone();
    }
    // ceil((x - 2^(e-1)) / 2^e) = -floor((2^(e-1) - x) / 2^e); `>>` floors on BigInt.
    let half = BigInt::one() << (e - 1);
    -((half - x) >> e)
}

/// Smallest `c >= 0` with `2^c >= x`, for `x >= 1`.
pub fn ceil_log2(x: &BigInt) -> u64 {
    debug_assert!(x.is_positive());
    (x - 1u32).bits()
}

/// `ceil(log2(x))` for a machine integer `x >= 1`.
pub fn ceil_log2_u64(x: u64) -> u64 {
    debug_assert!(x >= 1);
    u64::from(64 - (x - 1).leading_zeros())
}

/// `2^e` as a big integer.
pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// True when `|x| < 2^bits`.
pub fn fits_bits(x: &BigInt, bits: u64) -> bool {
    x.bits() <= bits
}

/// A fraction `mantissa / 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: u64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: u64) -> Self {
        Dyadic { mantissa, exponent }
    }

    pub fn zero(exponent: u64) -> Self {
        Dyadic::new(BigInt::zero(), exponent)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn into_parts(self) -> (BigInt, u64) {
        (self.mantissa, self.exponent)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow2(self.exponent))
    }

    /// Re-expresses the value over `2^exponent`, rounding half-down when
    /// precision is dropped. Exact whenever `exponent >= self.exponent()`.
    pub fn rescale(&self, exponent: u64) -> Dyadic {
        let mantissa = if exponent >= self.exponent {
            &self.mantissa << (exponent - self.exponent)
        } else {
            round_shift(&self.mantissa, self.exponent - exponent)
        };
        Dyadic::new(mantissa, exponent)
    }

    /// Exact dyadic for a rational whose reduced denominator is a power of two.
    pub fn from_rational(x: &Rational) -> Option<Dyadic> {
        let den = x.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if den != &pow2(tz) {
            return None;
        }
        Some(Dyadic::new(x.numer().clone(), tz))
    }
}

/// Free-function form of [`Dyadic::rescale`].
pub fn dyadic_rescale(x: &Dyadic, exponent: u64) -> Dyadic {
    x.rescale(exponent)
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mantissa, self.exponent)
    }
}

impl FromStr for Dyadic {
    type Err = MmeError;

    /// Parses `a/2^k`; a bare integer is read as `a/2^0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Dyadic::new(parse_bigint(s)?, 0)),
            Some((num, den)) => {
                let exp = den
                    .trim()
                    .strip_prefix("2^")
                    .ok_or_else(|| MmeError::invalid(format!("`{s}` is not of the form a/2^k")))?;
                let exp: u64 = exp
                    .parse()
                    .map_err(|_| MmeError::invalid(format!("bad exponent in `{s}`")))?;
                Ok(Dyadic::new(parse_bigint(num)?, exp))
            }
        }
    }
}

/// Parses a decimal integer with optional sign.
pub fn parse_bigint(s: &str) -> Result<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(MmeError::invalid(format!("`{s}` is not a decimal integer")));
    }
    BigInt::from_str(s).map_err(|e| MmeError::invalid(format!("`{s}`: {e}")))
}

/// Parses `p/q` (or a bare integer) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_bigint(s)?)),
        Some((num, den)) => {
            let num = parse_bigint(num)?;
            let den = parse_bigint(den)?;
            if den.is_zero() {
                return Err(MmeError::invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Formats a rational as `p/q`, always printing the denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Sign of a big integer as -1, 0 or 1.
pub fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact `|x| < 1` test.
pub fn in_open_unit_interval(x: &Rational) -> bool {
    x.numer().abs() < *x.denom()
}
