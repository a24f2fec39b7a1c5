//! Continued fractions and rational number reconstruction.
//!
//! The quotient sequence comes from classical Euclid. Convergents are read
//! off a product of `[[q, 1], [1, 0]]` matrices, split in halves so the
//! operands of every multiplication have similar size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{MmeError, Result};
use crate::numerics::{pow2, Rational};

/// Continued-fraction quotients `[q_1, ..., q_t]` of a positive fraction,
/// in the canonical form whose last quotient is at least 2 when `t >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSequence {
    q: Vec<BigInt>,
}

impl QuotientSequence {
    /// Canonicalizes a trailing `[.., q, 1]` into `[.., q + 1]`.
    pub fn new(mut q: Vec<BigInt>) -> Result<Self> {
        if q.is_empty() {
            return Err(MmeError::invalid("quotient sequence must be nonempty"));
        }
        if q[0].is_negative() || q[1..].iter().any(|x| !x.is_positive()) {
            return Err(MmeError::invalid("quotients after the first must be positive"));
        }
        if q.len() >= 2 && q.last().is_some_and(One::is_one) {
            q.pop();
            *q.last_mut().unwrap() += 1;
        }
        Ok(QuotientSequence { q })
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Folds `q_1 + 1 / (q_2 + 1 / (...))` back into a fraction.
    pub fn to_rational(&self) -> Rational {
        let mut rev = self.q.iter().rev();
        let mut acc = Rational::from_integer(rev.next().unwrap().clone());
        for q in rev {
            acc = Rational::from_integer(q.clone()) + acc.recip();
        }
        acc
    }
}

/// The `index`-th convergent `numer / denom`, in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub numer: BigInt,
    pub denom: BigInt,
    pub index: usize,
}

impl Convergent {
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.numer.clone(), self.denom.clone())
    }
}

/// Euclid's quotients for `a / b`, both positive.
pub fn quotient_sequence(a: &BigInt, b: &BigInt) -> Result<QuotientSequence> {
    if !a.is_positive() || !b.is_positive() {
        return Err(MmeError::invalid("quotient sequence needs positive inputs"));
    }
    Ok(quotients_nonnegative(a, b))
}

// a >= 0, b > 0
fn quotients_nonnegative(a: &BigInt, b: &BigInt) -> QuotientSequence {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let mut q = Vec::new();
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        q.push(quot);
        r0 = r1;
        r1 = rem;
    }
    QuotientSequence::new(q).expect("Euclid quotients are well formed")
}

/// `[[p, p'], [r, r']]` stored row-major.
type Mat = [BigInt; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

/// Product of `[[q, 1], [1, 0]]` over `qs`, left to right.
fn quotient_matrix(qs: &[BigInt]) -> Mat {
    match qs {
        [] => [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()],
        [q] => [q.clone(), BigInt::one(), BigInt::one(), BigInt::zero()],
        _ => {
            let (left, right) = qs.split_at(qs.len() / 2);
            mat_mul(&quotient_matrix(left), &quotient_matrix(right))
        }
    }
}

fn convergent_of(seq: &QuotientSequence, index: usize) -> Convergent {
    let [numer, _, denom, _] = quotient_matrix(&seq.q[..index]);
    Convergent { numer, denom, index }
}

/// The `i`-th convergent of `m / n` (1-based).
pub fn convergent(m: &BigInt, n: &BigInt, i: usize) -> Result<Convergent> {
    let seq = quotient_sequence(m, n)?;
    if i == 0 || i > seq.len() {
        return Err(MmeError::invalid(format!(
            "convergent index {i} out of range 1..={}",
            seq.len()
        )));
    }
    Ok(convergent_of(&seq, i))
}

/// The fraction `a / b` with `0 < b < 2^s` and `|A / B - a / b| < 2^-(2s+1)`.
///
/// Such a fraction is unique and appears among the convergents of `|A| / B`
/// as the last one whose denominator is below `2^s`.
pub fn rational_reconstruct(a: &BigInt, b: &BigInt, s: u64) -> Result<(BigInt, BigInt)> {
    if !b.is_positive() {
        return Err(MmeError::invalid("denominator B must be positive"));
    }
    if a.is_zero() {
        return Ok((BigInt::zero(), BigInt::one()));
    }
    let seq = quotients_nonnegative(&a.abs(), b);
    let limit = pow2(s);

    // denominators strictly increase from index 2 on; index 1 has b_1 = 1
    let mut index = 1;
    if seq.len() >= 2 && convergent_of(&seq, 2).denom < limit {
        let (mut lo, mut hi) = (2, seq.len());
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if convergent_of(&seq, mid).denom < limit {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        index = lo;
    }
    let c = convergent_of(&seq, index);
    if c.denom >= limit {
        return Err(MmeError::ReconstructionFailed(format!(
            "no convergent has a denominator below 2^{s}"
        )));
    }
    let target = Rational::new(a.abs(), b.clone());
    let err = (target - c.to_rational()).abs();
    if err >= Rational::new(BigInt::one(), pow2(2 * s + 1)) {
        return Err(MmeError::ReconstructionFailed(format!(
            "no fraction with denominator below 2^{s} lies within 2^-{} of the input",
            2 * s + 1
        )));
    }
    let numer = if a.is_negative() { -c.numer } else { c.numer };
    Ok((numer, c.denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn seq(a: i64, b: i64) -> Vec<BigInt> {
        quotient_sequence(&big(a), &big(b)).unwrap().quotients().to_vec()
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(seq(7, 3), vec![big(2), big(3)]);
        assert_eq!(seq(5, 5), vec![big(1)]);
        assert_eq!(seq(355, 113), vec![big(3), big(7), big(16)]);
        assert_eq!(seq(3, 7), vec![big(0), big(2), big(3)]);
        assert!(quotient_sequence(&big(0), &big(3)).is_err());
        assert!(quotient_sequence(&big(3), &big(-1)).is_err());
    }

    #[test]
    fn canonical_fold() {
        let s = QuotientSequence::new(vec![big(2), big(2), big(1)]).unwrap();
        assert_eq!(s.quotients(), &[big(2), big(3)]);
        assert_eq!(s.to_rational(), Rational::new(big(7), big(3)));
    }

    #[test]
    fn convergent_examples() {
        let c = |i| convergent(&big(355), &big(113), i).unwrap().to_rational();
        assert_eq!(c(1), Rational::from_integer(big(3)));
        assert_eq!(c(2), Rational::new(big(22), big(7)));
        assert_eq!(c(3), Rational::new(big(355), big(113)));
        assert!(convergent(&big(355), &big(113), 4).is_err());
        assert!(convergent(&big(355), &big(113), 0).is_err());
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(rational_reconstruct(&big(11), &big(32), 2).unwrap(), (big(1), big(3)));
        assert_eq!(rational_reconstruct(&big(-91), &big(128), 3).unwrap(), (big(-5), big(7)));
        assert_eq!(rational_reconstruct(&big(0), &big(128), 3).unwrap(), (big(0), big(1)));
        assert_eq!(rational_reconstruct(&big(6), &big(9), 2).unwrap(), (big(2), big(3)));
        assert_eq!(rational_reconstruct(&big(96), &big(32), 2).unwrap(), (big(3), big(1)));
    }

    #[test]
    fn reconstruct_failure() {
        // 1/2 + 1/16 is not within 1/32 of anything with denominator < 4
        assert!(matches!(
            rational_reconstruct(&big(9), &big(16), 2),
            Err(MmeError::ReconstructionFailed(_))
        ));
        assert!(rational_reconstruct(&big(1), &big(0), 2).is_err());
    }

    proptest! {
        #[test]
        fn fold_reproduces_fraction(a in 1i64..1_000_000, b in 1i64..1_000_000) {
            let s = quotient_sequence(&big(a), &big(b)).unwrap();
            prop_assert_eq!(s.to_rational(), Rational::new(big(a), big(b)));
            if s.len() >= 2 {
                prop_assert!(s.quotients().last().unwrap() >= &big(2));
            }
        }

        #[test]
        fn matrix_matches_recurrence(a in 1i64..1_000_000_000, b in 1i64..1_000_000_000) {
            let s = quotient_sequence(&big(a), &big(b)).unwrap();
            let (mut p, mut p_prev) = (big(1), big(0));
            let (mut r, mut r_prev) = (big(0), big(1));
            for (i, q) in s.quotients().iter().enumerate() {
                (p, p_prev) = (q * &p + &p_prev, p);
                (r, r_prev) = (q * &r + &r_prev, r);
                let c = convergent_of(&s, i + 1);
                prop_assert_eq!((&c.numer, &c.denom), (&p, &r));
            }
        }
    }
}
