//! Kronecker substitution between few-variable/high-degree and
//! many-variable/low-degree polynomials.
//!
//! Variable `x_{i,j}` (block `i`, position `j`, both from 0) stands for
//! `y_i^{d^j}`: the exponent `e_i` of `y_i` is spread over its block as
//! little-endian base-`d` digits. The point map sends `a_i` to
//! `(a_i, a_i^d, ..., a_i^{d^{m-1}})`, which makes
//! `inverse_kronecker(f)(psi(a)) == f(a)`.

use std::ops::AddAssign;

use crate::error::{MmeError, Result};
use crate::poly::{dense_len, DensePolynomial};

/// Whether the small-`m` rewrite of the prime-field and real pipelines runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KroneckerMode {
    /// Rewrite when `m < log2 log2 d` and `d >= 16`.
    #[default]
    Auto,
    /// Rewrite whenever `d >= 2`, with base `max(2, floor(log2 d))`.
    Force,
    Never,
}

/// Base `d'` and block length `m'` of the small-`m` rewrite for an
/// `m`-variate polynomial of individual degree `< d`, if it applies.
pub fn small_m_rewrite(d: usize, m: usize, mode: KroneckerMode) -> Option<(usize, usize)> {
    let triggered = match mode {
        KroneckerMode::Never => false,
        KroneckerMode::Force => d >= 2 && m >= 1,
        KroneckerMode::Auto => d >= 16 && m >= 1 && (m as f64) < (d as f64).log2().log2(),
    };
    if !triggered {
        return None;
    }
    let base = (d.ilog2() as usize).max(2);
    let mut block = 1;
    let mut pow = base;
    while pow <= d {
        pow *= base;
        block += 1;
    }
    Some((base, block))
}

/// Re-indexes a `c`-variate polynomial of individual degree `< d^m` as a
/// `cm`-variate polynomial of individual degree `< d`; absent monomials
/// are filled with `zero`.
pub fn inverse_kronecker_with<T: Clone>(
    f: &DensePolynomial<T>,
    d: usize,
    m: usize,
    zero: &T,
) -> Result<DensePolynomial<T>> {
    if d < 2 || m == 0 {
        return Err(MmeError::invalid(format!("Kronecker base {d} with block length {m}")));
    }
    let block = dense_len(d, m).ok_or_else(|| MmeError::invalid("d^m overflows"))?;
    if f.degree_bound() > block {
        return Err(MmeError::invalid(format!(
            "individual degree bound {} exceeds d^m = {block}",
            f.degree_bound()
        )));
    }
    let c = f.num_vars();
    let mut out = DensePolynomial::from_fn(c * m, d, |_| zero.clone())?.into_coeffs();
    let shape = DensePolynomial::new(c * m, d, vec![(); out.len()])?;
    let mut target = vec![0usize; c * m];
    for (e, coeff) in f.terms() {
        for (i, &ei) in e.iter().enumerate() {
            let mut rest = ei;
            for j in 0..m {
                target[i * m + j] = rest % d;
                rest /= d;
            }
        }
        out[shape.index_of(&target)] = coeff.clone();
    }
    DensePolynomial::new(c * m, d, out)
}

/// [`inverse_kronecker_with`] using `T::default()` as zero.
pub fn inverse_kronecker<T: Clone + Default>(
    f: &DensePolynomial<T>,
    d: usize,
    m: usize,
) -> Result<DensePolynomial<T>> {
    inverse_kronecker_with(f, d, m, &T::default())
}

/// Substitutes `x_{i,j} -> y_i^{d^j}` in a polynomial with `cm` variables.
///
/// For individual degree `< d` this is the inverse of
/// [`inverse_kronecker`] and the result has individual degree `< d^m`.
/// Higher input degrees are accepted; monomials that collide are summed.
pub fn forward_kronecker<T>(g: &DensePolynomial<T>, d: usize, m: usize) -> Result<DensePolynomial<T>>
where
    T: Clone + Default + for<'a> AddAssign<&'a T>,
{
    if d < 2 || m == 0 {
        return Err(MmeError::invalid(format!("Kronecker base {d} with block length {m}")));
    }
    if g.num_vars() % m != 0 {
        return Err(MmeError::invalid(format!(
            "{} variables do not split into blocks of {m}",
            g.num_vars()
        )));
    }
    let c = g.num_vars() / m;
    let powers: Vec<usize> = (0..m)
        .map(|j| d.checked_pow(j as u32).ok_or_else(|| MmeError::invalid("d^m overflows")))
        .collect::<Result<_>>()?;
    let weight: usize = powers.iter().sum();
    let out_bound = (g.degree_bound() - 1)
        .checked_mul(weight)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| MmeError::invalid("output degree overflows"))?;
    let mut out = DensePolynomial::from_fn(c, out_bound, |_| T::default())?.into_coeffs();
    let shape = DensePolynomial::new(c, out_bound, vec![(); out.len()])?;
    let mut target = vec![0usize; c];
    for (e, coeff) in g.terms() {
        for (i, slot) in target.iter_mut().enumerate() {
            *slot = (0..m).map(|j| e[i * m + j] * powers[j]).sum();
        }
        out[shape.index_of(&target)] += coeff;
    }
    DensePolynomial::new(c, out_bound, out)
}

/// `(a_1, a_1^d, ..., a_1^{d^{m-1}}, ..., a_c, ..., a_c^{d^{m-1}})`, each
/// entry the `d`-th power of the previous one.
pub fn psi_points<T, F>(a: &[T], d: usize, m: usize, mul: F) -> Vec<T>
where
    T: Clone,
    F: Fn(&T, &T) -> T,
{
    let mut out = Vec::with_capacity(a.len() * m);
    for x in a {
        let mut cur = x.clone();
        for j in 0..m {
            if j > 0 {
                cur = pow_by_mul(&cur, d, &mul);
            }
            out.push(cur.clone());
        }
    }
    out
}

fn pow_by_mul<T: Clone, F: Fn(&T, &T) -> T>(x: &T, e: usize, mul: &F) -> T {
    debug_assert!(e >= 1);
    let mut base = x.clone();
    let mut acc: Option<T> = None;
    let mut e = e;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => mul(&a, &base),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = mul(&base, &base);
    }
    acc.expect("exponent at least one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn eval(f: &DensePolynomial<BigInt>, a: &[BigInt]) -> BigInt {
        f.terms()
            .map(|(e, c)| {
                e.iter().zip(a).fold(c.clone(), |acc, (&k, x)| acc * x.pow(k as u32))
            })
            .sum()
    }

    fn monomial(c: usize, bound: usize, e: &[usize]) -> DensePolynomial<BigInt> {
        DensePolynomial::from_fn(c, bound, |x| if x == e { BigInt::one() } else { BigInt::zero() })
            .unwrap()
    }

    #[test]
    fn single_variable_digits() {
        let f = monomial(1, 8, &[5]);
        let g = inverse_kronecker(&f, 2, 3).unwrap();
        assert_eq!((g.num_vars(), g.degree_bound()), (3, 2));
        assert_eq!(*g.coeff(&[1, 0, 1]), BigInt::one());
        assert_eq!(g.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn two_blocks() {
        // y1^4 y2^1 with d = 3, m = 2: 4 = 1 + 1*3, 1 = 1 + 0*3
        let f = monomial(2, 9, &[4, 1]);
        let g = inverse_kronecker(&f, 3, 2).unwrap();
        assert_eq!(*g.coeff(&[1, 1, 1, 0]), BigInt::one());
        let a = [BigInt::from(2), BigInt::from(-3)];
        let psi = psi_points(&a, 3, 2, |x, y| x * y);
        assert_eq!(eval(&g, &psi), eval(&f, &a));
    }

    #[test]
    fn constant_survives() {
        let f = DensePolynomial::new(1, 1, vec![BigInt::from(7)]).unwrap();
        let g = inverse_kronecker(&f, 2, 3).unwrap();
        assert_eq!(*g.coeff(&[0, 0, 0]), BigInt::from(7));
        assert_eq!(g.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn forward_single_substitution() {
        let g = monomial(2, 2, &[0, 1]);
        let f = forward_kronecker(&g, 2, 2).unwrap();
        assert_eq!(f.degree_bound(), 4);
        assert_eq!(*f.coeff(&[2]), BigInt::one());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_points(&[0i64], 3, 4, |x, y| x * y), vec![0, 0, 0, 0]);
        assert_eq!(psi_points(&[2i64], 2, 3, |x, y| x * y), vec![2, 4, 16]);
        assert_eq!(psi_points(&[2i64, 3], 3, 2, |x, y| x * y), vec![2, 8, 3, 27]);
    }

    #[test]
    fn degree_bound_checked() {
        let f = monomial(1, 9, &[8]);
        assert!(inverse_kronecker(&f, 2, 3).is_err());
        assert!(inverse_kronecker(&f, 1, 3).is_err());
        let g = monomial(3, 2, &[0, 0, 1]);
        assert!(forward_kronecker(&g, 2, 2).is_err());
    }

    #[test]
    fn rewrite_parameters() {
        assert_eq!(small_m_rewrite(15, 1, KroneckerMode::Auto), None);
        assert_eq!(small_m_rewrite(16, 1, KroneckerMode::Auto), Some((4, 3)));
        assert_eq!(small_m_rewrite(16, 2, KroneckerMode::Auto), None);
        assert_eq!(small_m_rewrite(1 << 20, 4, KroneckerMode::Auto), Some((20, 5)));
        assert_eq!(small_m_rewrite(2, 3, KroneckerMode::Force), Some((2, 2)));
        assert_eq!(small_m_rewrite(4, 3, KroneckerMode::Force), Some((2, 3)));
        assert_eq!(small_m_rewrite(1, 3, KroneckerMode::Force), None);
        assert_eq!(small_m_rewrite(100, 1, KroneckerMode::Never), None);
    }
}
