//! Exact evaluation over the rationals given an output bit bound `s`.
//!
//! Every value is approximated to `2s + 1` bits and then snapped to the
//! unique fraction with denominator below `2^s` that close to it.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::approx_mme::{approx_mme_real_with, ApproxInstance};
use crate::backend::MmeBackend;
use crate::error::{MmeError, Result};
use crate::ff_mme::MmeOptions;
use crate::numerics::{fits_bits, pow2, Rational};
use crate::poly::DensePolynomial;
use crate::ratrecon::rational_reconstruct;

/// A rational instance. Numerators and denominators of all inputs are
/// checked against `2^s` and magnitudes against 1 (coefficients may be
/// `+-1`); the same bound on the evaluations is the caller's promise.
#[derive(Clone, Debug)]
pub struct RatMmeInstance {
    f: DensePolynomial<Rational>,
    points: Vec<Vec<Rational>>,
    s: u64,
}

impl RatMmeInstance {
    pub fn new(f: DensePolynomial<Rational>, points: Vec<Vec<Rational>>, s: u64) -> Result<Self> {
        if s == 0 {
            return Err(MmeError::invalid("bit bound s must be at least 1"));
        }
        let fits = |x: &Rational| fits_bits(x.numer(), s) && fits_bits(x.denom(), s);
        if let Some(i) = f.coeffs().iter().position(|c| !fits(c)) {
            return Err(MmeError::invalid(format!(
                "coefficient {i} has a numerator or denominator not below 2^{s}"
            )));
        }
        if let Some(i) = f.coeffs().iter().position(|c| c.numer().abs() > *c.denom()) {
            return Err(MmeError::invalid(format!("coefficient {i} is not in [-1, 1]")));
        }
        for (i, a) in points.iter().enumerate() {
            if !a.iter().all(fits) {
                return Err(MmeError::invalid(format!(
                    "a coordinate of point {i} has a numerator or denominator not below 2^{s}"
                )));
            }
        }
        // magnitudes and arity are checked when the oracles are built
        ApproxInstance::from_rationals(&f, &points, 1)?;
        Ok(RatMmeInstance { f, points, s })
    }

    pub fn poly(&self) -> &DensePolynomial<Rational> {
        &self.f
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn bit_bound(&self) -> u64 {
        self.s
    }

    /// Approximation precision `2s + 1` used by the evaluation.
    pub fn precision(&self) -> u64 {
        2 * self.s + 1
    }
}

/// Exact reduced values `f(a)` for every point.
pub fn mme_rationals<B: MmeBackend>(inst: &RatMmeInstance, backend: &B) -> Result<Vec<Rational>> {
    mme_rationals_with(inst, backend, &MmeOptions::default())
}

pub fn mme_rationals_with<B: MmeBackend>(
    inst: &RatMmeInstance,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<Rational>> {
    let approx = approximations(inst, backend, opts)?;
    let denom = pow2(inst.precision());
    approx
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let (p, q) = rational_reconstruct(b, &denom, inst.s).map_err(|e| match e {
                MmeError::ReconstructionFailed(msg) => {
                    MmeError::ReconstructionFailed(format!("point {i}: {msg}"))
                }
                other => other,
            })?;
            Ok(Rational::new(p, q))
        })
        .collect()
}

/// The intermediate `B_i` with `|f(a_i) - B_i / 2^{2s+1}| < 2^-(2s+1)`.
pub fn approximations<B: MmeBackend>(
    inst: &RatMmeInstance,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<BigInt>> {
    let approx = ApproxInstance::from_rationals(&inst.f, &inst.points, inst.precision())?;
    approx_mme_real_with(&approx, backend, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::HornerBackend;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn identity() {
        let f = DensePolynomial::new(1, 2, vec![q(0, 1), q(1, 1)]).unwrap();
        let inst = RatMmeInstance::new(f, vec![vec![q(2, 3)]], 2).unwrap();
        assert_eq!(mme_rationals(&inst, &HornerBackend).unwrap(), vec![q(2, 3)]);
    }

    #[test]
    fn product_plus_variable() {
        let f = DensePolynomial::from_fn(3, 2, |e| match e {
            [1, 1, 0] | [0, 0, 1] => q(1, 1),
            _ => q(0, 1),
        })
        .unwrap();
        let inst = RatMmeInstance::new(f, vec![vec![q(1, 2), q(1, 2), q(1, 4)]], 3).unwrap();
        assert_eq!(mme_rationals(&inst, &HornerBackend).unwrap(), vec![q(1, 2)]);
    }

    #[test]
    fn negative_values() {
        // -x^2 / 2 + x / 3 at -3/5: -9/50 - 1/5 = -19/50
        let f = DensePolynomial::new(1, 3, vec![q(0, 1), q(1, 3), q(-1, 2)]).unwrap();
        let inst = RatMmeInstance::new(f, vec![vec![q(-3, 5)]], 6).unwrap();
        assert_eq!(mme_rationals(&inst, &HornerBackend).unwrap(), vec![q(-19, 50)]);
    }

    #[test]
    fn dishonest_bound_fails() {
        // value 11/30 needs a denominator of 5 bits but s = 3
        let f = DensePolynomial::new(1, 2, vec![q(1, 5), q(1, 1)]).unwrap();
        let inst = RatMmeInstance::new(f, vec![vec![q(1, 6)]], 3).unwrap();
        assert!(matches!(
            mme_rationals(&inst, &HornerBackend),
            Err(MmeError::ReconstructionFailed(_))
        ));
    }

    #[test]
    fn input_checks() {
        let f = DensePolynomial::new(1, 2, vec![q(0, 1), q(1, 1)]).unwrap();
        assert!(RatMmeInstance::new(f.clone(), vec![vec![q(1, 17)]], 4).is_err());
        assert!(RatMmeInstance::new(f.clone(), vec![vec![q(3, 2)]], 4).is_err());
        assert!(RatMmeInstance::new(f.clone(), vec![vec![q(1, 2)]], 0).is_err());
        let g = DensePolynomial::new(1, 2, vec![q(0, 1), q(3, 2)]).unwrap();
        assert!(RatMmeInstance::new(g, vec![vec![q(1, 2)]], 4).is_err());
    }
}
