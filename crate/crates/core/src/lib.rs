//! Multivariate multipoint evaluation over prime fields, the integers,
//! the rationals, and (approximately) the reals and complex numbers.
//!
//! Every pipeline reduces to evaluation modulo many small primes, joined
//! by a Chinese-remainder reconstruction:
//!
//! - [`mme_prime_field`] evaluates over `F_p` by lifting to the integers.
//! - [`mme_integers`] evaluates exactly given an output bit bound.
//! - [`approx_mme_real`] and [`approx_mme_complex`] round, scale to an
//!   integer instance and rescale.
//! - [`mme_rationals`] approximates and then reconstructs each fraction.

pub mod approx_mme;
pub mod backend;
pub mod crt;
pub mod error;
pub mod ff_mme;
pub mod int_mme;
pub mod kronecker;
pub mod numerics;
pub mod oracle;
pub mod poly;
pub mod primes;
pub mod rat_mme;
pub mod ratrecon;
pub mod ring;

pub use approx_mme::{
    approx_mme_complex, approx_mme_complex_with, approx_mme_real, approx_mme_real_with, approx_params,
    round_point, round_poly, scale_instance, ApproxInstance, ApproxParams, GaussianDyadic, ScaledIntegerInstance,
};
pub use backend::{Backend, HornerBackend, MmeBackend, MonomialSumBackend};
pub use crt::{crt_basis_for_bound, crt_reconstruct, crt_reconstruct_signed, crt_reduce, CrtBasis};
pub use error::{MmeError, Result};
pub use ff_mme::{mme_prime_field, mme_prime_field_with, MmeOptions};
pub use int_mme::{mme_gaussian_integers, mme_integers, mme_integers_with, naive_output_bound, IntMmeInstance};
pub use kronecker::{forward_kronecker, inverse_kronecker, psi_points, small_m_rewrite, KroneckerMode};
pub use num_bigint::BigInt;
pub use numerics::{Dyadic, Rational};
pub use oracle::{
    make_coefficient_oracle, make_rational_oracle, power_oracle, ApproximationOracle, ComplexOracle, OracleRef,
    RationalOracle,
};
pub use poly::{DensePolynomial, ExponentVector};
pub use primes::{first_k_primes, is_prime, prime_sieve};
pub use rat_mme::{mme_rationals, mme_rationals_with, RatMmeInstance};
pub use ratrecon::{convergent, quotient_sequence, rational_reconstruct, Convergent, QuotientSequence};
pub use ring::{GaussianField, GaussianInt, ModRing, PrimeField};
