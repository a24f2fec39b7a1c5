//! Approximate evaluation over the reals and complex numbers.
//!
//! Coefficients are rounded to `k1` bits and coordinates to `k2` bits,
//! denominators are cleared by scaling each monomial with
//! `2^{k2 (dm - |e|)}`, and the resulting integer instance is evaluated
//! exactly. Dividing by `2^{k1 + k2 dm - t}` with half-down rounding gives
//! `b` with `|f(a) - b / 2^t| < 2^-t`.
//!
//! With `k1 = t + 2 + ceil(m log2 d)` the coefficient rounding costs at
//! most `2^{-(t+2)}`, and with `k2 = t + 2 + ceil(log2(4 m d * d^m))` the
//! coordinate rounding costs at most the same.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::backend::MmeBackend;
use crate::error::{MmeError, Result};
use crate::ff_mme::MmeOptions;
use crate::int_mme::{mme_gaussian_integers, mme_integers_with, IntMmeInstance};
use crate::kronecker::{inverse_kronecker_with, small_m_rewrite};
use crate::numerics::{ceil_log2, round_shift, Dyadic, Rational};
use crate::oracle::{make_coefficient_oracle, make_rational_oracle, power_oracle, ComplexOracle, OracleRef};
use crate::poly::DensePolynomial;
use crate::ring::GaussianInt;

/// A real instance: oracles for coefficients in `[-1, 1]` and coordinates
/// in `(-1, 1)`, and the requested accuracy `t` in bits.
#[derive(Clone, Debug)]
pub struct ApproxInstance {
    f: DensePolynomial<OracleRef>,
    points: Vec<Vec<OracleRef>>,
    t: u64,
}

impl ApproxInstance {
    pub fn new(f: DensePolynomial<OracleRef>, points: Vec<Vec<OracleRef>>, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(MmeError::invalid("accuracy t must be at least 1"));
        }
        check_arity(f.num_vars(), &points)?;
        Ok(ApproxInstance { f, points, t })
    }

    /// Wraps exact rationals in oracles: coefficients in `[-1, 1]`,
    /// coordinates in `(-1, 1)`.
    pub fn from_rationals(f: &DensePolynomial<Rational>, points: &[Vec<Rational>], t: u64) -> Result<Self> {
        let f = f.try_map(|c| make_coefficient_oracle(c.clone()))?;
        let points = points
            .iter()
            .map(|a| a.iter().map(|x| make_rational_oracle(x.clone())).collect())
            .collect::<Result<_>>()?;
        ApproxInstance::new(f, points, t)
    }

    pub fn poly(&self) -> &DensePolynomial<OracleRef> {
        &self.f
    }

    pub fn points(&self) -> &[Vec<OracleRef>] {
        &self.points
    }

    pub fn accuracy(&self) -> u64 {
        self.t
    }
}

fn check_arity<T>(num_vars: usize, points: &[Vec<T>]) -> Result<()> {
    match points.iter().position(|a| a.len() != num_vars) {
        Some(i) => Err(MmeError::invalid(format!(
            "point {i} has {} coordinates, expected {num_vars}",
            points[i].len()
        ))),
        None => Ok(()),
    }
}

/// Rounding precisions and integer bit bound for one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproxParams {
    /// Coefficient precision.
    pub k1: u64,
    /// Coordinate precision; also the `k` in `s = 3 k d m`.
    pub k2: u64,
    /// Bit bound handed to the exact integer evaluation.
    pub s: u64,
}

impl ApproxParams {
    /// Exponent `k1 + k2 d m` relating `G(a_hat)` to `round(f)(round(a))`.
    pub fn scale_exponent(&self, d: usize, m: usize) -> u64 {
        self.k1 + self.k2 * (d * m) as u64
    }
}

/// Precisions for an `m`-variate instance of individual degree `< d`.
pub fn approx_params(d: usize, m: usize, t: u64) -> ApproxParams {
    approx_params_guarded(d, m, t, 0)
}

fn approx_params_guarded(d: usize, m: usize, t: u64, guard: u64) -> ApproxParams {
    let dm = BigInt::from(d).pow(m as u32);
    let k1 = t + 2 + ceil_log2(&dm) + guard;
    let k2 = t + 2 + ceil_log2(&(dm * (4 * m * d))) + guard;
    let s = 3 * k2 * (d * m) as u64;
    ApproxParams { k1, k2, s }
}

/// Extra bits for complex coordinates, whose modulus can reach `sqrt(2)`:
/// every power of a coordinate may grow by `2^{1/2}` per degree.
fn complex_guard_bits(d: usize, m: usize) -> u64 {
    (((d - 1) * m + 1) as u64).div_ceil(2) + 1
}

/// Every coefficient replaced by its `k`-bit approximation `b / 2^k`.
pub fn round_poly(f: &DensePolynomial<OracleRef>, k: u64) -> DensePolynomial<Dyadic> {
    let coeffs: Vec<Dyadic> = f.coeffs().par_iter().map(|c| Dyadic::new(c.query(k), k)).collect();
    DensePolynomial::new(f.num_vars(), f.degree_bound(), coeffs).expect("same shape")
}

/// Coordinatewise `k`-bit approximation of a point, for a polynomial of
/// individual degree `< d`. Requires `2^k > 4 d^2 m^2`.
pub fn round_point(a: &[OracleRef], k: u64, d: usize) -> Result<Vec<Dyadic>> {
    let m = a.len();
    let need = BigInt::from(2 * d * m).pow(2);
    if BigInt::from(1) << k <= need {
        return Err(MmeError::invalid(format!(
            "precision {k} too small for d = {d}, m = {m}: need 2^k > 4 d^2 m^2"
        )));
    }
    Ok(a.iter().map(|x| Dyadic::new(x.query(k), k)).collect())
}

/// The integer instance `G`, `a_hat` with
/// `G(a_hat) = 2^{k1 + k2 dm} round(f)(round(a))`.
#[derive(Clone, Debug)]
pub struct ScaledIntegerInstance {
    pub g: DensePolynomial<BigInt>,
    pub hat_points: Vec<Vec<BigInt>>,
    pub params: ApproxParams,
}

/// Clears denominators: coefficient `e` of `G` is `g_e 2^{k2 (dm - |e|)}`
/// where `g_e / 2^{k1}` is the rounded coefficient.
pub fn scale_instance(
    rounded_f: &DensePolynomial<Dyadic>,
    rounded_points: &[Vec<Dyadic>],
    params: ApproxParams,
) -> ScaledIntegerInstance {
    let (d, m) = (rounded_f.degree_bound(), rounded_f.num_vars());
    let top = (d - 1) * m;
    let shape = rounded_f.map(|_| ());
    let g_coeffs: Vec<BigInt> = shape
        .terms()
        .map(|(e, _)| e.iter().sum::<usize>())
        .zip(rounded_f.coeffs())
        .map(|(deg, c)| {
            let c = c.rescale(params.k1);
            // exponents only reach (d-1) m; the remaining k2 m factor is common
            c.mantissa() << (params.k2 * (top - deg) as u64 + params.k2 * m as u64)
        })
        .collect();
    let g = DensePolynomial::new(m, d, g_coeffs).expect("same shape");
    let hat_points = rounded_points
        .iter()
        .map(|a| a.iter().map(|x| x.rescale(params.k2).into_parts().0).collect())
        .collect();
    ScaledIntegerInstance { g, hat_points, params }
}

type OracleInstance = (DensePolynomial<OracleRef>, Vec<Vec<OracleRef>>);

fn rewrite_real(
    f: &DensePolynomial<OracleRef>,
    points: &[Vec<OracleRef>],
    opts: &MmeOptions,
) -> Result<Option<OracleInstance>> {
    let Some((base, block)) = small_m_rewrite(f.degree_bound(), f.num_vars(), opts.kronecker) else {
        return Ok(None);
    };
    let zero = make_rational_oracle(Rational::from_integer(0.into()))?;
    let g = inverse_kronecker_with(f, base, block, &zero)?;
    let pts = points
        .iter()
        .map(|a| {
            let mut out = Vec::with_capacity(a.len() * block);
            for x in a {
                let mut e = 1u64;
                for _ in 0..block {
                    out.push(power_oracle(x, e)?);
                    e *= base as u64;
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((g, pts)))
}

/// Integers `b` with `|f(a) - b / 2^t| < 2^-t` for every point.
pub fn approx_mme_real<B: MmeBackend>(inst: &ApproxInstance, backend: &B) -> Result<Vec<BigInt>> {
    approx_mme_real_with(inst, backend, &MmeOptions::default())
}

pub fn approx_mme_real_with<B: MmeBackend>(
    inst: &ApproxInstance,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<BigInt>> {
    let t = inst.t;
    if inst.f.degree_bound() == 1 || inst.f.num_vars() == 0 {
        let b = inst.f.coeffs()[0].query(t);
        return Ok(vec![b; inst.points.len()]);
    }
    if inst.points.is_empty() {
        return Ok(Vec::new());
    }
    let rewritten = rewrite_real(&inst.f, &inst.points, opts)?;
    let (f, points) = match &rewritten {
        Some((g, pts)) => (g, pts.as_slice()),
        None => (&inst.f, inst.points.as_slice()),
    };
    let (d, m) = (f.degree_bound(), f.num_vars());
    let params = approx_params(d, m, t);

    let rounded_f = round_poly(f, params.k1);
    let rounded_points = points
        .par_iter()
        .map(|a| round_point(a, params.k2, d))
        .collect::<Result<Vec<_>>>()?;
    let scaled = scale_instance(&rounded_f, &rounded_points, params);
    let int_inst = IntMmeInstance::new(scaled.g, scaled.hat_points, params.s)?;
    let evals = mme_integers_with(&int_inst, backend, opts)?;

    let shift = params.scale_exponent(d, m) - t;
    Ok(evals.iter().map(|b| round_shift(b, shift)).collect())
}

/// A complex approximation `(re + i im) / 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianDyadic {
    pub re: BigInt,
    pub im: BigInt,
    pub exponent: u64,
}

impl GaussianDyadic {
    pub fn re_dyadic(&self) -> Dyadic {
        Dyadic::new(self.re.clone(), self.exponent)
    }

    pub fn im_dyadic(&self) -> Dyadic {
        Dyadic::new(self.im.clone(), self.exponent)
    }
}

impl fmt::Display for GaussianDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.re_dyadic(), self.im_dyadic())
    }
}

/// Componentwise `|Re f(a) - re / 2^t| < 2^-t` and likewise for the
/// imaginary part, by running the real pipeline over `Z[i]`.
pub fn approx_mme_complex<B: MmeBackend>(
    f: &DensePolynomial<ComplexOracle>,
    points: &[Vec<ComplexOracle>],
    t: u64,
    backend: &B,
) -> Result<Vec<GaussianDyadic>> {
    approx_mme_complex_with(f, points, t, backend, &MmeOptions::default())
}

pub fn approx_mme_complex_with<B: MmeBackend>(
    f: &DensePolynomial<ComplexOracle>,
    points: &[Vec<ComplexOracle>],
    t: u64,
    backend: &B,
    opts: &MmeOptions,
) -> Result<Vec<GaussianDyadic>> {
    if t == 0 {
        return Err(MmeError::invalid("accuracy t must be at least 1"));
    }
    check_arity(f.num_vars(), points)?;
    let (d, m) = (f.degree_bound(), f.num_vars());
    if d == 1 || m == 0 {
        let c = &f.coeffs()[0];
        let out = GaussianDyadic { re: c.re.query(t), im: c.im.query(t), exponent: t };
        return Ok(vec![out; points.len()]);
    }
    if points.is_empty() {
        return Ok(Vec::new());
    }

    let real_points = points.iter().flatten().all(|z| z.im.sign() == 0);
    let guard = if real_points { 0 } else { complex_guard_bits(d, m) };
    let mut params = approx_params_guarded(d, m, t, guard);
    // |round(f)(round(a))| < d^m 2^{guard + 1}, so G(a_hat) needs this many bits
    let magnitude = params.scale_exponent(d, m) + ceil_log2(&BigInt::from(d).pow(m as u32)) + guard + 2;
    params.s = params.s.max(magnitude);

    let re_part = |z: &ComplexOracle| Arc::clone(&z.re);
    let im_part = |z: &ComplexOracle| Arc::clone(&z.im);
    let round_re = round_poly(&f.map(re_part), params.k1);
    let round_im = round_poly(&f.map(im_part), params.k1);
    let rounded_points = |part: &(dyn Fn(&ComplexOracle) -> OracleRef + Sync)| {
        points
            .par_iter()
            .map(|a| round_point(&a.iter().map(part).collect::<Vec<_>>(), params.k2, d))
            .collect::<Result<Vec<_>>>()
    };
    let pts_re = rounded_points(&re_part)?;
    let pts_im = rounded_points(&im_part)?;
    let scaled_re = scale_instance(&round_re, &pts_re, params);
    let scaled_im = scale_instance(&round_im, &pts_im, params);

    let g = DensePolynomial::new(
        m,
        d,
        scaled_re
            .g
            .into_coeffs()
            .into_iter()
            .zip(scaled_im.g.into_coeffs())
            .map(|(re, im)| GaussianInt::new(re, im))
            .collect(),
    )?;
    let hat: Vec<Vec<GaussianInt>> = scaled_re
        .hat_points
        .into_iter()
        .zip(scaled_im.hat_points)
        .map(|(re, im)| re.into_iter().zip(im).map(|(r, i)| GaussianInt::new(r, i)).collect())
        .collect();
    let evals = mme_gaussian_integers(&g, &hat, params.s, backend, opts)?;

    let shift = params.scale_exponent(d, m) - t;
    Ok(evals
        .iter()
        .map(|z| GaussianDyadic {
            re: round_shift(&z.re, shift),
            im: round_shift(&z.im, shift),
            exponent: t,
        })
        .collect())
}
