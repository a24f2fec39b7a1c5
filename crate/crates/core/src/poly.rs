//! Dense multivariate polynomials with a bound on the individual degree.

use crate::error::{MmeError, Result};

/// Exponent of each variable in a monomial.
pub type ExponentVector = Vec<usize>;

/// An `m`-variate polynomial whose degree in every variable is below `d`,
/// stored as all `d^m` coefficients in row-major exponent order (the last
/// variable varies fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePolynomial<T> {
    num_vars: usize,
    degree_bound: usize,
    coeffs: Vec<T>,
}

/// `d^m`, or `None` on overflow.
pub fn dense_len(degree_bound: usize, num_vars: usize) -> Option<usize> {
    degree_bound.checked_pow(u32::try_from(num_vars).ok()?)
}

impl<T> DensePolynomial<T> {
    pub fn new(num_vars: usize, degree_bound: usize, coeffs: Vec<T>) -> Result<Self> {
        if degree_bound == 0 {
            return Err(MmeError::invalid("individual degree bound must be at least 1"));
        }
        let len = dense_len(degree_bound, num_vars)
            .ok_or_else(|| MmeError::invalid("d^m overflows the address space"))?;
        if coeffs.len() != len {
            return Err(MmeError::invalid(format!(
                "expected d^m = {len} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(DensePolynomial { num_vars, degree_bound, coeffs })
    }

    /// Builds the polynomial coefficient by coefficient.
    pub fn from_fn(
        num_vars: usize,
        degree_bound: usize,
        mut f: impl FnMut(&[usize]) -> T,
    ) -> Result<Self> {
        let len = dense_len(degree_bound, num_vars)
            .ok_or_else(|| MmeError::invalid("d^m overflows the address space"))?;
        let mut coeffs = Vec::with_capacity(len);
        let mut e = vec![0usize; num_vars];
        for _ in 0..len {
            coeffs.push(f(&e));
            increment(&mut e, degree_bound);
        }
        Self::new(num_vars, degree_bound, coeffs)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn index_of(&self, e: &[usize]) -> usize {
        debug_assert_eq!(e.len(), self.num_vars);
        e.iter().fold(0, |acc, &x| {
            debug_assert!(x < self.degree_bound);
            acc * self.degree_bound + x
        })
    }

    pub fn exponent_of(&self, mut index: usize) -> ExponentVector {
        let mut e = vec![0; self.num_vars];
        for slot in e.iter_mut().rev() {
            *slot = index % self.degree_bound;
            index /= self.degree_bound;
        }
        e
    }

    pub fn coeff(&self, e: &[usize]) -> &T {
        &self.coeffs[self.index_of(e)]
    }

    /// `(exponent, coefficient)` pairs in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (ExponentVector, &T)> + '_ {
        let mut e = vec![0usize; self.num_vars];
        self.coeffs.iter().map(move |c| {
            let cur = e.clone();
            increment(&mut e, self.degree_bound);
            (cur, c)
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> DensePolynomial<U> {
        DensePolynomial {
            num_vars: self.num_vars,
            degree_bound: self.degree_bound,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> std::result::Result<U, E>) -> std::result::Result<DensePolynomial<U>, E> {
        Ok(DensePolynomial {
            num_vars: self.num_vars,
            degree_bound: self.degree_bound,
            coeffs: self.coeffs.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }
}

/// Advances `e` to the next exponent vector in row-major order.
fn increment(e: &mut [usize], degree_bound: usize) {
    for slot in e.iter_mut().rev() {
        *slot += 1;
        if *slot < degree_bound {
            return;
        }
        *slot = 0;
    }
}
