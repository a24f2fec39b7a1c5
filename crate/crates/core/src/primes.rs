//! Prime generation.

use crate::error::{MmeError, Result};

/// All primes strictly below `n`, ascending (sieve of Eratosthenes).
pub fn prime_sieve(n: u64) -> Result<Vec<u64>> {
    if n <= 1 {
        return Err(MmeError::invalid(format!("prime_sieve needs n > 1, got {n}")));
    }
    let n = usize::try_from(n).map_err(|_| MmeError::invalid("sieve bound exceeds memory"))?;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(primes)
}

/// Sieve bound guaranteed to exceed the `k`-th prime (Rosser's bound for k >= 6).
fn kth_prime_upper_bound(k: usize) -> u64 {
    if k < 6 {
        return 13;
    }
    let kf = k as f64;
    (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 1
}

/// The first `k` primes `2, 3, 5, ...`.
pub fn first_k_primes(k: usize) -> Vec<u64> {
    if k == 0 {
        return Vec::new();
    }
    let mut bound = kth_prime_upper_bound(k);
    loop {
        let mut primes = prime_sieve(bound).expect("bound > 1");
        if primes.len() >= k {
            primes.truncate(k);
            return primes;
        }
        bound *= 2;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers (Miller-Rabin with a
/// base set that is exact below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
