//! Multi-modular reduction and reconstruction over a basis of word-sized
//! primes, using a cached product tree.
//!
//! Reduction walks the remainder tree top-down. Reconstruction combines
//! siblings bottom-up with a precomputed inverse per internal node
//! (`x = x_l + P_l * ((x_r - x_l) * P_l^{-1} mod P_r)`).

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MmeError, Result};
use crate::primes::is_prime;

/// Ordered basis of distinct primes with its product tree.
#[derive(Clone, Debug)]
pub struct CrtBasis {
    primes: Vec<u64>,
    /// `tree[0]` holds the primes, the last level holds the single product `M`.
    tree: Vec<Vec<BigInt>>,
    /// `inverses[l][j]`: inverse of the left child product modulo the right
    /// child product, for node `j` of level `l + 1` (zero for carried nodes).
    inverses: Vec<Vec<BigInt>>,
}

impl CrtBasis {
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return Err(MmeError::invalid("CRT basis needs at least one prime"));
        }
        let mut seen = HashSet::with_capacity(primes.len());
        for &p in &primes {
            if !is_prime(p) {
                return Err(MmeError::invalid(format!("{p} is not prime")));
            }
            if !seen.insert(p) {
                return Err(MmeError::invalid(format!("prime {p} repeated in basis")));
            }
        }
        Ok(Self::build(primes))
    }

    fn build(primes: Vec<u64>) -> Self {
        let mut tree = vec![primes.iter().map(|&p| BigInt::from(p)).collect::<Vec<_>>()];
        let mut inverses = Vec::new();
        while tree.last().unwrap().len() > 1 {
            let level = tree.last().unwrap();
            let mut up = Vec::with_capacity(level.len().div_ceil(2));
            let mut inv = Vec::with_capacity(level.len().div_ceil(2));
            for pair in level.chunks(2) {
                match pair {
                    [l, r] => {
                        up.push(l * r);
                        let li = l.mod_floor(r);
                        inv.push(li.modinv(r).expect("basis moduli are coprime"));
                    }
                    [single] => {
                        up.push(single.clone());
                        inv.push(BigInt::zero());
                    }
                    _ => unreachable!(),
                }
            }
            tree.push(up);
            inverses.push(inv);
        }
        CrtBasis { primes, tree, inverses }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The product `M` of all basis primes.
    pub fn modulus(&self) -> &BigInt {
        &self.tree.last().unwrap()[0]
    }

    /// Depth of the product tree (0 for a single prime).
    pub fn depth(&self) -> usize {
        self.tree.len() - 1
    }

    /// Residues `n mod p_i` in `[0, p_i)`, via the remainder tree.
    pub fn reduce(&self, n: &BigInt) -> Vec<u64> {
        let top = self.tree.len() - 1;
        let mut rems = vec![reduce_into(n, &self.tree[top][0])];
        for level in (0..top).rev() {
            let nodes = &self.tree[level];
            rems = (0..nodes.len())
                .map(|c| reduce_into(&rems[c / 2], &nodes[c]))
                .collect();
        }
        rems.iter().map(|r| r.to_u64().expect("residue below a word prime")).collect()
    }

    /// Residues of a machine integer; no tree walk is needed.
    pub fn reduce_u64(&self, n: u64) -> Vec<u64> {
        self.primes.iter().map(|&p| n % p).collect()
    }

    /// The unique `N` in `[0, M)` with `N = residues[i] (mod p_i)`.
    pub fn reconstruct(&self, residues: &[u64]) -> Result<BigInt> {
        if residues.len() != self.primes.len() {
            return Err(MmeError::invalid(format!(
                "expected {} residues, got {}",
                self.primes.len(),
                residues.len()
            )));
        }
        for (i, (&r, &p)) in residues.iter().zip(&self.primes).enumerate() {
            if r >= p {
                return Err(MmeError::invalid(format!("residue {r} at index {i} is not below {p}")));
            }
        }
        let mut vals: Vec<BigInt> = residues.iter().map(|&r| BigInt::from(r)).collect();
        for (level, invs) in self.inverses.iter().enumerate() {
            let nodes = &self.tree[level];
            let mut up = Vec::with_capacity(invs.len());
            let mut it = vals.into_iter();
            for (j, inv) in invs.iter().enumerate() {
                let left = it.next().unwrap();
                if 2 * j + 1 < nodes.len() {
                    let right = it.next().unwrap();
                    let (pl, pr) = (&nodes[2 * j], &nodes[2 * j + 1]);
                    let t = ((right - &left) * inv).mod_floor(pr);
                    up.push(left + pl * t);
                } else {
                    up.push(left);
                }
            }
            vals = up;
        }
        Ok(vals.pop().unwrap())
    }

    /// Like [`reconstruct`](Self::reconstruct) but returns the representative
    /// in `(-M/2, M/2]`.
    pub fn reconstruct_signed(&self, residues: &[u64]) -> Result<BigInt> {
        let r = self.reconstruct(residues)?;
        let m = self.modulus();
        if (&r << 1u32) > *m {
            Ok(r - m)
        } else {
            Ok(r)
        }
    }
}

/// `n mod m` in `[0, m)`, skipping the division when `n` is already reduced.
fn reduce_into(n: &BigInt, m: &BigInt) -> BigInt {
    if !n.is_negative() && n < m {
        n.clone()
    } else {
        n.mod_floor(m)
    }
}

/// Basis over the shortest prefix of `pool` whose product exceeds `bound`.
pub fn crt_basis_for_bound(bound: &BigInt, pool: &[u64]) -> Result<CrtBasis> {
    let mut product = BigInt::one();
    for (i, &p) in pool.iter().enumerate() {
        product *= p;
        if product > *bound {
            return CrtBasis::new(pool[..=i].to_vec());
        }
    }
    Err(MmeError::PoolExhausted {
        pool_len: pool.len(),
        bound_bits: bound.bits(),
    })
}

pub fn crt_reduce(n: &BigInt, basis: &CrtBasis) -> Vec<u64> {
    basis.reduce(n)
}

pub fn crt_reconstruct(residues: &[u64], basis: &CrtBasis) -> Result<BigInt> {
    basis.reconstruct(residues)
}

pub fn crt_reconstruct_signed(residues: &[u64], basis: &CrtBasis) -> Result<BigInt> {
    basis.reconstruct_signed(residues)
}
