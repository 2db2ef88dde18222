//! Integer helpers: factorization, divisors, Euler's totient, the Möbius function and the
//! sets of products of distinct odd prime divisors.
//!
//! Factorization is trial division up to `sqrt(n)`, adequate for inputs up to about `10^12`.

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub entries: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.entries.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|&(_, e)| e == 1)
    }

    /// Odd primes only, in increasing order.
    pub fn odd_primes(&self) -> Vec<u64> {
        self.entries
            .iter()
            .map(|&(p, _)| p)
            .filter(|&p| p != 2)
            .collect()
    }

    /// Exponent of 2.
    pub fn two_adic(&self) -> u32 {
        self.entries
            .iter()
            .find(|&&(p, _)| p == 2)
            .map_or(0, |&(_, e)| e)
    }
}

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("expected a positive integer, got 0".into()))
    } else {
        Ok(())
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    check_positive(n)?;
    let mut entries = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            entries.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        entries.push((rest, 1));
    }
    Ok(Factorization { entries })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).is_ok_and(|f| f.entries == [(n, 1)])
}

/// All divisors in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for &(p, e) in &f.entries {
        let base = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.entries
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

pub fn moebius(n: u64) -> Result<i32> {
    let f = factorize(n)?;
    Ok(if !f.is_squarefree() {
        0
    } else if f.entries.len() % 2 == 0 {
        1
    } else {
        -1
    })
}

/// `levels[i - 1]` is the sorted set of products of `i` distinct odd prime divisors of `n`
/// that are strictly less than `n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiSets {
    pub levels: Vec<Vec<u64>>,
}

impl PiSets {
    /// Level `i` (1-based); empty beyond the materialized levels.
    pub fn level(&self, i: usize) -> &[u64] {
        i.checked_sub(1)
            .and_then(|k| self.levels.get(k))
            .map_or(&[], Vec::as_slice)
    }

    /// Iterates `(i, level)` for every materialized level.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[u64])> {
        self.levels.iter().enumerate().map(|(k, l)| (k + 1, l.as_slice()))
    }
}

/// One level per odd prime divisor of `n`.
pub fn pi_sets(n: u64) -> Result<PiSets> {
    let primes = factorize(n)?.odd_primes();
    let mut levels = vec![Vec::new(); primes.len()];
    // Every nonempty subset of the odd primes, keyed by its bitmask.
    for mask in 1u32..(1 << primes.len()) {
        let product: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| p)
            .product();
        if product < n {
            levels[mask.count_ones() as usize - 1].push(product);
        }
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Ok(PiSets { levels })
}
