//! Prime-field arithmetic for the ground-truth oracle.
//!
//! Only prime-order fields are supported. The bounds themselves depend on
//! the grid set sizes alone, so any configuration can be realized with
//! subsets of a large enough prime field.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Binomial tables are precomputed for characteristics below this limit;
/// larger primes fall back to the multiplicative formula.
const PASCAL_LIMIT: u64 = 1024;

/// The field `F_p` for a prime `p`, with elements canonically in `[0, p)`.
#[derive(Clone)]
pub struct PrimeField {
    p: u64,
    // Pascal triangle mod p for n, k < p: row n starts at n*(n+1)/2.
    pascal: Option<Arc<Vec<u64>>>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pascal = (p <= PASCAL_LIMIT).then(|| Arc::new(build_pascal(p)));
        Ok(PrimeField { p, pascal })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// All field elements, in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn reduce_signed(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a % self.p == 0 {
            0
        } else {
            self.p - a % self.p
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // p < 2^32 would let this stay in u64; use u128 so large primes work.
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    /// `C(n, k) mod p` via Lucas' theorem: the product of per-digit
    /// binomials in base `p`.
    pub fn binomial(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let (mut n, mut k) = (n, k);
        let mut acc = 1u64;
        while n > 0 || k > 0 {
            let (nd, kd) = (n % self.p, k % self.p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.digit_binomial(nd, kd));
            if acc == 0 {
                return 0;
            }
            n /= self.p;
            k /= self.p;
        }
        acc
    }

    // C(n, k) mod p for n, k < p.
    fn digit_binomial(&self, n: u64, k: u64) -> u64 {
        if let Some(table) = &self.pascal {
            return table[(n * (n + 1) / 2 + k) as usize];
        }
        // Multiplicative fallback for large characteristics.
        let k = k.min(n - k);
        let mut acc = 1u64;
        for t in 1..=k {
            acc = self.mul(acc, (n - k + t) % self.p);
            acc = self.mul(acc, self.inv(t));
        }
        acc
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField({})", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn build_pascal(p: u64) -> Vec<u64> {
    let n = p as usize;
    let mut rows = Vec::with_capacity(n * (n + 1) / 2);
    for row in 0..n {
        for col in 0..=row {
            let v = if col == 0 || col == row {
                1
            } else {
                let prev = (row - 1) * row / 2;
                (rows[prev + col - 1] + rows[prev + col]) % p
            };
            rows.push(v);
        }
    }
    rows
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime >= n; handy for realizing grids of a given size as
/// subsets of a prime field.
pub fn next_prime_at_least(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.sub(1, 4), 2);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.pow(2, 10), 4);
        assert_eq!(f.inv(3), 2);
        assert_eq!(f.reduce_signed(-7), 3);
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert_eq!(next_prime_at_least(6), 7);
        assert_eq!(next_prime_at_least(5), 5);
    }

    #[test]
    fn binomials_match_the_additive_recurrence() {
        // Cross-check Lucas against a plain Pascal recurrence carried in
        // full integers and reduced at the end.
        for &p in &[2u64, 3, 5, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            let mut full = vec![vec![1u128]];
            for n in 1..=40usize {
                let prev = &full[n - 1];
                let mut row = vec![1u128];
                for k in 1..n {
                    row.push(prev[k - 1] + prev[k]);
                }
                row.push(1);
                full.push(row);
            }
            for n in 0..=40u64 {
                for k in 0..=n {
                    let expect = (full[n as usize][k as usize] % p as u128) as u64;
                    assert_eq!(f.binomial(n, k), expect, "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn characteristic_two_vanishing() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(f.binomial(2, 1), 0);
        assert_eq!(f.binomial(3, 1), 1);
    }

    #[test]
    fn large_prime_fallback() {
        let f = PrimeField::new(104729).unwrap();
        // C(10, 3) = 120 fits below p, so the reduction is the identity.
        assert_eq!(f.binomial(10, 3), 120);
    }
}
