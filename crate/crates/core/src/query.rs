//! The query tuple shared by every bound function.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Largest accepted multiplicity target. The experiments use r <= 5; this
/// cap keeps the admissible-vector enumeration within sane bounds.
pub const MAX_MULTIPLICITY: u32 = 64;

/// The tuple `(i_1..i_m; r; s_1..s_m)`: leading-monomial exponents, target
/// multiplicity, and grid set sizes.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BoundQuery {
    exponents: Vec<u32>,
    multiplicity_target: u32,
    set_sizes: Vec<u32>,
}

impl BoundQuery {
    pub fn new(exponents: Vec<u32>, multiplicity_target: u32, set_sizes: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() || exponents.len() != set_sizes.len() {
            return Err(Error::DimensionMismatch {
                exponents: exponents.len(),
                set_sizes: set_sizes.len(),
            });
        }
        if multiplicity_target == 0 || multiplicity_target > MAX_MULTIPLICITY {
            return Err(Error::InvalidMultiplicity {
                got: multiplicity_target,
                max: MAX_MULTIPLICITY,
            });
        }
        if set_sizes.iter().any(|&s| s == 0) {
            return Err(Error::EmptySet);
        }
        Ok(BoundQuery {
            exponents,
            multiplicity_target,
            set_sizes,
        })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn multiplicity_target(&self) -> u32 {
        self.multiplicity_target
    }

    pub fn set_sizes(&self) -> &[u32] {
        &self.set_sizes
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// `s_1 * ... * s_m`, checked.
    pub fn grid_size(&self) -> Result<u64> {
        checked_product(&self.set_sizes)
    }
}

impl fmt::Display for BoundQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(i={:?}, r={}, s={:?})",
            self.exponents, self.multiplicity_target, self.set_sizes
        )
    }
}

/// Number of grid points; the result type of every counting bound.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize)]
pub struct ZeroCount(u64);

impl ZeroCount {
    pub const fn new(value: u64) -> Self {
        ZeroCount(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for ZeroCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<ZeroCount> for u64 {
    fn from(c: ZeroCount) -> u64 {
        c.0
    }
}

impl PartialEq<u64> for ZeroCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == *other
    }
}

pub(crate) fn checked_product(values: &[u32]) -> Result<u64> {
    values
        .iter()
        .try_fold(1u64, |acc, &v| acc.checked_mul(v as u64))
        .ok_or(Error::Overflow)
}

pub(crate) fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_queries() {
        assert!(BoundQuery::new(vec![], 1, vec![]).is_err());
        assert!(BoundQuery::new(vec![1, 2], 1, vec![5]).is_err());
        assert!(BoundQuery::new(vec![1], 0, vec![5]).is_err());
        assert!(BoundQuery::new(vec![1], 65, vec![5]).is_err());
        assert!(BoundQuery::new(vec![1], 1, vec![0]).is_err());
        assert!(BoundQuery::new(vec![0, 0], 3, vec![5, 5]).is_ok());
    }

    #[test]
    fn grid_size_is_checked() {
        let q = BoundQuery::new(vec![1, 1], 1, vec![6, 7]).unwrap();
        assert_eq!(q.grid_size().unwrap(), 42);
    }
}
