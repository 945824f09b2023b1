//! Exact fractions for the closed-form bounds.
//!
//! No floating point appears in any bound computation: every fractional
//! value is carried as a reduced ratio of 128-bit integers and compared
//! exactly. Conversion to decimals happens only at output time.

use num::rational::Ratio;
use num::{BigInt, BigRational, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A fraction in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExactRational(Ratio<i128>);

impl ExactRational {
    /// Builds `numerator / denominator`, reducing to lowest terms.
    ///
    /// Panics if `denominator` is zero; callers in this crate only divide
    /// by structurally positive quantities (set sizes, multiplicities).
    pub fn new(numerator: i128, denominator: i128) -> Self {
        assert!(denominator != 0, "zero denominator");
        ExactRational(Ratio::new(numerator, denominator))
    }

    pub fn integer(n: i128) -> Self {
        ExactRational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn numerator(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> i128 {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    /// Promotes to an arbitrary-precision rational (used by the table
    /// statistics, whose running sums outgrow fixed-width denominators).
    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numerator()), BigInt::from(self.denominator()))
    }

    /// Output-only conversion; never used in comparisons.
    pub fn to_f64(&self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }
}

impl From<i128> for ExactRational {
    fn from(n: i128) -> Self {
        Self::integer(n)
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        Self::integer(n as i128)
    }
}

impl From<u32> for ExactRational {
    fn from(n: u32) -> Self {
        Self::integer(n as i128)
    }
}

impl Add for ExactRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ExactRational(self.0 * rhs.0)
    }
}

impl Div for ExactRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.0.is_zero(), "division by zero");
        ExactRational(self.0 / rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = Self;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for ExactRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let x = ExactRational::new(20, 12);
        assert_eq!(x.numerator(), 5);
        assert_eq!(x.denominator(), 3);
        assert_eq!(x.to_string(), "5/3");
    }

    #[test]
    fn negative_denominator_is_normalized() {
        let x = ExactRational::new(1, -2);
        assert_eq!(x.numerator(), -1);
        assert_eq!(x.denominator(), 2);
        assert!(x.is_negative());
    }

    #[test]
    fn floor_and_ceil() {
        let x = ExactRational::new(20, 3);
        assert_eq!(x.floor(), 6);
        assert_eq!(x.ceil(), 7);
        assert_eq!(ExactRational::new(-7, 2).floor(), -4);
    }

    #[test]
    fn exact_comparisons() {
        // 15/4 boundary used by the two-variable case dispatch.
        let cap = ExactRational::new(15, 4);
        assert!(ExactRational::integer(3) < cap);
        assert!(ExactRational::integer(4) > cap);
    }
}
