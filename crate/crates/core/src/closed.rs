//! Closed-form upper bounds in exact rationals: the four two-variable
//! cases, condition A with the small-exponent product bound, and the r = 1
//! footprint specialization.

use crate::dbound::trivial_full_grid;
use crate::error::{Error, Result};
use crate::query::{checked_product, BoundQuery, ZeroCount};
use crate::rational::ExactRational;
use std::fmt;

/// Which closed two-variable case produced a value. `k` is the largest
/// value in `1..r` with `i_1 < (r - k) s_1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TwoVarCase {
    C1 { k: u32 },
    C2 { k: u32 },
    C3 { k: u32 },
    C4,
    TrivialFullGrid,
}

impl fmt::Display for TwoVarCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoVarCase::C1 { k } => write!(f, "C1(k={k})"),
            TwoVarCase::C2 { k } => write!(f, "C2(k={k})"),
            TwoVarCase::C3 { k } => write!(f, "C3(k={k})"),
            TwoVarCase::C4 => write!(f, "C4"),
            TwoVarCase::TrivialFullGrid => write!(f, "trivial-full-grid"),
        }
    }
}

/// Closed-form upper bound on `D(i_1, i_2, r, s_1, s_2)`.
///
/// Every valid two-variable query lands in exactly one case:
/// the trivial full-grid region, the exact case C4 (`(r-1) s_1 <= i_1`),
/// or — with `k` as above splitting the remaining strip — C1/C2 when
/// `i_1 >= (r-k) (r/(r+1)) s_1` (split on `i_2` against `k s_2`) and C3
/// below that boundary. Range boundaries are half-open on the right.
pub fn two_var_upper(i1: u32, i2: u32, r: u32, s1: u32, s2: u32) -> Result<(ExactRational, TwoVarCase)> {
    let query = BoundQuery::new(vec![i1, i2], r, vec![s1, s2])?;
    if trivial_full_grid(&query) {
        let grid = ExactRational::integer(s1 as i128 * s2 as i128);
        return Ok((grid, TwoVarCase::TrivialFullGrid));
    }
    let (i1r, i2r) = (ExactRational::from(i1), ExactRational::from(i2));
    let (s1r, s2r) = (ExactRational::from(s1), ExactRational::from(s2));
    let rr = ExactRational::from(r);

    if i1 as u64 >= (r as u64 - 1) * s1 as u64 {
        // C4 is exact: s_2 floor(i_1/r) + i_2 (s_1 - floor(i_1/r)).
        let fl = (i1 / r) as i128;
        let value = s2 as i128 * fl + i2 as i128 * (s1 as i128 - fl);
        return Ok((ExactRational::integer(value), TwoVarCase::C4));
    }

    // Largest k in 1..r with i_1 < (r-k) s_1; the case ranges pin
    // (r-k-1) s_1 <= i_1 < (r-k) s_1, so k = r - 1 - floor(i_1/s_1).
    let k = r - 1 - i1 / s1;
    debug_assert!((1..r).contains(&k));
    let kr = ExactRational::from(k);

    // boundary (r-k) * r/(r+1) * s_1, compared exactly
    let boundary = ExactRational::from(r - k) * rr / ExactRational::from(r + 1) * s1r;
    if i1r >= boundary {
        if (i2 as u64) < k as u64 * s2 as u64 {
            // C1: s_2 i_1/r + (i_2/r)(i_1/(r-k))
            let value = s2r * i1r / rr + (i2r / rr) * (i1r / ExactRational::from(r - k));
            Ok((value, TwoVarCase::C1 { k }))
        } else {
            // C2: s_2 i_1/r + ((k+1)s_2 - i_2)(i_1/(r-k) - i_1/r)
            //       + (i_2 - k s_2)(s_1 - i_1/r)
            let value = s2r * i1r / rr
                + (ExactRational::from(k + 1) * s2r - i2r)
                    * (i1r / ExactRational::from(r - k) - i1r / rr)
                + (i2r - kr * s2r) * (s1r - i1r / rr);
            Ok((value, TwoVarCase::C2 { k }))
        }
    } else {
        // C3: s_2 i_1/r + (i_2/(k+1))(s_1 - i_1/r)
        let value = s2r * i1r / rr + (i2r / ExactRational::from(k + 1)) * (s1r - i1r / rr);
        Ok((value, TwoVarCase::C3 { k }))
    }
}

/// Condition A: the exact-rational inequality system under which the
/// product-form bound below is valid. Requires at least two variables.
///
/// (A.1) `i_j <= s_j` for every `j` (per-variable caps);
/// (A.2) `s * prod_{j<=m-2}(s_j - i_j/l) <= l * prod_{j<=m-2}(s_j - i_j/s)`
///        for `l = 2..=r`, `s = 1..l`;
/// (A.3) the same with products over `j <= m-1`, `l = r`, `s = 1..r`.
pub fn condition_a_holds(query: &BoundQuery) -> Result<bool> {
    let m = query.num_vars();
    if m < 2 {
        return Err(Error::ConditionANeedsTwoVariables(m));
    }
    let r = query.multiplicity_target();
    let exps = query.exponents();
    let sizes = query.set_sizes();

    if exps.iter().zip(sizes).any(|(&i, &s)| i > s) {
        return Ok(false);
    }

    // product over the first `upto` variables of (s_j - i_j / div)
    let shrunk_product = |upto: usize, div: u32| -> ExactRational {
        (0..upto)
            .map(|j| ExactRational::from(sizes[j]) - ExactRational::from(exps[j]) / ExactRational::from(div))
            .product()
    };

    for l in 2..=r {
        for s in 1..l {
            let lhs = ExactRational::from(s) * shrunk_product(m - 2, l);
            let rhs = ExactRational::from(l) * shrunk_product(m - 2, s);
            if lhs > rhs {
                return Ok(false);
            }
        }
    }
    for s in 1..r {
        let lhs = ExactRational::from(s) * shrunk_product(m - 1, r);
        let rhs = ExactRational::from(r) * shrunk_product(m - 1, s);
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product-form bound `s_1...s_m - prod_j (s_j - i_j/r)`, valid under
/// condition A; dominates `D` there.
pub fn small_exponent_bound(query: &BoundQuery) -> Result<ExactRational> {
    if !condition_a_holds(query)? {
        return Err(Error::ConditionAViolated);
    }
    Ok(small_exponent_value(query))
}

pub(crate) fn small_exponent_value(query: &BoundQuery) -> ExactRational {
    let r = ExactRational::from(query.multiplicity_target());
    let grid: ExactRational = query
        .set_sizes()
        .iter()
        .map(|&s| ExactRational::from(s))
        .product();
    let shrunk: ExactRational = query
        .exponents()
        .iter()
        .zip(query.set_sizes())
        .map(|(&i, &s)| ExactRational::from(s) - ExactRational::from(i) / r)
        .product();
    grid - shrunk
}

/// The multiplicity-1 count `s_1...s_m - (s_1 - i_1)...(s_m - i_m)`;
/// equals the product-form bound at r = 1. Needs `i_j <= s_j`.
pub fn footprint_bound(exponents: &[u32], set_sizes: &[u32]) -> Result<ZeroCount> {
    if exponents.is_empty() || exponents.len() != set_sizes.len() {
        return Err(Error::DimensionMismatch {
            exponents: exponents.len(),
            set_sizes: set_sizes.len(),
        });
    }
    for (j, (&i, &s)) in exponents.iter().zip(set_sizes).enumerate() {
        if s == 0 {
            return Err(Error::EmptySet);
        }
        if i > s {
            return Err(Error::ExponentExceedsSetSize {
                variable: j,
                exponent: i,
                set_size: s,
            });
        }
    }
    let grid = checked_product(set_sizes)?;
    let kept: Vec<u32> = exponents
        .iter()
        .zip(set_sizes)
        .map(|(&i, &s)| s - i)
        .collect();
    Ok(ZeroCount::new(grid - checked_product(&kept)?))
}

/// True iff `i_j <= (r/(r+1)) s_j` for `j = 1..m-1` (exact comparison).
/// Condition A implies this whenever `r >= 2`.
pub fn implied_exponent_caps(query: &BoundQuery) -> bool {
    let r = query.multiplicity_target() as u64;
    query.exponents()[..query.num_vars() - 1]
        .iter()
        .zip(query.set_sizes())
        .all(|(&i, &s)| i as u64 * (r + 1) <= r * s as u64)
}
