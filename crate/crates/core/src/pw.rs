//! Comparison of the multiplicity Schwartz-Zippel count with the
//! Pellikaan-Wu dimension-count bound over `F_q^m`.
//!
//! With `w = floor(d/q)` the dimension bound is
//!
//! ```text
//! G1(q,r,m,d) = [ C(m+r-1, m) q^m + (d - q w) C(m+r-w-2, m-1) q^(m-1)
//!                 - C(m+r-w-1, m) q^m ] / C(m+r-1, r-1)
//! ```
//!
//! and the Schwartz-Zippel quantity is `G2(q,r,m,d) = d q^(m-1) / r`.
//! `G1 >= G2` holds on all of `[0, rq-1]`, with equality at `d = 0` and
//! (in relaxed mode) at `d = rq`.

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Parameters of one dimension-count comparison.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PWQuery {
    q: u64,
    r: u64,
    m: u64,
    d: u64,
}

impl PWQuery {
    pub fn new(q: u64, r: u64, m: u64, d: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::FieldTooSmall(q));
        }
        if r == 0 || r > 64 {
            return Err(Error::InvalidMultiplicity {
                got: r.min(u32::MAX as u64) as u32,
                max: 64,
            });
        }
        if m == 0 || m > 16 {
            return Err(Error::ParameterTooLarge {
                name: "m",
                got: m,
                max: 16,
            });
        }
        let qr = q.checked_mul(r).ok_or(Error::Overflow)?;
        if d >= qr {
            return Err(Error::DegreeOutOfRange { d, qr });
        }
        Ok(PWQuery { q, r, m, d })
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn d(&self) -> u64 {
        self.d
    }
}

fn binomial_i128(n: i128, k: i128) -> Result<i128> {
    if k < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for t in 1..=k {
        acc = acc.checked_mul(n - k + t).ok_or(Error::Overflow)?;
        acc /= t; // exact: C(n-k+1..n-k+t, t) is integral
    }
    Ok(acc)
}

fn pow_i128(base: i128, exp: u64) -> Result<i128> {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// `G1` at the query's degree. Use [`gamma1_at`] to probe the relaxed
/// right endpoint `d = rq`.
pub fn gamma1(query: &PWQuery) -> Result<ExactRational> {
    gamma1_at(query.q, query.r, query.m, query.d)
}

/// `G1` without the `d < rq` precondition (the endpoint `d = rq` is needed
/// when testing the equality that anchors the dominance proof).
pub fn gamma1_at(q: u64, r: u64, m: u64, d: u64) -> Result<ExactRational> {
    if q < 2 {
        return Err(Error::FieldTooSmall(q));
    }
    let qr = q.checked_mul(r).ok_or(Error::Overflow)?;
    if d > qr {
        return Err(Error::DegreeOutOfRange { d, qr });
    }
    let w = d / q;
    let (qi, ri, mi, di, wi) = (q as i128, r as i128, m as i128, d as i128, w as i128);
    let qm = pow_i128(qi, m)?;
    let qm1 = pow_i128(qi, m - 1)?;
    let numerator = binomial_i128(mi + ri - 1, mi)?
        .checked_mul(qm)
        .ok_or(Error::Overflow)?
        .checked_add(
            (di - qi * wi)
                .checked_mul(binomial_i128(mi + ri - wi - 2, mi - 1)?)
                .and_then(|x| x.checked_mul(qm1))
                .ok_or(Error::Overflow)?,
        )
        .ok_or(Error::Overflow)?
        .checked_sub(
            binomial_i128(mi + ri - wi - 1, mi)?
                .checked_mul(qm)
                .ok_or(Error::Overflow)?,
        )
        .ok_or(Error::Overflow)?;
    let denominator = binomial_i128(mi + ri - 1, ri - 1)?;
    Ok(ExactRational::new(numerator, denominator))
}

/// `G2(q,r,m,d) = d q^(m-1) / r`, exactly.
pub fn gamma2(query: &PWQuery) -> Result<ExactRational> {
    gamma2_at(query.q, query.r, query.m, query.d)
}

pub fn gamma2_at(q: u64, r: u64, m: u64, d: u64) -> Result<ExactRational> {
    let qm1 = pow_i128(q as i128, m - 1)?;
    let numerator = (d as i128).checked_mul(qm1).ok_or(Error::Overflow)?;
    Ok(ExactRational::new(numerator, r as i128))
}

/// Result of a dominance check over every degree in `[0, rq-1]`, plus the
/// endpoint equalities in relaxed mode.
#[derive(Clone, Debug)]
pub struct DominanceReport {
    pub q: u64,
    pub r: u64,
    pub m: u64,
    pub degrees_checked: u64,
    pub violations: Vec<(u64, ExactRational, ExactRational)>,
    pub max_gap: ExactRational,
    pub endpoints_equal: bool,
}

impl DominanceReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.endpoints_equal
    }
}

/// Verifies `G1 >= G2` for every integer degree in `[0, rq-1]` and the
/// equalities at `d = 0` and `d = rq`.
pub fn dominance_sweep(q: u64, r: u64, m: u64) -> Result<DominanceReport> {
    // validate via the d = 0 query
    PWQuery::new(q, r, m, 0)?;
    let mut violations = Vec::new();
    let mut max_gap = ExactRational::zero();
    for d in 0..q * r {
        let g1 = gamma1_at(q, r, m, d)?;
        let g2 = gamma2_at(q, r, m, d)?;
        if g1 < g2 {
            violations.push((d, g1, g2));
        }
        let gap = g1 - g2;
        if gap > max_gap {
            max_gap = gap;
        }
    }
    let endpoints_equal = gamma1_at(q, r, m, 0)? == gamma2_at(q, r, m, 0)?
        && gamma1_at(q, r, m, q * r)? == gamma2_at(q, r, m, q * r)?;
    Ok(DominanceReport {
        q,
        r,
        m,
        degrees_checked: q * r,
        violations,
        max_gap,
        endpoints_equal,
    })
}
