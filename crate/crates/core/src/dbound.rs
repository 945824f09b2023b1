//! The recursive upper bound `D` on the number of grid points where a
//! polynomial with a given lexicographic leading monomial can have
//! multiplicity at least `r`.
//!
//! For one variable `D(i_1, r, s_1) = min(floor(i_1 / r), s_1)`. For more
//! variables the recursion maximizes, over admissible root-count vectors
//! `(u_1..u_r)` for the last variable, the combination
//!
//! ```text
//! (s_m - u_1 - ... - u_r) D(.., r)  +  u_1 D(.., r-1)  +  ...
//!     +  u_{r-1} D(.., 1)  +  u_r * s_1 ... s_{m-1}
//! ```
//!
//! where `u_d` counts the last-coordinate values that absorb multiplicity
//! `d` and the trailing term accounts for values absorbing `r` or more.

use crate::error::{Error, Result};
use crate::query::{checked_add, checked_mul, checked_product, BoundQuery, ZeroCount};
use dashmap::DashMap;

/// A vector `(u_1..u_r)` in the admissible set `A(i, r, s)`:
/// `u_1 + ... + u_r <= s` and `u_1 + 2 u_2 + ... + r u_r <= i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleU {
    counts: Vec<u32>,
}

impl AdmissibleU {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `u_1 + ... + u_r`.
    pub fn root_total(&self) -> u64 {
        self.counts.iter().map(|&u| u as u64).sum()
    }

    /// `u_1 + 2 u_2 + ... + r u_r`.
    pub fn weighted_total(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(j, &u)| (j as u64 + 1) * u as u64)
            .sum()
    }
}

/// Enumerates `A(i_last, r, s_last)` exactly once each, in the order
/// produced by nesting `u_r` outermost (ascending) down to `u_1` innermost.
pub fn enumerate_admissible_u(i_last: u32, r: u32, s_last: u32) -> Vec<AdmissibleU> {
    let mut out = Vec::new();
    let mut current = vec![0u32; r as usize];
    fill_admissible(
        r as usize,
        s_last as u64,
        i_last as u64,
        &mut current,
        &mut out,
    );
    out
}

fn fill_admissible(
    j: usize,
    count_budget: u64,
    weight_budget: u64,
    current: &mut Vec<u32>,
    out: &mut Vec<AdmissibleU>,
) {
    if j == 0 {
        out.push(AdmissibleU {
            counts: current.clone(),
        });
        return;
    }
    let max = count_budget.min(weight_budget / j as u64);
    for u in 0..=max {
        current[j - 1] = u as u32;
        fill_admissible(
            j - 1,
            count_budget - u,
            weight_budget - u * j as u64,
            current,
            out,
        );
    }
    current[j - 1] = 0;
}

/// True iff `floor(i_1/s_1) + ... + floor(i_m/s_m) >= r`, in which case a
/// polynomial exists whose every grid point has multiplicity at least `r`
/// and the bound degenerates to the full grid size.
pub fn trivial_full_grid(query: &BoundQuery) -> bool {
    trivial_on(query.exponents(), query.multiplicity_target(), query.set_sizes())
}

fn trivial_on(exponents: &[u32], r: u32, sizes: &[u32]) -> bool {
    let total: u64 = exponents
        .iter()
        .zip(sizes)
        .map(|(&i, &s)| (i / s) as u64)
        .sum();
    total >= r as u64
}

/// Factors out variables with zero exponent: `D` over the full query is
/// the product of the dropped set sizes times `D` over the reduced query.
/// At least one exponent must be nonzero.
pub fn strip_zero_exponents(query: &BoundQuery) -> Result<(u64, BoundQuery)> {
    if query.exponents().iter().all(|&i| i == 0) {
        return Err(Error::AllExponentsZero);
    }
    let mut multiplier = 1u64;
    let mut exps = Vec::new();
    let mut sizes = Vec::new();
    for (&i, &s) in query.exponents().iter().zip(query.set_sizes()) {
        if i == 0 {
            multiplier = checked_mul(multiplier, s as u64)?;
        } else {
            exps.push(i);
            sizes.push(s);
        }
    }
    let reduced = BoundQuery::new(exps, query.multiplicity_target(), sizes)?;
    Ok((multiplier, reduced))
}

/// The baseline count `floor((i_1 s_2...s_m + ... + s_1...s_{m-1} i_m) / r)`
/// that `D` never exceeds. Not clamped to the grid size; callers take the
/// minimum when they need a count of points.
pub fn sz_gen_bound(query: &BoundQuery) -> Result<ZeroCount> {
    let numerator = sz_gen_numerator(query.exponents(), query.set_sizes())?;
    Ok(ZeroCount::new(numerator / query.multiplicity_target() as u64))
}

/// `i_1 s_2...s_m + s_1 i_2 s_3...s_m + ... + s_1...s_{m-1} i_m`: the exact
/// cap on the sum of multiplicities over the grid.
pub fn sz_gen_numerator(exponents: &[u32], sizes: &[u32]) -> Result<u64> {
    let mut total = 0u64;
    for j in 0..exponents.len() {
        let mut term = exponents[j] as u64;
        for (l, &s) in sizes.iter().enumerate() {
            if l != j {
                term = checked_mul(term, s as u64)?;
            }
        }
        total = checked_add(total, term)?;
    }
    Ok(total)
}

/// Shared memo table for `D`. Lookups and inserts are safe from parallel
/// workers; the recursion is deterministic so racing writers agree.
#[derive(Default)]
pub struct BoundCache {
    map: DashMap<Vec<u32>, u64>,
}

impl BoundCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    // Key layout: [r, exponents.., sizes..]; keys are built after
    // zero-exponent stripping, and variable order is preserved because D
    // is not symmetric in it.
    fn key(exponents: &[u32], r: u32, sizes: &[u32]) -> Vec<u32> {
        let mut key = Vec::with_capacity(1 + 2 * exponents.len());
        key.push(r);
        key.extend_from_slice(exponents);
        key.extend_from_slice(sizes);
        key
    }
}

/// `D` with a fresh memo table.
pub fn d_bound(query: &BoundQuery) -> Result<ZeroCount> {
    d_bound_cached(query, &BoundCache::new())
}

/// `D` reusing a caller-provided memo table across queries.
pub fn d_bound_cached(query: &BoundQuery, cache: &BoundCache) -> Result<ZeroCount> {
    d_eval(
        query.exponents(),
        query.multiplicity_target(),
        query.set_sizes(),
        cache,
    )
    .map(ZeroCount::new)
}

fn d_eval(exponents: &[u32], r: u32, sizes: &[u32], cache: &BoundCache) -> Result<u64> {
    debug_assert_eq!(exponents.len(), sizes.len());
    debug_assert!(r >= 1);

    // Zero exponents factor out; an all-zero exponent vector admits no
    // point of multiplicity >= 1.
    if exponents.iter().any(|&i| i == 0) {
        let mut multiplier = 1u64;
        let mut exps = Vec::new();
        let mut szs = Vec::new();
        for (&i, &s) in exponents.iter().zip(sizes) {
            if i == 0 {
                multiplier = checked_mul(multiplier, s as u64)?;
            } else {
                exps.push(i);
                szs.push(s);
            }
        }
        if exps.is_empty() {
            return Ok(0);
        }
        return checked_mul(multiplier, d_eval(&exps, r, &szs, cache)?);
    }

    let m = exponents.len();
    if m == 1 {
        return Ok(((exponents[0] / r) as u64).min(sizes[0] as u64));
    }
    // Full-grid short-circuit: the bound is squeezed to s_1...s_m here, and
    // skipping the recursion avoids the largest admissible sets.
    if trivial_on(exponents, r, sizes) {
        return checked_product(sizes);
    }

    let key = BoundCache::key(exponents, r, sizes);
    if let Some(hit) = cache.map.get(&key) {
        return Ok(*hit);
    }

    let prefix_exps = &exponents[..m - 1];
    let prefix_sizes = &sizes[..m - 1];
    let prefix_grid = checked_product(prefix_sizes)?;
    let s_last = sizes[m - 1] as u64;

    let mut best = 0u64;
    for u in enumerate_admissible_u(exponents[m - 1], r, sizes[m - 1]) {
        let mut value = checked_mul(
            s_last - u.root_total(),
            d_eval(prefix_exps, r, prefix_sizes, cache)?,
        )?;
        for (j, &uj) in u.counts().iter().enumerate() {
            if uj == 0 {
                continue;
            }
            let d = j as u32 + 1; // multiplicity absorbed by the last coordinate
            let tail = if d == r {
                prefix_grid
            } else {
                d_eval(prefix_exps, r - d, prefix_sizes, cache)?
            };
            value = checked_add(value, checked_mul(uj as u64, tail)?)?;
        }
        best = best.max(value);
    }

    cache.map.insert(key, best);
    Ok(best)
}
