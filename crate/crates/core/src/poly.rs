//! Sparse multivariate polynomials over a prime field, Hasse derivatives,
//! multiplicities, and exhaustive grid counting.
//!
//! This is the ground-truth side of the crate: every combinatorial bound is
//! validated against exhaustive counts produced here.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::query::ZeroCount;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Multiplicity of a polynomial at a point: the smallest total weight of a
/// Hasse derivative that does not vanish there; infinite for the zero
/// polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn is_at_least(self, r: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= r,
            Multiplicity::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }
}

impl PartialOrd for Multiplicity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multiplicity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Multiplicity::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// A multivariate polynomial stored as exponent vector -> nonzero
/// coefficient. Exponent vectors all have length `num_vars`; no zero
/// coefficients are kept.
///
/// The `BTreeMap` key order is the lexicographic order with the first
/// variable most significant, so the last key is the leading monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePolynomial {
    field: PrimeField,
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl SparsePolynomial {
    pub fn zero(field: PrimeField, num_vars: usize) -> Self {
        SparsePolynomial {
            field,
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, num_vars: usize, c: u64) -> Self {
        let mut poly = Self::zero(field, num_vars);
        poly.accumulate(vec![0; num_vars], c);
        poly
    }

    pub fn monomial(field: PrimeField, exponents: Vec<u32>, coefficient: u64) -> Self {
        let mut poly = Self::zero(field, exponents.len());
        poly.accumulate(exponents, coefficient);
        poly
    }

    pub fn from_terms<I>(field: PrimeField, num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        let mut poly = Self::zero(field, num_vars);
        for (exps, coeff) in terms {
            if exps.len() != num_vars {
                return Err(Error::ArityMismatch {
                    expected: num_vars,
                    got: exps.len(),
                });
            }
            poly.accumulate(exps, coeff);
        }
        Ok(poly)
    }

    fn accumulate(&mut self, exps: Vec<u32>, coeff: u64) {
        let coeff = self.field.reduce(coeff);
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(*o.get(), coeff);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Exponent vector maximal in the lexicographic order with the first
    /// variable most significant.
    pub fn leading_monomial(&self) -> Result<&[u32]> {
        self.terms
            .last_key_value()
            .map(|(e, _)| e.as_slice())
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    /// Componentwise maximum exponent over the support.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut caps = vec![0u32; self.num_vars];
        for exps in self.terms.keys() {
            for (c, &e) in caps.iter_mut().zip(exps) {
                *c = (*c).max(e);
            }
        }
        caps
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        if self.num_vars != other.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                got: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (exps, &coeff) in &other.terms {
            out.accumulate(exps.clone(), coeff);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = self.field.reduce(c);
        let mut out = Self::zero(self.field.clone(), self.num_vars);
        if c == 0 {
            return out;
        }
        for (exps, &coeff) in &self.terms {
            out.accumulate(exps.clone(), self.field.mul(coeff, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field.clone(), self.num_vars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.accumulate(exps, self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `X^pad`.
    pub fn mul_monomial(&self, pad: &[u32]) -> Result<Self> {
        if pad.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                got: pad.len(),
            });
        }
        let mut out = Self::zero(self.field.clone(), self.num_vars);
        for (exps, &coeff) in &self.terms {
            let shifted: Vec<u32> = exps.iter().zip(pad).map(|(a, b)| a + b).collect();
            out.accumulate(shifted, coeff);
        }
        Ok(out)
    }

    /// Multiplies by the univariate linear factor `X_var - root`.
    pub fn mul_linear(&self, var: usize, root: u64) -> Self {
        let mut out = Self::zero(self.field.clone(), self.num_vars);
        let neg_root = self.field.neg(root);
        for (exps, &coeff) in &self.terms {
            let mut up = exps.clone();
            up[var] += 1;
            out.accumulate(up, coeff);
            if neg_root != 0 {
                out.accumulate(exps.clone(), self.field.mul(coeff, neg_root));
            }
        }
        out
    }

    pub fn eval(&self, point: &[u64]) -> Result<u64> {
        let pows = self.power_tables(point)?;
        Ok(self.eval_with_tables(&vec![0; self.num_vars], &pows))
    }

    /// The `k`-th Hasse derivative: the coefficient of `Z^k` in `F(X+Z)`,
    /// i.e. `sum_a c_a * prod_j C(a_j, k_j) * X^(a-k)`.
    pub fn hasse_derivative(&self, k: &[u32]) -> Result<Self> {
        if k.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                got: k.len(),
            });
        }
        let mut out = Self::zero(self.field.clone(), self.num_vars);
        'terms: for (exps, &coeff) in &self.terms {
            let mut c = coeff;
            let mut shifted = Vec::with_capacity(self.num_vars);
            for (&a, &kj) in exps.iter().zip(k) {
                if kj > a {
                    continue 'terms;
                }
                c = self.field.mul(c, self.field.binomial(a as u64, kj as u64));
                if c == 0 {
                    continue 'terms;
                }
                shifted.push(a - kj);
            }
            out.accumulate(shifted, c);
        }
        Ok(out)
    }

    /// Evaluates the `k`-th Hasse derivative at `point` without
    /// materializing the derivative polynomial.
    pub fn eval_hasse_at(&self, k: &[u32], point: &[u64]) -> Result<u64> {
        if k.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                got: k.len(),
            });
        }
        let pows = self.power_tables(point)?;
        Ok(self.eval_hasse_with_tables(k, &pows))
    }

    fn power_tables(&self, point: &[u64]) -> Result<Vec<Vec<u64>>> {
        if point.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let caps = self.max_exponents();
        let mut tables = Vec::with_capacity(self.num_vars);
        for (j, &cap) in caps.iter().enumerate() {
            let x = self.field.reduce(point[j]);
            let mut row = Vec::with_capacity(cap as usize + 1);
            let mut acc = 1u64;
            row.push(acc);
            for _ in 0..cap {
                acc = self.field.mul(acc, x);
                row.push(acc);
            }
            tables.push(row);
        }
        Ok(tables)
    }

    fn eval_with_tables(&self, k: &[u32], pows: &[Vec<u64>]) -> u64 {
        self.eval_hasse_with_tables(k, pows)
    }

    fn eval_hasse_with_tables(&self, k: &[u32], pows: &[Vec<u64>]) -> u64 {
        let mut acc = 0u64;
        'terms: for (exps, &coeff) in &self.terms {
            let mut term = coeff;
            for j in 0..self.num_vars {
                let (a, kj) = (exps[j], k[j]);
                if kj > a {
                    continue 'terms;
                }
                if kj > 0 {
                    term = self
                        .field
                        .mul(term, self.field.binomial(a as u64, kj as u64));
                    if term == 0 {
                        continue 'terms;
                    }
                }
                term = self.field.mul(term, pows[j][(a - kj) as usize]);
                if term == 0 {
                    continue 'terms;
                }
            }
            acc = self.field.add(acc, term);
        }
        acc
    }

    /// Multiplicity at a point: derivatives are evaluated weight by weight
    /// until one is nonzero. A nonzero polynomial always terminates by
    /// total degree (the derivative indexed by a maximal-degree exponent
    /// vector is a nonzero constant).
    pub fn multiplicity_at(&self, point: &[u64]) -> Result<Multiplicity> {
        if self.is_zero() {
            return Ok(Multiplicity::Infinite);
        }
        let deg = self.total_degree().unwrap();
        Ok(self.multiplicity_search(point, deg + 1)?.unwrap_or_else(|| {
            unreachable!("nonzero polynomial has multiplicity at most its total degree")
        }))
    }

    /// True iff the multiplicity at `point` is at least `r`; stops probing
    /// derivatives at weight `r`, so it is cheaper than full multiplicity.
    pub fn multiplicity_at_least(&self, point: &[u64], r: u32) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        Ok(self.multiplicity_search(point, r)?.is_none())
    }

    // Smallest weight < limit with a nonvanishing derivative at the point.
    fn multiplicity_search(&self, point: &[u64], limit: u32) -> Result<Option<Multiplicity>> {
        let pows = self.power_tables(point)?;
        let caps = self.max_exponents();
        let mut k = vec![0u32; self.num_vars];
        for weight in 0..limit {
            if weight > caps.iter().map(|&c| c as u64).sum::<u64>() as u32 {
                break;
            }
            let mut found = false;
            weight_vectors(&caps, weight, &mut k, 0, &mut |k| {
                if !found && self.eval_hasse_with_tables(k, &pows) != 0 {
                    found = true;
                }
            });
            if found {
                return Ok(Some(Multiplicity::Finite(weight)));
            }
        }
        Ok(None)
    }
}

// Enumerates k with k_j <= caps_j and sum = weight, invoking the visitor.
fn weight_vectors<F: FnMut(&[u32])>(
    caps: &[u32],
    weight: u32,
    k: &mut Vec<u32>,
    idx: usize,
    visit: &mut F,
) {
    if idx == caps.len() {
        if weight == 0 {
            visit(k);
        }
        return;
    }
    let remaining_cap: u32 = caps[idx + 1..].iter().sum();
    let lo = weight.saturating_sub(remaining_cap);
    let hi = weight.min(caps[idx]);
    for v in lo..=hi {
        k[idx] = v;
        weight_vectors(caps, weight - v, k, idx + 1, visit);
    }
    if hi < lo {
        // range was empty; nothing to restore
    }
    k[idx] = 0;
}

/// The point ensemble `S_1 x ... x S_m`: finite subsets of the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    sets: Vec<Vec<u64>>,
}

impl GridSpec {
    pub fn new(sets: Vec<Vec<u64>>) -> Result<Self> {
        for (j, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptySet);
            }
            let mut sorted = set.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedElement { variable: j });
            }
        }
        Ok(GridSpec { sets })
    }

    /// The default verification grid: `S_j = {0, 1, ..., s_j - 1}` inside
    /// the given field.
    pub fn prefix(field: &PrimeField, sizes: &[u32]) -> Result<Self> {
        let p = field.characteristic();
        for (j, &s) in sizes.iter().enumerate() {
            if s as u64 > p {
                return Err(Error::NotEnoughElements {
                    variable: j,
                    needed: s as usize,
                    got: p as usize,
                });
            }
        }
        Ok(GridSpec {
            sets: sizes.iter().map(|&s| (0..s as u64).collect()).collect(),
        })
    }

    /// The full grid `F_p^m`.
    pub fn full(field: &PrimeField, num_vars: usize) -> Self {
        GridSpec {
            sets: (0..num_vars).map(|_| field.elements().collect()).collect(),
        }
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }

    pub fn num_vars(&self) -> usize {
        self.sets.len()
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.sets.iter().map(|s| s.len() as u32).collect()
    }

    pub fn num_points(&self) -> u64 {
        self.sets.iter().map(|s| s.len() as u64).product()
    }

    /// Iterates all grid points in row-major order.
    pub fn for_each_point<F: FnMut(&[u64])>(&self, mut visit: F) {
        let mut point: Vec<u64> = self.sets.iter().map(|s| s[0]).collect();
        let mut idx = vec![0usize; self.sets.len()];
        loop {
            visit(&point);
            let mut j = self.sets.len();
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < self.sets[j].len() {
                    point[j] = self.sets[j][idx[j]];
                    break;
                }
                idx[j] = 0;
                point[j] = self.sets[j][0];
            }
        }
    }
}

/// Exact number of grid points where the multiplicity of `f` is at least
/// `r`. The polynomial must be nonzero.
pub fn count_zeros_with_min_mult(f: &SparsePolynomial, grid: &GridSpec, r: u32) -> Result<ZeroCount> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if grid.num_vars() != f.num_vars() {
        return Err(Error::ArityMismatch {
            expected: f.num_vars(),
            got: grid.num_vars(),
        });
    }
    let mut count = 0u64;
    let mut err = None;
    grid.for_each_point(|p| {
        if err.is_some() {
            return;
        }
        match f.multiplicity_at_least(p, r) {
            Ok(true) => count += 1,
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ZeroCount::new(count)),
    }
}

/// Sum over all grid points of the multiplicity of `f`. The polynomial
/// must be nonzero.
pub fn total_multiplicity_sum(f: &SparsePolynomial, grid: &GridSpec) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if grid.num_vars() != f.num_vars() {
        return Err(Error::ArityMismatch {
            expected: f.num_vars(),
            got: grid.num_vars(),
        });
    }
    let mut sum = 0u64;
    let mut err = None;
    grid.for_each_point(|p| {
        if err.is_some() {
            return;
        }
        match f.multiplicity_at(p) {
            Ok(Multiplicity::Finite(m)) => sum += m as u64,
            Ok(Multiplicity::Infinite) => unreachable!("nonzero polynomial"),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(sum),
    }
}

/// Draws a polynomial with the prescribed leading monomial: coefficient 1
/// on `lm`, and an independent uniformly random coefficient (possibly
/// zero) on every monomial of the box `[0, cap]` strictly below `lm` in
/// the lexicographic order. Deterministic for a fixed seed.
pub fn random_poly_with_lm(
    lm: &[u32],
    field: &PrimeField,
    support_cap: &[u32],
    seed: u64,
) -> Result<SparsePolynomial> {
    if lm.len() != support_cap.len() {
        return Err(Error::ArityMismatch {
            expected: lm.len(),
            got: support_cap.len(),
        });
    }
    if lm.iter().zip(support_cap).any(|(&l, &c)| l > c) {
        return Err(Error::LeadingMonomialOutsideCap);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.characteristic();
    let mut poly = SparsePolynomial::zero(field.clone(), lm.len());
    let mut exps = vec![0u32; lm.len()];
    loop {
        if exps.as_slice() < lm {
            let coeff = rng.gen_range(0..p);
            if coeff != 0 {
                poly.accumulate(exps.clone(), coeff);
            }
        }
        // advance through the box in row-major order
        let mut j = exps.len();
        loop {
            if j == 0 {
                poly.accumulate(lm.to_vec(), 1);
                return Ok(poly);
            }
            j -= 1;
            exps[j] += 1;
            if exps[j] <= support_cap[j] {
                break;
            }
            exps[j] = 0;
        }
    }
}
