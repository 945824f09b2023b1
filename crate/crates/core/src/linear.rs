//! The constructive lower bound `H`: the largest number of multiplicity-r
//! zeros attainable by a product of univariate linear terms with the
//! prescribed leading monomial, together with witnesses, expansion into
//! oracle polynomials, and the closed equality predictions.
//!
//! A root assignment gives, per variable `t`, a vector `(v_1..v_r)` where
//! `v_d` counts roots of exponent `d`; it must satisfy
//! `v_1 + ... + v_r <= s_t` and `v_1 + 2 v_2 + ... + r v_r = i_t`.

use crate::closed::{condition_a_holds, small_exponent_value};
use crate::dbound::strip_zero_exponents;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::SparsePolynomial;
use crate::query::{checked_add, checked_mul, BoundQuery, ZeroCount};
use std::fmt;

/// Per-variable root-multiplicity counts `(v_1..v_r)` for each variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RootAssignment {
    per_variable: Vec<Vec<u32>>,
}

impl RootAssignment {
    pub fn new(per_variable: Vec<Vec<u32>>) -> Result<Self> {
        if per_variable.is_empty() {
            return Err(Error::DimensionMismatch {
                exponents: 0,
                set_sizes: 0,
            });
        }
        let r = per_variable[0].len();
        if r == 0 || per_variable.iter().any(|v| v.len() != r) {
            return Err(Error::ArityMismatch {
                expected: r,
                got: per_variable.iter().map(|v| v.len()).find(|&l| l != r).unwrap_or(0),
            });
        }
        Ok(RootAssignment { per_variable })
    }

    pub fn per_variable(&self) -> &[Vec<u32>] {
        &self.per_variable
    }

    pub fn num_vars(&self) -> usize {
        self.per_variable.len()
    }

    /// Length of the vectors, i.e. the multiplicity target `r`.
    pub fn levels(&self) -> u32 {
        self.per_variable[0].len() as u32
    }

    /// Number of roots used in variable `t`.
    pub fn root_count(&self, t: usize) -> u64 {
        self.per_variable[t].iter().map(|&v| v as u64).sum()
    }

    /// Degree contributed by variable `t`: `v_1 + 2 v_2 + ... + r v_r`.
    pub fn degree(&self, t: usize) -> u64 {
        self.per_variable[t]
            .iter()
            .enumerate()
            .map(|(d, &v)| (d as u64 + 1) * v as u64)
            .sum()
    }

    /// Checks the two defining constraints against a query.
    pub fn validate_for(&self, query: &BoundQuery) -> Result<()> {
        if self.num_vars() != query.num_vars() || self.levels() != query.multiplicity_target() {
            return Err(Error::ArityMismatch {
                expected: query.num_vars(),
                got: self.num_vars(),
            });
        }
        for t in 0..self.num_vars() {
            if self.root_count(t) > query.set_sizes()[t] as u64 {
                return Err(Error::TooManyRoots {
                    variable: t,
                    roots: self.root_count(t),
                    set_size: query.set_sizes()[t] as u64,
                });
            }
            if self.degree(t) != query.exponents()[t] as u64 {
                return Err(Error::ExponentExceedsSetSize {
                    variable: t,
                    exponent: query.exponents()[t],
                    set_size: self.degree(t) as u32,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for RootAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.per_variable)
    }
}

/// All vectors `(v_1..v_r)` with `v_1 + 2 v_2 + ... + r v_r = i_t` and
/// `v_1 + ... + v_r <= s_t`, in the order produced by nesting `v_r`
/// outermost (ascending) down to `v_1`. May be empty (exactly when
/// `i_t > r * s_t`).
pub fn enumerate_assignments(i_t: u32, r: u32, s_t: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; r as usize];
    fill_assignments(r as usize, s_t as u64, i_t as u64, &mut current, &mut out);
    out
}

fn fill_assignments(
    j: usize,
    count_budget: u64,
    weight_needed: u64,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if j == 1 {
        // v_1 carries weight 1, so it is forced.
        if weight_needed <= count_budget {
            current[0] = weight_needed as u32;
            out.push(current.clone());
            current[0] = 0;
        }
        return;
    }
    let max = count_budget.min(weight_needed / j as u64);
    for v in 0..=max {
        current[j - 1] = v as u32;
        fill_assignments(
            j - 1,
            count_budget - v,
            weight_needed - v * j as u64,
            current,
            out,
        );
    }
    current[j - 1] = 0;
}

// Counting state while folding variables into the recursion: entry d-1
// holds the number of grid points (over the variables folded so far) whose
// accumulated root multiplicity reaches at least d.
fn fold_variable(
    state: &[u64],
    v: &[u32],
    s_t: u64,
    prefix_grid: u64,
) -> Result<Vec<u64>> {
    let r = state.len();
    let roots: u64 = v.iter().map(|&x| x as u64).sum();
    let free = s_t - roots;
    let mut next = vec![0u64; r];
    for k in 1..=r {
        // coordinate not a root: need k from the earlier variables
        let mut total = checked_mul(free, state[k - 1])?;
        // root of exponent d < k: need k - d from the earlier variables
        for d in 1..k {
            let vd = v[d - 1] as u64;
            if vd > 0 {
                total = checked_add(total, checked_mul(vd, state[k - d - 1])?)?;
            }
        }
        // root of exponent >= k: every earlier point qualifies
        let heavy: u64 = v[k - 1..].iter().map(|&x| x as u64).sum();
        total = checked_add(total, checked_mul(heavy, prefix_grid)?)?;
        next[k - 1] = total;
    }
    Ok(next)
}

fn base_state(v: &[u32], r: u32) -> Vec<u64> {
    (1..=r as usize)
        .map(|k| v[k - 1..].iter().map(|&x| x as u64).sum())
        .collect()
}

/// Number of grid points where the linear product described by the
/// assignment has multiplicity at least `k` (`1 <= k <= r`).
pub fn tilde_h(assignment: &RootAssignment, k: u32, set_sizes: &[u32]) -> Result<ZeroCount> {
    let r = assignment.levels();
    if k == 0 || k > r {
        return Err(Error::InvalidLevel { k, r });
    }
    if set_sizes.len() != assignment.num_vars() {
        return Err(Error::ArityMismatch {
            expected: assignment.num_vars(),
            got: set_sizes.len(),
        });
    }
    for t in 0..assignment.num_vars() {
        if assignment.root_count(t) > set_sizes[t] as u64 {
            return Err(Error::TooManyRoots {
                variable: t,
                roots: assignment.root_count(t),
                set_size: set_sizes[t] as u64,
            });
        }
    }
    let mut state = base_state(&assignment.per_variable()[0], r);
    let mut grid = set_sizes[0] as u64;
    for t in 1..assignment.num_vars() {
        state = fold_variable(&state, &assignment.per_variable()[t], set_sizes[t] as u64, grid)?;
        grid = checked_mul(grid, set_sizes[t] as u64)?;
    }
    Ok(ZeroCount::new(state[k as usize - 1]))
}

/// Outcome of the `H` maximization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HBoundOutcome {
    /// The maximum count and one maximizing assignment (the
    /// lexicographically smallest among maximizers).
    Attained {
        count: ZeroCount,
        witness: RootAssignment,
    },
    /// Some variable admits no root assignment (its exponent exceeds
    /// `r * s_t`): no product of univariate linear terms has exactly this
    /// leading monomial and root structure.
    NoExactProduct { variable: usize },
}

impl HBoundOutcome {
    pub fn count(&self) -> Option<ZeroCount> {
        match self {
            HBoundOutcome::Attained { count, .. } => Some(*count),
            HBoundOutcome::NoExactProduct { .. } => None,
        }
    }
}

/// The lower bound `H`: maximum of [`tilde_h`] at level `r` over all
/// per-variable assignment combinations.
pub fn h_bound(query: &BoundQuery) -> Result<HBoundOutcome> {
    let r = query.multiplicity_target();
    let m = query.num_vars();
    let mut choices = Vec::with_capacity(m);
    for t in 0..m {
        let options = enumerate_assignments(query.exponents()[t], r, query.set_sizes()[t]);
        if options.is_empty() {
            return Ok(HBoundOutcome::NoExactProduct { variable: t });
        }
        choices.push(options);
    }

    fn lex_smaller(choices: &[Vec<Vec<u32>>], a: &[usize], b: &[usize]) -> bool {
        let left = a.iter().enumerate().map(|(t, &i)| &choices[t][i]);
        let right = b.iter().enumerate().map(|(t, &i)| &choices[t][i]);
        left.lt(right)
    }

    fn search(
        choices: &[Vec<Vec<u32>>],
        sizes: &[u32],
        t: usize,
        state: &[u64],
        grid: u64,
        stack: &mut Vec<usize>,
        best: &mut Option<(u64, Vec<usize>)>,
    ) -> Result<()> {
        if t == choices.len() {
            let value = *state.last().unwrap();
            let better = match best {
                None => true,
                // Ties keep the lexicographically smaller witness.
                Some((b, idx)) => value > *b || (value == *b && lex_smaller(choices, stack, idx)),
            };
            if better {
                *best = Some((value, stack.clone()));
            }
            return Ok(());
        }
        for (i, v) in choices[t].iter().enumerate() {
            stack.push(i);
            if t == 0 {
                let st = base_state(v, v.len() as u32);
                search(choices, sizes, 1, &st, sizes[0] as u64, stack, best)?;
            } else {
                let st = fold_variable(state, v, sizes[t] as u64, grid)?;
                let next_grid = checked_mul(grid, sizes[t] as u64)?;
                search(choices, sizes, t + 1, &st, next_grid, stack, best)?;
            }
            stack.pop();
        }
        Ok(())
    }

    let mut best = None;
    search(
        &choices,
        query.set_sizes(),
        0,
        &[],
        1,
        &mut Vec::with_capacity(m),
        &mut best,
    )?;

    let (count, indices) = best.expect("nonempty product space");
    let witness = RootAssignment::new(
        indices
            .iter()
            .enumerate()
            .map(|(t, &i)| choices[t][i].clone())
            .collect(),
    )?;
    Ok(HBoundOutcome::Attained {
        count: ZeroCount::new(count),
        witness,
    })
}

// Value-only variant of the maximization over precomputed per-variable
// choice sets; the table sweeps call this in a hot loop where witness
// bookkeeping is dead weight. Returns None when some choice set is empty.
pub(crate) fn h_value_from_choices(choices: &[&[Vec<u32>]], sizes: &[u32]) -> Result<Option<u64>> {
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }

    fn go(
        choices: &[&[Vec<u32>]],
        sizes: &[u32],
        t: usize,
        state: &[u64],
        grid: u64,
        best: &mut u64,
    ) -> Result<()> {
        if t == choices.len() {
            *best = (*best).max(*state.last().unwrap());
            return Ok(());
        }
        for v in choices[t] {
            if t == 0 {
                let st = base_state(v, v.len() as u32);
                go(choices, sizes, 1, &st, sizes[0] as u64, best)?;
            } else {
                let st = fold_variable(state, v, sizes[t] as u64, grid)?;
                go(choices, sizes, t + 1, &st, grid * sizes[t] as u64, best)?;
            }
        }
        Ok(())
    }

    let mut best = 0u64;
    go(choices, sizes, 0, &[], 1, &mut best)?;
    Ok(Some(best))
}

/// A concrete product of univariate linear terms: per variable, factors
/// `(root, exponent)` with pairwise distinct roots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearProductSpec {
    factors: Vec<Vec<(u64, u32)>>,
}

impl LinearProductSpec {
    pub fn new(factors: Vec<Vec<(u64, u32)>>) -> Result<Self> {
        for (t, var) in factors.iter().enumerate() {
            let mut roots: Vec<u64> = var.iter().map(|&(root, _)| root).collect();
            roots.sort_unstable();
            if roots.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedElement { variable: t });
            }
            if var.iter().any(|&(_, e)| e == 0) {
                return Err(Error::InvalidLevel { k: 0, r: 0 });
            }
        }
        Ok(LinearProductSpec { factors })
    }

    /// Realizes an assignment over concrete sets: for each variable the
    /// elements of `sets[t]` are consumed in listed order, first the
    /// exponent-1 roots, then exponent 2, and so on. Which element carries
    /// which exponent does not change any count.
    pub fn from_assignment(assignment: &RootAssignment, sets: &[Vec<u64>]) -> Result<Self> {
        if sets.len() != assignment.num_vars() {
            return Err(Error::ArityMismatch {
                expected: assignment.num_vars(),
                got: sets.len(),
            });
        }
        let mut factors = Vec::with_capacity(sets.len());
        for t in 0..sets.len() {
            let needed = assignment.root_count(t) as usize;
            if sets[t].len() < needed {
                return Err(Error::NotEnoughElements {
                    variable: t,
                    needed,
                    got: sets[t].len(),
                });
            }
            let mut var = Vec::with_capacity(needed);
            let mut next = sets[t].iter();
            for (d, &count) in assignment.per_variable()[t].iter().enumerate() {
                for _ in 0..count {
                    var.push((*next.next().unwrap(), d as u32 + 1));
                }
            }
            factors.push(var);
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[Vec<(u64, u32)>] {
        &self.factors
    }

    pub fn num_vars(&self) -> usize {
        self.factors.len()
    }

    /// Multiplicity of the product at a grid point: the sum over variables
    /// of the exponent of the factor whose root matches that coordinate
    /// (zero when none does).
    pub fn multiplicity_at(&self, point: &[u64]) -> u64 {
        self.factors
            .iter()
            .zip(point)
            .map(|(var, &x)| {
                var.iter()
                    .find(|&&(root, _)| root == x)
                    .map(|&(_, e)| e as u64)
                    .unwrap_or(0)
            })
            .sum()
    }

    /// Expands the product into a sparse polynomial over the given field.
    pub fn expand(&self, field: &PrimeField) -> SparsePolynomial {
        let mut poly = SparsePolynomial::constant(field.clone(), self.num_vars(), 1);
        for (t, var) in self.factors.iter().enumerate() {
            for &(root, exp) in var {
                for _ in 0..exp {
                    poly = poly.mul_linear(t, root);
                }
            }
        }
        poly
    }
}

/// Expands the linear product described by an assignment over concrete
/// sets and multiplies by the monomial `X^pad`, yielding a polynomial
/// whose leading monomial dominates the assignment degrees and whose
/// multiplicity-r zero count equals `tilde_h(assignment, r)`.
pub fn build_extremal_polynomial(
    assignment: &RootAssignment,
    sets: &[Vec<u64>],
    pad_monomial: &[u32],
    field: &PrimeField,
) -> Result<SparsePolynomial> {
    let spec = LinearProductSpec::from_assignment(assignment, sets)?;
    spec.expand(field).mul_monomial(pad_monomial)
}

/// Which equality rule produced a prediction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EqualityRule {
    /// Two variables, `i_1` in the top band below `s_1` and `i_2` in the
    /// top multiplicity band `[(r-1) s_2, r s_2)`:
    /// `H = D = r s_2 i_1 + i_2 s_1 - i_1 i_2 - (r-1) s_1 s_2`.
    TwoVarTopBand,
    /// Condition A with every exponent divisible by `r`:
    /// `H = D = s_1...s_m - prod (s_j - i_j/r)`.
    DivisibleConditionA,
}

impl fmt::Display for EqualityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityRule::TwoVarTopBand => write!(f, "two-var-top-band"),
            EqualityRule::DivisibleConditionA => write!(f, "divisible-condition-a"),
        }
    }
}

/// Predicts the common value of `H` and `D` when one of the proven
/// equality rules applies. Zero exponents are stripped first (the value
/// scales by the dropped set sizes), which extends the two-variable rule
/// to queries that are two-variable after stripping.
pub fn equality_prediction(query: &BoundQuery) -> Result<Option<(ZeroCount, EqualityRule)>> {
    let r = query.multiplicity_target();

    // Two-variable rule, on the query as given and then on its
    // zero-stripped reduction.
    let top_band = |i1: u32, i2: u32, s1: u32, s2: u32| -> Option<u64> {
        let in_band_1 = (i1 as u64) * (r as u64 + 1) >= (r as u64) * s1 as u64 && i1 < s1;
        let in_band_2 =
            i2 as u64 >= (r as u64 - 1) * s2 as u64 && (i2 as u64) < r as u64 * s2 as u64;
        if !(in_band_1 && in_band_2) {
            return None;
        }
        let (i1, i2, s1, s2, r) = (i1 as i128, i2 as i128, s1 as i128, s2 as i128, r as i128);
        let value = r * s2 * i1 + i2 * s1 - i1 * i2 - (r - 1) * s1 * s2;
        debug_assert!(value >= 0);
        Some(value as u64)
    };
    if query.num_vars() == 2 {
        if let Some(value) = top_band(
            query.exponents()[0],
            query.exponents()[1],
            query.set_sizes()[0],
            query.set_sizes()[1],
        ) {
            return Ok(Some((ZeroCount::new(value), EqualityRule::TwoVarTopBand)));
        }
    } else if query.exponents().iter().any(|&i| i > 0) {
        let (multiplier, reduced) = strip_zero_exponents(query)?;
        if reduced.num_vars() == 2 {
            if let Some(value) = top_band(
                reduced.exponents()[0],
                reduced.exponents()[1],
                reduced.set_sizes()[0],
                reduced.set_sizes()[1],
            ) {
                let scaled = checked_mul(multiplier, value)?;
                return Ok(Some((ZeroCount::new(scaled), EqualityRule::TwoVarTopBand)));
            }
        }
    }

    // Divisible condition-A rule (zero exponents are divisible by anything,
    // and their factors cancel out of the product form by themselves).
    if query.num_vars() >= 2
        && query.exponents().iter().all(|&i| i % r == 0)
        && condition_a_holds(query)?
    {
        let value = small_exponent_value(query);
        debug_assert!(value.is_integer() && !value.is_negative());
        return Ok(Some((
            ZeroCount::new(value.floor() as u64),
            EqualityRule::DivisibleConditionA,
        )));
    }

    Ok(None)
}

/// Reading of the ambiguous factor in the experimental low-lead-exponent
/// equality rule (`i_1 < r`): the printed form multiplies `floor(i_2/r)`
/// by `s_2`, the corrected form by `s_1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LowLeadFactor {
    PrintedS2,
    CorrectedS1,
}

/// Experimental equality prediction for `r <= s_1`, `i_1 < r`,
/// `i_2 < r s_2`, with the band offset interpreted as `w = i_2 mod r`.
/// Not part of the verified suite; kept for exploration only.
pub fn low_lead_equality_experimental(
    i1: u32,
    i2: u32,
    r: u32,
    s1: u32,
    s2: u32,
    factor: LowLeadFactor,
) -> Option<u64> {
    if r == 0 || r > s1 || i1 >= r || i2 as u64 >= r as u64 * s2 as u64 {
        return None;
    }
    let w = i2 % r;
    let delta = if r - w <= i1 { (i1 - (r - w) + 1) as u64 } else { 0 };
    let scale = match factor {
        LowLeadFactor::PrintedS2 => s2 as u64,
        LowLeadFactor::CorrectedS1 => s1 as u64,
    };
    Some((i2 / r) as u64 * scale + delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbound::d_bound;
    use crate::poly::{count_zeros_with_min_mult, GridSpec};

    fn q(i: &[u32], r: u32, s: &[u32]) -> BoundQuery {
        BoundQuery::new(i.to_vec(), r, s.to_vec()).unwrap()
    }

    #[test]
    fn assignment_enumeration_small_cases() {
        assert_eq!(
            enumerate_assignments(3, 3, 5),
            vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(enumerate_assignments(0, 2, 4), vec![vec![0, 0]]);
        // Both candidate vectors violate the root-count cap.
        assert!(enumerate_assignments(6, 2, 2).is_empty());
    }

    #[test]
    fn tilde_h_base_cases() {
        let a = RootAssignment::new(vec![vec![1, 0, 2]]).unwrap();
        assert_eq!(tilde_h(&a, 2, &[5]).unwrap(), 2);
        assert_eq!(tilde_h(&a, 1, &[5]).unwrap(), 3);
        assert!(tilde_h(&a, 4, &[5]).is_err());
        assert!(tilde_h(&a, 0, &[5]).is_err());
    }

    #[test]
    fn tilde_h_two_variable_cross() {
        // A triple root in each variable: 4*1 + 1*5 = 9 points.
        let a = RootAssignment::new(vec![vec![0, 0, 1], vec![0, 0, 1]]).unwrap();
        assert_eq!(tilde_h(&a, 3, &[5, 5]).unwrap(), 9);
    }

    #[test]
    fn h_bound_reference_cells() {
        let out = h_bound(&q(&[4, 1], 3, &[5, 5])).unwrap();
        assert_eq!(out.count().unwrap(), 5);
        assert_eq!(h_bound(&q(&[3, 3], 3, &[5, 5])).unwrap().count().unwrap(), 9);
        assert_eq!(h_bound(&q(&[3, 0], 3, &[5, 5])).unwrap().count().unwrap(), 5);
    }

    #[test]
    fn h_bound_reports_infeasible_shapes() {
        assert_eq!(
            h_bound(&q(&[7, 0], 2, &[3, 3])).unwrap(),
            HBoundOutcome::NoExactProduct { variable: 0 }
        );
    }

    #[test]
    fn witness_achieves_its_count() {
        let query = q(&[3, 3], 3, &[5, 5]);
        let HBoundOutcome::Attained { count, witness } = h_bound(&query).unwrap() else {
            panic!("feasible query");
        };
        witness.validate_for(&query).unwrap();
        let field = PrimeField::new(5).unwrap();
        let sets: Vec<Vec<u64>> = vec![(0..5).collect(), (0..5).collect()];
        let poly = build_extremal_polynomial(&witness, &sets, &[0, 0], &field).unwrap();
        assert_eq!(poly.leading_monomial().unwrap(), &[3, 3]);
        let grid = GridSpec::new(sets).unwrap();
        assert_eq!(count_zeros_with_min_mult(&poly, &grid, 3).unwrap(), count);
    }

    #[test]
    fn product_multiplicity_examples() {
        // (X1-1)^2 (X2-2)
        let spec = LinearProductSpec::new(vec![vec![(1, 2)], vec![(2, 1)]]).unwrap();
        assert_eq!(spec.multiplicity_at(&[1, 2]), 3);
        assert_eq!(spec.multiplicity_at(&[0, 3]), 0);
        assert_eq!(spec.multiplicity_at(&[1, 0]), 2);
    }

    #[test]
    fn trivial_assignment_expands_to_one() {
        let a = RootAssignment::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        let field = PrimeField::new(5).unwrap();
        let sets: Vec<Vec<u64>> = vec![(0..5).collect(), (0..5).collect()];
        let poly = build_extremal_polynomial(&a, &sets, &[0, 0], &field).unwrap();
        assert_eq!(poly, SparsePolynomial::constant(field.clone(), 2, 1));
        let grid = GridSpec::new(sets).unwrap();
        assert_eq!(count_zeros_with_min_mult(&poly, &grid, 1).unwrap(), 0);
    }

    #[test]
    fn full_grid_padded_product() {
        // floor(i_j / s_j) roots of that exponent on every element, padded
        // up to the requested monomial (i=(7,5), r=2, s=(3,5)): every point
        // reaches multiplicity r.
        let field = PrimeField::new(5).unwrap();
        let sets: Vec<Vec<u64>> = vec![(0..3).collect(), (0..5).collect()];
        // per-variable exponents floor(7/3) = 2 and floor(5/5) = 1
        let a = RootAssignment::new(vec![vec![0, 3], vec![5, 0]]).unwrap();
        let pad = [7 - 3 * 2, 0];
        let poly = build_extremal_polynomial(&a, &sets, &pad, &field).unwrap();
        assert_eq!(poly.leading_monomial().unwrap(), &[7, 5]);
        let grid = GridSpec::new(sets).unwrap();
        assert_eq!(count_zeros_with_min_mult(&poly, &grid, 2).unwrap(), 15);
    }

    #[test]
    fn equality_predictions() {
        // top-band rule: r=3, s=(5,5), i=(4,11)
        let (value, rule) = equality_prediction(&q(&[4, 11], 3, &[5, 5]))
            .unwrap()
            .unwrap();
        assert_eq!(rule, EqualityRule::TwoVarTopBand);
        assert_eq!(value, 21);
        assert_eq!(d_bound(&q(&[4, 11], 3, &[5, 5])).unwrap(), 21);

        // divisible condition-A rule: r=3, i=(3,3)
        let (value, rule) = equality_prediction(&q(&[3, 3], 3, &[5, 5]))
            .unwrap()
            .unwrap();
        assert_eq!(rule, EqualityRule::DivisibleConditionA);
        assert_eq!(value, 9);

        // no rule applies
        assert_eq!(equality_prediction(&q(&[2, 2], 3, &[5, 5])).unwrap(), None);
    }

    #[test]
    fn equality_prediction_scales_through_zero_exponents() {
        let base = q(&[4, 11], 3, &[5, 5]);
        let padded = q(&[4, 0, 11], 3, &[5, 7, 5]);
        let (v_base, _) = equality_prediction(&base).unwrap().unwrap();
        let (v_padded, rule) = equality_prediction(&padded).unwrap().unwrap();
        assert_eq!(rule, EqualityRule::TwoVarTopBand);
        assert_eq!(v_padded.value(), 7 * v_base.value());
        assert_eq!(d_bound(&padded).unwrap(), v_padded);
    }

    #[test]
    fn experimental_rule_is_exploratory_only() {
        let printed =
            low_lead_equality_experimental(1, 7, 3, 5, 6, LowLeadFactor::PrintedS2).unwrap();
        let corrected =
            low_lead_equality_experimental(1, 7, 3, 5, 6, LowLeadFactor::CorrectedS1).unwrap();
        assert_eq!(printed, 2 * 6 + 0);
        assert_eq!(corrected, 2 * 5 + 0);
        assert_eq!(
            low_lead_equality_experimental(3, 7, 3, 5, 6, LowLeadFactor::PrintedS2),
            None
        );
    }
}
