//! Randomized and exhaustive verification sweeps: every bound in the crate
//! is checked against the field oracle or against an independent route,
//! and failures are reported in replayable form.

use crate::closed::{
    condition_a_holds, footprint_bound, implied_exponent_caps, small_exponent_bound, two_var_upper,
    TwoVarCase,
};
use crate::dbound::{d_bound_cached, sz_gen_numerator, trivial_full_grid, BoundCache};
use crate::error::Result;
use crate::field::{next_prime_at_least, PrimeField};
use crate::linear::{
    equality_prediction, h_bound, EqualityRule, HBoundOutcome,
    LinearProductSpec,
};
use crate::poly::{
    count_zeros_with_min_mult, random_poly_with_lm, total_multiplicity_sum, GridSpec, Multiplicity,
};
use crate::query::BoundQuery;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

const MAX_RECORDED_FAILURES: usize = 32;

/// Outcome of one verification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub label: String,
    pub parameters: Vec<(String, String)>,
    pub checks_passed: u64,
    pub checks_failed: u64,
    /// Replayable descriptions of the first failures.
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.checks_failed == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.label));
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("  seed: {seed}\n"));
        }
        out.push_str(&format!(
            "  checks: {} passed, {} failed ({} ms)\n",
            self.checks_passed, self.checks_failed, self.elapsed_ms
        ));
        for f in &self.failures {
            out.push_str(&format!("  FAIL {f}\n"));
        }
        if self.checks_failed as usize > self.failures.len() {
            out.push_str(&format!(
                "  ... {} further failures not shown\n",
                self.checks_failed as usize - self.failures.len()
            ));
        }
        out
    }
}

#[derive(Default, Clone)]
struct Tally {
    passed: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.passed += other.passed;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        self
    }

    fn into_report(
        self,
        label: &str,
        parameters: Vec<(String, String)>,
        seed: Option<u64>,
        started: Instant,
    ) -> RunReport {
        RunReport {
            label: label.to_string(),
            parameters,
            checks_passed: self.passed,
            checks_failed: self.failed,
            failures: self.failures,
            elapsed_ms: started.elapsed().as_millis(),
            seed,
        }
    }
}

// splitmix64: derives independent per-task seeds from the base seed so
// parallel schedules replay identically.
fn mix_seed(base: u64, parts: &[u64]) -> u64 {
    let mut z = base;
    for &p in parts {
        z = z.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(p);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
    }
    z
}

/// Random polynomials versus the recursive bound and the degree-sum cap.
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Field characteristic; the grid is the full `F_p^m`.
    pub field: u64,
    pub num_vars: u32,
    pub multiplicity: u32,
    /// Leading monomials sweep `[0, max_exponent]^m`, skipping the
    /// trivial region.
    pub max_exponent: u32,
    /// Random polynomials per leading monomial.
    pub trials: u64,
    pub seed: u64,
    /// Sampled supports live in the box `[0, max(lm_j, floor)]`; `None`
    /// floors at the largest grid exponent `p - 1`, so trailing monomials
    /// beyond the leading one are exercised.
    pub support_floor: Option<u32>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            field: 5,
            num_vars: 2,
            multiplicity: 3,
            max_exponent: 14,
            trials: 100,
            seed: 7,
            support_floor: None,
        }
    }
}

pub fn verify_oracle_soundness(cfg: &OracleConfig) -> Result<RunReport> {
    let started = Instant::now();
    let field = PrimeField::new(cfg.field)?;
    let m = cfg.num_vars as usize;
    let sizes = vec![cfg.field as u32; m];
    let grid = GridSpec::full(&field, m);
    let cache = BoundCache::new();

    // all leading monomials in the box, trivial region skipped
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    let mut lm = vec![0u32; m];
    loop {
        monomials.push(lm.clone());
        let mut j = m;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            lm[j] += 1;
            if lm[j] <= cfg.max_exponent {
                break;
            }
            lm[j] = 0;
        }
        if lm.iter().all(|&e| e == 0) {
            break;
        }
    }

    let tally = monomials
        .par_iter()
        .map(|lm| -> Result<Tally> {
            let mut t = Tally::default();
            let query = BoundQuery::new(lm.clone(), cfg.multiplicity, sizes.clone())?;
            if trivial_full_grid(&query) {
                return Ok(t);
            }
            let d = d_bound_cached(&query, &cache)?.value();
            let mult_cap = sz_gen_numerator(lm, &sizes)?;
            let floor = cfg.support_floor.unwrap_or(cfg.field as u32 - 1);
            let cap: Vec<u32> = lm.iter().map(|&e| e.max(floor)).collect();
            for trial in 0..cfg.trials {
                let seed = mix_seed(cfg.seed, &[lm.iter().map(|&e| e as u64).sum(), fold(lm), trial]);
                let poly = random_poly_with_lm(lm, &field, &cap, seed)?;
                let count = count_zeros_with_min_mult(&poly, &grid, cfg.multiplicity)?.value();
                t.check(count <= d, || {
                    format!("lm={lm:?} seed={seed}: count {count} exceeds bound {d}")
                });
                let total = total_multiplicity_sum(&poly, &grid)?;
                t.check(total <= mult_cap, || {
                    format!("lm={lm:?} seed={seed}: multiplicity sum {total} exceeds cap {mult_cap}")
                });
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    Ok(tally.into_report(
        "oracle-soundness",
        vec![
            ("field".into(), cfg.field.to_string()),
            ("num_vars".into(), cfg.num_vars.to_string()),
            ("multiplicity".into(), cfg.multiplicity.to_string()),
            ("max_exponent".into(), cfg.max_exponent.to_string()),
            ("trials_per_monomial".into(), cfg.trials.to_string()),
            (
                "support_floor".into(),
                cfg.support_floor
                    .unwrap_or(cfg.field as u32 - 1)
                    .to_string(),
            ),
        ],
        Some(cfg.seed),
        started,
    ))
}

fn fold(values: &[u32]) -> u64 {
    values.iter().fold(0u64, |acc, &v| acc * 131 + v as u64)
}

/// Every maximizing root assignment, expanded into an actual polynomial
/// and counted exhaustively, must reach exactly its promised count.
#[derive(Clone, Copy, Debug)]
pub struct WitnessConfig {
    pub max_m: u32,
    pub max_s: u32,
    pub max_r: u32,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            max_m: 2,
            max_s: 5,
            max_r: 3,
        }
    }
}

pub fn verify_witness_achievability(cfg: &WitnessConfig) -> Result<RunReport> {
    let started = Instant::now();
    let mut jobs: Vec<(Vec<u32>, u32)> = Vec::new(); // (sizes, r)
    for m in 1..=cfg.max_m {
        let mut sizes = vec![1u32; m as usize];
        loop {
            for r in 1..=cfg.max_r {
                jobs.push((sizes.clone(), r));
            }
            let mut j = m as usize;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                sizes[j] += 1;
                if sizes[j] <= cfg.max_s {
                    break;
                }
                sizes[j] = 1;
            }
            if sizes.iter().all(|&s| s == 1) {
                break;
            }
        }
    }

    let tally = jobs
        .par_iter()
        .map(|(sizes, r)| -> Result<Tally> {
            let mut t = Tally::default();
            let p = next_prime_at_least(*sizes.iter().max().unwrap() as u64);
            let field = PrimeField::new(p)?;
            let sets: Vec<Vec<u64>> = sizes.iter().map(|&s| (0..s as u64).collect()).collect();
            let grid = GridSpec::new(sets.clone())?;
            let mut exps = vec![0u32; sizes.len()];
            loop {
                check_witness(&mut t, &exps, *r, sizes, &field, &sets, &grid)?;
                let mut j = sizes.len();
                loop {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    exps[j] += 1;
                    if exps[j] as u64 <= *r as u64 * sizes[j] as u64 {
                        break;
                    }
                    exps[j] = 0;
                }
                if exps.iter().all(|&e| e == 0) {
                    break;
                }
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    Ok(tally.into_report(
        "witness-achievability",
        vec![
            ("max_m".into(), cfg.max_m.to_string()),
            ("max_s".into(), cfg.max_s.to_string()),
            ("max_r".into(), cfg.max_r.to_string()),
        ],
        None,
        started,
    ))
}

fn check_witness(
    t: &mut Tally,
    exps: &[u32],
    r: u32,
    sizes: &[u32],
    field: &PrimeField,
    sets: &[Vec<u64>],
    grid: &GridSpec,
) -> Result<()> {
    let query = BoundQuery::new(exps.to_vec(), r, sizes.to_vec())?;
    let outcome = h_bound(&query)?;
    let HBoundOutcome::Attained { count, witness } = outcome else {
        // no assignment exists exactly when some exponent exceeds r * s
        let consistent = exps
            .iter()
            .zip(sizes)
            .any(|(&i, &s)| i as u64 > r as u64 * s as u64);
        t.check(consistent, || {
            format!("query {query}: reported infeasible but every exponent fits")
        });
        return Ok(());
    };
    witness.validate_for(&query)?;

    let spec = LinearProductSpec::from_assignment(&witness, sets)?;
    let poly = spec.expand(field);
    t.check(poly.leading_monomial()? == exps, || {
        format!("query {query}: expanded witness has wrong leading monomial")
    });

    // the oracle count of the expanded witness equals the reported H
    let counted = count_zeros_with_min_mult(&poly, grid, r)?;
    t.check(counted == count, || {
        format!(
            "query {query}: witness {witness} counts {counted} but H = {count}",
            counted = counted.value(),
            count = count.value()
        )
    });

    // the closed multiplicity of the product agrees with the oracle at
    // every grid point
    let mut agree = true;
    let mut err = None;
    grid.for_each_point(|point| {
        if err.is_some() {
            return;
        }
        match poly.multiplicity_at(point) {
            Ok(Multiplicity::Finite(oracle)) => {
                if spec.multiplicity_at(point) != oracle as u64 {
                    agree = false;
                }
            }
            Ok(Multiplicity::Infinite) => agree = false,
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    t.check(agree, || {
        format!("query {query}: product multiplicity disagrees with the oracle")
    });

    // products of univariate linear terms meet the degree-sum cap exactly
    let degree_cap = sz_gen_numerator(exps, sizes)?;
    let total = total_multiplicity_sum(&poly, grid)?;
    t.check(total == degree_cap, || {
        format!("query {query}: multiplicity sum {total} != degree-sum cap {degree_cap}")
    });
    Ok(())
}

/// Exhaustive dominance of the dimension-count bound over the
/// multiplicity count, including the endpoint equalities.
#[derive(Clone, Copy, Debug)]
pub struct DominanceConfig {
    pub max_q: u64,
    pub max_r: u64,
    pub max_m: u64,
}

impl Default for DominanceConfig {
    fn default() -> Self {
        DominanceConfig {
            max_q: 16,
            max_r: 5,
            max_m: 4,
        }
    }
}

pub fn verify_dominance(cfg: &DominanceConfig) -> Result<RunReport> {
    let started = Instant::now();
    let mut t = Tally::default();
    for q in 2..=cfg.max_q {
        for r in 1..=cfg.max_r {
            for m in 1..=cfg.max_m {
                let report = crate::pw::dominance_sweep(q, r, m)?;
                t.check(report.violations.is_empty(), || {
                    format!(
                        "q={q} r={r} m={m}: {} dominance violations, first at d={}",
                        report.violations.len(),
                        report.violations[0].0
                    )
                });
                t.check(report.endpoints_equal, || {
                    format!("q={q} r={r} m={m}: endpoint equalities fail")
                });
            }
        }
    }
    Ok(t.into_report(
        "dimension-bound-dominance",
        vec![
            ("max_q".into(), cfg.max_q.to_string()),
            ("max_r".into(), cfg.max_r.to_string()),
            ("max_m".into(), cfg.max_m.to_string()),
        ],
        None,
        started,
    ))
}

/// Closed forms versus the recursive bound.
#[derive(Clone, Copy, Debug)]
pub struct ClosedConfig {
    pub two_var_max_r: u32,
    pub two_var_max_s: u32,
    pub cond_max_m: u32,
    pub cond_max_s: u32,
    pub cond_max_r: u32,
}

impl Default for ClosedConfig {
    fn default() -> Self {
        ClosedConfig {
            two_var_max_r: 5,
            two_var_max_s: 8,
            cond_max_m: 4,
            cond_max_s: 6,
            cond_max_r: 4,
        }
    }
}

pub fn verify_closed_forms(cfg: &ClosedConfig) -> Result<RunReport> {
    let started = Instant::now();
    let cache = BoundCache::new();

    // two-variable cases: dominance everywhere, equality on C4
    let mut two_var_jobs = Vec::new();
    for r in 2..=cfg.two_var_max_r {
        for s1 in 2..=cfg.two_var_max_s {
            for s2 in 2..=cfg.two_var_max_s {
                two_var_jobs.push((r, s1, s2));
            }
        }
    }
    let two_var = two_var_jobs
        .par_iter()
        .map(|&(r, s1, s2)| -> Result<Tally> {
            let mut t = Tally::default();
            for i1 in 0..r * s1 {
                for i2 in 0..r * s2 {
                    let query = BoundQuery::new(vec![i1, i2], r, vec![s1, s2])?;
                    let d = d_bound_cached(&query, &cache)?.value();
                    let (value, case) = two_var_upper(i1, i2, r, s1, s2)?;
                    match case {
                        TwoVarCase::TrivialFullGrid => {
                            t.check(d == (s1 as u64) * (s2 as u64), || {
                                format!("{query}: trivial region but D = {d}")
                            });
                        }
                        TwoVarCase::C4 => {
                            t.check(value.floor() == d as i128, || {
                                format!("{query}: C4 value {value} != D = {d}")
                            });
                        }
                        _ => {
                            t.check(value.floor() >= d as i128, || {
                                format!("{query}: case {case} value {value} below D = {d}")
                            });
                        }
                    }
                }
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    // condition-A sweep: product bound dominates D; footprint agreement
    // at r = 1; the exponent caps follow when r >= 2
    let cond = condition_a_jobs(cfg.cond_max_m, cfg.cond_max_s, cfg.cond_max_r)
        .par_iter()
        .map(|&(m, r, ref sizes)| -> Result<Tally> {
            let mut t = Tally::default();
            let mut exps = vec![0u32; m as usize];
            sweep_exponent_box(&mut exps, 0, sizes, &mut |exps| {
                let query = BoundQuery::new(exps.to_vec(), r, sizes.clone())?;
                if !condition_a_holds(&query)? {
                    return Ok(());
                }
                let bound = small_exponent_bound(&query)?;
                let d = d_bound_cached(&query, &cache)?.value();
                t.check(bound.floor() >= d as i128, || {
                    format!("{query}: product bound {bound} below D = {d}")
                });
                if r == 1 {
                    let fp = footprint_bound(exps, sizes)?;
                    t.check(bound == crate::rational::ExactRational::from(fp.value()), || {
                        format!("{query}: footprint {fp} != product bound {bound}")
                    });
                }
                if r >= 2 {
                    t.check(implied_exponent_caps(&query), || {
                        format!("{query}: condition A holds but exponent caps fail")
                    });
                }
                Ok(())
            })?;
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    Ok(two_var.merge(cond).into_report(
        "closed-form-consistency",
        vec![
            ("two_var_max_r".into(), cfg.two_var_max_r.to_string()),
            ("two_var_max_s".into(), cfg.two_var_max_s.to_string()),
            ("cond_max_m".into(), cfg.cond_max_m.to_string()),
            ("cond_max_s".into(), cfg.cond_max_s.to_string()),
            ("cond_max_r".into(), cfg.cond_max_r.to_string()),
        ],
        None,
        started,
    ))
}

fn condition_a_jobs(max_m: u32, max_s: u32, max_r: u32) -> Vec<(u32, u32, Vec<u32>)> {
    let mut jobs = Vec::new();
    for m in 2..=max_m {
        let mut sizes = vec![1u32; m as usize];
        loop {
            for r in 1..=max_r {
                jobs.push((m, r, sizes.clone()));
            }
            let mut j = m as usize;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                sizes[j] += 1;
                if sizes[j] <= max_s {
                    break;
                }
                sizes[j] = 1;
            }
            if sizes.iter().all(|&s| s == 1) {
                break;
            }
        }
    }
    jobs
}

fn sweep_exponent_box(
    exps: &mut Vec<u32>,
    idx: usize,
    sizes: &[u32],
    visit: &mut impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if idx == sizes.len() {
        return visit(exps);
    }
    for i in 0..=sizes[idx] {
        exps[idx] = i;
        sweep_exponent_box(exps, idx + 1, sizes, visit)?;
    }
    Ok(())
}

/// The proven equality rules: predictions must equal both bounds on their
/// whole ranges, including through inserted zero exponents.
#[derive(Clone, Copy, Debug)]
pub struct EqualitiesConfig {
    pub max_r: u32,
    pub max_s: u32,
    pub cond_max_m: u32,
    pub cond_max_s: u32,
    pub cond_max_r: u32,
}

impl Default for EqualitiesConfig {
    fn default() -> Self {
        EqualitiesConfig {
            max_r: 5,
            max_s: 8,
            cond_max_m: 4,
            cond_max_s: 6,
            cond_max_r: 4,
        }
    }
}

pub fn verify_equalities(cfg: &EqualitiesConfig) -> Result<RunReport> {
    let started = Instant::now();
    let cache = BoundCache::new();
    let mut t = Tally::default();

    // one variable: the lower bound always meets the upper bound
    for r in 1..=cfg.max_r {
        for s in 1..=cfg.max_s {
            for i in 0..=r * s {
                let query = BoundQuery::new(vec![i], r, vec![s])?;
                let d = d_bound_cached(&query, &cache)?.value();
                let h = h_bound(&query)?.count();
                t.check(h.map(|c| c.value()) == Some(d), || {
                    format!("{query}: one-variable H != D")
                });
            }
        }
    }

    // two-variable top-band rule, plus the same cells with a zero
    // exponent inserted (the rescaling rule)
    for r in 1..=cfg.max_r {
        for s1 in 1..=cfg.max_s {
            for s2 in 1..=cfg.max_s {
                for i1 in 0..s1 {
                    if (i1 as u64) * (r as u64 + 1) < (r as u64) * (s1 as u64) {
                        continue;
                    }
                    for i2 in (r - 1) * s2..r * s2 {
                        let query = BoundQuery::new(vec![i1, i2], r, vec![s1, s2])?;
                        check_prediction(&mut t, &query, &cache, Some(EqualityRule::TwoVarTopBand))?;
                        // rescaling rule: a zero exponent multiplies the
                        // value by its set size (when i2 = 0 the stripped
                        // query is univariate and another rule may claim it)
                        let padded = BoundQuery::new(vec![i1, 0, i2], r, vec![s1, 3, s2])?;
                        let expect = (i2 > 0).then_some(EqualityRule::TwoVarTopBand);
                        check_prediction(&mut t, &padded, &cache, expect)?;
                    }
                }
            }
        }
    }

    // divisible condition-A rule
    for (m, r, sizes) in condition_a_jobs(cfg.cond_max_m, cfg.cond_max_s, cfg.cond_max_r) {
        let _ = m;
        let mut exps = vec![0u32; sizes.len()];
        sweep_exponent_box(&mut exps, 0, &sizes, &mut |exps| {
            if exps.iter().any(|&i| i % r != 0) {
                return Ok(());
            }
            let query = BoundQuery::new(exps.to_vec(), r, sizes.clone())?;
            if !condition_a_holds(&query)? {
                return Ok(());
            }
            check_prediction(&mut t, &query, &cache, None)
        })?;
    }

    Ok(t.into_report(
        "equality-predictions",
        vec![
            ("max_r".into(), cfg.max_r.to_string()),
            ("max_s".into(), cfg.max_s.to_string()),
            ("cond_max_m".into(), cfg.cond_max_m.to_string()),
            ("cond_max_s".into(), cfg.cond_max_s.to_string()),
            ("cond_max_r".into(), cfg.cond_max_r.to_string()),
        ],
        None,
        started,
    ))
}

fn check_prediction(
    t: &mut Tally,
    query: &BoundQuery,
    cache: &BoundCache,
    expect_rule: Option<EqualityRule>,
) -> Result<()> {
    let prediction = equality_prediction(query)?;
    let Some((value, rule)) = prediction else {
        t.check(false, || format!("{query}: no prediction on a covered range"));
        return Ok(());
    };
    if let Some(expected) = expect_rule {
        t.check(rule == expected, || {
            format!("{query}: matched rule {rule} instead of {expected}")
        });
    }
    let d = d_bound_cached(query, cache)?.value();
    t.check(value.value() == d, || {
        format!("{query}: prediction {value} != D = {d}")
    });
    let h = h_bound(query)?.count();
    t.check(h.map(|c| c.value()) == Some(value.value()), || {
        format!("{query}: prediction {value} != H = {h:?}")
    });
    Ok(())
}

/// Derivatives can lower multiplicity by at most their weight:
/// `mult(F^(k), a) >= mult(F, a) - (k_1 + ... + k_m)` on random triples.
#[derive(Clone, Debug)]
pub struct HasseConfig {
    pub trials: u64,
    pub seed: u64,
    pub fields: Vec<u64>,
    pub max_vars: u32,
    pub max_exponent: u32,
    pub max_weight: u32,
}

impl Default for HasseConfig {
    fn default() -> Self {
        HasseConfig {
            trials: 10_000,
            seed: 11,
            fields: vec![5, 7],
            max_vars: 3,
            max_exponent: 5,
            max_weight: 4,
        }
    }
}

pub fn verify_hasse_multiplicity_inequality(cfg: &HasseConfig) -> Result<RunReport> {
    let started = Instant::now();
    let fields = cfg
        .fields
        .iter()
        .map(|&p| PrimeField::new(p))
        .collect::<Result<Vec<_>>>()?;

    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<Tally> {
            let mut t = Tally::default();
            let seed = mix_seed(cfg.seed, &[trial]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = &fields[rng.gen_range(0..fields.len())];
            let p = field.characteristic();
            let m = rng.gen_range(1..=cfg.max_vars) as usize;
            let lm: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=cfg.max_exponent)).collect();
            let poly_seed = mix_seed(seed, &[1]);
            let poly = random_poly_with_lm(&lm, field, &lm, poly_seed)?;
            let point: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
            let mut k = vec![0u32; m];
            let weight = rng.gen_range(0..=cfg.max_weight);
            for _ in 0..weight {
                let j = rng.gen_range(0..m);
                k[j] += 1;
            }
            let weight: u32 = k.iter().sum();

            let base = poly
                .multiplicity_at(&point)?
                .finite()
                .expect("nonzero polynomial");
            let derivative = poly.hasse_derivative(&k)?;
            let lowered = match derivative.multiplicity_at(&point)? {
                Multiplicity::Finite(v) => v as i64,
                Multiplicity::Infinite => i64::MAX,
            };
            t.check(lowered >= base as i64 - weight as i64, || {
                format!(
                    "p={p} lm={lm:?} k={k:?} a={point:?} seed={poly_seed}: \
                     mult dropped from {base} to {lowered}"
                )
            });
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    Ok(tally.into_report(
        "hasse-multiplicity-inequality",
        vec![
            ("trials".into(), cfg.trials.to_string()),
            ("fields".into(), format!("{:?}", cfg.fields)),
            ("max_vars".into(), cfg.max_vars.to_string()),
            ("max_exponent".into(), cfg.max_exponent.to_string()),
            ("max_weight".into(), cfg.max_weight.to_string()),
        ],
        Some(cfg.seed),
        started,
    ))
}
