//! Cross-route property tests: every optimized computation is checked
//! against an independent, directly-transcribed route on randomized and
//! exhaustively swept inputs.

use multizero_core::closed::{condition_a_holds, implied_exponent_caps, two_var_upper, TwoVarCase};
use multizero_core::dbound::{
    d_bound, d_bound_cached, enumerate_admissible_u, strip_zero_exponents, sz_gen_bound,
    trivial_full_grid, BoundCache,
};
use multizero_core::field::PrimeField;
use multizero_core::linear::{
    enumerate_assignments, h_bound, tilde_h, HBoundOutcome, LinearProductSpec, RootAssignment,
};
use multizero_core::poly::{random_poly_with_lm, GridSpec};
use multizero_core::query::BoundQuery;
use proptest::prelude::*;

// Plain transcription of the recursive bound: no memo, no zero-exponent
// stripping, no full-grid shortcut. The production path must agree with
// this on every query.
fn d_plain(exps: &[u32], r: u32, sizes: &[u32]) -> u64 {
    if r == 0 {
        return sizes.iter().map(|&s| s as u64).product();
    }
    let m = exps.len();
    if m == 1 {
        return ((exps[0] / r) as u64).min(sizes[0] as u64);
    }
    let prefix_grid: u64 = sizes[..m - 1].iter().map(|&s| s as u64).product();
    let mut best = 0u64;
    for u in enumerate_admissible_u(exps[m - 1], r, sizes[m - 1]) {
        let mut value = (sizes[m - 1] as u64 - u.root_total())
            * d_plain(&exps[..m - 1], r, &sizes[..m - 1]);
        for (j, &uj) in u.counts().iter().enumerate() {
            let d = j as u32 + 1;
            let tail = if d == r {
                prefix_grid
            } else {
                d_plain(&exps[..m - 1], r - d, &sizes[..m - 1])
            };
            value += uj as u64 * tail;
        }
        best = best.max(value);
    }
    best
}

fn query_strategy(
    max_m: usize,
    max_i: u32,
    max_r: u32,
    max_s: u32,
) -> impl Strategy<Value = BoundQuery> {
    (1..=max_m).prop_flat_map(move |m| {
        (
            proptest::collection::vec(0..=max_i, m),
            1..=max_r,
            proptest::collection::vec(1..=max_s, m),
        )
            .prop_map(|(exps, r, sizes)| BoundQuery::new(exps, r, sizes).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn memoized_recursion_matches_plain_transcription(
        query in query_strategy(3, 8, 3, 5)
    ) {
        let expected = d_plain(query.exponents(), query.multiplicity_target(), query.set_sizes());
        prop_assert_eq!(d_bound(&query).unwrap().value(), expected);
    }

    #[test]
    fn bound_is_sandwiched(query in query_strategy(4, 20, 5, 8)) {
        let d = d_bound(&query).unwrap().value();
        let baseline = sz_gen_bound(&query).unwrap().value();
        let grid = query.grid_size().unwrap();
        prop_assert!(d <= baseline.min(grid));
        if trivial_full_grid(&query) {
            prop_assert_eq!(d, grid);
        }
    }

    #[test]
    fn bound_monotone_in_exponents(
        query in query_strategy(3, 12, 4, 6),
        bumps in proptest::collection::vec(0u32..3, 4),
    ) {
        let d = d_bound(&query).unwrap().value();
        let raised: Vec<u32> = query
            .exponents()
            .iter()
            .zip(bumps.iter().chain(std::iter::repeat(&0)))
            .map(|(&i, &b)| i + b)
            .collect();
        let raised_query = BoundQuery::new(
            raised,
            query.multiplicity_target(),
            query.set_sizes().to_vec(),
        ).unwrap();
        prop_assert!(d_bound(&raised_query).unwrap().value() >= d);
    }

    #[test]
    fn bound_antitone_in_multiplicity(query in query_strategy(3, 12, 4, 6)) {
        let r = query.multiplicity_target();
        let d = d_bound(&query).unwrap().value();
        let stricter = BoundQuery::new(
            query.exponents().to_vec(),
            r + 1,
            query.set_sizes().to_vec(),
        ).unwrap();
        prop_assert!(d_bound(&stricter).unwrap().value() <= d);
    }

    #[test]
    fn stripping_factorizes_the_bound(query in query_strategy(4, 10, 4, 6)) {
        prop_assume!(query.exponents().iter().any(|&i| i > 0));
        let (multiplier, reduced) = strip_zero_exponents(&query).unwrap();
        let whole = d_bound(&query).unwrap().value();
        let parts = multiplier * d_bound(&reduced).unwrap().value();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn lower_bound_never_exceeds_upper(query in query_strategy(3, 15, 4, 6)) {
        if let HBoundOutcome::Attained { count, witness } = h_bound(&query).unwrap() {
            witness.validate_for(&query).unwrap();
            prop_assert!(count.value() <= d_bound(&query).unwrap().value());
        }
    }

    #[test]
    fn closed_two_var_dominates(
        (r, s1, s2) in (2u32..=5, 2u32..=8, 2u32..=8),
        (f1, f2) in (0.0f64..1.0, 0.0f64..1.0),
    ) {
        let i1 = (f1 * (r * s1) as f64) as u32;
        let i2 = (f2 * (r * s2) as f64) as u32;
        let query = BoundQuery::new(vec![i1, i2], r, vec![s1, s2]).unwrap();
        let d = d_bound(&query).unwrap().value();
        let (value, case) = two_var_upper(i1, i2, r, s1, s2).unwrap();
        match case {
            TwoVarCase::C4 => prop_assert_eq!(value.floor(), d as i128),
            _ => prop_assert!(value.floor() >= d as i128),
        }
    }

    #[test]
    fn condition_a_implies_caps(query in query_strategy(4, 6, 4, 6)) {
        prop_assume!(query.num_vars() >= 2 && query.multiplicity_target() >= 2);
        if condition_a_holds(&query).unwrap() {
            prop_assert!(implied_exponent_caps(&query));
        }
    }

    #[test]
    fn assignment_count_oracle(
        per_var in proptest::collection::vec(
            proptest::collection::vec(0u32..3, 3),
            1..=3,
        ),
        k in 1u32..=3,
    ) {
        // tilde_h must agree with brute-force counting over the grid of
        // the closed product-multiplicity formula
        let sizes: Vec<u32> = per_var
            .iter()
            .map(|v| v.iter().sum::<u32>().max(1) + 1)
            .collect();
        let assignment = RootAssignment::new(per_var).unwrap();
        let sets: Vec<Vec<u64>> = sizes.iter().map(|&s| (0..s as u64).collect()).collect();
        let spec = LinearProductSpec::from_assignment(&assignment, &sets).unwrap();
        let predicted = tilde_h(&assignment, k, &sizes).unwrap().value();
        let mut counted = 0u64;
        GridSpec::new(sets).unwrap().for_each_point(|p| {
            if spec.multiplicity_at(p) >= k as u64 {
                counted += 1;
            }
        });
        prop_assert_eq!(predicted, counted);
    }

    #[test]
    fn hasse_derivative_is_additive(
        seed_a in 0u64..1_000_000,
        seed_b in 0u64..1_000_000,
        k in proptest::collection::vec(0u32..3, 2),
    ) {
        let field = PrimeField::new(5).unwrap();
        let a = random_poly_with_lm(&[3, 3], &field, &[3, 3], seed_a).unwrap();
        let b = random_poly_with_lm(&[2, 3], &field, &[3, 3], seed_b).unwrap();
        let sum_then_derive = a.add(&b).unwrap().hasse_derivative(&k).unwrap();
        let derive_then_sum = a
            .hasse_derivative(&k)
            .unwrap()
            .add(&b.hasse_derivative(&k).unwrap())
            .unwrap();
        prop_assert_eq!(sum_then_derive, derive_then_sum);
    }

    #[test]
    fn random_polynomials_honor_their_leading_monomial(
        lm in proptest::collection::vec(0u32..5, 1..=3),
        seed in 0u64..1_000_000,
    ) {
        let field = PrimeField::new(7).unwrap();
        let cap: Vec<u32> = lm.iter().map(|&e| e.max(3)).collect();
        let poly = random_poly_with_lm(&lm, &field, &cap, seed).unwrap();
        prop_assert_eq!(poly.leading_monomial().unwrap(), lm.as_slice());
    }
}

#[test]
fn lower_bound_matches_upper_on_exhaustive_small_sweep() {
    // h <= d everywhere, swept exhaustively on a small box.
    let cache = BoundCache::new();
    for m in 1..=3usize {
        for s in 1..=4u32 {
            for r in 1..=4u32 {
                let sizes = vec![s; m];
                let mut exps = vec![0u32; m];
                loop {
                    let query = BoundQuery::new(exps.clone(), r, sizes.clone()).unwrap();
                    let d = d_bound_cached(&query, &cache).unwrap().value();
                    if let HBoundOutcome::Attained { count, .. } = h_bound(&query).unwrap() {
                        assert!(count.value() <= d, "H > D at {query}");
                    }
                    let mut j = m;
                    loop {
                        if j == 0 {
                            break;
                        }
                        j -= 1;
                        exps[j] += 1;
                        if exps[j] <= r * s {
                            break;
                        }
                        exps[j] = 0;
                    }
                    if exps.iter().all(|&e| e == 0) {
                        break;
                    }
                }
            }
        }
    }
}

#[test]
fn assignment_enumeration_matches_brute_force() {
    for i in 0..=12u32 {
        for r in 1..=4u32 {
            for s in 1..=6u32 {
                let fast = enumerate_assignments(i, r, s);
                let mut slow = Vec::new();
                let mut v = vec![0u32; r as usize];
                brute(&mut v, 0, s, &mut |v| {
                    let weight: u64 = v
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| (j as u64 + 1) * x as u64)
                        .sum();
                    let count: u64 = v.iter().map(|&x| x as u64).sum();
                    if weight == i as u64 && count <= s as u64 {
                        slow.push(v.to_vec());
                    }
                });
                let mut fast_sorted = fast.clone();
                fast_sorted.sort();
                slow.sort();
                assert_eq!(fast_sorted, slow, "set mismatch at ({i},{r},{s})");
            }
        }
    }

    fn brute(v: &mut Vec<u32>, idx: usize, s: u32, visit: &mut impl FnMut(&[u32])) {
        if idx == v.len() {
            visit(v);
            return;
        }
        for x in 0..=s {
            v[idx] = x;
            brute(v, idx + 1, s, visit);
        }
        v[idx] = 0;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // Random products of univariate linear terms over F_5 and F_7: the
    // closed multiplicity formula must agree with the derivative-based
    // oracle at every grid point, and the summed multiplicities must meet
    // the degree-sum cap exactly.
    #[test]
    fn random_linear_products_agree_with_the_oracle(
        p_idx in 0usize..2,
        raw in proptest::collection::vec(
            proptest::collection::vec(0u32..=3, 3),
            1..=2,
        ),
    ) {
        let p = [5u64, 7][p_idx];
        let field = PrimeField::new(p).unwrap();
        let m = raw.len();
        // exponent e > 0 at index j means "element j is a root with
        // exponent e"
        let factors: Vec<Vec<(u64, u32)>> = raw
            .iter()
            .map(|var| {
                var.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(root, &e)| (root as u64, e))
                    .collect()
            })
            .collect();
        let spec = LinearProductSpec::new(factors).unwrap();
        let poly = spec.expand(&field);
        let grid = GridSpec::full(&field, m);

        let mut total_closed = 0u64;
        let mut agreement = true;
        grid.for_each_point(|point| {
            let closed = spec.multiplicity_at(point);
            total_closed += closed;
            let oracle = poly
                .multiplicity_at(point)
                .unwrap()
                .finite()
                .expect("products of linear terms are nonzero") as u64;
            if closed != oracle {
                agreement = false;
            }
        });
        prop_assert!(agreement);

        // degree-sum cap, met with equality by linear products
        let degrees: Vec<u32> = (0..m)
            .map(|t| spec.factors()[t].iter().map(|&(_, e)| e).sum())
            .collect();
        let mut expected = 0u64;
        for t in 0..m {
            expected += degrees[t] as u64 * (p as u64).pow(m as u32 - 1);
        }
        prop_assert_eq!(total_closed, expected);
        prop_assert_eq!(
            multizero_core::poly::total_multiplicity_sum(&poly, &grid).unwrap(),
            expected
        );
    }
}

// Table generation must not depend on the worker count.
#[test]
fn table_generation_is_independent_of_worker_count() {
    use multizero_core::tables::{builtin_spec, generate_table, GenerateOptions, TableId};
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| generate_table(&builtin_spec(TableId::T1), &GenerateOptions::default()))
        .unwrap();
    let parallel =
        generate_table(&builtin_spec(TableId::T1), &GenerateOptions::default()).unwrap();
    assert_eq!(serial.to_csv(), parallel.to_csv());

    let gap_serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| multizero_core::tables::mean_gap_stat(2, 4, 3))
        .unwrap();
    assert_eq!(gap_serial, multizero_core::tables::mean_gap_stat(2, 4, 3).unwrap());
}

// The reference material never states whether the bound is monotone in the
// set sizes; probe it empirically and report, but do not gate on it.
#[test]
fn set_size_monotonicity_probe() {
    let cache = BoundCache::new();
    let mut violations = 0u64;
    let mut checked = 0u64;
    for r in 1..=3u32 {
        for s1 in 1..=5u32 {
            for s2 in 1..=5u32 {
                for i1 in 0..=10u32 {
                    for i2 in 0..=10u32 {
                        let small = BoundQuery::new(vec![i1, i2], r, vec![s1, s2]).unwrap();
                        let grown = BoundQuery::new(vec![i1, i2], r, vec![s1 + 1, s2]).unwrap();
                        let a = d_bound_cached(&small, &cache).unwrap().value();
                        let b = d_bound_cached(&grown, &cache).unwrap().value();
                        checked += 1;
                        if b < a {
                            violations += 1;
                        }
                    }
                }
            }
        }
    }
    eprintln!("set-size monotonicity probe: {violations} violations in {checked} pairs");
}
