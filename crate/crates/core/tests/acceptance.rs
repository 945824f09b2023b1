//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line with its timing. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use multizero_core::linear::{h_bound, HBoundOutcome, LinearProductSpec};
use multizero_core::poly::{count_zeros_with_min_mult, GridSpec};
use multizero_core::query::BoundQuery;
use multizero_core::tables::{
    builtin_spec, compare_tables, generate_table, max_improvement_stat, mean_gap_stat,
    mean_improvement_stat, milli_of_ratio, reference_table, Cell, DecimalMode, GenerateOptions,
    MeanImprovementReading, TableId,
};
use multizero_core::verify::{
    verify_closed_forms, verify_dominance, verify_equalities,
    verify_hasse_multiplicity_inequality, verify_oracle_soundness, ClosedConfig, DominanceConfig,
    EqualitiesConfig, HasseConfig, OracleConfig,
};
use multizero_core::field::PrimeField;
use std::time::Instant;

fn report(criterion: &str, started: Instant, pass: bool, detail: &str) {
    println!(
        "[{}] {} ({} ms): {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        started.elapsed().as_millis(),
        detail
    );
    assert!(pass, "{criterion}: {detail}");
}

fn check_grid_table(criterion: &str, id: TableId) {
    let started = Instant::now();
    let generated = generate_table(&builtin_spec(id), &GenerateOptions::default()).unwrap();
    let mismatches = compare_tables(&generated, &reference_table(id), 0);
    let detail = if mismatches.is_empty() {
        format!("{id}: every printed cell matches exactly")
    } else {
        format!(
            "{id}: {} mismatches, first: {}",
            mismatches.len(),
            mismatches[0]
        )
    };
    report(criterion, started, mismatches.is_empty(), &detail);
}

#[test]
fn criterion_01_table1_upper_bound_cells() {
    check_grid_table("criterion 01", TableId::T1);
}

#[test]
fn criterion_02_table3_four_variable_cells() {
    check_grid_table("criterion 02", TableId::T3);
}

#[test]
fn criterion_03_improvement_tables() {
    let started = Instant::now();
    let mut bad = Vec::new();
    for id in [TableId::T2, TableId::T4] {
        let generated = generate_table(&builtin_spec(id), &GenerateOptions::default()).unwrap();
        bad.extend(compare_tables(&generated, &reference_table(id), 0));
    }
    let detail = if bad.is_empty() {
        "t2 and t4 match exactly (pinning the floor/min conventions)".to_string()
    } else {
        format!("{} mismatches, first: {}", bad.len(), bad[0])
    };
    report("criterion 03", started, bad.is_empty(), &detail);
}

#[test]
fn criterion_04_table6_upper_lower_gap_cells() {
    check_grid_table("criterion 04", TableId::T6);
}

#[test]
fn criterion_05_max_improvement_statistics() {
    let started = Instant::now();
    let reference = reference_table(TableId::T5);
    let spec = builtin_spec(TableId::T5);
    let columns = match &spec {
        multizero_core::tables::TableSpec::Summary(s) => s.columns.clone(),
        _ => unreachable!(),
    };
    let mut failures = Vec::new();
    let mut checked = 0;
    for (qi, q) in (2u32..=8).enumerate() {
        for (ci, &(m, r)) in columns.iter().enumerate() {
            let gated = (m == 2 && (2..=5).contains(&r)) || (m == 3 && q <= 5 && (2..=4).contains(&r));
            if !gated {
                continue;
            }
            let Cell::Milli(expected) = reference.rows[qi].1[ci] else {
                continue;
            };
            let value = max_improvement_stat(m, q, r).unwrap();
            let got = milli_of_ratio(&value.to_big(), DecimalMode::Truncate);
            checked += 1;
            if (got - expected).abs() > 1 {
                failures.push(format!("m={m} q={q} r={r}: got {got}, reference {expected}"));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{checked} gated cells within one unit in the third decimal")
    } else {
        format!("{} failures, first: {}", failures.len(), failures[0])
    };
    report("criterion 05", started, failures.is_empty(), &detail);
}

#[test]
fn criterion_06_mean_gap_statistics() {
    let started = Instant::now();
    let reference = reference_table(TableId::T8);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (qi, q) in (2u32..=8).enumerate() {
        if !(2..=6).contains(&q) {
            continue;
        }
        for (ci, r) in (2u32..=4).enumerate() {
            let Cell::Milli(expected) = reference.rows[qi].1[ci] else {
                continue;
            };
            let value = mean_gap_stat(2, q, r).unwrap();
            let got = milli_of_ratio(&value, DecimalMode::Truncate);
            checked += 1;
            if (got - expected).abs() > 1 {
                failures.push(format!("m=2 q={q} r={r}: got {got}, reference {expected}"));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{checked} gated cells within one unit in the third decimal")
    } else {
        format!("{} failures, first: {}", failures.len(), failures[0])
    };
    report("criterion 06", started, failures.is_empty(), &detail);
}

#[test]
fn criterion_07_oracle_soundness_sweep() {
    let started = Instant::now();
    let report_inner = verify_oracle_soundness(&OracleConfig::default()).unwrap();
    report(
        "criterion 07",
        started,
        report_inner.ok(),
        &format!(
            "{} checks, {} violations{}",
            report_inner.checks_passed + report_inner.checks_failed,
            report_inner.checks_failed,
            report_inner
                .failures
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    );
}

#[test]
fn criterion_08_witness_achievability_on_table1_region() {
    let started = Instant::now();
    let field = PrimeField::new(5).unwrap();
    let sets: Vec<Vec<u64>> = vec![(0..5).collect(), (0..5).collect()];
    let grid = GridSpec::new(sets.clone()).unwrap();
    let mut failures = Vec::new();
    let mut cells = 0;
    for i1 in 0..=14u32 {
        for i2 in 0..=14u32 {
            if i1 / 5 + i2 / 5 >= 3 {
                continue; // trivial region is not printed
            }
            cells += 1;
            let query = BoundQuery::new(vec![i1, i2], 3, vec![5, 5]).unwrap();
            let HBoundOutcome::Attained { count, witness } = h_bound(&query).unwrap() else {
                failures.push(format!("({i1},{i2}): no witness"));
                continue;
            };
            let spec = LinearProductSpec::from_assignment(&witness, &sets).unwrap();
            let poly = spec.expand(&field);
            if poly.leading_monomial().unwrap() != [i1, i2] {
                failures.push(format!("({i1},{i2}): wrong leading monomial"));
                continue;
            }
            let counted = count_zeros_with_min_mult(&poly, &grid, 3).unwrap();
            if counted != count {
                failures.push(format!(
                    "({i1},{i2}): oracle counts {}, H = {}",
                    counted.value(),
                    count.value()
                ));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("all {cells} nontrivial cells attained exactly")
    } else {
        format!("{} failures, first: {}", failures.len(), failures[0])
    };
    report("criterion 08", started, failures.is_empty(), &detail);
}

#[test]
fn criterion_09_dimension_bound_dominance() {
    let started = Instant::now();
    let inner = verify_dominance(&DominanceConfig::default()).unwrap();
    report(
        "criterion 09",
        started,
        inner.ok(),
        &format!(
            "{} checks over q<=16, r<=5, m<=4 incl. endpoint equalities; {} failed",
            inner.checks_passed + inner.checks_failed,
            inner.checks_failed
        ),
    );
}

#[test]
fn criterion_10_closed_forms_and_equalities() {
    let started = Instant::now();
    let closed = verify_closed_forms(&ClosedConfig::default()).unwrap();
    let equalities = verify_equalities(&EqualitiesConfig::default()).unwrap();
    let ok = closed.ok() && equalities.ok();
    report(
        "criterion 10",
        started,
        ok,
        &format!(
            "closed: {}+{} checks ({} failed); equalities: {}+{} checks ({} failed){}",
            closed.checks_passed,
            closed.checks_failed,
            closed.checks_failed,
            equalities.checks_passed,
            equalities.checks_failed,
            equalities.checks_failed,
            closed
                .failures
                .iter()
                .chain(equalities.failures.iter())
                .next()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    );
}

#[test]
fn criterion_11_derivative_multiplicity_inequality() {
    let started = Instant::now();
    let inner = verify_hasse_multiplicity_inequality(&HasseConfig::default()).unwrap();
    report(
        "criterion 11",
        started,
        inner.ok(),
        &format!(
            "{} random triples over fields of size 5 and 7; {} violations",
            inner.checks_passed + inner.checks_failed,
            inner.checks_failed
        ),
    );
}

// Not gated: the mean-improvement statistics (the caption ambiguity is
// resolved by the per-multiplicity reading; spot-check a few cells here so
// regressions surface).
#[test]
fn mean_improvement_spot_checks() {
    let reference = reference_table(TableId::T7);
    // (row index, q, column index, m, r)
    for (qi, q, ci, m, r) in [(0usize, 2u32, 0usize, 2u32, 2u32), (1, 3, 0, 2, 2), (6, 8, 4, 3, 2)] {
        let Cell::Milli(expected) = reference.rows[qi].1[ci] else {
            panic!("reference cell missing");
        };
        let value = mean_improvement_stat(m, q, r, MeanImprovementReading::PerMultiplicity).unwrap();
        let got = milli_of_ratio(&value, DecimalMode::Truncate);
        assert!(
            (got - expected).abs() <= 1,
            "m={m} q={q} r={r}: got {got}, reference {expected}"
        );
    }
}

// Full-table comparisons beyond the gated regions (the heavy lower-bound
// sweeps for m = 3 and m = 4 dominate the runtime, about half a minute);
// run with `cargo test --test acceptance -- --ignored`.
#[test]
#[ignore = "covers every non-gated reference cell; ~1 minute"]
fn full_reference_reproduction_including_summary_tables() {
    for id in TableId::ALL {
        let started = Instant::now();
        let generated = generate_table(&builtin_spec(id), &GenerateOptions::default()).unwrap();
        let mismatches = compare_tables(&generated, &reference_table(id), 1);
        assert!(
            mismatches.is_empty(),
            "{id}: {} mismatches, first: {}",
            mismatches.len(),
            mismatches[0]
        );
        println!(
            "[full {id}] PASS ({} ms): all reference cells match",
            started.elapsed().as_millis()
        );
    }
}
