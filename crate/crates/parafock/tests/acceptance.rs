//! Acceptance gate: one test per release criterion, each printing a single
//! pass line. Every check is exact integer arithmetic; the timed criteria
//! assert their wall-clock budgets on top.

use parafock::action::BasisContext;
use parafock::basis::{
    build_omega_sequential, coeff_by_inversion_counts, coeff_by_permutation_instrumented,
    permutation_count, OrbitStats,
};
use parafock::partition::WeightVector;
use parafock::poly::{CliffordPoly, ExponentMatrix};
use parafock::tableau::Ssyt;
use parafock::verify::{run_suite, VerifyOptions};
use parafock::Int;
use std::time::{Duration, Instant};

fn t(s: &str) -> Ssyt {
    s.parse().unwrap()
}

fn pass(criterion: u32, what: &str) {
    println!("[PASS] criterion {criterion}: {what}");
}

fn assert_suite(criterion: u32, suite: &str, opts: &VerifyOptions, budget: Option<Duration>) {
    let started = Instant::now();
    let report = run_suite(suite, opts).unwrap();
    let elapsed = started.elapsed();
    assert!(
        report.passed(),
        "[FAIL] criterion {criterion}: {} of {} checks failed; first: {}",
        report.failures.len(),
        report.checks,
        report.failures.first().map(String::as_str).unwrap_or("")
    );
    if let Some(budget) = budget {
        assert!(
            elapsed < budget,
            "[FAIL] criterion {criterion}: suite {suite} took {elapsed:?}, budget {budget:?}"
        );
    }
    pass(
        criterion,
        &format!(
            "suite {suite}, {} exact checks in {elapsed:?}",
            report.checks
        ),
    );
}

fn sweep_options() -> VerifyOptions {
    VerifyOptions {
        n_max: 3,
        p_list: vec![1, 2, 3],
        max_weight: 6,
        cases: 500,
        max_klm: 3,
        budget: 1 << 20,
        seed: 0x5eed,
    }
}

#[test]
fn criterion_1_two_row_expansion_display() {
    let started = Instant::now();
    let v = build_omega_sequential::<Int>(&t("1,1,2;2"), 2, 2).unwrap();
    let shown = v.unnormalized();
    let mut want = CliffordPoly::<Int>::zero(2, 2).unwrap();
    let g = |rows: &[Vec<u32>]| ExponentMatrix::from_rows(rows).unwrap();
    // The displayed seven terms of the unnormalized vector, coefficient for
    // coefficient: -4 x11 x12 x21 x22, then the six Clifford-bearing and
    // square terms with coefficients ±2.
    want.add_term(g(&[vec![1, 1], vec![1, 1]]), 0b00, Int::from(-4));
    want.add_term(g(&[vec![1, 1], vec![2, 0]]), 0b11, Int::from(-2));
    want.add_term(g(&[vec![0, 2], vec![1, 1]]), 0b11, Int::from(-2));
    want.add_term(g(&[vec![2, 0], vec![1, 1]]), 0b11, Int::from(2));
    want.add_term(g(&[vec![1, 1], vec![0, 2]]), 0b11, Int::from(2));
    want.add_term(g(&[vec![2, 0], vec![0, 2]]), 0b00, Int::from(2));
    want.add_term(g(&[vec![0, 2], vec![2, 0]]), 0b00, Int::from(2));
    assert_eq!(shown.num_terms(), 7, "[FAIL] criterion 1: wrong term count");
    assert_eq!(shown, want, "[FAIL] criterion 1: coefficients differ");
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "[FAIL] criterion 1: took {elapsed:?}"
    );
    pass(1, &format!("seven-term expansion display in {elapsed:?}"));
}

#[test]
fn criterion_2_worked_matrix_extraction_and_expansion() {
    let started = Instant::now();
    let mu = WeightVector::new(vec![1, 1, 1, 1]);
    let ctx = BasisContext::<Int>::new(2, &mu).unwrap();
    let rows: Vec<Vec<i64>> = ctx
        .matrix()
        .rows()
        .iter()
        .map(|row| row.iter().map(|c| i64::try_from(c).unwrap()).collect())
        .collect();
    assert_eq!(
        rows,
        vec![
            vec![1, -1, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 0, -1],
            vec![0, 0, 1, -1, -1, -1],
            vec![0, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 1, -1],
            vec![0, 0, 0, 0, 0, 1],
        ],
        "[FAIL] criterion 2: matrix differs"
    );
    let source = build_omega_sequential::<Int>(&t("2,3;4"), 4, 2).unwrap();
    let image = source.value().apply_x(1).unwrap();
    let f: Vec<i64> = ctx
        .f_vector(&image)
        .unwrap()
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect();
    assert_eq!(f, vec![0, -1, 1, 0, 1, 0], "[FAIL] criterion 2: extraction");
    let gvec: Vec<i64> = ctx
        .expand_in_basis(&image)
        .unwrap()
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect();
    assert_eq!(
        gvec,
        vec![-2, -1, 2, 0, 1, 0],
        "[FAIL] criterion 2: expansion"
    );
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "[FAIL] criterion 2: took {elapsed:?}"
    );
    pass(
        2,
        &format!("matrix, extraction and expansion in {elapsed:?}"),
    );
}

#[test]
fn criterion_3_instrumented_coefficient_counts() {
    let started = Instant::now();
    let a = t("1,1,1,2,2;2,2,3;3");
    let gamma =
        ExponentMatrix::from_rows(&[vec![2, 1, 0, 0], vec![0, 2, 1, 1], vec![0, 0, 2, 0]]).unwrap();
    assert_eq!(
        permutation_count(&a.weight(3).unwrap()),
        Some(288),
        "[FAIL] criterion 3: permutation count"
    );
    let (c, stats): (Int, OrbitStats) = coeff_by_permutation_instrumented(&a, &gamma).unwrap();
    assert_eq!(c, Int::from(1), "[FAIL] criterion 3: coefficient");
    assert_eq!(
        stats,
        OrbitStats {
            orbit_size: 36,
            not_column_distinct: 19,
            positive: 9,
            negative: 8,
        },
        "[FAIL] criterion 3: orbit tallies"
    );
    let by_counts: Int = coeff_by_inversion_counts(&a, &gamma).unwrap();
    assert_eq!(by_counts, Int::from(1), "[FAIL] criterion 3: count route");
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "[FAIL] criterion 3: took {elapsed:?}"
    );
    pass(
        3,
        &format!("coefficient 1 with tallies 36/19/9/8 by both routes in {elapsed:?}"),
    );
}

#[test]
fn criterion_4_construction_route_equivalence() {
    assert_suite(
        4,
        "expansion",
        &sweep_options(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_5_leading_term_suite() {
    assert_suite(
        5,
        "leading",
        &sweep_options(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_6_dimension_suite() {
    let opts = VerifyOptions {
        n_max: 4,
        ..sweep_options()
    };
    assert_suite(6, "unitriangular", &opts, None);
}

#[test]
fn criterion_7_triple_relations_suite() {
    assert_suite(
        7,
        "relations",
        &sweep_options(),
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn criterion_8_two_color_oracle_suite() {
    assert_suite(
        8,
        "n2-oracle",
        &sweep_options(),
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn criterion_9_induced_module_consistency() {
    let opts = VerifyOptions {
        max_weight: 5,
        ..sweep_options()
    };
    assert_suite(9, "verma", &opts, None);
}
