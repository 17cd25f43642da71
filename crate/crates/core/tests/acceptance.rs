//! Acceptance run: one test per criterion, each printing a single `criterion N: PASS|FAIL` line
//! with its measured values and wall time. Run with `--nocapture` to see the lines.

mod common;

use cmtorsion::atlas::{degree_sequence, hilbert_class_poly, sg_scan, verify_table1};
use cmtorsion::classify::{classify_degree, prime_squared_groups, DegreeMode};
use cmtorsion::quadorder::{
    cartan_unit_order, class_number, decompose, ray_class_degree, real_primitive_ideals, two_torsion_class_count, Over,
};
use common::*;
use proptest::test_runner::{Config, TestRunner};
use std::time::{Duration, Instant};

/// Prints the criterion line and fails the test when `ok` is false or the budget is exceeded.
fn report(n: u32, ok: bool, start: Instant, budget: Duration, detail: String) {
    let t = start.elapsed();
    let pass = ok && t <= budget;
    println!(
        "criterion {n}: {} ({detail}; {:.2} s of {} s)",
        if pass { "PASS" } else { "FAIL" },
        t.as_secs_f64(),
        budget.as_secs()
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

const TABLE2_DELTAS: [i64; 13] = [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163];

#[test]
fn criterion_1_class_numbers() {
    let start = Instant::now();
    let mut ok = true;
    for d in TABLE2_DELTAS {
        let h = class_number(&decompose(d).unwrap());
        ok &= h == 1 && class_number_oracle(d) == 1;
    }
    let expected = [(-23, 3), (-47, 5), (-59, 3), (-83, 3)];
    let got: Vec<(i64, u64)> = expected.iter().map(|&(d, _)| (d, class_number(&decompose(d).unwrap()))).collect();
    for (&(d, h), &(_, g)) in expected.iter().zip(&got) {
        ok &= g == h && class_number_oracle(d) == h;
    }
    report(1, ok, start, Duration::from_secs(1), format!("13 class-number-one discriminants, {got:?}"));
}

#[test]
fn criterion_2_genus_and_real_ideals() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 4..=10_000i64 {
        let delta = -n;
        let Ok(d) = decompose(delta) else { continue };
        count += 1;
        let two_nu = 1u64 << d.nu;
        let ideals = real_primitive_ideals(&d);
        let ok = two_torsion_class_count(&d) == two_nu
            && ideals.len() as u64 == 2 * two_nu
            && ideals.iter().all(|i| delta % i.a as i64 == 0);
        if !ok {
            bad.push(delta);
        }
    }
    report(2, bad.is_empty(), start, Duration::from_secs(30), format!("{count} discriminants, failures {bad:?}"));
}

#[test]
fn criterion_3_ray_class_degrees() {
    let start = Instant::now();
    let a = ray_class_degree(-7, 7, Over::Q).unwrap();
    let b = ray_class_degree(-11, 11, Over::Q).unwrap();
    report(3, a == 42 && b == 110, start, Duration::from_secs(1), format!("(-7,7) -> {a}, (-11,11) -> {b}"));
}

#[test]
fn criterion_4_table1_battery() {
    let start = Instant::now();
    let rep = verify_table1(None).unwrap();
    let rows_ok = rep.rows.iter().filter(|r| r.pass).count();
    let torsion_ok = rep.rows.iter().filter(|r| r.computed.as_deref() == Some(r.expected.as_str())).count();
    let iso: Vec<(usize, usize)> = rep.pairs.iter().filter(|p| p.isomorphic).map(|p| (p.a, p.b)).collect();
    report(
        4,
        rep.pass,
        start,
        Duration::from_secs(600),
        format!(
            "torsion matches on {torsion_ok}/17 rows, {rows_ok}/17 rows pass all checks, isomorphic same-field pairs {iso:?}"
        ),
    );
}

#[test]
fn criterion_5_classifier() {
    let start = Instant::now();
    let counts: Vec<usize> =
        [3u64, 5, 7, 9, 11, 13].iter().map(|&d| classify_degree(d, DegreeMode::Odd).unwrap().new_groups.len()).collect();
    let shapes = |p: u64| -> Vec<String> { prime_squared_groups(p).unwrap().into_iter().map(|t| t.shape).collect() };
    let (s3, s5, s7) = (shapes(3), shapes(5), shapes(7));
    let ok = counts == vec![2, 1, 0, 3, 0, 0]
        && s3 == vec!["Z/9", "Z/14", "Z/18", "Z/19", "Z/27"]
        && s5 == vec!["Z/11"]
        && s7.is_empty();
    report(
        5,
        ok,
        start,
        Duration::from_secs(60),
        format!("new-group counts {counts:?}, p=3 {s3:?}, p=5 {s5:?}, p=7 {s7:?}"),
    );
}

/// Reference degree sequences: rows (m, n) with cells in the order of `TABLE2_DELTAS`.
const TABLE2: [((u64, u64), [&str; 13]); 8] = [
    ((1, 4), ["2", "1,2", "2,2,2", "2,4", "6", "2,4", "1,1,4", "6", "6", "2,4", "6", "6", "6"]),
    ((1, 5), ["4", "2,4", "12", "12", "4,8", "12", "4,8", "4,8", "12", "12", "12", "12", "12"]),
    ((1, 6), ["1,3", "2,4", "4,8", "2,2,4,4", "6,6", "1,2,3,6", "4,8", "12", "3,9", "4,8", "12", "12", "12"]),
    ((1, 7), ["2,6", "12", "3,21", "24", "24", "6,18", "24", "6,18", "6,18", "3,21", "24", "24", "24"]),
    ((1, 8), ["8", "4,8", "4,4,8,8", "8,16", "24", "8,16", "4,4,16", "24", "24", "4,4,16", "24", "24", "24"]),
    ((1, 9), ["3,9", "18", "36", "6,12,18", "6,12,18", "9,27", "36", "36", "3,6,27", "36", "36", "36", "36"]),
    ((2, 4), ["4", "2,2,2", "2,2,2,2,4", "2,2,4,4", "12", "4,4,4", "2,2,4,4", "12", "12", "4,4,4", "12", "12", "12"]),
    ((3, 3), ["2,2,2", "4,4", "8,8", "4,4,4,4", "4,4,4,4", "6,6,6", "8,8", "8,8", "6,6,6", "8,8", "8,8", "8,8", "8,8"]),
];

#[test]
fn criterion_6_degree_sequences() {
    let start = Instant::now();
    let stretch_budget = Duration::from_secs(120);
    let mut required_ok = 0;
    let mut mismatches = Vec::new();
    let mut stretch = Vec::new();
    for ((m, n), cells) in TABLE2 {
        let is_stretch = m == 1 && n >= 8;
        for (delta, want) in TABLE2_DELTAS.iter().zip(cells) {
            let d = decompose(*delta).unwrap();
            let got = if is_stretch {
                cmtorsion::atlas::degree_sequence_with_budget(&d, m, n, stretch_budget)
            } else {
                degree_sequence(&d, m, n)
            };
            match got {
                Ok(s) => {
                    let bound = 2 * cartan_unit_order(&d, n).unwrap() * if m == 3 { 2 } else { 1 };
                    let sane = s.degrees.iter().all(|x| bound % x == 0);
                    if s.to_text() == want && sane {
                        if is_stretch {
                            stretch.push("ok");
                        } else {
                            required_ok += 1;
                        }
                    } else {
                        mismatches.push(format!("({m},{n}) D={delta}: got {} want {want}", s.to_text()));
                    }
                }
                Err(cmtorsion::Error::Resource(msg)) if is_stretch => {
                    println!("skipped stretch cell: {msg}");
                    stretch.push("skipped");
                }
                Err(e) => mismatches.push(format!("({m},{n}) D={delta}: {e}")),
            }
        }
    }
    let stretch_done = stretch.iter().filter(|s| **s == "ok").count();
    report(
        6,
        mismatches.is_empty() && required_ok == 78,
        start,
        Duration::from_secs(1800),
        format!(
            "required cells matching {required_ok}/78, stretch (1,8),(1,9) computed {stretch_done}/26, mismatches {mismatches:?}"
        ),
    );
}

#[test]
fn criterion_7_hilbert_class_polynomials() {
    let start = Instant::now();
    let h3 = hilbert_class_poly(&decompose(-3).unwrap()).unwrap().poly.to_text();
    let h12 = hilbert_class_poly(&decompose(-12).unwrap()).unwrap().poly.to_text();
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 3..=1000i64 {
        let Ok(d) = decompose(-n) else { continue };
        count += 1;
        match hilbert_class_poly(&d) {
            Ok(p) => {
                worst = worst.max(p.max_residual);
                if p.poly.degree() as u64 != class_number(&d) || p.max_residual >= 1e-4 {
                    bad.push(-n);
                }
            }
            Err(_) => bad.push(-n),
        }
    }
    let ok = h3 == "0,1" && h12 == "-54000,1" && bad.is_empty();
    report(
        7,
        ok,
        start,
        Duration::from_secs(600),
        format!("H_-3 = [{h3}], H_-12 = [{h12}], {count} discriminants, worst residual {worst:.1e}, failures {bad:?}"),
    );
}

#[test]
fn criterion_8_sophie_germain_scan() {
    let start = Instant::now();
    let small = sg_scan(20).unwrap();
    let ks: Vec<u64> = small.members.iter().map(|m| m.k).collect();
    let big = sg_scan(10_000).unwrap();
    println!("{}", big.reference);
    println!(
        "S(10^4) = {}, ratio S/(X/log^3 X) = {:.3} (not compared with the reference values)",
        big.count,
        big.ratio.unwrap_or(f64::NAN)
    );
    let ok = small.count == 4 && ks == vec![5, 11, 14, 20] && small.paths_agree && big.paths_agree && big.complete;
    report(
        8,
        ok,
        start,
        Duration::from_secs(60),
        format!("S(20) = {} {ks:?}, S(10^4) = {} with both class number paths agreeing: {}", small.count, big.count, big.paths_agree),
    );
}

#[test]
fn criterion_9_property_suites() {
    let start = Instant::now();
    let mut results = Vec::new();
    let mut run = |name: &str, outcome: Result<(), String>| {
        results.push(format!("{name}: {}", if outcome.is_ok() { "green" } else { "red" }));
        outcome.is_ok()
    };
    let mut ok = true;
    ok &= run(
        "factorization round trip x1000",
        TestRunner::new(Config::with_cases(1000))
            .run(&product_strategy(), |p| factor_round_trip_case(&p))
            .map_err(|e| e.to_string()),
    );
    ok &= run(
        "torsion gcd divisibility x120",
        TestRunner::new(Config::with_cases(120))
            .run(&short_strategy(), |(a, b)| torsion_gcd_case(a, b))
            .map_err(|e| e.to_string()),
    );
    ok &= run(
        "real-field shape x120",
        TestRunner::new(Config::with_cases(120))
            .run(&real_kubert_strategy(), |(b0, b1, c0, d)| real_shape_case(b0, b1, c0, d))
            .map_err(|e| e.to_string()),
    );
    ok &= run(
        "Kronecker-Euler x2000",
        TestRunner::new(Config::with_cases(2000))
            .run(&euler_strategy(), |(a, p)| kronecker_euler_case(a, p))
            .map_err(|e| e.to_string()),
    );
    report(9, ok, start, Duration::from_secs(300), results.join(", "));
}
