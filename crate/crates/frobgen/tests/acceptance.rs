//! Acceptance suite: one test per criterion, exact integer equality
//! throughout (tolerance is zero). Each test prints a PASS line on success;
//! run with `--nocapture` to see them:
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```

use std::collections::BTreeSet;

use frobgen::{
    frobenius, g_sequence, oracle, pair_g, rep_count_exact, scan, summarize, verify_coprime,
    verify_lemma1, verify_lemma2, verify_thm1, verify_thm2, CheckOutcome, CountTable,
    GeneratorTuple,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tuple(values: &[u64]) -> GeneratorTuple {
    GeneratorTuple::new(values.to_vec()).unwrap()
}

fn passed(criterion: u32, what: &str) {
    println!("acceptance criterion {criterion:2}: PASS - {what}");
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn random_coprime_tuple(rng: &mut ChaCha8Rng, k_low: u64, k_high: u64, max: u64) -> GeneratorTuple {
    loop {
        let k = rng.random_range(k_low..=k_high) as usize;
        let mut values = BTreeSet::new();
        while values.len() < k {
            values.insert(rng.random_range(2..=max));
        }
        let values: Vec<u64> = values.into_iter().collect();
        if values.iter().copied().fold(0, gcd) == 1 {
            return tuple(&values);
        }
    }
}

#[test]
fn criterion_01_golden_values() {
    assert_eq!(frobenius(&tuple(&[6, 9, 20])).unwrap(), 43);

    let seq = g_sequence(&tuple(&[4, 7, 19]), 36).unwrap();
    assert_eq!(seq.g(35), Some(181));
    assert_eq!(seq.g(36), Some(180));

    for (gens, g0, g1) in [
        (&[8, 9, 11, 14, 15][..], 21, 20),
        (&[4, 5, 8, 10][..], 11, 9),
        (&[9, 10, 11, 13, 17][..], 25, 24),
        (&[10, 15, 32, 48][..], 101, 99),
    ] {
        let seq = g_sequence(&tuple(gens), 1).unwrap();
        assert_eq!(seq.g(0), Some(g0), "g_0 of {gens:?}");
        assert_eq!(seq.g(1), Some(g1), "g_1 of {gens:?}");
    }

    let seq = g_sequence(&tuple(&[8, 9, 15]), 15).unwrap();
    assert_eq!(seq.g(14), Some(172));
    assert_eq!(seq.g(15), Some(169));

    passed(1, "eleven golden g_j values");
}

#[test]
fn criterion_02_theorem1_sweep() {
    let results = verify_thm1(6..=40, 0..=4);
    let summary = summarize(&results);
    assert_eq!(summary.fail, 0, "failed rows: {results:?}");
    // k = 0 passes for n in [6, 40]; k >= 1 passes for n in [6k+4, 40]
    assert_eq!(summary.pass, 35 + 31 + 25 + 19 + 13);
    assert_eq!(summary.pass + summary.skipped, results.len());
    passed(2, "g_0 and g_k closed forms on the five-generator family");
}

#[test]
fn criterion_03_lemma1_sweep() {
    let results = verify_lemma1(4..=40, 1..=4);
    let lower = |r: &&frobgen::FamilyCheckResult| r.family == "lemma1.lower";
    let exact = |r: &&frobgen::FamilyCheckResult| r.family == "lemma1.exact";

    let lower_rows: Vec<_> = results.iter().filter(lower).collect();
    assert_eq!(lower_rows.len(), 37 * 4);
    assert!(lower_rows.iter().all(|r| r.outcome == CheckOutcome::Pass));

    let exact_rows: Vec<_> = results.iter().filter(exact).collect();
    let exact_pass = exact_rows
        .iter()
        .filter(|r| r.outcome == CheckOutcome::Pass)
        .count();
    let exact_skipped = exact_rows
        .iter()
        .filter(|r| r.outcome == CheckOutcome::Skipped)
        .count();
    assert_eq!(exact_pass, 31 + 25 + 19 + 13);
    assert_eq!(exact_pass + exact_skipped, exact_rows.len());
    passed(3, "exact and lower-bound representation counts of (6k+3)n-1");
}

#[test]
fn criterion_04_lemma2_sweep() {
    let mut total_pass = 0;
    for n in 4..=30u64 {
        let results = verify_lemma2(n..=n, 2..=n);
        let summary = summarize(&results);
        assert_eq!(summary.fail, 0, "n = {n}: {results:?}");
        // k = 2 and k in [4, n] pass; k = 3 is outside the hypothesis
        assert_eq!(summary.pass as u64, n - 2, "n = {n}");
        total_pass += summary.pass;
    }
    assert_eq!(total_pass, 405);
    passed(4, "representability of [k(n-1), kn] runs");
}

#[test]
fn criterion_05_theorem2_sweep() {
    let results = verify_thm2(6..=30);
    assert_eq!(results.len(), 25 * 4);
    let summary = summarize(&results);
    assert_eq!(summary.fail, 0, "failed rows: {results:?}");
    assert_eq!(summary.pass, 100);
    passed(5, "cardinality, reasonableness, g_0, g_1 of the n-element family");
}

#[test]
fn criterion_06_coprime_family_sweep() {
    let results = verify_coprime(1..=8);
    assert_eq!(results.len(), 16);
    assert!(
        results.iter().all(|r| r.outcome == CheckOutcome::Pass),
        "{results:?}"
    );
    passed(6, "g_0 = 50n^2-1 and g_1 = 50n^2-5n for n in [1, 8]");
}

#[test]
fn criterion_07_pair_formula_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0701);
    let mut checked = 0;
    while checked < 50 {
        let x1 = rng.random_range(2u64..=29);
        let x2 = rng.random_range(x1 + 1..=30);
        if gcd(x1, x2) != 1 {
            continue;
        }
        let seq = g_sequence(&tuple(&[x1, x2]), 8).unwrap();
        let mut previous = None;
        for j in 0..=8u32 {
            let engine = seq.g(j);
            assert_eq!(engine, Some(pair_g(x1, x2, j).unwrap()), "({x1}, {x2}, {j})");
            if let Some(prev) = previous {
                assert!(prev < engine.unwrap(), "({x1}, {x2}) must increase at {j}");
            }
            previous = engine;
        }
        checked += 1;
    }
    passed(7, "50 random coprime pairs match the closed form, strictly increasing");
}

#[test]
fn criterion_08_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0802);
    for _ in 0..100 {
        let t = random_coprime_tuple(&mut rng, 2, 6, 50);
        let table = CountTable::build(&t, u32::MAX, 500).unwrap();
        let reference = oracle::brute_counts_upto(&t, 500).unwrap();
        for target in 0..=500u64 {
            assert_eq!(
                u64::from(table.count(target)),
                reference[target as usize],
                "tuple {t}, target {target}"
            );
        }
    }
    passed(8, "table counts equal brute-force oracle counts for 100 random tuples");
}

#[test]
fn criterion_09_bounded_conjecture_scan() {
    let report = scan(3, 60, 15).unwrap();
    assert_eq!(report.tuple_errors, 0);
    assert_eq!(
        report.min_inversion_index,
        Some(14),
        "no inversion below index 14 and at least one at 14"
    );
    let witness = report
        .witnesses
        .iter()
        .find(|w| w.tuple.generators() == [8, 9, 15])
        .expect("the {8, 9, 15} witness must appear");
    assert_eq!((witness.g_i, witness.g_next), (172, 169));
    passed(9, "triples with elements <= 60 first invert at index 14, witness {8, 9, 15}");
}

#[test]
fn criterion_10_quadruple_minimality() {
    let report = scan(4, 48, 1).unwrap();
    assert_eq!(report.tuple_errors, 0);
    assert_eq!(report.min_inversion_index, Some(0));
    let witness = report
        .witnesses
        .iter()
        .find(|w| w.tuple.generators() == [10, 15, 32, 48])
        .expect("the {10, 15, 32, 48} witness must appear");
    assert_eq!((witness.g_i, witness.g_next), (101, 99));
    for w in &report.witnesses {
        assert_eq!(
            w.tuple.max_generator(),
            48,
            "no g_0 > g_1 witness has largest element below 48: {w:?}"
        );
    }
    passed(10, "quadruple inversions at index 0 need a largest element of 48");
}

#[test]
fn criterion_11_certificate_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b03);
    for _ in 0..25 {
        let t = random_coprime_tuple(&mut rng, 2, 6, 50);
        let threshold = rng.random_range(1u32..=6);
        let mut bound =
            u64::from(threshold) * t.min_generator() * t.max_generator() + t.max_generator();
        let window_start = loop {
            let table = CountTable::build(&t, threshold, bound).unwrap();
            if let Some(w) = table.certify_threshold_window(threshold) {
                break w;
            }
            bound *= 2;
        };
        let limit = (window_start + t.min_generator() as i64) as u64;
        let extended = CountTable::build(&t, threshold, limit * 2).unwrap();
        for target in (window_start + 1) as u64..=extended.bound() {
            assert!(
                extended.count(target) >= threshold,
                "tuple {t}, threshold {threshold}, target {target}"
            );
        }
        // spot-check the certificate against exact counts near the window
        for target in (window_start + 1) as u64..=limit {
            assert!(rep_count_exact(&t, target).unwrap() >= u64::from(threshold));
        }
    }
    passed(11, "certified windows hold on tables extended to twice the window");
}
