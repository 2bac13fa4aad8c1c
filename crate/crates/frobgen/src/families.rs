//! Parameterized tuple families and verification of their closed forms
//! against the engine.
//!
//! Families:
//! - `thm1`: `{2n-2, 2n-1, 2n, 3n-3, 3n}` with `g_0 = n^2 - 3n + 1` (n >= 6)
//!   and `g_k = (6k+3)n - 1` (k >= 1, n > 6k+3).
//! - `lemma1`/`lemma2`: representation-count and representability claims for
//!   the same five generators, valid from n >= 4.
//! - `thm2`: `(n+1, n+4, n+5, [n+7..2n+1], 2n+3, 2n+4)` of cardinality n,
//!   reasonable, with `g_0 = 2n+7` and `g_1 = 2n+6` (n >= 6).
//! - `coprime`: `{10n-1, 15n-1, 20n-1, 25n, 30n-1}` with `g_0 = 50n^2 - 1`
//!   and `g_1 = 50n^2 - 5n` (n >= 1).
//! - `pair`: `g_j(x1, x2) = (j+1) x1 x2 - x1 - x2` for coprime pairs.
//!
//! Parameters that violate a claim's hypotheses produce `Skipped` results,
//! never `Fail`: the hypotheses are part of the claim. An undefined engine
//! value never passes silently; it fails with a reason.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::count::{rep_count_exact, CountTable};
use crate::error::{Error, Result};
use crate::gseq::{frobenius, g_sequence};
use crate::tuple::{gcd, is_reasonable, GeneratorTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
}

/// How `actual` is compared against `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Ge,
}

/// One verified claim instance: a family identifier, the parameter values,
/// the closed-form expectation, and what the engine produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCheckResult {
    pub family: &'static str,
    pub params: Vec<(&'static str, u64)>,
    pub relation: Relation,
    pub expected: Option<u64>,
    pub actual: Option<u64>,
    pub outcome: CheckOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FamilyCheckResult {
    fn skipped(
        family: &'static str,
        params: Vec<(&'static str, u64)>,
        note: impl Into<String>,
    ) -> Self {
        Self {
            family,
            params,
            relation: Relation::Eq,
            expected: None,
            actual: None,
            outcome: CheckOutcome::Skipped,
            note: Some(note.into()),
        }
    }

    fn engine_row(
        family: &'static str,
        params: Vec<(&'static str, u64)>,
        relation: Relation,
        expected: Option<u64>,
        engine: Result<Option<u64>>,
    ) -> Self {
        let (actual, outcome, note) = match (expected, engine) {
            (None, _) => (None, CheckOutcome::Fail, Some("closed form overflows u64".into())),
            (Some(e), Ok(Some(a))) => {
                let ok = match relation {
                    Relation::Eq => a == e,
                    Relation::Ge => a >= e,
                };
                (
                    Some(a),
                    if ok { CheckOutcome::Pass } else { CheckOutcome::Fail },
                    None,
                )
            }
            (Some(_), Ok(None)) => (
                None,
                CheckOutcome::Fail,
                Some("engine value undefined".into()),
            ),
            (Some(_), Err(err)) => (None, CheckOutcome::Fail, Some(err.to_string())),
        };
        Self {
            family,
            params,
            relation,
            expected,
            actual,
            outcome,
            note,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == CheckOutcome::Pass
    }
}

/// Pass/fail/skipped tally over a result list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn summarize(results: &[FamilyCheckResult]) -> CheckSummary {
    let mut summary = CheckSummary::default();
    for r in results {
        match r.outcome {
            CheckOutcome::Pass => summary.pass += 1,
            CheckOutcome::Fail => summary.fail += 1,
            CheckOutcome::Skipped => summary.skipped += 1,
        }
    }
    summary
}

/// `{2n-2, 2n-1, 2n, 3n-3, 3n}`, a reasonable 5-tuple for n >= 5.
pub fn family_thm1(n: u64) -> Result<GeneratorTuple> {
    if n < 5 {
        return Err(Error::Domain(format!("thm1 family needs n >= 5, got {n}")));
    }
    thm1_tuple(n)
}

/// The same five generators without the reasonableness guard. They are
/// distinct positive integers from n >= 4 on, which the lemma sweeps need.
pub(crate) fn thm1_tuple(n: u64) -> Result<GeneratorTuple> {
    if n < 4 {
        return Err(Error::Domain(format!(
            "five-generator family needs n >= 4, got {n}"
        )));
    }
    let two_n = mul(2, n)?;
    let three_n = mul(3, n)?;
    GeneratorTuple::new(vec![two_n - 2, two_n - 1, two_n, three_n - 3, three_n])
}

/// `(n+1, n+4, n+5, [n+7..2n+1], 2n+3, 2n+4)`: an n-element tuple for n >= 6.
/// The interval `[a..b]` is inclusive on both ends.
pub fn family_thm2(n: u64) -> Result<GeneratorTuple> {
    if n < 6 {
        return Err(Error::Domain(format!("thm2 family needs n >= 6, got {n}")));
    }
    let two_n = mul(2, n)?;
    let mut values = vec![n + 1, n + 4, n + 5];
    values.extend(n + 7..=two_n + 1);
    values.push(add(two_n, 3)?);
    values.push(two_n + 4);
    GeneratorTuple::new(values)
}

/// `{10n-1, 15n-1, 20n-1, 25n, 30n-1}` for n >= 1: pairwise coprime
/// generators with `g_0 - g_1 = 5n - 1`.
pub fn family_coprime(n: u64) -> Result<GeneratorTuple> {
    if n == 0 {
        return Err(Error::Domain("coprime family needs n >= 1".into()));
    }
    let thirty_n = mul(30, n)?;
    GeneratorTuple::new(vec![
        mul(10, n)? - 1,
        mul(15, n)? - 1,
        mul(20, n)? - 1,
        mul(25, n)?,
        thirty_n - 1,
    ])
}

/// Closed form `g_j(x1, x2) = (j+1) x1 x2 - x1 - x2` for a coprime pair of
/// distinct generators >= 2.
pub fn pair_g(x1: u64, x2: u64, j: u32) -> Result<u64> {
    validate_pair(x1, x2)?;
    pair_expected(x1, x2, j).ok_or_else(|| {
        Error::Overflow(format!("pair closed form ({x1}, {x2}, j={j}) exceeds u64"))
    })
}

fn validate_pair(x1: u64, x2: u64) -> Result<GeneratorTuple> {
    if x1 < 2 || x2 < 2 {
        return Err(Error::Domain("pair generators must be at least 2".into()));
    }
    if x1 == x2 {
        return Err(Error::Domain("pair generators must be distinct".into()));
    }
    if gcd(x1, x2) != 1 {
        return Err(Error::Domain(format!(
            "pair ({x1}, {x2}) has gcd {} > 1",
            gcd(x1, x2)
        )));
    }
    GeneratorTuple::new(vec![x1, x2])
}

fn pair_expected(x1: u64, x2: u64, j: u32) -> Option<u64> {
    (u64::from(j) + 1)
        .checked_mul(x1)?
        .checked_mul(x2)?
        .checked_sub(x1)?
        .checked_sub(x2)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("{a} * {b} exceeds u64")))
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b)
        .ok_or_else(|| Error::Overflow(format!("{a} + {b} exceeds u64")))
}

fn thm1_g0_expected(n: u64) -> Option<u64> {
    // n^2 - 3n + 1; positive for n >= 3
    n.checked_mul(n)?.checked_sub(3 * n)?.checked_add(1)
}

fn thm1_gk_expected(n: u64, k: u32) -> Option<u64> {
    (u64::from(k).checked_mul(6)?.checked_add(3)?)
        .checked_mul(n)?
        .checked_sub(1)
}

fn in_thm1_gk_hypothesis(n: u64, k: u32) -> bool {
    u64::from(k)
        .checked_mul(6)
        .and_then(|v| v.checked_add(3))
        .is_some_and(|bound| n > bound)
}

/// Checks `g_0 = n^2 - 3n + 1` (k = 0, n >= 6) and `g_k = (6k+3)n - 1`
/// (k >= 1, n > 6k+3) on the five-generator family. Out-of-hypothesis pairs
/// are reported as skipped.
pub fn verify_thm1(
    n_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u32>,
) -> Vec<FamilyCheckResult> {
    let mut out = Vec::new();
    for n in n_range {
        for k in k_range.clone() {
            out.push(check_thm1(n, k));
        }
    }
    out
}

fn check_thm1(n: u64, k: u32) -> FamilyCheckResult {
    let params = vec![("n", n), ("k", u64::from(k))];
    if k == 0 {
        if n < 6 {
            return FamilyCheckResult::skipped("thm1.g0", params, "hypothesis needs n >= 6");
        }
        let engine = family_thm1(n).and_then(|t| frobenius(&t)).map(Some);
        FamilyCheckResult::engine_row("thm1.g0", params, Relation::Eq, thm1_g0_expected(n), engine)
    } else {
        if !in_thm1_gk_hypothesis(n, k) {
            return FamilyCheckResult::skipped("thm1.gk", params, "hypothesis needs n > 6k+3");
        }
        let engine = family_thm1(n).and_then(|t| g_sequence(&t, k)).map(|s| s.g(k));
        FamilyCheckResult::engine_row(
            "thm1.gk",
            params,
            Relation::Eq,
            thm1_gk_expected(n, k),
            engine,
        )
    }
}

/// Checks the representation count of `(6k+3)n - 1` over the five-generator
/// family: at least `k` for n >= 4 (`lemma1.lower`) and exactly `k` for
/// n > 6k+3 (`lemma1.exact`). Both rows are emitted per parameter pair.
pub fn verify_lemma1(
    n_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u32>,
) -> Vec<FamilyCheckResult> {
    let mut out = Vec::new();
    for n in n_range {
        for k in k_range.clone() {
            let params = vec![("n", n), ("k", u64::from(k))];
            if k == 0 {
                out.push(FamilyCheckResult::skipped(
                    "lemma1.lower",
                    params.clone(),
                    "hypothesis needs k >= 1",
                ));
                out.push(FamilyCheckResult::skipped(
                    "lemma1.exact",
                    params,
                    "hypothesis needs k >= 1",
                ));
                continue;
            }
            if n < 4 {
                out.push(FamilyCheckResult::skipped(
                    "lemma1.lower",
                    params.clone(),
                    "hypothesis needs n >= 4",
                ));
                out.push(FamilyCheckResult::skipped(
                    "lemma1.exact",
                    params,
                    "hypothesis needs n >= 4",
                ));
                continue;
            }
            let engine = match thm1_gk_expected(n, k) {
                Some(target) => thm1_tuple(n).and_then(|t| rep_count_exact(&t, target)).map(Some),
                None => Err(Error::Overflow("target exceeds u64".into())),
            };
            out.push(FamilyCheckResult::engine_row(
                "lemma1.lower",
                params.clone(),
                Relation::Ge,
                Some(u64::from(k)),
                engine.clone(),
            ));
            if in_thm1_gk_hypothesis(n, k) {
                out.push(FamilyCheckResult::engine_row(
                    "lemma1.exact",
                    params,
                    Relation::Eq,
                    Some(u64::from(k)),
                    engine,
                ));
            } else {
                out.push(FamilyCheckResult::skipped(
                    "lemma1.exact",
                    params,
                    "hypothesis needs n > 6k+3",
                ));
            }
        }
    }
    out
}

/// Checks that every integer in `[k(n-1), kn]` is representable over the
/// five-generator family, for k = 2 or k >= 4 and n >= 4. The expected and
/// actual columns count the k+1 targets in the run.
pub fn verify_lemma2(
    n_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u64>,
) -> Vec<FamilyCheckResult> {
    let mut out = Vec::new();
    for n in n_range {
        for k in k_range.clone() {
            out.push(check_lemma2(n, k));
        }
    }
    out
}

fn check_lemma2(n: u64, k: u64) -> FamilyCheckResult {
    let params = vec![("n", n), ("k", k)];
    if n < 4 {
        return FamilyCheckResult::skipped("lemma2.run", params, "hypothesis needs n >= 4");
    }
    if !(k == 2 || k >= 4) {
        return FamilyCheckResult::skipped(
            "lemma2.run",
            params,
            "hypothesis covers k = 2 and k >= 4",
        );
    }
    let span = k.checked_mul(n).and_then(|hi| Some((k * (n - 1), hi)));
    let Some((lo, hi)) = span else {
        return FamilyCheckResult::engine_row(
            "lemma2.run",
            params,
            Relation::Eq,
            None,
            Err(Error::Overflow("kn exceeds u64".into())),
        );
    };
    let expected = hi - lo + 1;
    match thm1_tuple(n).and_then(|t| CountTable::build(&t, 1, hi)) {
        Ok(table) => {
            let missing: Vec<u64> = (lo..=hi).filter(|&t| table.count(t) == 0).collect();
            let actual = expected - missing.len() as u64;
            FamilyCheckResult {
                family: "lemma2.run",
                params,
                relation: Relation::Eq,
                expected: Some(expected),
                actual: Some(actual),
                outcome: if missing.is_empty() {
                    CheckOutcome::Pass
                } else {
                    CheckOutcome::Fail
                },
                note: (!missing.is_empty()).then(|| format!("not representable: {missing:?}")),
            }
        }
        Err(err) => {
            FamilyCheckResult::engine_row("lemma2.run", params, Relation::Eq, Some(expected), Err(err))
        }
    }
}

/// Checks the n-element family: cardinality n, reasonableness, `g_0 = 2n+7`,
/// and `g_1 = 2n+6`, all for n >= 6.
pub fn verify_thm2(n_range: RangeInclusive<u64>) -> Vec<FamilyCheckResult> {
    let mut out = Vec::new();
    for n in n_range {
        let params = vec![("n", n)];
        if n < 6 {
            for family in ["thm2.cardinality", "thm2.reasonable", "thm2.g0", "thm2.g1"] {
                out.push(FamilyCheckResult::skipped(
                    family,
                    params.clone(),
                    "hypothesis needs n >= 6",
                ));
            }
            continue;
        }
        let tuple = match family_thm2(n) {
            Ok(t) => t,
            Err(err) => {
                for family in ["thm2.cardinality", "thm2.reasonable", "thm2.g0", "thm2.g1"] {
                    out.push(FamilyCheckResult::engine_row(
                        family,
                        params.clone(),
                        Relation::Eq,
                        None,
                        Err(err.clone()),
                    ));
                }
                continue;
            }
        };
        out.push(FamilyCheckResult::engine_row(
            "thm2.cardinality",
            params.clone(),
            Relation::Eq,
            Some(n),
            Ok(Some(tuple.len() as u64)),
        ));
        out.push(FamilyCheckResult::engine_row(
            "thm2.reasonable",
            params.clone(),
            Relation::Eq,
            Some(1),
            is_reasonable(&tuple).map(|r| Some(u64::from(r))),
        ));
        let seq = g_sequence(&tuple, 1);
        out.push(FamilyCheckResult::engine_row(
            "thm2.g0",
            params.clone(),
            Relation::Eq,
            add(mul(2, n).unwrap_or(u64::MAX), 7).ok(),
            seq.clone().map(|s| s.g(0)),
        ));
        out.push(FamilyCheckResult::engine_row(
            "thm2.g1",
            params,
            Relation::Eq,
            add(mul(2, n).unwrap_or(u64::MAX), 6).ok(),
            seq.map(|s| s.g(1)),
        ));
    }
    out
}

/// Checks `g_0 = 50n^2 - 1` and `g_1 = 50n^2 - 5n` on the pairwise-coprime
/// family, for n >= 1.
pub fn verify_coprime(n_range: RangeInclusive<u64>) -> Vec<FamilyCheckResult> {
    let mut out = Vec::new();
    for n in n_range {
        let params = vec![("n", n)];
        if n == 0 {
            out.push(FamilyCheckResult::skipped(
                "coprime.g0",
                params.clone(),
                "hypothesis needs n >= 1",
            ));
            out.push(FamilyCheckResult::skipped(
                "coprime.g1",
                params,
                "hypothesis needs n >= 1",
            ));
            continue;
        }
        let fifty_n2 = n.checked_mul(n).and_then(|n2| n2.checked_mul(50));
        let seq = family_coprime(n).and_then(|t| g_sequence(&t, 1));
        out.push(FamilyCheckResult::engine_row(
            "coprime.g0",
            params.clone(),
            Relation::Eq,
            fifty_n2.and_then(|v| v.checked_sub(1)),
            seq.clone().map(|s| s.g(0)),
        ));
        out.push(FamilyCheckResult::engine_row(
            "coprime.g1",
            params,
            Relation::Eq,
            fifty_n2.and_then(|v| v.checked_sub(5 * n)),
            seq.map(|s| s.g(1)),
        ));
    }
    out
}

/// Checks the pair closed form against the engine for every `j` in the
/// range. The pair itself must be valid (distinct, >= 2, coprime); a bad
/// pair is a domain error rather than a failed row.
pub fn verify_pair(
    x1: u64,
    x2: u64,
    j_range: RangeInclusive<u32>,
) -> Result<Vec<FamilyCheckResult>> {
    let pair = validate_pair(x1, x2)?;
    let seq = g_sequence(&pair, *j_range.end())?;
    let mut out = Vec::new();
    for j in j_range {
        let params = vec![("x1", x1), ("x2", x2), ("j", u64::from(j))];
        out.push(FamilyCheckResult::engine_row(
            "pair.gj",
            params,
            Relation::Eq,
            pair_expected(x1, x2, j),
            Ok(seq.g(j)),
        ));
    }
    Ok(out)
}
