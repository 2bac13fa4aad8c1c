//! Naive reference counter, kept algorithmically disjoint from the table DP:
//! it enumerates coefficient vectors directly, recursing over the coefficient
//! of the largest generator in descending order. Agreement between the two
//! routes is the keystone cross-validation; performance is a non-goal.

use crate::error::{Error, Result};
use crate::tuple::GeneratorTuple;

const MAX_TARGET: u64 = 10_000;
const MAX_GENERATORS: usize = 8;

fn guard(tuple: &GeneratorTuple, target: u64) -> Result<()> {
    if target > MAX_TARGET || tuple.len() > MAX_GENERATORS {
        return Err(Error::Validation(format!(
            "oracle refuses large instances (needs t <= {MAX_TARGET} and <= {MAX_GENERATORS} generators)"
        )));
    }
    Ok(())
}

/// Exact `R(t)` by direct recursion over coefficient vectors.
pub fn brute_count(tuple: &GeneratorTuple, t: u64) -> Result<u64> {
    guard(tuple, t)?;
    let total = count_rec(tuple.generators(), t);
    u64::try_from(total).map_err(|_| Error::Overflow(format!("oracle count of {t} exceeds u64")))
}

fn count_rec(generators: &[u64], t: u64) -> u128 {
    match generators.split_last() {
        None => u128::from(t == 0),
        Some((&x, [])) => u128::from(t % x == 0),
        Some((&x, rest)) => {
            let mut total = 0u128;
            let mut a = t / x;
            loop {
                total += count_rec(rest, t - a * x);
                if a == 0 {
                    break;
                }
                a -= 1;
            }
            total
        }
    }
}

/// Exact `R(t)` for every `t` in `[0, bound]`, by one depth-first walk over
/// all coefficient vectors with sum at most `bound`.
pub fn brute_counts_upto(tuple: &GeneratorTuple, bound: u64) -> Result<Vec<u64>> {
    guard(tuple, bound)?;
    let len = bound as usize + 1;
    let mut hist = vec![0u64; len];
    fill_rec(tuple.generators(), 0, &mut hist);
    Ok(hist)
}

fn fill_rec(generators: &[u64], base: usize, hist: &mut [u64]) {
    match generators.split_last() {
        None => hist[base] += 1,
        Some((&x, [])) => {
            let mut t = base;
            while t < hist.len() {
                hist[t] += 1;
                t += x as usize;
            }
        }
        Some((&x, rest)) => {
            let mut s = base;
            while s < hist.len() {
                fill_rec(rest, s, hist);
                s += x as usize;
            }
        }
    }
}

/// Re-derives the reasonableness condition by brute force: no generator may
/// be representable over the remaining generators.
pub fn brute_reasonable(tuple: &GeneratorTuple) -> Result<bool> {
    guard(tuple, tuple.max_generator())?;
    let generators = tuple.generators();
    for (i, &x) in generators.iter().enumerate() {
        let others: Vec<u64> = generators
            .iter()
            .enumerate()
            .filter_map(|(j, &g)| (j != i).then_some(g))
            .collect();
        if !others.is_empty() && exists_rec(&others, x) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn exists_rec(generators: &[u64], t: u64) -> bool {
    match generators.split_last() {
        None => t == 0,
        Some((&x, [])) => t % x == 0,
        Some((&x, rest)) => (0..=t / x).rev().any(|a| exists_rec(rest, t - a * x)),
    }
}
