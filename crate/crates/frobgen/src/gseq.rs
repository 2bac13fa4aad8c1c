//! Generalized Frobenius numbers `g_j`: the largest integer with exactly `j`
//! representations, or undefined when no integer is represented exactly `j`
//! times.
//!
//! The extraction is certified: a table is grown until it contains a full
//! window of `min(generators)` consecutive integers whose counts all reach
//! `j_max + 1`. Monotonicity of counts along each generator then proves that
//! every integer past the window start `W` has more than `j_max`
//! representations, so scanning `t <= W + min(generators)` is exhaustive for
//! every `g_j` with `j <= j_max`.

use serde::Serialize;

use crate::count::CountTable;
use crate::error::{Error, Result};
use crate::tuple::GeneratorTuple;

/// `g_j` values for `j` in `[0, j_max]`, plus the window start `W` that
/// certifies completeness: `R(t) > j_max` for every `t > W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GSequence {
    tuple: GeneratorTuple,
    values: Vec<Option<u64>>,
    certified_window_start: i64,
}

impl GSequence {
    pub fn tuple(&self) -> &GeneratorTuple {
        &self.tuple
    }

    pub fn j_max(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    /// `g_j`, or `None` when no integer has exactly `j` representations.
    pub fn g(&self, j: u32) -> Option<u64> {
        self.values[j as usize]
    }

    /// Entries indexed by `j`.
    pub fn values(&self) -> &[Option<u64>] {
        &self.values
    }

    pub fn certified_window_start(&self) -> i64 {
        self.certified_window_start
    }

    /// Inclusive upper end of the certified scan range, `W + min(generators)`.
    pub fn certified_limit(&self) -> u64 {
        (self.certified_window_start + self.tuple.min_generator() as i64) as u64
    }
}

fn ensure_g_domain(tuple: &GeneratorTuple) -> Result<()> {
    if tuple.gcd() != 1 {
        return Err(Error::Domain(format!(
            "g_j undefined for non-coprime tuple (gcd {})",
            tuple.gcd()
        )));
    }
    if tuple.contains(1) {
        return Err(Error::Domain(
            "generator 1 makes every integer representable".into(),
        ));
    }
    Ok(())
}

/// Computes `g_j` for every `j <= j_max`.
///
/// The table saturates at `cap = j_max + 2`, which keeps every comparison
/// against `j <= j_max` exact, and starts at bound
/// `(j_max+1) * min * max + max` (the pair closed form's growth), doubling
/// until the threshold window certifies.
pub fn g_sequence(tuple: &GeneratorTuple, j_max: u32) -> Result<GSequence> {
    ensure_g_domain(tuple)?;
    let cap = j_max
        .checked_add(2)
        .ok_or_else(|| Error::Validation(format!("j_max {j_max} too large for count cells")))?;
    let threshold = j_max + 1;
    let x_min = tuple.min_generator();
    let x_max = tuple.max_generator();
    let mut bound = u64::from(j_max + 1)
        .checked_mul(x_min)
        .and_then(|b| b.checked_mul(x_max))
        .and_then(|b| b.checked_add(x_max))
        .ok_or_else(|| Error::Resource("initial table bound exceeds u64".into()))?;
    loop {
        let table = CountTable::build(tuple, cap, bound)?;
        if let Some(window_start) = table.certify_threshold_window(threshold) {
            return Ok(extract(tuple, j_max, &table, window_start));
        }
        bound = bound
            .checked_mul(2)
            .ok_or_else(|| Error::Resource("table bound exceeds u64 before certification".into()))?;
    }
}

fn extract(tuple: &GeneratorTuple, j_max: u32, table: &CountTable, window_start: i64) -> GSequence {
    let limit = (window_start + tuple.min_generator() as i64) as usize;
    let mut values: Vec<Option<u64>> = vec![None; j_max as usize + 1];
    let mut remaining = values.len();
    let counts = table.counts();
    for t in (0..=limit).rev() {
        let c = counts[t];
        if c <= j_max && values[c as usize].is_none() {
            values[c as usize] = Some(t as u64);
            remaining -= 1;
            if remaining == 0 {
                break;
            }
        }
    }
    GSequence {
        tuple: tuple.clone(),
        values,
        certified_window_start: window_start,
    }
}

/// The classical Frobenius number `g_0`: the largest integer that is not a
/// non-negative integer combination of the generators.
pub fn frobenius(tuple: &GeneratorTuple) -> Result<u64> {
    let seq = g_sequence(tuple, 0)?;
    Ok(seq
        .g(0)
        .expect("min generator >= 2 leaves some integer unrepresentable"))
}
