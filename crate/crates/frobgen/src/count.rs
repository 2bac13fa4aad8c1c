//! Saturating representation-count tables and exact counts.
//!
//! `R(t)` is the number of non-negative integer coefficient vectors over the
//! generators summing to `t`. A representation is the coefficient vector, so
//! the order of generators never multiplies counts: the table makes one
//! ascending pass per generator, which counts each multiset exactly once.
//!
//! Tables store `counts[t] = min(R(t), cap)`. Saturating at `cap` keeps every
//! comparison against values below the cap exact while bounding cell width,
//! which is what the g-sequence layer needs: it only ever compares against
//! `j <= j_max` with `cap = j_max + 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tuple::GeneratorTuple;

/// Representation counts `min(R(t), cap)` for `t` in `[0, bound]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    tuple: GeneratorTuple,
    cap: u32,
    counts: Vec<u32>,
}

impl CountTable {
    /// Builds the table by dynamic programming: `counts[0] = 1` (the empty
    /// representation), then one saturating pass per generator with `t`
    /// ascending.
    ///
    /// Allocation failure for absurd bounds surfaces as [`Error::Resource`];
    /// the table is never silently truncated.
    pub fn build(tuple: &GeneratorTuple, cap: u32, bound: u64) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Validation("count cap must be at least 1".into()));
        }
        let len = bound
            .checked_add(1)
            .and_then(|l| usize::try_from(l).ok())
            .ok_or_else(|| Error::Resource(format!("table bound {bound} exceeds address space")))?;
        let mut counts: Vec<u32> = Vec::new();
        counts
            .try_reserve_exact(len)
            .map_err(|_| Error::Resource(format!("cannot allocate count table of {len} cells")))?;
        counts.resize(len, 0);
        counts[0] = 1;
        for &g in tuple.generators() {
            let Ok(x) = usize::try_from(g) else {
                continue; // generator larger than any index contributes nothing
            };
            if x == 0 || x >= len {
                continue;
            }
            for t in x..len {
                counts[t] = counts[t].saturating_add(counts[t - x]).min(cap);
            }
        }
        Ok(Self {
            tuple: tuple.clone(),
            cap,
            counts,
        })
    }

    pub fn tuple(&self) -> &GeneratorTuple {
        &self.tuple
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn bound(&self) -> u64 {
        (self.counts.len() - 1) as u64
    }

    /// `min(R(t), cap)`. Panics if `t` exceeds the bound.
    pub fn count(&self, t: u64) -> u32 {
        self.counts[usize::try_from(t).expect("t exceeds table bound")]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Least `W` such that `counts[t] >= threshold` for every `t` in
    /// `[W+1, W+m]`, where `m = min(generators)` and `W+m <= bound`; `None`
    /// if no such window fits the table.
    ///
    /// Counts are monotone along every generator (`R(t) >= R(t-x)`), so a
    /// full window of width `m` at or above `threshold` proves
    /// `R(t) >= threshold` for every `t > W` by induction over windows.
    pub fn certify_threshold_window(&self, threshold: u32) -> Option<i64> {
        assert!(
            threshold >= 1 && threshold <= self.cap,
            "threshold must lie in 1..=cap"
        );
        let m = usize::try_from(self.tuple.min_generator()).ok()?;
        let mut last_below: i64 = -1;
        for (t, &c) in self.counts.iter().enumerate() {
            if c < threshold {
                last_below = t as i64;
            }
            if t + 1 >= m && last_below < (t + 1 - m) as i64 {
                return Some(t as i64 - m as i64);
            }
        }
        None
    }
}

/// Exact `R(t)` with overflow-checked 64-bit arithmetic: no saturation, and a
/// count that would wrap fails loudly as [`Error::Overflow`].
pub fn rep_count_exact(tuple: &GeneratorTuple, t: u64) -> Result<u64> {
    let len = t
        .checked_add(1)
        .and_then(|l| usize::try_from(l).ok())
        .ok_or_else(|| Error::Resource(format!("target {t} exceeds address space")))?;
    let mut counts: Vec<u64> = Vec::new();
    counts
        .try_reserve_exact(len)
        .map_err(|_| Error::Resource(format!("cannot allocate exact table of {len} cells")))?;
    counts.resize(len, 0);
    counts[0] = 1;
    for &g in tuple.generators() {
        let Ok(x) = usize::try_from(g) else { continue };
        if x == 0 || x >= len {
            continue;
        }
        for s in x..len {
            counts[s] = counts[s].checked_add(counts[s - x]).ok_or_else(|| {
                Error::Overflow(format!("representation count of {s} exceeds u64"))
            })?;
        }
    }
    Ok(counts[len - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(values: &[u64]) -> GeneratorTuple {
        GeneratorTuple::new(values.to_vec()).unwrap()
    }

    #[test]
    fn frobenius_gap_has_zero_count() {
        let t = CountTable::build(&tuple(&[6, 9, 20]), 100, 43).unwrap();
        assert_eq!(t.count(43), 0);
    }

    #[test]
    fn bound_zero_keeps_the_empty_representation() {
        let t = CountTable::build(&tuple(&[5, 7]), 3, 0).unwrap();
        assert_eq!(t.count(0), 1);
        assert_eq!(t.bound(), 0);
    }

    #[test]
    fn counts_match_known_inversion_pair() {
        let t = CountTable::build(&tuple(&[4, 7, 19]), 100, 181).unwrap();
        assert_eq!(t.count(181), 35);
        assert_eq!(t.count(180), 36);
    }

    #[test]
    fn cap_zero_is_rejected() {
        assert!(matches!(
            CountTable::build(&tuple(&[2, 3]), 0, 10),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn exact_counts_below_and_at_generators() {
        let t = tuple(&[2, 3]);
        assert_eq!(rep_count_exact(&t, 1).unwrap(), 0);
        assert_eq!(rep_count_exact(&t, 6).unwrap(), 2); // 3*2 and 2*3
    }

    #[test]
    fn exact_count_on_five_generator_family() {
        // {2n-2, 2n-1, 2n, 3n-3, 3n} at n = 10, target (6k+3)n - 1 at k = 1
        let t = tuple(&[18, 19, 20, 27, 30]);
        assert_eq!(rep_count_exact(&t, 89).unwrap(), 1);
    }

    #[test]
    fn exact_count_overflow_fails_loudly() {
        let t = tuple(&[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert!(matches!(
            rep_count_exact(&t, 10_000),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn absurd_bound_is_a_resource_error() {
        assert!(matches!(
            CountTable::build(&tuple(&[2, 3]), 2, u64::MAX - 1),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn certify_finds_least_window_start() {
        let t = CountTable::build(&tuple(&[2, 3]), 2, 10).unwrap();
        assert_eq!(t.certify_threshold_window(1), Some(1));
    }

    #[test]
    fn certify_needs_room_for_a_window() {
        let t = CountTable::build(&tuple(&[7, 9]), 1, 5).unwrap();
        assert_eq!(t.certify_threshold_window(1), None);
    }

    #[test]
    fn certify_matches_frobenius_number_of_family() {
        // {2n-2, 2n-1, 2n, 3n-3, 3n} at n = 6: g_0 = 19
        let t = CountTable::build(&tuple(&[10, 11, 12, 15, 18]), 100, 60).unwrap();
        assert_eq!(t.certify_threshold_window(1), Some(19));
    }

    #[test]
    fn saturated_cells_stay_at_cap() {
        let capped = CountTable::build(&tuple(&[2, 3]), 2, 30).unwrap();
        let wide = CountTable::build(&tuple(&[2, 3]), 100, 30).unwrap();
        for t in 0..=30u64 {
            if capped.count(t) < 2 {
                assert_eq!(capped.count(t), wide.count(t));
            } else {
                assert!(wide.count(t) >= 2);
            }
        }
    }
}
