//! Inversion search: enumerate reasonable coprime tuples, detect indices
//! with `g_i > g_{i+1}`, and report the least such index over a bounded
//! region of tuple space.
//!
//! Tuples are sharded by their first two elements. Shards are independent,
//! may run concurrently, and merge by index-minimum then lexicographic
//! witness order, so reports are identical across worker counts. A scan can
//! persist completed shards to a checkpoint file and resume from it; see
//! [`ScanOptions::checkpoint`].
//!
//! An inversion requires both `g_i` and `g_{i+1}` to be defined. Pairs with
//! an undefined side are tallied in `skipped_undefined` and never reported
//! as inversions.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gseq::g_sequence;
use crate::tuple::{gcd_of, is_reasonable, GeneratorTuple};

/// A witnessed inversion: `g_i > g_{i+1}` with both values defined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionRecord {
    pub tuple: GeneratorTuple,
    pub index: u32,
    pub g_i: u64,
    pub g_next: u64,
}

/// Result of scanning one tuple: every inversion up to the requested index,
/// plus the number of index pairs that had an undefined side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionScan {
    pub records: Vec<InversionRecord>,
    pub skipped_undefined: u64,
}

/// Aggregated scan outcome over all reasonable coprime tuples of size `k`
/// with elements at most `max_element`. `witnesses` holds every record at
/// `min_inversion_index`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub k: u32,
    pub max_element: u64,
    pub j_max: u32,
    pub tuples_scanned: u64,
    pub skipped_undefined: u64,
    pub tuple_errors: u64,
    pub min_inversion_index: Option<u32>,
    pub witnesses: Vec<InversionRecord>,
}

/// Execution knobs for [`scan_with_options`].
#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Worker cap; `None` uses the global thread pool.
    pub threads: Option<usize>,
    /// Resumable checkpoint file: a `meta` header line, then one completed
    /// shard per line as `shard <x1>,<x2> <json>`, append-only.
    pub checkpoint: Option<PathBuf>,
}

fn validate_search_params(k: u32, max_element: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::Validation(format!(
            "tuple size k must be at least 2, got {k}"
        )));
    }
    if max_element < u64::from(k) + 1 {
        return Err(Error::Validation(format!(
            "max_element {max_element} cannot fit {k} distinct elements >= 2"
        )));
    }
    Ok(())
}

/// Yields exactly the strictly increasing `k`-tuples with elements in
/// `[2, max_element]`, gcd 1, and no generator representable over the
/// others, in lexicographic order. Element 1 is excluded: it makes every
/// integer representable.
pub fn enumerate_reasonable(
    k: u32,
    max_element: u64,
) -> Result<impl Iterator<Item = GeneratorTuple>> {
    validate_search_params(k, max_element)?;
    Ok((2..=max_element)
        .combinations(k as usize)
        .filter_map(|values| {
            if gcd_of(&values) != 1 {
                return None;
            }
            let tuple =
                GeneratorTuple::new(values).expect("combinations are sorted and distinct");
            matches!(is_reasonable(&tuple), Ok(true)).then_some(tuple)
        }))
}

/// Computes the g-sequence up to `j_max + 1` once, then reports every
/// `i <= j_max` with both values defined and `g_i > g_{i+1}`.
pub fn find_inversions(tuple: &GeneratorTuple, j_max: u32) -> Result<InversionScan> {
    let upper = j_max
        .checked_add(1)
        .ok_or_else(|| Error::Validation(format!("j_max {j_max} too large")))?;
    let seq = g_sequence(tuple, upper)?;
    let mut records = Vec::new();
    let mut skipped_undefined = 0;
    for i in 0..=j_max {
        match (seq.g(i), seq.g(i + 1)) {
            (Some(g_i), Some(g_next)) => {
                if g_i > g_next {
                    records.push(InversionRecord {
                        tuple: tuple.clone(),
                        index: i,
                        g_i,
                        g_next,
                    });
                }
            }
            _ => skipped_undefined += 1,
        }
    }
    Ok(InversionScan {
        records,
        skipped_undefined,
    })
}

/// Scans every reasonable coprime tuple in the region. Equivalent to running
/// [`find_inversions`] over [`enumerate_reasonable`] and merging.
pub fn scan(k: u32, max_element: u64, j_max: u32) -> Result<ScanReport> {
    scan_with_options(k, max_element, j_max, &ScanOptions::default())
}

/// [`scan`] with explicit thread and checkpoint control.
pub fn scan_with_options(
    k: u32,
    max_element: u64,
    j_max: u32,
    options: &ScanOptions,
) -> Result<ScanReport> {
    validate_search_params(k, max_element)?;
    let meta = CheckpointMeta {
        schema: CHECKPOINT_SCHEMA,
        k,
        max_element,
        j_max,
    };
    let mut completed: BTreeMap<(u64, u64), ShardRecord> = BTreeMap::new();
    let mut writer: Option<Mutex<BufWriter<File>>> = None;
    if let Some(path) = &options.checkpoint {
        let (loaded, file) = open_checkpoint(path, &meta)?;
        completed = loaded;
        writer = Some(Mutex::new(BufWriter::new(file)));
    }
    let pending: Vec<(u64, u64)> = shard_ids(max_element)
        .filter(|id| !completed.contains_key(id))
        .collect();
    let writer_ref = writer.as_ref();
    let run = || -> Result<Vec<ShardRecord>> {
        pending
            .par_iter()
            .map(|&shard| {
                let record = run_shard(k, max_element, j_max, shard);
                if let Some(w) = writer_ref {
                    append_shard_line(w, &record)?;
                }
                Ok(record)
            })
            .collect()
    };
    let fresh = match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Resource(format!("cannot build thread pool: {e}")))?
            .install(run),
        None => run(),
    }?;
    for record in fresh {
        completed.insert(record.shard, record);
    }
    Ok(merge_report(k, max_element, j_max, completed.into_values()))
}

/// Least witnessed inversion index in the scanned region. The value is an
/// upper-bound witness for `f(k)` when present, and evidence that `f(k)`
/// exceeds any smaller index under the scanned bounds; it is never an
/// unconditional value of `f(k)`.
pub fn f_lower_bound(k: u32, max_element: u64, j_max: u32) -> Result<Option<u32>> {
    Ok(scan(k, max_element, j_max)?.min_inversion_index)
}

fn shard_ids(max_element: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=max_element).flat_map(move |x1| (x1 + 1..=max_element).map(move |x2| (x1, x2)))
}

fn run_shard(k: u32, max_element: u64, j_max: u32, shard: (u64, u64)) -> ShardRecord {
    let (x1, x2) = shard;
    let mut record = ShardRecord::new(shard);
    let slots = (k - 2) as usize;
    for completion in (x2 + 1..=max_element).combinations(slots) {
        let mut values = Vec::with_capacity(k as usize);
        values.push(x1);
        values.push(x2);
        values.extend(completion);
        if gcd_of(&values) != 1 {
            continue;
        }
        let tuple = GeneratorTuple::new(values).expect("shard tuples are sorted and distinct");
        if !matches!(is_reasonable(&tuple), Ok(true)) {
            continue;
        }
        record.tuples_scanned += 1;
        match find_inversions(&tuple, j_max) {
            Ok(scan) => {
                record.skipped_undefined += scan.skipped_undefined;
                record.records.extend(scan.records);
            }
            Err(_) => record.tuple_errors += 1,
        }
    }
    record
}

fn merge_report(
    k: u32,
    max_element: u64,
    j_max: u32,
    shards: impl IntoIterator<Item = ShardRecord>,
) -> ScanReport {
    let mut tuples_scanned = 0;
    let mut skipped_undefined = 0;
    let mut tuple_errors = 0;
    let mut records = Vec::new();
    for shard in shards {
        tuples_scanned += shard.tuples_scanned;
        skipped_undefined += shard.skipped_undefined;
        tuple_errors += shard.tuple_errors;
        records.extend(shard.records);
    }
    let min_inversion_index = records.iter().map(|r| r.index).min();
    let mut witnesses: Vec<InversionRecord> = match min_inversion_index {
        Some(min) => records.into_iter().filter(|r| r.index == min).collect(),
        None => Vec::new(),
    };
    witnesses.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    ScanReport {
        k,
        max_element,
        j_max,
        tuples_scanned,
        skipped_undefined,
        tuple_errors,
        min_inversion_index,
        witnesses,
    }
}

const CHECKPOINT_SCHEMA: u32 = 1;
const META_PREFIX: &str = "meta ";
const SHARD_PREFIX: &str = "shard ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct CheckpointMeta {
    schema: u32,
    k: u32,
    max_element: u64,
    j_max: u32,
}

/// Per-shard partial result; one checkpoint line per completed shard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ShardRecord {
    shard: (u64, u64),
    tuples_scanned: u64,
    skipped_undefined: u64,
    tuple_errors: u64,
    records: Vec<InversionRecord>,
}

impl ShardRecord {
    fn new(shard: (u64, u64)) -> Self {
        Self {
            shard,
            tuples_scanned: 0,
            skipped_undefined: 0,
            tuple_errors: 0,
            records: Vec::new(),
        }
    }
}

fn open_checkpoint(
    path: &Path,
    meta: &CheckpointMeta,
) -> Result<(BTreeMap<(u64, u64), ShardRecord>, File)> {
    let io_err = |e: std::io::Error| Error::Resource(format!("checkpoint {}: {e}", path.display()));
    let existing = match std::fs::read_to_string(path) {
        Ok(content) => content,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
        Err(e) => return Err(io_err(e)),
    };
    // a final line without its newline is a torn write from an interrupted
    // run; drop it so the shard is rescanned and the file stays well-formed
    let keep = if existing.ends_with('\n') {
        existing.len()
    } else {
        existing.rfind('\n').map_or(0, |i| i + 1)
    };
    if keep < existing.len() {
        let file = OpenOptions::new().write(true).open(path).map_err(io_err)?;
        file.set_len(keep as u64).map_err(io_err)?;
    }
    if keep == 0 {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_err)?;
        let header = serde_json::to_string(meta)
            .map_err(|e| Error::Resource(format!("checkpoint encode: {e}")))?;
        writeln!(file, "{META_PREFIX}{header}")
            .and_then(|()| file.flush())
            .map_err(io_err)?;
        return Ok((BTreeMap::new(), file));
    }
    let completed = parse_checkpoint(&existing[..keep], meta)?;
    let file = OpenOptions::new().append(true).open(path).map_err(io_err)?;
    Ok((completed, file))
}

fn parse_checkpoint(
    content: &str,
    expected: &CheckpointMeta,
) -> Result<BTreeMap<(u64, u64), ShardRecord>> {
    let mut lines = content.lines();
    let header = lines
        .next()
        .and_then(|l| l.strip_prefix(META_PREFIX))
        .ok_or_else(|| Error::Validation("checkpoint file is missing its meta header".into()))?;
    let meta: CheckpointMeta = serde_json::from_str(header)
        .map_err(|e| Error::Validation(format!("malformed checkpoint meta header: {e}")))?;
    if meta != *expected {
        return Err(Error::Validation(format!(
            "checkpoint was written by a different scan \
             (k={}, max_element={}, j_max={}, schema={})",
            meta.k, meta.max_element, meta.j_max, meta.schema
        )));
    }
    let mut completed = BTreeMap::new();
    for line in lines {
        let record = parse_shard_line(line)?;
        completed.insert(record.shard, record);
    }
    Ok(completed)
}

fn parse_shard_line(line: &str) -> Result<ShardRecord> {
    let malformed = || Error::Validation(format!("malformed checkpoint line: {line:?}"));
    let rest = line.strip_prefix(SHARD_PREFIX).ok_or_else(malformed)?;
    let (id, json) = rest.split_once(' ').ok_or_else(malformed)?;
    let record: ShardRecord = serde_json::from_str(json).map_err(|_| malformed())?;
    if format!("{},{}", record.shard.0, record.shard.1) != id {
        return Err(malformed());
    }
    Ok(record)
}

fn append_shard_line(writer: &Mutex<BufWriter<File>>, record: &ShardRecord) -> Result<()> {
    let json = serde_json::to_string(record)
        .map_err(|e| Error::Resource(format!("checkpoint encode: {e}")))?;
    let mut w = writer.lock().expect("checkpoint writer poisoned");
    writeln!(w, "{SHARD_PREFIX}{},{} {json}", record.shard.0, record.shard.1)
        .and_then(|()| w.flush())
        .map_err(|e| Error::Resource(format!("checkpoint write: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(values: &[u64]) -> GeneratorTuple {
        GeneratorTuple::new(values.to_vec()).unwrap()
    }

    fn tuples(k: u32, max_element: u64) -> Vec<Vec<u64>> {
        enumerate_reasonable(k, max_element)
            .unwrap()
            .map(|t| t.generators().to_vec())
            .collect()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(enumerate_reasonable(1, 10).is_err());
        assert!(enumerate_reasonable(3, 3).is_err());
        assert!(scan(1, 10, 1).is_err());
    }

    #[test]
    fn enumerates_pairs() {
        assert_eq!(tuples(2, 4), vec![vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn enumerates_triples() {
        assert_eq!(tuples(3, 5), vec![vec![3, 4, 5]]);
        assert_eq!(tuples(3, 6), vec![vec![3, 4, 5], vec![4, 5, 6]]);
    }

    #[test]
    fn excludes_unreasonable_quadruples() {
        let all = tuples(4, 10);
        assert_eq!(all.len(), 12);
        assert_eq!(all[0], vec![4, 5, 6, 7]);
        assert!(!all.contains(&vec![4, 5, 8, 10]));
    }

    #[test]
    fn finds_the_quadruple_generator_inversion_at_thirty_five() {
        let scan = find_inversions(&tuple(&[4, 7, 19]), 36).unwrap();
        assert_eq!(scan.skipped_undefined, 0);
        assert_eq!(scan.records.len(), 1);
        let r = &scan.records[0];
        assert_eq!((r.index, r.g_i, r.g_next), (35, 181, 180));
    }

    #[test]
    fn triple_inversion_appears_first_at_fourteen() {
        let scan = find_inversions(&tuple(&[8, 9, 15]), 15).unwrap();
        assert!(scan
            .records
            .iter()
            .any(|r| (r.index, r.g_i, r.g_next) == (14, 172, 169)));
        assert!(scan.records.iter().all(|r| r.index >= 14));
    }

    #[test]
    fn pairs_never_invert() {
        let scan = find_inversions(&tuple(&[2, 3]), 10).unwrap();
        assert!(scan.records.is_empty());
        assert_eq!(scan.skipped_undefined, 0);
    }

    #[test]
    fn scan_small_triples_region() {
        let report = scan(3, 15, 15).unwrap();
        assert_eq!(report.tuples_scanned, 148);
        assert_eq!(report.skipped_undefined, 120);
        assert_eq!(report.tuple_errors, 0);
        assert_eq!(report.min_inversion_index, Some(14));
        assert_eq!(report.witnesses.len(), 1);
        let w = &report.witnesses[0];
        assert_eq!(w.tuple.generators(), &[8, 9, 15]);
        assert_eq!((w.g_i, w.g_next), (172, 169));
    }

    #[test]
    fn scan_small_quintuples_region() {
        let report = scan(5, 15, 1).unwrap();
        assert_eq!(report.tuples_scanned, 109);
        assert_eq!(report.min_inversion_index, Some(0));
        assert!(report
            .witnesses
            .iter()
            .any(|w| w.tuple.generators() == [8, 9, 11, 14, 15]));
    }

    #[test]
    fn scan_pairs_finds_no_inversions() {
        let report = scan(2, 20, 8).unwrap();
        assert_eq!(report.tuples_scanned, 108);
        assert_eq!(report.min_inversion_index, None);
        assert!(report.witnesses.is_empty());
        assert_eq!(report.skipped_undefined, 0);
        assert_eq!(f_lower_bound(2, 20, 8).unwrap(), None);
    }

    #[test]
    fn scan_matches_enumeration_stream() {
        let report = scan(3, 12, 15).unwrap();
        assert_eq!(report.tuples_scanned, 57);
        assert_eq!(report.skipped_undefined, 46);
        assert_eq!(report.min_inversion_index, None);
        assert_eq!(
            report.tuples_scanned as usize,
            enumerate_reasonable(3, 12).unwrap().count()
        );
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let one = scan_with_options(
            3,
            13,
            10,
            &ScanOptions {
                threads: Some(1),
                checkpoint: None,
            },
        )
        .unwrap();
        let four = scan_with_options(
            3,
            13,
            10,
            &ScanOptions {
                threads: Some(4),
                checkpoint: None,
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn growing_the_region_can_only_lower_the_minimum() {
        let small = scan(3, 12, 15).unwrap().min_inversion_index;
        let large = scan(3, 15, 15).unwrap().min_inversion_index;
        match (small, large) {
            (Some(s), Some(l)) => assert!(l <= s),
            (Some(_), None) => panic!("minimum disappeared as the region grew"),
            (None, _) => {}
        }
    }

    #[test]
    fn checkpoint_round_trip_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let options = ScanOptions {
            threads: Some(1),
            checkpoint: Some(path.clone()),
        };
        let first = scan_with_options(3, 12, 15, &options).unwrap();
        let lines_after_first = std::fs::read_to_string(&path).unwrap().lines().count();

        // all shards already recorded: nothing is recomputed, report identical
        let second = scan_with_options(3, 12, 15, &options).unwrap();
        assert_eq!(first, second);
        let content = std::fs::read_to_string(&path).unwrap();
        assert_eq!(content.lines().count(), lines_after_first);

        // drop half the shard lines and append a torn tail: the scan redoes
        // the missing shards and still produces the same report
        let kept: Vec<&str> = content.lines().take(lines_after_first / 2).collect();
        std::fs::write(&path, format!("{}\nshard 9,1", kept.join("\n"))).unwrap();
        let resumed = scan_with_options(3, 12, 15, &options).unwrap();
        assert_eq!(first, resumed);

        // the torn tail was truncated away, so the file parses again
        let third = scan_with_options(3, 12, 15, &options).unwrap();
        assert_eq!(first, third);
    }

    #[test]
    fn checkpoint_rejects_mismatched_parameters() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let options = ScanOptions {
            threads: Some(1),
            checkpoint: Some(path),
        };
        scan_with_options(2, 6, 2, &options).unwrap();
        assert!(matches!(
            scan_with_options(2, 7, 2, &options),
            Err(Error::Validation(_))
        ));
    }
}
