//! Exact counting of non-negative integer representations over a generator
//! set, generalized Frobenius numbers `g_j` with a certified termination
//! rule, closed-form family verification, and inversion scans over tuple
//! space.
//!
//! `R(t)` counts the coefficient vectors `(a_1..a_n) >= 0` with
//! `sum a_i x_i = t`; `g_j` is the largest `t` with `R(t) = j`, left
//! undefined when no such `t` exists. An *inversion* is an index `i` with
//! `g_i > g_{i+1}`.
//!
//! - [`count`]: saturating count tables, exact counts, window certificates
//! - [`gseq`]: `g_j` extraction with certified completeness
//! - [`tuple`]: validation and the reasonableness condition
//! - [`families`]: parameterized families and their closed-form sweeps
//! - [`search`]: enumeration, inversion detection, sharded scans
//! - [`oracle`]: independent brute-force reference for cross-validation
//!
//! All arithmetic is exact: tables saturate at an explicit cap and the exact
//! counter fails loudly on 64-bit overflow instead of wrapping.

pub mod count;
pub mod error;
pub mod families;
pub mod gseq;
pub mod oracle;
pub mod search;
pub mod tuple;

pub use count::{rep_count_exact, CountTable};
pub use error::{Error, Result};
pub use families::{
    family_coprime, family_thm1, family_thm2, pair_g, summarize, verify_coprime, verify_lemma1,
    verify_lemma2, verify_pair, verify_thm1, verify_thm2, CheckOutcome, CheckSummary,
    FamilyCheckResult, Relation,
};
pub use gseq::{frobenius, g_sequence, GSequence};
pub use search::{
    enumerate_reasonable, f_lower_bound, find_inversions, scan, scan_with_options,
    InversionRecord, InversionScan, ScanOptions, ScanReport,
};
pub use tuple::{classify, is_reasonable, GeneratorTuple, RepresentationWitness, TupleClassification};
