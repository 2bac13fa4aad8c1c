//! `frobgen`: exact representation counts, generalized Frobenius numbers,
//! closed-form family verification, and inversion scans.
//!
//! Exit codes: 0 success, 2 input validation, 3 mathematical domain error
//! (non-coprime tuple, generator 1), 4 resource limit or overflow.

mod output;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use frobgen::{
    classify, rep_count_exact, scan_with_options, summarize, verify_coprime, verify_lemma1,
    verify_lemma2, verify_pair, verify_thm1, verify_thm2, Error, GSequence, GeneratorTuple,
    ScanOptions,
};
use serde_json::{json, Value};

use output::{Format, Payload};

const THREADS_ENV: &str = "FROBGEN_THREADS";

#[derive(Parser)]
#[command(
    name = "frobgen",
    version,
    about = "Exact representation counts, generalized Frobenius numbers, and inversion scans"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Omit the timing field from output.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

/// Comma-separated list of generators, e.g. `4,7,19`.
#[derive(Debug, Clone)]
struct GeneratorList(Vec<u64>);

impl FromStr for GeneratorList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("`{part}` is not a positive integer"))
            })
            .collect::<Result<Vec<u64>, String>>()?;
        Ok(Self(values))
    }
}

/// Inclusive range `a..b`, or a single value `a`.
#[derive(Debug, Clone, Copy)]
struct RangeArg {
    start: u64,
    end: u64,
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (a, b),
            None => (s, s),
        };
        let parse = |part: &str| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{part}` is not a non-negative integer"))
        };
        let (start, end) = (parse(start)?, parse(end)?);
        if start > end {
            return Err(format!("range {s} is empty (start exceeds end)"));
        }
        Ok(Self { start, end })
    }
}

impl RangeArg {
    fn as_u64(self) -> RangeInclusive<u64> {
        self.start..=self.end
    }

    fn as_u32(self) -> Result<RangeInclusive<u32>, Error> {
        let narrow = |v: u64| {
            u32::try_from(v).map_err(|_| Error::Validation(format!("{v} exceeds u32 range")))
        };
        Ok(narrow(self.start)?..=narrow(self.end)?)
    }

    fn echo(self) -> String {
        format!("{}..{}", self.start, self.end)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact representation count R(t) of a target over the generators.
    Count {
        /// Comma-separated generators, e.g. 4,7,19.
        #[arg(short, long)]
        generators: GeneratorList,
        /// Target integer.
        #[arg(short, long)]
        t: u64,
    },
    /// Largest integer with exactly j representations, for j = 0..=j_max.
    Gseq {
        /// Comma-separated generators.
        #[arg(short, long)]
        generators: GeneratorList,
        /// Largest representation count to report.
        #[arg(short, long)]
        j_max: u32,
    },
    /// Gcd, coprimality, and the reasonableness test with witnesses.
    Classify {
        /// Comma-separated generators.
        #[arg(short, long)]
        generators: GeneratorList,
    },
    /// Verify a closed-form family against the engine over parameter ranges.
    Verify {
        #[command(subcommand)]
        family: VerifyFamily,
    },
    /// Scan all reasonable coprime k-tuples for inversions g_i > g_{i+1}.
    Scan {
        /// Tuple size.
        #[arg(short, long)]
        k: u32,
        /// Largest allowed element.
        #[arg(short, long)]
        max_element: u64,
        /// Largest inversion index examined.
        #[arg(short, long, default_value_t = 15)]
        j_max: u32,
        /// Worker thread cap (falls back to FROBGEN_THREADS, then all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Resumable checkpoint file, one completed shard per line.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyFamily {
    /// g_0 = n^2-3n+1 and g_k = (6k+3)n-1 over {2n-2, 2n-1, 2n, 3n-3, 3n}.
    Thm1 {
        /// Range of n, e.g. 7..30.
        #[arg(long)]
        n: RangeArg,
        /// Range of k; k = 0 checks the g_0 form.
        #[arg(long)]
        k: RangeArg,
    },
    /// Representation count of (6k+3)n-1: at least k (n >= 4), exactly k (n > 6k+3).
    Lemma1 {
        #[arg(long)]
        n: RangeArg,
        #[arg(long)]
        k: RangeArg,
    },
    /// Representability of the run [k(n-1), kn] for k = 2 or k >= 4.
    Lemma2 {
        #[arg(long)]
        n: RangeArg,
        #[arg(long)]
        k: RangeArg,
    },
    /// Cardinality, reasonableness, g_0 = 2n+7, g_1 = 2n+6 of the n-element family.
    Thm2 {
        #[arg(long)]
        n: RangeArg,
    },
    /// g_0 = 50n^2-1 and g_1 = 50n^2-5n over {10n-1, 15n-1, 20n-1, 25n, 30n-1}.
    Coprime {
        #[arg(long)]
        n: RangeArg,
    },
    /// Pair closed form g_j = (j+1) x1 x2 - x1 - x2.
    Pair {
        #[arg(long)]
        x1: u64,
        #[arg(long)]
        x2: u64,
        /// Range of j, e.g. 0..10.
        #[arg(long)]
        j: RangeArg,
    },
}

fn main() {
    let cli = Cli::parse();
    let format = cli.format;
    let no_timing = cli.no_timing;
    let started = Instant::now();
    let outcome = execute(cli.command).and_then(|(command, input, payload)| {
        let elapsed = (!no_timing).then(|| started.elapsed());
        output::emit(format, command, &input, &payload, elapsed)
    });
    if let Err(error) = outcome {
        eprintln!("error: {error}");
        std::process::exit(exit_code(&error));
    }
}

fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Validation(_) => 2,
        Error::Domain(_) => 3,
        Error::Overflow(_) | Error::Resource(_) => 4,
    }
}

fn execute(command: Command) -> Result<(&'static str, Value, Payload), Error> {
    match command {
        Command::Count { generators, t } => {
            let input = json!({ "generators": generators.0, "t": t });
            let tuple = GeneratorTuple::new(generators.0)?;
            let count = rep_count_exact(&tuple, t)?;
            Ok((
                "count",
                input,
                Payload::Count {
                    tuple,
                    target: t,
                    count,
                },
            ))
        }
        Command::Gseq { generators, j_max } => {
            let input = json!({ "generators": generators.0, "j_max": j_max });
            let tuple = GeneratorTuple::new(generators.0)?;
            let seq: GSequence = frobgen::g_sequence(&tuple, j_max)?;
            Ok((
                "gseq",
                input,
                Payload::GSeq {
                    values: seq.values().to_vec(),
                    certified_window_start: seq.certified_window_start(),
                    tuple,
                },
            ))
        }
        Command::Classify { generators } => {
            let input = json!({ "generators": generators.0 });
            let tuple = GeneratorTuple::new(generators.0)?;
            let classification = classify(&tuple)?;
            Ok((
                "classify",
                input,
                Payload::Classify {
                    tuple,
                    classification,
                },
            ))
        }
        Command::Verify { family } => {
            let (name, input, results) = run_verify(family)?;
            let summary = summarize(&results);
            Ok((
                "verify",
                input,
                Payload::Verify {
                    family: name,
                    results,
                    summary,
                },
            ))
        }
        Command::Scan {
            k,
            max_element,
            j_max,
            threads,
            checkpoint,
        } => {
            let threads = match threads {
                Some(n) => Some(validated_thread_count(n)?),
                None => threads_from_env()?,
            };
            let input = json!({
                "k": k,
                "max_element": max_element,
                "j_max": j_max,
                "threads": threads,
                "checkpoint": checkpoint.as_ref().map(|p| p.display().to_string()),
            });
            let options = ScanOptions { threads, checkpoint };
            let report = scan_with_options(k, max_element, j_max, &options)?;
            Ok(("scan", input, Payload::Scan(report)))
        }
    }
}

fn run_verify(
    family: VerifyFamily,
) -> Result<(&'static str, Value, Vec<frobgen::FamilyCheckResult>), Error> {
    match family {
        VerifyFamily::Thm1 { n, k } => Ok((
            "thm1",
            json!({ "family": "thm1", "n": n.echo(), "k": k.echo() }),
            verify_thm1(n.as_u64(), k.as_u32()?),
        )),
        VerifyFamily::Lemma1 { n, k } => Ok((
            "lemma1",
            json!({ "family": "lemma1", "n": n.echo(), "k": k.echo() }),
            verify_lemma1(n.as_u64(), k.as_u32()?),
        )),
        VerifyFamily::Lemma2 { n, k } => Ok((
            "lemma2",
            json!({ "family": "lemma2", "n": n.echo(), "k": k.echo() }),
            verify_lemma2(n.as_u64(), k.as_u64()),
        )),
        VerifyFamily::Thm2 { n } => Ok((
            "thm2",
            json!({ "family": "thm2", "n": n.echo() }),
            verify_thm2(n.as_u64()),
        )),
        VerifyFamily::Coprime { n } => Ok((
            "coprime",
            json!({ "family": "coprime", "n": n.echo() }),
            verify_coprime(n.as_u64()),
        )),
        VerifyFamily::Pair { x1, x2, j } => Ok((
            "pair",
            json!({ "family": "pair", "x1": x1, "x2": x2, "j": j.echo() }),
            verify_pair(x1, x2, j.as_u32()?)?,
        )),
    }
}

fn validated_thread_count(n: usize) -> Result<usize, Error> {
    if n == 0 {
        return Err(Error::Validation("thread count must be at least 1".into()));
    }
    Ok(n)
}

fn threads_from_env() -> Result<Option<usize>, Error> {
    match std::env::var(THREADS_ENV) {
        Ok(value) => {
            let n = value.trim().parse::<usize>().map_err(|_| {
                Error::Validation(format!("{THREADS_ENV} must be a positive integer"))
            })?;
            validated_thread_count(n).map(Some)
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(std::env::VarError::NotUnicode(_)) => Err(Error::Validation(format!(
            "{THREADS_ENV} must be a positive integer"
        ))),
    }
}
