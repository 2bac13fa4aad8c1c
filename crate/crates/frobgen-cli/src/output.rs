//! Output envelope and rendering.
//!
//! Every command emits exactly one envelope on success; errors go to stderr
//! with a nonzero exit status. The JSON mode is byte-stable for identical
//! inputs once the timing field is suppressed with `--no-timing`. CSV is
//! available for verification sweeps only.

use std::time::Duration;

use frobgen::{
    CheckSummary, Error, FamilyCheckResult, GeneratorTuple, Relation, ScanReport,
    TupleClassification,
};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Table,
    /// One JSON envelope on stdout.
    Json,
    /// Comma-separated rows (verify sweeps only).
    Csv,
}

pub enum Payload {
    Count {
        tuple: GeneratorTuple,
        target: u64,
        count: u64,
    },
    GSeq {
        tuple: GeneratorTuple,
        values: Vec<Option<u64>>,
        certified_window_start: i64,
    },
    Classify {
        tuple: GeneratorTuple,
        classification: TupleClassification,
    },
    Verify {
        family: &'static str,
        results: Vec<FamilyCheckResult>,
        summary: CheckSummary,
    },
    Scan(ScanReport),
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    input: &'a Value,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
    schema: u32,
    version: &'a str,
}

impl Payload {
    fn result_value(&self) -> Value {
        match self {
            Payload::Count { tuple, target, count } => json!({
                "tuple": tuple.generators(),
                "t": target,
                "count": count,
            }),
            Payload::GSeq {
                tuple,
                values,
                certified_window_start,
            } => json!({
                "tuple": tuple.generators(),
                "g": values,
                "certified_window_start": certified_window_start,
            }),
            Payload::Classify {
                tuple,
                classification,
            } => json!({
                "tuple": tuple.generators(),
                "classification": classification,
            }),
            Payload::Verify {
                family,
                results,
                summary,
            } => json!({
                "family": family,
                "results": results,
                "summary": summary,
            }),
            Payload::Scan(report) => {
                serde_json::to_value(report).expect("scan report serializes")
            }
        }
    }
}

/// Renders the payload in the requested format on stdout.
pub fn emit(
    format: Format,
    command: &'static str,
    input: &Value,
    payload: &Payload,
    elapsed: Option<Duration>,
) -> Result<(), Error> {
    match format {
        Format::Json => {
            let envelope = Envelope {
                command,
                input,
                result: payload.result_value(),
                elapsed_ms: elapsed.map(|d| d.as_millis()),
                schema: SCHEMA_VERSION,
                version: env!("CARGO_PKG_VERSION"),
            };
            let line =
                serde_json::to_string(&envelope).expect("envelope serializes to JSON");
            println!("{line}");
            Ok(())
        }
        Format::Table => {
            render_table(payload);
            if let Some(d) = elapsed {
                println!("elapsed: {} ms", d.as_millis());
            }
            Ok(())
        }
        Format::Csv => {
            let Payload::Verify { results, .. } = payload else {
                return Err(Error::Validation(
                    "csv output is only available for verify sweeps".into(),
                ));
            };
            print!("{}", render_csv(results));
            Ok(())
        }
    }
}

fn render_table(payload: &Payload) {
    match payload {
        Payload::Count { tuple, target, count } => {
            println!("tuple: {tuple}");
            println!("R({target}) = {count}");
        }
        Payload::GSeq {
            tuple,
            values,
            certified_window_start,
        } => {
            println!("tuple: {tuple}");
            println!("certified window start: {certified_window_start}");
            for (j, g) in values.iter().enumerate() {
                match g {
                    Some(v) => println!("g_{j} = {v}"),
                    None => println!("g_{j} = undefined"),
                }
            }
        }
        Payload::Classify {
            tuple,
            classification,
        } => {
            println!("tuple: {tuple}");
            println!("gcd: {}", classification.gcd);
            println!("coprime: {}", if classification.coprime { "yes" } else { "no" });
            println!(
                "reasonable: {}",
                if classification.reasonable { "yes" } else { "no" }
            );
            if !classification.witnesses.is_empty() {
                println!("witnesses:");
                for w in &classification.witnesses {
                    println!("  {w}");
                }
            }
        }
        Payload::Verify {
            family,
            results,
            summary,
        } => {
            println!("family: {family}");
            println!(
                "{:<18} {:<22} {:<3} {:>10} {:>10} {:<7}",
                "check", "params", "rel", "expected", "actual", "outcome"
            );
            for r in results {
                println!(
                    "{:<18} {:<22} {:<3} {:>10} {:>10} {:<7}{}",
                    r.family,
                    params_string(r),
                    relation_str(r.relation),
                    opt_string(r.expected),
                    opt_string(r.actual),
                    outcome_str(r),
                    r.note
                        .as_deref()
                        .map(|n| format!("  # {n}"))
                        .unwrap_or_default(),
                );
            }
            println!(
                "summary: pass={} fail={} skipped={}",
                summary.pass, summary.fail, summary.skipped
            );
        }
        Payload::Scan(report) => {
            println!(
                "k = {}, max element = {}, j_max = {}",
                report.k, report.max_element, report.j_max
            );
            println!("tuples scanned: {}", report.tuples_scanned);
            println!("skipped undefined pairs: {}", report.skipped_undefined);
            if report.tuple_errors > 0 {
                println!("tuple errors: {}", report.tuple_errors);
            }
            match report.min_inversion_index {
                Some(min) => {
                    println!("min inversion index: {min}");
                    println!("witnesses:");
                    for w in &report.witnesses {
                        println!(
                            "  {}: g_{} = {} > g_{} = {}",
                            w.tuple,
                            w.index,
                            w.g_i,
                            w.index + 1,
                            w.g_next
                        );
                    }
                }
                None => println!("min inversion index: none (no inversion found)"),
            }
        }
    }
}

fn params_string(r: &FamilyCheckResult) -> String {
    r.params
        .iter()
        .map(|(name, value)| format!("{name}={value}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn relation_str(relation: Relation) -> &'static str {
    match relation {
        Relation::Eq => "=",
        Relation::Ge => ">=",
    }
}

fn outcome_str(r: &FamilyCheckResult) -> &'static str {
    match r.outcome {
        frobgen::CheckOutcome::Pass => "pass",
        frobgen::CheckOutcome::Fail => "fail",
        frobgen::CheckOutcome::Skipped => "skipped",
    }
}

fn opt_string(v: Option<u64>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn render_csv(results: &[FamilyCheckResult]) -> String {
    let mut out = String::from("check,params,relation,expected,actual,outcome,note\n");
    for r in results {
        let fields = [
            r.family.to_string(),
            params_string(r),
            relation_str(r.relation).to_string(),
            r.expected.map(|v| v.to_string()).unwrap_or_default(),
            r.actual.map(|v| v.to_string()).unwrap_or_default(),
            outcome_str(r).to_string(),
            r.note.clone().unwrap_or_default(),
        ];
        let row: Vec<String> = fields.iter().map(|f| csv_escape(f)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
