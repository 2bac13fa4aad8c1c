//! Generator tuples: validation, normalization, and the reasonableness test.
//!
//! A tuple is *reasonable* when no generator can be written as a non-negative
//! integer combination of the remaining generators. Unreasonable tuples admit
//! trivial non-monotonicity in their g-sequence, so the search layer filters
//! them out; the counting layer accepts any valid tuple.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::count::CountTable;
use crate::error::{Error, Result};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub(crate) fn gcd_of(values: &[u64]) -> u64 {
    values.iter().copied().fold(0, gcd)
}

/// A validated generator set: strictly increasing positive integers with the
/// gcd cached at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct GeneratorTuple {
    generators: Vec<u64>,
    gcd: u64,
}

impl GeneratorTuple {
    /// Sorts `values` ascending and validates them: the list must be
    /// non-empty, all positive, and free of duplicates.
    pub fn new(values: impl Into<Vec<u64>>) -> Result<Self> {
        let mut generators = values.into();
        if generators.is_empty() {
            return Err(Error::Validation("generator list is empty".into()));
        }
        if generators.contains(&0) {
            return Err(Error::Validation("generators must be positive".into()));
        }
        generators.sort_unstable();
        if let Some(w) = generators.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!("duplicate generator {}", w[0])));
        }
        let gcd = gcd_of(&generators);
        Ok(Self { generators, gcd })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty lists
    }

    pub fn min_generator(&self) -> u64 {
        self.generators[0]
    }

    pub fn max_generator(&self) -> u64 {
        *self.generators.last().expect("tuple is non-empty")
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd == 1
    }

    pub fn contains(&self, value: u64) -> bool {
        self.generators.binary_search(&value).is_ok()
    }
}

impl fmt::Display for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl TryFrom<Vec<u64>> for GeneratorTuple {
    type Error = Error;

    fn try_from(values: Vec<u64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<GeneratorTuple> for Vec<u64> {
    fn from(tuple: GeneratorTuple) -> Self {
        tuple.generators
    }
}

/// A generator together with a representation of it over the remaining
/// generators. `coefficients` aligns with `others` (ascending); the dot
/// product of the two equals `element`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationWitness {
    pub element: u64,
    pub others: Vec<u64>,
    pub coefficients: Vec<u64>,
}

impl fmt::Display for RepresentationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.element)?;
        let mut first = true;
        for (&g, &c) in self.others.iter().zip(&self.coefficients) {
            if c == 0 {
                continue;
            }
            write!(f, "{}{c}*{g}", if first { " " } else { " + " })?;
            first = false;
        }
        if first {
            // only possible for element 0, which construction rules out
            write!(f, " 0")?;
        }
        Ok(())
    }
}

/// Classification of a tuple: gcd, coprimality, and the reasonableness test
/// with one witness per violating generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleClassification {
    pub gcd: u64,
    pub coprime: bool,
    pub reasonable: bool,
    pub witnesses: Vec<RepresentationWitness>,
}

/// Runs the reasonableness test: for each generator, a count table over the
/// remaining generators (cap 1, bound x) decides representability. Violations
/// carry the lexicographically smallest coefficient vector as a witness.
///
/// A single-element tuple is reasonable vacuously: there are no "others" to
/// represent it.
pub fn classify(tuple: &GeneratorTuple) -> Result<TupleClassification> {
    let mut witnesses = Vec::new();
    for (i, &x) in tuple.generators().iter().enumerate() {
        let others = others_of(tuple, i);
        if others.is_empty() {
            continue;
        }
        if representable_over(&others, x)? {
            let coefficients = lex_smallest_representation(&others, x)
                .expect("representability was just established");
            witnesses.push(RepresentationWitness {
                element: x,
                others,
                coefficients,
            });
        }
    }
    Ok(TupleClassification {
        gcd: tuple.gcd(),
        coprime: tuple.is_coprime(),
        reasonable: witnesses.is_empty(),
        witnesses,
    })
}

/// Reasonableness test without witness recovery; stops at the first
/// violation. Used on enumeration hot paths.
pub fn is_reasonable(tuple: &GeneratorTuple) -> Result<bool> {
    for (i, &x) in tuple.generators().iter().enumerate() {
        let others = others_of(tuple, i);
        if others.is_empty() {
            continue;
        }
        if representable_over(&others, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn others_of(tuple: &GeneratorTuple, skip: usize) -> Vec<u64> {
    tuple
        .generators()
        .iter()
        .enumerate()
        .filter_map(|(j, &g)| (j != skip).then_some(g))
        .collect()
}

fn representable_over(generators: &[u64], target: u64) -> Result<bool> {
    let tuple = GeneratorTuple::new(generators.to_vec()).expect("others are sorted and distinct");
    let table = CountTable::build(&tuple, 1, target)?;
    Ok(table.count(target) > 0)
}

/// Lexicographically smallest coefficient vector over `generators`
/// (ascending) summing to `target`, trying the coefficient of the smallest
/// generator first.
fn lex_smallest_representation(generators: &[u64], target: u64) -> Option<Vec<u64>> {
    match generators.split_first() {
        None => (target == 0).then(Vec::new),
        Some((&x, rest)) => {
            if rest.is_empty() {
                return (target % x == 0).then(|| vec![target / x]);
            }
            for a in 0..=target / x {
                if let Some(mut tail) = lex_smallest_representation(rest, target - a * x) {
                    let mut coeffs = Vec::with_capacity(generators.len());
                    coeffs.push(a);
                    coeffs.append(&mut tail);
                    return Some(coeffs);
                }
            }
            None
        }
    }
}
