//! JSON file formats: function value tables, exact expansions, and the
//! float-valued output of the noise operator.
//!
//! Rationals travel as strings ("p/q", or plain "p" for integers), always
//! in lowest terms; sets are sorted 1-based index lists. Writers emit
//! records in a canonical order (sets lexicographic; top sets by degree
//! then lexicographic), so re-serializing a parsed file is byte-stable.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use slice_harmonics::combinatorics::TopSet;
use slice_harmonics::expansion::{SliceFunction, YoungExpansion};
use slice_harmonics::operators::RealExpansion;
use slice_harmonics::Rational;

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct FunctionFile {
    pub n: usize,
    pub k: usize,
    pub values: Vec<ValueRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ValueRecord {
    pub set: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ExpansionFile {
    pub n: usize,
    pub k: usize,
    pub coeffs: Vec<CoeffRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub top_set: Vec<usize>,
    pub value: String,
}

/// Output of the noise operator: same shape as an expansion file, but the
/// values are decimal floats (15 significant digits) and the time is
/// recorded.
#[derive(Debug, Serialize, Deserialize)]
pub struct NoiseFile {
    pub n: usize,
    pub k: usize,
    pub t: f64,
    pub coeffs: Vec<CoeffRecord>,
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let parse_int = |part: &str| -> Result<BigInt, String> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("'{s}' is not a rational (bad integer '{part}')"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == BigInt::from(0) {
                return Err(format!("'{s}' has a zero denominator"));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
    }
}

/// Lowest-terms string form: "p/q", or "p" when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal float with 15 significant digits, for noise output.
pub fn format_float(v: f64) -> String {
    format!("{v:.14e}")
}

impl FunctionFile {
    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("{}: not a function file: {e}", path.display())))
    }

    pub fn to_function(&self) -> Result<SliceFunction, CliError> {
        let mut records = Vec::with_capacity(self.values.len());
        for (idx, rec) in self.values.iter().enumerate() {
            let value = parse_rational(&rec.value).map_err(|e| {
                CliError::input(format!("record {idx} (set {:?}): {e}", rec.set))
            })?;
            records.push((rec.set.clone(), value));
        }
        SliceFunction::from_records(self.n, self.k, records)
            .map_err(|e| CliError::input(e.to_string()))
    }

    pub fn from_function(f: &SliceFunction) -> Self {
        FunctionFile {
            n: f.n(),
            k: f.k(),
            values: f
                .iter()
                .map(|(set, value)| ValueRecord {
                    set: set.to_vec(),
                    value: format_rational(value),
                })
                .collect(),
        }
    }
}

impl ExpansionFile {
    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::input(format!("{}: not an expansion file: {e}", path.display()))
        })
    }

    pub fn to_expansion(&self) -> Result<YoungExpansion, CliError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (idx, rec) in self.coeffs.iter().enumerate() {
            let b = TopSet::new(rec.top_set.clone(), self.n).map_err(|e| {
                CliError::input(format!("coefficient {idx} ({:?}): {e}", rec.top_set))
            })?;
            let value = parse_rational(&rec.value).map_err(|e| {
                CliError::input(format!("coefficient {idx} ({:?}): {e}", rec.top_set))
            })?;
            coeffs.push((b, value));
        }
        YoungExpansion::new(self.n, self.k, coeffs).map_err(|e| CliError::input(e.to_string()))
    }

    pub fn from_expansion(e: &YoungExpansion) -> Self {
        let mut records: Vec<_> = e.coefficients().iter().collect();
        records.sort_by_key(|(b, _)| (b.len(), b.entries().to_vec()));
        ExpansionFile {
            n: e.n(),
            k: e.k(),
            coeffs: records
                .into_iter()
                .map(|(b, value)| CoeffRecord {
                    top_set: b.entries().to_vec(),
                    value: format_rational(value),
                })
                .collect(),
        }
    }
}

impl NoiseFile {
    pub fn from_real(e: &RealExpansion, t: f64) -> Self {
        let mut records: Vec<_> = e.coefficients().iter().collect();
        records.sort_by_key(|(b, _)| (b.len(), b.entries().to_vec()));
        NoiseFile {
            n: e.n(),
            k: e.k(),
            t,
            coeffs: records
                .into_iter()
                .map(|(b, value)| CoeffRecord {
                    top_set: b.entries().to_vec(),
                    value: format_float(*value),
                })
                .collect(),
        }
    }
}

/// Canonical JSON text: pretty, two-space indent, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}
