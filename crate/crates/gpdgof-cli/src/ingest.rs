//! CSV ingestion: one positive column for complete data, `time,delta` for
//! right-censored data. Malformed rows are hard errors carrying the line
//! number; nothing is silently coerced.

use crate::datasets;
use gpdgof::{CensoredSample, Sample};
use std::fmt;
use std::fs;
use std::path::Path;

/// Ingestion failure with enough context to fix the input.
#[derive(Debug)]
pub enum IngestError {
    Io(String),
    /// Line number (1-based) and description.
    Malformed { line: usize, message: String },
    Empty(String),
    DigestMismatch { name: String, expected: String, actual: String },
    Invalid(String),
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngestError::Io(m) => write!(f, "cannot read input: {m}"),
            IngestError::Malformed { line, message } => {
                write!(f, "line {line}: {message}")
            }
            IngestError::Empty(m) => write!(f, "no usable data: {m}"),
            IngestError::DigestMismatch { name, expected, actual } => write!(
                f,
                "bundled dataset {name} failed its digest check: expected {expected}, got {actual}"
            ),
            IngestError::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for IngestError {}

/// A parsed data set plus provenance.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub digest: String,
    pub body: DatasetBody,
}

#[derive(Debug, Clone)]
pub enum DatasetBody {
    Complete(Sample),
    Censored(CensoredSample),
}

impl Dataset {
    pub fn n(&self) -> usize {
        match &self.body {
            DatasetBody::Complete(s) => s.len(),
            DatasetBody::Censored(c) => c.len(),
        }
    }
}

/// Load a data source: a bundled name (`ozone`, `bilbao`) or a file path.
/// Bundled sources are verified against their pinned digests.
pub fn load(source: &str) -> Result<Dataset, IngestError> {
    if let Some((csv, pinned)) = datasets::bundled(source) {
        let actual = datasets::sha256_hex(csv.as_bytes());
        if actual != pinned {
            return Err(IngestError::DigestMismatch {
                name: source.to_string(),
                expected: pinned.to_string(),
                actual,
            });
        }
        return parse(source, csv);
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path).map_err(|e| IngestError::Io(format!("{source}: {e}")))?;
    parse(source, &text)
}

/// Parse CSV text. A `time,delta` header selects the censored layout;
/// otherwise the file must hold one positive number per row (an optional
/// non-numeric first row is treated as a header).
pub fn parse(name: &str, text: &str) -> Result<Dataset, IngestError> {
    let digest = datasets::sha256_hex(text.as_bytes());
    let mut lines = text.lines().enumerate().peekable();

    // skip blank leading lines
    while matches!(lines.peek(), Some((_, l)) if l.trim().is_empty()) {
        lines.next();
    }

    let (_, first) = *lines.peek().ok_or_else(|| {
        IngestError::Empty(format!("{name} contains no rows"))
    })?;
    let header = first.trim().to_ascii_lowercase();
    let header_fields: Vec<&str> = header.split(',').map(str::trim).collect();

    if header_fields == ["time", "delta"] {
        lines.next();
        let records = parse_censored(lines)?;
        let sample = CensoredSample::from_pairs(
            &records.iter().map(|r| r.0).collect::<Vec<_>>(),
            &records.iter().map(|r| r.1).collect::<Vec<_>>(),
        )
        .map_err(|e| IngestError::Invalid(e.to_string()))?;
        return Ok(Dataset {
            name: name.to_string(),
            digest,
            body: DatasetBody::Censored(sample),
        });
    }

    // single-column layout; drop one non-numeric header row if present
    if first.trim().parse::<f64>().is_err() {
        if header_fields.len() > 1 {
            return Err(IngestError::Malformed {
                line: 1,
                message: format!(
                    "expected one value per row or a `time,delta` header, found {} fields",
                    header_fields.len()
                ),
            });
        }
        lines.next();
    }

    let mut values = Vec::new();
    for (idx, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| IngestError::Malformed {
            line: idx + 1,
            message: format!("cannot parse `{trimmed}` as a number"),
        })?;
        if !v.is_finite() || v <= 0.0 {
            return Err(IngestError::Malformed {
                line: idx + 1,
                message: format!("value {v} is not strictly positive and finite"),
            });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(IngestError::Empty(format!("{name} contains no data rows")));
    }
    let sample = Sample::new(values).map_err(|e| IngestError::Invalid(e.to_string()))?;
    Ok(Dataset {
        name: name.to_string(),
        digest,
        body: DatasetBody::Complete(sample),
    })
}

fn parse_censored<'a, I>(lines: I) -> Result<Vec<(f64, u8)>, IngestError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut records = Vec::new();
    for (idx, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut fields = trimmed.split(',').map(str::trim);
        let time: f64 = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| IngestError::Malformed {
                line: idx + 1,
                message: format!("cannot parse time in `{trimmed}`"),
            })?;
        let delta: u8 = fields
            .next()
            .and_then(|f| f.parse().ok())
            .filter(|d| *d <= 1)
            .ok_or_else(|| IngestError::Malformed {
                line: idx + 1,
                message: format!("delta must be 0 or 1 in `{trimmed}`"),
            })?;
        if fields.next().is_some() {
            return Err(IngestError::Malformed {
                line: idx + 1,
                message: "expected exactly two fields `time,delta`".to_string(),
            });
        }
        if !time.is_finite() || time <= 0.0 {
            return Err(IngestError::Malformed {
                line: idx + 1,
                message: format!("time {time} is not strictly positive and finite"),
            });
        }
        records.push((time, delta));
    }
    if records.is_empty() {
        return Err(IngestError::Empty("no censored records".to_string()));
    }
    Ok(records)
}

/// Keep only values strictly above `threshold` and shift them to exceedances
/// `x - threshold`, which is the scale the generalized Pareto family models.
pub fn apply_threshold(sample: &Sample, threshold: f64) -> Result<Sample, IngestError> {
    let excesses: Vec<f64> = sample
        .values()
        .iter()
        .filter(|&&x| x > threshold)
        .map(|&x| x - threshold)
        .collect();
    if excesses.is_empty() {
        return Err(IngestError::Empty(format!(
            "threshold {threshold} removes every observation"
        )));
    }
    Sample::new(excesses).map_err(|e| IngestError::Invalid(e.to_string()))
}
