//! Sample containers with the validation every statistic relies on.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A complete (uncensored) sample of strictly positive observations.
///
/// Entry order carries no meaning; every statistic in this crate is
/// permutation invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Validate and wrap a vector of observations. Values must be finite and
    /// strictly positive.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSample("sample is empty".into()));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidSample(format!(
                    "value {v} at index {i} is not strictly positive and finite"
                )));
            }
        }
        Ok(Sample { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::MIN, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::MAX, f64::min)
    }

    /// Values in ascending order.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    /// Require at least `min` observations.
    pub fn require(&self, min: usize) -> Result<()> {
        if self.values.len() < min {
            return Err(Error::TooFewObservations {
                min,
                n: self.values.len(),
            });
        }
        Ok(())
    }

    /// The same sample with every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Sample::new(self.values.iter().map(|v| v * c).collect())
    }
}

/// One right-censored record: observed time and whether the event (rather
/// than censoring) was observed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensoredRecord {
    pub time: f64,
    /// `true` when the lifetime was observed, `false` when right-censored.
    pub observed: bool,
}

/// A right-censored sample of `(time, event indicator)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensoredSample {
    records: Vec<CensoredRecord>,
}

impl CensoredSample {
    /// Validate and wrap the records. Times must be finite and strictly
    /// positive and at least one event must have been observed.
    pub fn new(records: Vec<CensoredRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::InvalidSample("censored sample is empty".into()));
        }
        for (i, r) in records.iter().enumerate() {
            if !r.time.is_finite() || r.time <= 0.0 {
                return Err(Error::InvalidSample(format!(
                    "time {} at index {i} is not strictly positive and finite",
                    r.time
                )));
            }
        }
        if !records.iter().any(|r| r.observed) {
            return Err(Error::InvalidSample(
                "no observed events: all records are censored".into(),
            ));
        }
        Ok(CensoredSample { records })
    }

    /// Build from parallel `(time, delta)` slices where `delta = 1` marks an
    /// observed event.
    pub fn from_pairs(times: &[f64], deltas: &[u8]) -> Result<Self> {
        if times.len() != deltas.len() {
            return Err(Error::InvalidSample(format!(
                "times ({}) and deltas ({}) differ in length",
                times.len(),
                deltas.len()
            )));
        }
        for (i, &d) in deltas.iter().enumerate() {
            if d > 1 {
                return Err(Error::InvalidSample(format!(
                    "delta {d} at index {i} is not 0 or 1"
                )));
            }
        }
        CensoredSample::new(
            times
                .iter()
                .zip(deltas)
                .map(|(&time, &d)| CensoredRecord {
                    time,
                    observed: d == 1,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[CensoredRecord] {
        &self.records
    }

    pub fn require(&self, min: usize) -> Result<()> {
        if self.records.len() < min {
            return Err(Error::TooFewObservations {
                min,
                n: self.records.len(),
            });
        }
        Ok(())
    }

    /// Records in ascending `(time, observed)` order; censoring sorts before
    /// an event at a tied time so downstream reductions are order independent.
    pub fn sorted(&self) -> Vec<CensoredRecord> {
        let mut v = self.records.clone();
        v.sort_by(|a, b| {
            a.time
                .total_cmp(&b.time)
                .then_with(|| a.observed.cmp(&b.observed))
        });
        v
    }

    /// Largest observed time (censored or not).
    pub fn max_time(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.time)
            .fold(f64::MIN, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_rejects_bad_values() {
        assert!(Sample::new(vec![]).is_err());
        assert!(Sample::new(vec![1.0, 0.0]).is_err());
        assert!(Sample::new(vec![1.0, -2.0]).is_err());
        assert!(Sample::new(vec![1.0, f64::NAN]).is_err());
        assert!(Sample::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn sample_summaries() {
        let s = Sample::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.mean(), 2.0);
        assert_eq!(s.max(), 3.0);
        assert_eq!(s.min(), 1.0);
        assert_eq!(s.sorted(), vec![1.0, 2.0, 3.0]);
        assert!(s.require(3).is_ok());
        assert!(s.require(4).is_err());
    }

    #[test]
    fn censored_needs_an_event() {
        assert!(CensoredSample::from_pairs(&[1.0, 2.0], &[0, 0]).is_err());
        assert!(CensoredSample::from_pairs(&[1.0, 2.0], &[0, 1]).is_ok());
        assert!(CensoredSample::from_pairs(&[1.0], &[2]).is_err());
        assert!(CensoredSample::from_pairs(&[0.0], &[1]).is_err());
        assert!(CensoredSample::from_pairs(&[1.0, 2.0], &[1]).is_err());
    }

    #[test]
    fn censored_sort_breaks_ties_on_indicator() {
        let cs = CensoredSample::from_pairs(&[2.0, 2.0, 1.0], &[1, 0, 1]).unwrap();
        let sorted = cs.sorted();
        assert_eq!(sorted[0].time, 1.0);
        assert!(!sorted[1].observed && sorted[1].time == 2.0);
        assert!(sorted[2].observed && sorted[2].time == 2.0);
    }
}
