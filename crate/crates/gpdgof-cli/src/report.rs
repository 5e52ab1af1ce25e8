//! Report assembly shared by the text and JSON output paths.

use gpdgof::gof::TestReport;
use gpdgof::Decision;
use serde::{Deserialize, Serialize};

/// Provenance of the data a report was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub name: String,
    pub sha256: String,
    pub n: usize,
    pub threshold: Option<f64>,
}

/// Machine-readable outcome of a `test` invocation. The auto case carries
/// both branch reports; single-branch runs carry one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset: DatasetSummary,
    pub reports: Vec<TestReport>,
    /// Composite decision: for the auto case the null is rejected only when
    /// every branch rejects it.
    pub overall: Decision,
}

impl RunReport {
    pub fn new(dataset: DatasetSummary, reports: Vec<TestReport>) -> Self {
        let overall = if !reports.is_empty()
            && reports.iter().all(|r| r.decision == Decision::Reject)
        {
            Decision::Reject
        } else {
            Decision::FailToReject
        };
        RunReport {
            dataset,
            reports,
            overall,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gpdgof::gof::{Estimates, TestCase, TestMeta};

    fn report(decision: Decision) -> TestReport {
        TestReport {
            case: TestCase::NegativeBeta,
            statistic: 0.01,
            estimates: Estimates {
                theta: 1.0,
                beta: -0.5,
                kappa: Some(-0.2),
            },
            alpha: 0.05,
            critical_values: None,
            z_threshold: None,
            p_value: Some(0.5),
            decision,
            meta: TestMeta {
                n: 10,
                seed: Some(1),
                bootstrap_replications: Some(100),
                scheme: None,
                sidedness: None,
                k_upper: None,
            },
        }
    }

    fn summary() -> DatasetSummary {
        DatasetSummary {
            name: "t".into(),
            sha256: "d".into(),
            n: 10,
            threshold: None,
        }
    }

    #[test]
    fn overall_requires_every_branch_to_reject() {
        let both = RunReport::new(
            summary(),
            vec![report(Decision::Reject), report(Decision::Reject)],
        );
        assert_eq!(both.overall, Decision::Reject);
        let split = RunReport::new(
            summary(),
            vec![report(Decision::Reject), report(Decision::FailToReject)],
        );
        assert_eq!(split.overall, Decision::FailToReject);
    }

    #[test]
    fn json_round_trip() {
        let run = RunReport::new(summary(), vec![report(Decision::FailToReject)]);
        let json = serde_json::to_string_pretty(&run).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(run, back);
    }
}
