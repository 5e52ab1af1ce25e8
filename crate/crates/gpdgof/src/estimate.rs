//! Parameter estimators: CMM and AML (the two the tests use), MOM, the
//! proportionality constant, and the censored-data estimators built on a
//! Kaplan-Meier estimate of the censoring survival function.

use crate::data::{CensoredSample, Sample};
use crate::dist::Gpd;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Combined ML/moment estimator: `beta = mean/(mean - max)`,
/// `theta = -beta * max`. On positive data the shape is always negative and
/// the fitted support endpoint equals the sample maximum.
pub fn cmm(s: &Sample) -> Result<Gpd> {
    s.require(2)?;
    let mean = s.mean();
    let max = s.max();
    if mean == max {
        return Err(Error::DegenerateSample(
            "all observations equal; mean coincides with maximum".into(),
        ));
    }
    let beta = mean / (mean - max);
    let theta = -beta * max;
    Gpd::new(theta, beta)
}

/// Default number of top order statistics for [`aml`]: `ceil(0.2 n)`.
pub fn aml_default_k(n: usize) -> usize {
    ((n as f64) * 0.2).ceil() as usize
}

/// Asymptotic ML estimator from the top `k_upper` log order statistics.
///
/// With `w_j = ln x_(j)` (ascending order statistics),
/// `beta = mean(w_(n-k+1..n)) - w_(n-k+1)` and
/// `theta = beta * exp(w_(n-k+1) + beta * ln(k/n))`. The shape is always
/// nonnegative; it is the estimator behind the nonnegative-shape test branch.
pub fn aml(s: &Sample, k_upper: usize) -> Result<Gpd> {
    let n = s.len();
    s.require(2)?;
    if k_upper < 1 || k_upper >= n {
        return Err(Error::InvalidParameter {
            name: "k_upper",
            message: format!("must satisfy 1 <= k_upper < n = {n}, got {k_upper}"),
        });
    }
    let sorted = s.sorted();
    let (beta, theta) = aml_beta_theta(&sorted, k_upper);
    if theta <= 0.0 {
        return Err(Error::DegenerateSample(format!(
            "top {k_upper} order statistics are equal; AML scale degenerates to zero"
        )));
    }
    Gpd::new(theta, beta)
}

/// Shape and scale from the AML formulas on ascending sorted data. The shape
/// is exactly zero when the top `k` values are all equal.
pub(crate) fn aml_beta_theta(sorted: &[f64], k: usize) -> (f64, f64) {
    let n = sorted.len();
    let w_anchor = sorted[n - k].ln(); // w_(n-k+1)
    let mut top_sum = 0.0;
    for j in 1..=k {
        top_sum += sorted[n - j].ln(); // w_(n-j+1)
    }
    let beta = -w_anchor + top_sum / k as f64;
    let theta = beta * (w_anchor + beta * (k as f64 / n as f64).ln()).exp();
    (beta, theta)
}

/// Method-of-moments fit plus a flag for the moment-existence range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomFit {
    pub params: Gpd,
    /// `false` when the fitted shape is at or beyond 0.5, where the second
    /// moment the estimator relies on does not exist.
    pub moments_valid: bool,
}

/// Method of moments: `beta = (1 - mean^2/s^2)/2`,
/// `theta = mean (1 + mean^2/s^2)/2`, with the `n - 1` divisor in `s^2`.
pub fn mom(s: &Sample) -> Result<MomFit> {
    s.require(2)?;
    let n = s.len() as f64;
    let mean = s.mean();
    let var = s
        .values()
        .iter()
        .map(|&x| (x - mean) * (x - mean))
        .sum::<f64>()
        / (n - 1.0);
    if var <= 0.0 {
        return Err(Error::DegenerateSample(
            "sample variance is zero".into(),
        ));
    }
    let ratio = mean * mean / var;
    let beta = 0.5 * (1.0 - ratio);
    let theta = 0.5 * mean * (1.0 + ratio);
    Ok(MomFit {
        params: Gpd::new(theta, beta)?,
        moments_valid: beta < 0.5,
    })
}

/// Proportionality constant `k = 1/(2(beta - 2))` linking hazard and dynamic
/// survival extropy; finite and negative for every `beta < 2`.
pub fn kappa_from_beta(beta: f64) -> Result<f64> {
    if !beta.is_finite() || beta >= 2.0 {
        return Err(Error::Divergent {
            what: "proportionality constant",
            beta,
        });
    }
    Ok(1.0 / (2.0 * (beta - 2.0)))
}

/// Right-continuous step survival function with a left-limit query.
/// Starts at 1 and is nonincreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepSurvival {
    jump_times: Vec<f64>,
    /// Survival value immediately after the corresponding jump.
    values: Vec<f64>,
}

impl StepSurvival {
    /// Constant 1 (no jumps).
    pub fn one() -> Self {
        StepSurvival {
            jump_times: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn jump_times(&self) -> &[f64] {
        &self.jump_times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at `t` (right-continuous).
    pub fn value_at(&self, t: f64) -> f64 {
        match self.jump_times.partition_point(|&u| u <= t) {
            0 => 1.0,
            k => self.values[k - 1],
        }
    }

    /// Left limit at `t`: the value just before any jump at `t`.
    pub fn value_at_minus(&self, t: f64) -> f64 {
        match self.jump_times.partition_point(|&u| u < t) {
            0 => 1.0,
            k => self.values[k - 1],
        }
    }
}

/// Kaplan-Meier product-limit estimate of the survival function of the
/// censoring variable: the events are the censored records and observed
/// lifetimes enter only through the risk sets. Tied times form a single step
/// with the total number of censoring events at that time.
pub fn kaplan_meier_censoring(cs: &CensoredSample) -> StepSurvival {
    let sorted = cs.sorted();
    let n = sorted.len();
    let mut jump_times = Vec::new();
    let mut values = Vec::new();
    let mut surv = 1.0;
    let mut i = 0;
    while i < n {
        let t = sorted[i].time;
        let at_risk = n - i;
        let mut censor_events = 0usize;
        let mut j = i;
        while j < n && sorted[j].time == t {
            if !sorted[j].observed {
                censor_events += 1;
            }
            j += 1;
        }
        if censor_events > 0 {
            surv *= 1.0 - censor_events as f64 / at_risk as f64;
            jump_times.push(t);
            values.push(surv);
        }
        i = j;
    }
    StepSurvival { jump_times, values }
}

/// What to do when an inverse-censoring weight denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailPolicy {
    /// Refuse to estimate (the default).
    Error,
    /// Clamp the denominator from below at `1/(2n)`.
    Floor,
}

/// Per-record inverse-probability-of-censoring weights `delta_i / Kc(t_i-)`,
/// evaluated at the left limit of the Kaplan-Meier estimate.
pub(crate) fn ipcw_weights(
    cs: &CensoredSample,
    km: &StepSurvival,
    policy: TailPolicy,
) -> Result<Vec<f64>> {
    let n = cs.len() as f64;
    cs.records()
        .iter()
        .map(|r| {
            if !r.observed {
                return Ok(0.0);
            }
            let mut kc = km.value_at_minus(r.time);
            if kc <= 0.0 {
                match policy {
                    TailPolicy::Error => return Err(Error::InestimableTail { time: r.time }),
                    TailPolicy::Floor => kc = 1.0 / (2.0 * n),
                }
            }
            Ok(1.0 / kc)
        })
        .collect()
}

/// Censored-data estimates: reweighted mean, shape, scale and the
/// proportionality constant. With no censored records these coincide exactly
/// with [`cmm`] plus [`kappa_from_beta`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensoredEstimates {
    pub mean: f64,
    pub beta: f64,
    pub theta: f64,
    pub kappa: f64,
}

/// Estimate `(mean, beta, theta, kappa)` from a right-censored sample using
/// inverse-probability-of-censoring weights.
pub fn censored_estimates(cs: &CensoredSample, policy: TailPolicy) -> Result<CensoredEstimates> {
    cs.require(2)?;
    let km = kaplan_meier_censoring(cs);
    let weights = ipcw_weights(cs, &km, policy)?;
    let n = cs.len() as f64;
    let mut sum = 0.0;
    for (r, &w) in cs.records().iter().zip(&weights) {
        sum += r.time * w;
    }
    let mean = sum / n;
    let max = cs.max_time();
    if mean == max {
        return Err(Error::DegenerateSample(
            "reweighted mean coincides with the maximum time".into(),
        ));
    }
    let beta = mean / (mean - max);
    let theta = -beta * max;
    if theta <= 0.0 {
        return Err(Error::DegenerateSample(format!(
            "censored estimates give nonpositive scale {theta}"
        )));
    }
    let kappa = kappa_from_beta(beta)?;
    Ok(CensoredEstimates {
        mean,
        beta,
        theta,
        kappa,
    })
}
