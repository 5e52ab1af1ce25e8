//! The two goodness-of-fit statistics and their decision procedures.
//!
//! For nonnegative fitted shape the statistic is
//! `delta_p = (beta+1)^2 U1 - (beta+1) U2 + 1/3`, built from two third-order
//! U-statistics. For negative shape it is the scale-free `delta_n_star`,
//! a third-order U-statistic of pairwise and triple minima whose kernel
//! weight comes from the fitted proportionality constant. Both are computed
//! through sorted-order reductions (the naive sums are cubic in `n`); the
//! direct transcriptions live in [`crate::oracle`] and the test suites hold
//! the two paths together to 1e-12.
//!
//! All reductions accumulate in sorted order with compensated summation, so
//! results are bit-identical under permutation of the input.

use crate::data::{CensoredSample, Sample};
use crate::dist::Gpd;
use crate::error::{Error, Result};
use crate::estimate::{
    self, censored_estimates, ipcw_weights, kaplan_meier_censoring, CensoredEstimates, TailPolicy,
};
use crate::rng;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

/// Neumaier-compensated accumulator; summation order still matters, so every
/// reduction feeds it in sorted index order.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    correction: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.correction += (self.sum - t) + x;
        } else {
            self.correction += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

fn binom2(m: f64) -> f64 {
    m * (m - 1.0) / 2.0
}

fn binom3(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) * (n - 2.0) / 6.0
}

/// Check that the fitted parameters can host every observation, returning the
/// score denominators `theta + beta*x` for sorted data.
fn score_denominators(sorted: &[f64], p: &Gpd) -> Result<Vec<f64>> {
    sorted
        .iter()
        .map(|&x| {
            let d = p.theta() + p.beta() * x;
            if d <= 0.0 {
                Err(Error::SupportViolation {
                    value: x,
                    denominator: d,
                })
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// First U-statistic of the nonnegative-shape test: the average over all
/// unordered triples of the product kernel. Conditioning on the anchor
/// coordinate reduces the triple sum to prefix/suffix sums over sorted data.
pub fn u1(s: &Sample, p: &Gpd) -> Result<f64> {
    s.require(3)?;
    let y = s.sorted();
    let d = score_denominators(&y, p)?;
    let n = y.len();

    // prefix_a[r] = sum_{j < r} y_j/d_j, prefix_a2 the squared version
    let mut prefix_a = vec![0.0; n + 1];
    let mut prefix_a2 = vec![0.0; n + 1];
    let mut acc_a = CompensatedSum::default();
    let mut acc_a2 = CompensatedSum::default();
    for j in 0..n {
        prefix_a[j] = acc_a.value();
        prefix_a2[j] = acc_a2.value();
        let v = y[j] / d[j];
        acc_a.add(v);
        acc_a2.add(v * v);
        if j + 1 == n {
            prefix_a[n] = acc_a.value();
            prefix_a2[n] = acc_a2.value();
        }
    }

    // suffix_b[r] = sum_{j > r} 1/d_j, suffix_b2 the squared version
    let mut suffix_b = vec![0.0; n];
    let mut suffix_b2 = vec![0.0; n];
    let mut acc_b = CompensatedSum::default();
    let mut acc_b2 = CompensatedSum::default();
    for j in (0..n).rev() {
        suffix_b[j] = acc_b.value();
        suffix_b2[j] = acc_b2.value();
        let v = 1.0 / d[j];
        acc_b.add(v);
        acc_b2.add(v * v);
    }

    // For anchor r the other coordinates contribute
    // v_j = min(y_j, y_r)/d_j; the pair sum is (S^2 - Q)/2.
    let mut total = CompensatedSum::default();
    for r in 0..n {
        let s1 = prefix_a[r] + y[r] * suffix_b[r];
        let q = prefix_a2[r] + y[r] * y[r] * suffix_b2[r];
        total.add((s1 * s1 - q) / 2.0);
    }
    Ok(total.value() / (3.0 * binom3(n)))
}

/// Second U-statistic of the nonnegative-shape test: minimum of the anchor
/// against the maximum of the other two, weighted by the anchor denominator.
pub fn u2(s: &Sample, p: &Gpd) -> Result<f64> {
    s.require(3)?;
    let y = s.sorted();
    let d = score_denominators(&y, p)?;
    let n = y.len();

    // prefix_pair_max[r] = sum over pairs {b,c} below r of max = sum_{j<r} y_j * j
    let mut acc = CompensatedSum::default();
    let mut prefix_pair_max = vec![0.0; n];
    for j in 0..n {
        prefix_pair_max[j] = acc.value();
        acc.add(y[j] * j as f64);
    }

    let pairs_total = binom2((n - 1) as f64);
    let mut total = CompensatedSum::default();
    for r in 0..n {
        // pairs entirely below the anchor keep their own maximum; any pair
        // reaching above it is clamped at y_r
        let clamped = pairs_total - binom2(r as f64);
        total.add((prefix_pair_max[r] + y[r] * clamped) / d[r]);
    }
    Ok(total.value() / (3.0 * binom3(n)))
}

/// The nonnegative-shape statistic `(beta+1)^2 U1 - (beta+1) U2 + 1/3`,
/// evaluated at fitted (or true) parameters. Large values speak against the
/// generalized Pareto null.
pub fn delta_p(s: &Sample, p: &Gpd) -> Result<f64> {
    let b1 = p.beta() + 1.0;
    Ok(b1 * b1 * u1(s, p)? - b1 * u2(s, p)? + 1.0 / 3.0)
}

/// Weighted sorted-order reduction shared by the complete-data and censored
/// negative-shape statistics.
///
/// For a sorted triple the kernel is `((6k-1) y_min + y_med)/3`, so each
/// index contributes once as the minimum (against every weighted pair above
/// it) and once as the median (between every weighted point below and above).
/// `pairs` must be sorted by value; the result is
/// `6/(n(n-1)(n-2)) * sum over triples of w_i w_j w_k g(y_i, y_j, y_k)`.
fn weighted_delta_n(pairs: &[(f64, f64)], kappa: f64) -> f64 {
    let n = pairs.len();
    // suffix weight sums and squared sums
    let mut suffix_w = vec![0.0; n];
    let mut suffix_w2 = vec![0.0; n];
    let mut acc_w = CompensatedSum::default();
    let mut acc_w2 = CompensatedSum::default();
    for j in (0..n).rev() {
        suffix_w[j] = acc_w.value();
        suffix_w2[j] = acc_w2.value();
        acc_w.add(pairs[j].1);
        acc_w2.add(pairs[j].1 * pairs[j].1);
    }
    let mut prefix_w = vec![0.0; n];
    let mut acc_p = CompensatedSum::default();
    for j in 0..n {
        prefix_w[j] = acc_p.value();
        acc_p.add(pairs[j].1);
    }

    let coeff_min = 6.0 * kappa - 1.0;
    let mut total = CompensatedSum::default();
    for i in 0..n {
        let (y, w) = pairs[i];
        if w == 0.0 {
            continue;
        }
        let pair_above = (suffix_w[i] * suffix_w[i] - suffix_w2[i]) / 2.0;
        let straddle = prefix_w[i] * suffix_w[i];
        total.add(w * y * (coeff_min * pair_above + straddle) / 3.0);
    }
    total.value() / binom3(n)
}

/// The negative-shape departure statistic at proportionality constant
/// `kappa`: the U-statistic average of the combined minima kernel.
pub fn delta_n(s: &Sample, kappa: f64) -> Result<f64> {
    s.require(3)?;
    let sorted: Vec<(f64, f64)> = s.sorted().into_iter().map(|y| (y, 1.0)).collect();
    Ok(weighted_delta_n(&sorted, kappa))
}

/// Scale-free negative-shape statistic together with the estimates that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaNStar {
    pub statistic: f64,
    pub params: Gpd,
    pub kappa: f64,
}

/// Fit by the combined estimator, derive the proportionality constant from
/// the fitted shape and return `delta_n / theta_hat`. Exactly scale
/// invariant: rescaling the sample rescales numerator and denominator alike.
pub fn delta_n_star(s: &Sample) -> Result<DeltaNStar> {
    s.require(3)?;
    let params = estimate::cmm(s)?;
    let kappa = estimate::kappa_from_beta(params.beta())?;
    let statistic = delta_n(s, kappa)? / params.theta();
    Ok(DeltaNStar {
        statistic,
        params,
        kappa,
    })
}

/// Censored negative-shape statistic, its scale-free form and the estimates
/// behind them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensoredDeltaN {
    pub statistic: f64,
    pub statistic_star: f64,
    pub estimates: CensoredEstimates,
}

/// Inverse-probability-of-censoring weighted statistic
/// `6/(n(n-1)(n-2)) * sum g(t_i,t_j,t_k) w_i w_j w_k` with
/// `w = delta / Kc(t-)`, scale-freed by the censored scale estimate.
/// With no censored records this reproduces [`delta_n_star`] bit for bit:
/// the weights are all exactly one and the same reduction runs.
pub fn delta_n_censored(cs: &CensoredSample, policy: TailPolicy) -> Result<CensoredDeltaN> {
    cs.require(3)?;
    let estimates = censored_estimates(cs, policy)?;
    let km = kaplan_meier_censoring(cs);
    let sorted = cs.sorted();
    let n = sorted.len() as f64;
    let pairs: Vec<(f64, f64)> = sorted
        .iter()
        .map(|r| {
            if !r.observed {
                return Ok((r.time, 0.0));
            }
            let mut kc = km.value_at_minus(r.time);
            if kc <= 0.0 {
                match policy {
                    TailPolicy::Error => return Err(Error::InestimableTail { time: r.time }),
                    TailPolicy::Floor => kc = 1.0 / (2.0 * n),
                }
            }
            Ok((r.time, 1.0 / kc))
        })
        .collect::<Result<_>>()?;
    let statistic = weighted_delta_n(&pairs, estimates.kappa);
    Ok(CensoredDeltaN {
        statistic,
        statistic_star: statistic / estimates.theta,
        estimates,
    })
}

/// The two reweighted variance estimates for the censored statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensoredVariance {
    /// `9/(n-1) * sum (V_i - Vbar)^2` from the reweighted projection terms.
    pub sigma2_1c: f64,
    /// `sigma2_1c / theta_hat^2`, the scale-free version.
    pub sigma2_c: f64,
}

/// Reweighted-average variance estimator for the censored statistic.
///
/// `h1hat(x) = (1/n^2) sum_{j<k} g(x, t_j, t_k) w_j w_k`, `xi_i = h1hat(t_i) w_i`,
/// `what(t) = sum_j xi_j I(t_j > t) / sum_j I(t_j >= t)`,
/// `phi_i = what(t_i) (1 - delta_i)`, and each projection term carries the
/// martingale decomposition of its censoring exposure:
/// `V_i = xi_i + phi_i - sum_j phi_j I(t_i >= t_j) / #{l: t_l >= t_j}`,
/// the subtraction running over the censoring events at or before `t_i`.
pub fn censored_variance(cs: &CensoredSample, policy: TailPolicy) -> Result<CensoredVariance> {
    cs.require(3)?;
    let estimates = censored_estimates(cs, policy)?;
    let kappa = estimates.kappa;
    let km = kaplan_meier_censoring(cs);
    let weights = ipcw_weights(cs, &km, policy)?;
    let records = cs.records();
    let n = records.len();
    let nf = n as f64;

    let times: Vec<f64> = records.iter().map(|r| r.time).collect();

    // Rank counts come from binary search on a sorted copy.
    let mut sorted_times = times.clone();
    sorted_times.sort_by(|a, b| a.total_cmp(b));
    let at_risk = |t: f64| (n - sorted_times.partition_point(|&u| u < t)) as f64;

    let h1hat = |x: f64| {
        let mut acc = 0.0;
        for j in 0..n {
            if weights[j] == 0.0 {
                continue;
            }
            for k in (j + 1)..n {
                if weights[k] == 0.0 {
                    continue;
                }
                acc += crate::oracle::g(x, times[j], times[k], kappa) * weights[j] * weights[k];
            }
        }
        acc / (nf * nf)
    };

    let xi: Vec<f64> = (0..n).map(|i| h1hat(times[i]) * weights[i]).collect();

    // phi_j / R(t_j) for censored records, the per-event compensator jump
    let phi: Vec<f64> = (0..n)
        .map(|j| {
            if records[j].observed {
                return 0.0;
            }
            let mut num = 0.0;
            for l in 0..n {
                if times[l] > times[j] {
                    num += xi[l];
                }
            }
            num / at_risk(times[j])
        })
        .collect();

    let v: Vec<f64> = (0..n)
        .map(|i| {
            let mut compensator = 0.0;
            for j in 0..n {
                if phi[j] != 0.0 && times[i] >= times[j] {
                    compensator += phi[j] / at_risk(times[j]);
                }
            }
            xi[i] + phi[i] - compensator
        })
        .collect();

    let vbar = v.iter().sum::<f64>() / nf;
    let ss: f64 = v.iter().map(|&vi| (vi - vbar) * (vi - vbar)).sum();
    let sigma2_1c = 9.0 / (nf - 1.0) * ss;
    Ok(CensoredVariance {
        sigma2_1c,
        sigma2_c: sigma2_1c / (estimates.theta * estimates.theta),
    })
}

/// Which branch produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TestCase {
    PositiveBeta,
    NegativeBeta,
    CensoredNegativeBeta,
}

/// Test outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Reject,
    FailToReject,
}

/// How bootstrap replicates are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResampleScheme {
    /// Resample the observed data with replacement (the default).
    Nonparametric,
    /// Redraw from the fitted distribution.
    Parametric,
}

/// Tail convention for the negative-shape decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sidedness {
    /// Compare the signed statistic against upper quantiles (the default,
    /// matching the critical-value tables).
    UpperTail,
    /// Compare absolute values.
    TwoSided,
}

/// Parameter estimates carried in a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimates {
    pub theta: f64,
    pub beta: f64,
    pub kappa: Option<f64>,
}

/// Bootstrap critical values at the two conventional levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    /// 0.95 quantile of the replicate statistics.
    pub c1: f64,
    /// 0.99 quantile.
    pub c2: f64,
    /// Quantile at the requested level `1 - alpha`.
    pub at_alpha: f64,
}

/// Reproducibility metadata: everything needed to regenerate the report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestMeta {
    pub n: usize,
    pub seed: Option<u64>,
    pub bootstrap_replications: Option<usize>,
    pub scheme: Option<ResampleScheme>,
    pub sidedness: Option<Sidedness>,
    pub k_upper: Option<usize>,
}

/// Outcome of one goodness-of-fit test run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub case: TestCase,
    pub statistic: f64,
    pub estimates: Estimates,
    pub alpha: f64,
    pub critical_values: Option<CriticalValues>,
    pub z_threshold: Option<f64>,
    pub p_value: Option<f64>,
    pub decision: Decision,
    pub meta: TestMeta,
}

/// Empirical quantile, order-statistic convention: element `ceil(q * len)`
/// (1-based) of the ascending sorted slice.
pub(crate) fn quantile_type1(sorted: &[f64], q: f64) -> f64 {
    let len = sorted.len();
    let idx = ((q * len as f64).ceil() as usize).clamp(1, len);
    sorted[idx - 1]
}

fn resample_indices<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

/// Shared bootstrap loop: statistics of `B` replicates under fixed estimates,
/// sorted ascending. Replicates are independent streams of `seed`, so the
/// result does not depend on the worker count.
fn bootstrap_statistics<F>(b: usize, seed: u64, replicate: F) -> Vec<f64>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync,
{
    let mut stats: Vec<f64> = (0..b as u64)
        .into_par_iter()
        .map(|idx| {
            let mut rng = rng::stream(seed, idx);
            replicate(&mut rng)
        })
        .collect();
    stats.sort_by(|a, b| a.total_cmp(b));
    stats
}

fn monte_carlo_p_value(sorted: &[f64], observed: f64) -> f64 {
    let b = sorted.len();
    let ge = b - sorted.partition_point(|&s| s < observed);
    (1.0 + ge as f64) / (b as f64 + 1.0)
}

pub(crate) struct BootstrapDecision {
    pub critical_values: CriticalValues,
    pub p_value: f64,
    pub decision: Decision,
}

pub(crate) fn decide_from_replicates(
    replicates: &[f64],
    observed: f64,
    alpha: f64,
) -> BootstrapDecision {
    let critical_values = CriticalValues {
        c1: quantile_type1(replicates, 0.95),
        c2: quantile_type1(replicates, 0.99),
        at_alpha: quantile_type1(replicates, 1.0 - alpha),
    };
    let p_value = monte_carlo_p_value(replicates, observed);
    let decision = if observed > critical_values.at_alpha {
        Decision::Reject
    } else {
        Decision::FailToReject
    };
    BootstrapDecision {
        critical_values,
        p_value,
        decision,
    }
}

/// Options for [`test_negative_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeTestOptions {
    pub scheme: ResampleScheme,
    pub sidedness: Sidedness,
}

impl Default for NegativeTestOptions {
    fn default() -> Self {
        NegativeTestOptions {
            scheme: ResampleScheme::Nonparametric,
            sidedness: Sidedness::UpperTail,
        }
    }
}

/// Negative-shape test with the default bootstrap (data resampling with
/// replacement, estimates held fixed, upper-tail decision).
pub fn test_negative(s: &Sample, alpha: f64, b: usize, seed: u64) -> Result<TestReport> {
    test_negative_with(s, alpha, b, seed, NegativeTestOptions::default())
}

/// Negative-shape test: estimate once by the combined estimator, compute the
/// scale-free statistic, then compare against bootstrap quantiles of the
/// statistic recomputed on resamples with the estimates held fixed.
pub fn test_negative_with(
    s: &Sample,
    alpha: f64,
    b: usize,
    seed: u64,
    opts: NegativeTestOptions,
) -> Result<TestReport> {
    check_alpha(alpha)?;
    check_b(b)?;
    s.require(3)?;
    let fit = delta_n_star(s)?;
    let n = s.len();
    let values = s.values().to_vec();
    let params = fit.params;
    let kappa = fit.kappa;
    let theta = params.theta();

    let replicate_stat = |rng: &mut rand_chacha::ChaCha8Rng| -> f64 {
        let resample: Vec<f64> = match opts.scheme {
            ResampleScheme::Nonparametric => resample_indices(rng, n)
                .into_iter()
                .map(|i| values[i])
                .collect(),
            ResampleScheme::Parametric => (0..n).map(|_| params.draw(rng)).collect(),
        };
        let mut sorted: Vec<(f64, f64)> = resample.into_iter().map(|y| (y, 1.0)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        weighted_delta_n(&sorted, kappa) / theta
    };

    let side = |x: f64| match opts.sidedness {
        Sidedness::UpperTail => x,
        Sidedness::TwoSided => x.abs(),
    };
    let replicates = bootstrap_statistics(b, seed, |rng| side(replicate_stat(rng)));
    let outcome = decide_from_replicates(&replicates, side(fit.statistic), alpha);

    Ok(TestReport {
        case: TestCase::NegativeBeta,
        statistic: fit.statistic,
        estimates: Estimates {
            theta: params.theta(),
            beta: params.beta(),
            kappa: Some(kappa),
        },
        alpha,
        critical_values: Some(outcome.critical_values),
        z_threshold: None,
        p_value: Some(outcome.p_value),
        decision: outcome.decision,
        meta: TestMeta {
            n,
            seed: Some(seed),
            bootstrap_replications: Some(b),
            scheme: Some(opts.scheme),
            sidedness: Some(opts.sidedness),
            k_upper: None,
        },
    })
}

/// Nonnegative-shape test with the default tail fraction for the estimator.
pub fn test_positive(s: &Sample, alpha: f64, b: usize, seed: u64) -> Result<TestReport> {
    test_positive_with(s, alpha, b, seed, estimate::aml_default_k(s.len()))
}

/// Nonnegative-shape test: fit by the asymptotic ML estimator on the top
/// `k_upper` order statistics, compute the statistic, and compare one-sided
/// against resampling quantiles with the estimates held fixed.
pub fn test_positive_with(
    s: &Sample,
    alpha: f64,
    b: usize,
    seed: u64,
    k_upper: usize,
) -> Result<TestReport> {
    check_alpha(alpha)?;
    check_b(b)?;
    s.require(3)?;
    let params = estimate::aml(s, k_upper)?;
    let observed = delta_p(s, &params)?;
    let n = s.len();
    let values = s.values().to_vec();

    let replicate_stat = |rng: &mut rand_chacha::ChaCha8Rng| -> f64 {
        let resample: Vec<f64> = resample_indices(rng, n)
            .into_iter()
            .map(|i| values[i])
            .collect();
        let resample = Sample::new(resample).expect("resample of positive data");
        delta_p(&resample, &params).expect("nonnegative shape keeps denominators positive")
    };

    let replicates = bootstrap_statistics(b, seed, replicate_stat);
    let outcome = decide_from_replicates(&replicates, observed, alpha);

    Ok(TestReport {
        case: TestCase::PositiveBeta,
        statistic: observed,
        estimates: Estimates {
            theta: params.theta(),
            beta: params.beta(),
            kappa: None,
        },
        alpha,
        critical_values: Some(outcome.critical_values),
        z_threshold: None,
        p_value: Some(outcome.p_value),
        decision: outcome.decision,
        meta: TestMeta {
            n,
            seed: Some(seed),
            bootstrap_replications: Some(b),
            scheme: Some(ResampleScheme::Nonparametric),
            sidedness: Some(Sidedness::UpperTail),
            k_upper: Some(k_upper),
        },
    })
}

/// Censored negative-shape test: asymptotically normal z-test of the
/// scale-free statistic against the reweighted variance estimate.
pub fn censored_test(cs: &CensoredSample, alpha: f64, policy: TailPolicy) -> Result<TestReport> {
    check_alpha(alpha)?;
    cs.require(3)?;
    let stat = delta_n_censored(cs, policy)?;
    let var = censored_variance(cs, policy)?;
    if var.sigma2_c <= 0.0 {
        return Err(Error::DegenerateSample(
            "censored variance estimate is zero".into(),
        ));
    }
    let n = cs.len() as f64;
    // The pair normalization in h1hat makes sigma2_c estimate a quarter of
    // the asymptotic variance of sqrt(n) * statistic_star, hence the 2.
    let z = n.sqrt() * stat.statistic_star.abs() / (2.0 * var.sigma2_c.sqrt());
    let normal = Normal::new(0.0, 1.0).unwrap();
    let z_threshold = normal.inverse_cdf(1.0 - alpha / 2.0);
    let p_value = 2.0 * (1.0 - normal.cdf(z));
    let decision = if z > z_threshold {
        Decision::Reject
    } else {
        Decision::FailToReject
    };
    Ok(TestReport {
        case: TestCase::CensoredNegativeBeta,
        statistic: stat.statistic_star,
        estimates: Estimates {
            theta: stat.estimates.theta,
            beta: stat.estimates.beta,
            kappa: Some(stat.estimates.kappa),
        },
        alpha,
        critical_values: None,
        z_threshold: Some(z_threshold),
        p_value: Some(p_value),
        decision,
        meta: TestMeta {
            n: cs.len(),
            seed: None,
            bootstrap_replications: None,
            scheme: None,
            sidedness: Some(Sidedness::TwoSided),
            k_upper: None,
        },
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: format!("significance level must lie in (0,1), got {alpha}"),
        });
    }
    Ok(())
}

fn check_b(b: usize) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidParameter {
            name: "bootstrap_replications",
            message: "must be at least 1".into(),
        });
    }
    Ok(())
}
