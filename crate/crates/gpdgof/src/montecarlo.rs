//! Monte Carlo machinery: critical-value tables, the bootstrap critical
//! values for a single data set, and the power experiments.
//!
//! Every entry point takes a master seed; replication `r` draws from the
//! substream `(seed, r)`, replicate statistics are collected and sorted
//! before any quantile is taken, and so the outputs are identical at any
//! worker count. Simulation is always at unit scale: both statistics are
//! scale free, so the tables apply to data at any scale.

use crate::alt::AltSpec;
use crate::data::Sample;
use crate::dist::Gpd;
use crate::error::{Error, Result};
use crate::estimate;
use crate::gof::{self, quantile_type1};
use crate::rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Fraction of failed replications beyond which a run is rejected outright.
const MAX_FAILURE_FRACTION: f64 = 0.01;

fn check_replications(r: usize) -> Result<()> {
    if r < 100 {
        return Err(Error::InvalidParameter {
            name: "replications",
            message: format!("need at least 100 replications, got {r}"),
        });
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewObservations { min: 3, n });
    }
    Ok(())
}

/// Decision statistic of one simulated sample: fit, then evaluate the branch
/// matching the sign of `beta`. The negative branch rejects for large
/// `|delta_n_star|`, so its tabulated quantity is the absolute statistic;
/// the nonnegative branch is one-sided in the signed statistic.
fn null_statistic(values: Vec<f64>, beta: f64, k_upper: usize) -> Result<f64> {
    let sample = Sample::new(values)?;
    if beta < 0.0 {
        Ok(gof::delta_n_star(&sample)?.statistic.abs())
    } else {
        let fit = estimate::aml(&sample, k_upper)?;
        gof::delta_p(&sample, &fit)
    }
}

/// Simulated null statistics with the redraw-once policy for degenerate
/// replications. Returns the sorted statistics and the number excluded.
fn simulate_null_statistics(
    beta: f64,
    n: usize,
    r: usize,
    seed: u64,
) -> Result<(Vec<f64>, usize)> {
    let null = Gpd::new(1.0, beta)?;
    let k_upper = estimate::aml_default_k(n);
    let outcomes: Vec<Option<f64>> = (0..r as u64)
        .into_par_iter()
        .map(|rep| {
            let draw = |index: u64| {
                let mut stream = rng::stream(seed, index);
                (0..n).map(|_| null.draw(&mut stream)).collect::<Vec<f64>>()
            };
            match null_statistic(draw(rep), beta, k_upper) {
                Ok(stat) => Some(stat),
                // a degenerate replication gets one redraw from a disjoint
                // stream index, then is dropped
                Err(_) => null_statistic(draw(r as u64 + rep), beta, k_upper).ok(),
            }
        })
        .collect();

    let failed = outcomes.iter().filter(|o| o.is_none()).count();
    if (failed as f64) > MAX_FAILURE_FRACTION * r as f64 {
        return Err(Error::SimulationIntegrity { failed, total: r });
    }
    let mut stats: Vec<f64> = outcomes.into_iter().flatten().collect();
    stats.sort_by(|a, b| a.total_cmp(b));
    Ok((stats, failed))
}

/// Critical value of the test at shape `beta` and sample size `n`: the
/// empirical `1 - alpha` quantile of `r` simulated null statistics, with
/// parameters re-estimated on every replication (combined estimator for
/// negative shape, asymptotic ML for nonnegative).
pub fn critical_value(beta: f64, n: usize, alpha: f64, r: usize, seed: u64) -> Result<f64> {
    check_replications(r)?;
    check_n(n)?;
    let (stats, _) = simulate_null_statistics(beta, n, r, seed)?;
    Ok(quantile_type1(&stats, 1.0 - alpha))
}

/// A grid of critical values over shapes and sample sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalTable {
    pub alpha: f64,
    pub betas: Vec<f64>,
    pub ns: Vec<usize>,
    /// `values[i][j]` is the critical value at `betas[i]`, `ns[j]`.
    pub values: Vec<Vec<f64>>,
    pub replications: usize,
    pub seed: u64,
    /// Replications excluded after redraw, summed over cells.
    pub excluded: usize,
    /// Tail fraction rule used by the nonnegative-shape estimator.
    pub k_upper_rule: String,
}

impl CriticalTable {
    /// Look up the cell for `(beta, n)` if present.
    pub fn get(&self, beta: f64, n: usize) -> Option<f64> {
        let i = self.betas.iter().position(|&b| b == beta)?;
        let j = self.ns.iter().position(|&m| m == n)?;
        Some(self.values[i][j])
    }

    /// Write the table as CSV: `beta,n,alpha,critical_value,R,seed` with
    /// five-decimal critical values.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "beta,n,alpha,critical_value,R,seed")?;
        for (i, &beta) in self.betas.iter().enumerate() {
            for (j, &n) in self.ns.iter().enumerate() {
                writeln!(
                    w,
                    "{beta},{n},{},{:.5},{},{}",
                    self.alpha, self.values[i][j], self.replications, self.seed
                )?;
            }
        }
        Ok(())
    }
}

/// Build the full critical-value grid. Each cell draws from its own
/// substream of `seed`, so single cells can be reproduced in isolation.
pub fn build_table(
    betas: &[f64],
    ns: &[usize],
    alpha: f64,
    r: usize,
    seed: u64,
) -> Result<CriticalTable> {
    check_replications(r)?;
    if betas.is_empty() || ns.is_empty() {
        return Err(Error::InvalidParameter {
            name: "grid",
            message: "betas and ns must be non-empty".into(),
        });
    }
    let mut values = Vec::with_capacity(betas.len());
    let mut excluded = 0usize;
    for (i, &beta) in betas.iter().enumerate() {
        let mut row = Vec::with_capacity(ns.len());
        for (j, &n) in ns.iter().enumerate() {
            check_n(n)?;
            let cell_seed = rng::derive(seed, (i * ns.len() + j) as u64);
            let (stats, failed) = simulate_null_statistics(beta, n, r, cell_seed)?;
            excluded += failed;
            row.push(quantile_type1(&stats, 1.0 - alpha));
        }
        values.push(row);
    }
    Ok(CriticalTable {
        alpha,
        betas: betas.to_vec(),
        ns: ns.to_vec(),
        values,
        replications: r,
        seed,
        excluded,
        k_upper_rule: "ceil(0.2 n)".to_string(),
    })
}

/// Bootstrap critical values for one observed sample (negative-shape branch):
/// estimate `(beta, kappa, theta)` once, then recompute the scale-free
/// statistic on `b` resamples drawn with replacement, holding the estimates
/// fixed. `c1`/`c2` are the 0.95/0.99 quantiles of the sorted replicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCriticalValues {
    pub c1: f64,
    pub c2: f64,
    pub p_value: f64,
    pub observed: f64,
}

pub fn bootstrap_a1(s: &Sample, b: usize, seed: u64) -> Result<BootstrapCriticalValues> {
    if b == 0 {
        return Err(Error::InvalidParameter {
            name: "bootstrap_replications",
            message: "must be at least 1".into(),
        });
    }
    let report = gof::test_negative(s, 0.05, b, seed)?;
    let cv = report.critical_values.expect("bootstrap path fills critical values");
    Ok(BootstrapCriticalValues {
        c1: cv.c1,
        c2: cv.c2,
        p_value: report.p_value.expect("bootstrap path fills p-value"),
        observed: report.statistic,
    })
}

/// Result of one power cell: the rejection rate of the test against a fixed
/// alternative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerResult {
    pub alt: AltSpec,
    pub n: usize,
    pub beta_case: f64,
    pub alpha: f64,
    pub power: f64,
    /// Replications that produced a decision.
    pub replications: usize,
    pub excluded: usize,
    pub seed: u64,
    /// Null critical value the decisions were made against.
    pub critical_value: f64,
}

impl PowerResult {
    /// CSV row `family,params,n,beta_case,alpha,power,R,seed`; family and
    /// parameters come from the alternative's display form `Family(p1,p2)`
    /// with the parameters re-joined by `;` to keep the CSV single-byte
    /// delimited.
    pub fn csv_row(&self) -> String {
        let display = self.alt.to_string();
        let (family, params) = match display.split_once('(') {
            Some((f, rest)) => (f.to_string(), rest.trim_end_matches(')').replace(',', ";")),
            None => (display, String::new()),
        };
        format!(
            "{family},{params},{},{},{},{:.5},{},{}",
            self.n, self.beta_case, self.alpha, self.power, self.replications, self.seed
        )
    }

    pub const CSV_HEADER: &'static str = "family,params,n,beta_case,alpha,power,R,seed";
}

/// Replications used for the embedded critical-value simulation of a power
/// cell when the caller does not supply one.
pub const POWER_CRITICAL_REPLICATIONS: usize = 10_000;

/// Estimate the power of the test against `alt` at the null shape
/// `beta_case`: simulate the null critical value once, then draw `r`
/// alternative samples, fit each by the branch estimator and count
/// rejections of the matching statistic.
pub fn power_study(
    alt: AltSpec,
    n: usize,
    beta_case: f64,
    alpha: f64,
    r: usize,
    seed: u64,
) -> Result<PowerResult> {
    check_replications(r)?;
    check_n(n)?;
    alt.validate()?;

    // the critical-value simulation gets its own master seed far from the
    // per-replication stream indices
    let crit_seed = rng::derive(seed, u64::MAX);
    let critical = critical_value(beta_case, n, alpha, POWER_CRITICAL_REPLICATIONS, crit_seed)?;

    let k_upper = estimate::aml_default_k(n);
    let outcomes: Vec<Option<bool>> = (0..r as u64)
        .into_par_iter()
        .map(|rep| {
            let draw = |index: u64| {
                let mut stream = rng::stream(seed, index);
                (0..n).map(|_| alt.draw(&mut stream)).collect::<Vec<f64>>()
            };
            let stat = match null_statistic(draw(rep), beta_case, k_upper) {
                Ok(stat) => Some(stat),
                Err(_) => null_statistic(draw(r as u64 + rep), beta_case, k_upper).ok(),
            };
            stat.map(|s| s > critical)
        })
        .collect();

    let failed = outcomes.iter().filter(|o| o.is_none()).count();
    if (failed as f64) > MAX_FAILURE_FRACTION * r as f64 {
        return Err(Error::SimulationIntegrity { failed, total: r });
    }
    let decided: Vec<bool> = outcomes.into_iter().flatten().collect();
    let rejections = decided.iter().filter(|&&d| d).count();
    Ok(PowerResult {
        alt,
        n,
        beta_case,
        alpha,
        power: rejections as f64 / decided.len() as f64,
        replications: decided.len(),
        excluded: failed,
        seed,
        critical_value: critical,
    })
}

/// The fourteen alternatives of the exponential/uniform power table.
pub fn power_alternatives_null_cases() -> Vec<AltSpec> {
    vec![
        AltSpec::Beta { a: 5.0, b: 5.0 },
        AltSpec::Weibull { shape: 2.0, scale: 1.0 },
        AltSpec::Weibull { shape: 3.0, scale: 1.0 },
        AltSpec::Gamma { shape: 5.0, scale: 1.0 },
        AltSpec::Gamma { shape: 8.0, scale: 1.0 },
        AltSpec::GenGamma { shape: 2.0, power: 1.0 / 3.0 },
        AltSpec::GenGamma { shape: 2.0, power: 0.5 },
        AltSpec::GenGamma { shape: 1.0, power: 0.5 },
        AltSpec::AbsNormal { mean: 2.0, sd: 1.0 },
        AltSpec::AbsNormal { mean: 3.0, sd: 1.0 },
        AltSpec::ChiSquare { df: 6.0 },
        AltSpec::ChiSquare { df: 15.0 },
        AltSpec::AbsGumbel { loc: 3.0, scale: 2.0 },
        AltSpec::AbsGumbel { loc: 5.0, scale: 2.0 },
    ]
}

/// The eighteen alternatives of the wider power table.
pub fn power_alternatives_extended() -> Vec<AltSpec> {
    let mut alts = vec![
        AltSpec::Beta { a: 1.0, b: 2.0 },
        AltSpec::Beta { a: 2.0, b: 1.0 },
        AltSpec::Beta { a: 5.0, b: 5.0 },
        AltSpec::Weibull { shape: 2.0, scale: 1.0 },
        AltSpec::Weibull { shape: 3.0, scale: 1.0 },
        AltSpec::Gamma { shape: 5.0, scale: 1.0 },
        AltSpec::Gamma { shape: 8.0, scale: 1.0 },
        AltSpec::GenGamma { shape: 2.0, power: 1.0 / 3.0 },
        AltSpec::GenGamma { shape: 2.0, power: 0.5 },
        AltSpec::GenGamma { shape: 1.0, power: 0.5 },
        AltSpec::AbsNormal { mean: 2.0, sd: 2.0 },
        AltSpec::AbsNormal { mean: 2.0, sd: 1.0 },
        AltSpec::AbsNormal { mean: 3.0, sd: 1.0 },
        AltSpec::ChiSquare { df: 6.0 },
        AltSpec::ChiSquare { df: 15.0 },
        AltSpec::AbsGumbel { loc: 3.0, scale: 2.0 },
        AltSpec::AbsGumbel { loc: 5.0, scale: 2.0 },
    ];
    alts.push(AltSpec::AbsGumbel { loc: 5.0, scale: 5.0 });
    alts
}

/// Default shape grid of the published tables: `0.1..=1.0` in steps of 0.1,
/// negated for the negative-shape case.
pub fn table_betas(negative: bool) -> Vec<f64> {
    let sign = if negative { -1.0 } else { 1.0 };
    (1..=10).map(|i| sign * i as f64 / 10.0).collect()
}

/// Default sample-size grid of the published tables.
pub fn table_ns() -> Vec<usize> {
    vec![20, 30, 50, 70, 100]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_undersized_runs() {
        assert!(critical_value(-0.5, 50, 0.05, 99, 1).is_err());
        assert!(critical_value(-0.5, 2, 0.05, 100, 1).is_err());
        assert!(power_study(AltSpec::ChiSquare { df: 6.0 }, 20, -1.0, 0.05, 10, 1).is_err());
    }

    #[test]
    fn critical_value_deterministic_across_runs() {
        let a = critical_value(-0.5, 20, 0.05, 200, 42).unwrap();
        let b = critical_value(-0.5, 20, 0.05, 200, 42).unwrap();
        assert_eq!(a, b);
        let c = critical_value(-0.5, 20, 0.05, 200, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn critical_value_deterministic_at_one_worker() {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| critical_value(-0.5, 20, 0.05, 300, 42).unwrap());
        let parallel = critical_value(-0.5, 20, 0.05, 300, 42).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn single_cell_table_matches_direct_call() {
        let table = build_table(&[-0.5], &[20], 0.05, 200, 7).unwrap();
        let direct = critical_value(-0.5, 20, 0.05, 200, rng::derive(7, 0)).unwrap();
        assert_eq!(table.get(-0.5, 20), Some(direct));
        assert_eq!(table.get(-0.4, 20), None);
    }

    #[test]
    fn table_csv_layout() {
        let table = build_table(&[-0.5, -1.0], &[20, 30], 0.05, 150, 3).unwrap();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "beta,n,alpha,critical_value,R,seed");
        assert_eq!(lines.count(), 4);
        assert!(text.contains("-0.5,20,0.05,"));
        // five decimal places
        let second = text.lines().nth(1).unwrap();
        let value = second.split(',').nth(3).unwrap();
        assert_eq!(value.split('.').nth(1).unwrap().len(), 5);
    }

    #[test]
    fn bootstrap_quantiles_ordered_and_deterministic() {
        let g = Gpd::new(1.0, -0.5).unwrap();
        let sample = Sample::new(g.sample(40, 4)).unwrap();
        let a = bootstrap_a1(&sample, 500, 9).unwrap();
        let b = bootstrap_a1(&sample, 500, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.c2 >= a.c1);
    }

    #[test]
    fn bootstrap_single_replicate_collapses() {
        let sample = Sample::new(vec![0.7, 1.3, 2.9, 0.4, 1.8]).unwrap();
        let out = bootstrap_a1(&sample, 1, 2).unwrap();
        assert_eq!(out.c1, out.c2);
    }

    #[test]
    fn power_csv_row_shape() {
        let res = PowerResult {
            alt: AltSpec::Beta { a: 5.0, b: 5.0 },
            n: 30,
            beta_case: 0.0,
            alpha: 0.05,
            power: 0.9876,
            replications: 1000,
            excluded: 0,
            seed: 5,
            critical_value: 0.1,
        };
        assert_eq!(res.csv_row(), "Beta,5;5,30,0,0.05,0.98760,1000,5");
    }

    #[test]
    fn default_grids_match_published_layout() {
        assert_eq!(table_betas(true)[0], -0.1);
        assert_eq!(table_betas(true)[9], -1.0);
        assert_eq!(table_betas(false)[4], 0.5);
        assert_eq!(table_ns(), vec![20, 30, 50, 70, 100]);
        assert_eq!(power_alternatives_null_cases().len(), 14);
        assert_eq!(power_alternatives_extended().len(), 18);
    }
}
