//! Direct triple-enumeration reference implementations.
//!
//! These evaluate every kernel over all `C(n,3)` subsets exactly as written,
//! with no reductions or shared state with the optimized paths in
//! [`crate::gof`]. They exist so the fast implementations can be checked
//! against an independent transcription; they are also slow on purpose.

use crate::dist::Gpd;

/// Symmetric kernel behind the first U-statistic of the nonnegative-shape
/// test: products of pairwise minima against the third coordinate, weighted
/// by the fitted score denominators.
pub fn h1(x1: f64, x2: f64, x3: f64, p: &Gpd) -> f64 {
    let d = |x: f64| p.theta() + p.beta() * x;
    (x1.min(x3) * x2.min(x3) / (d(x1) * d(x2))
        + x1.min(x2) * x3.min(x2) / (d(x1) * d(x3))
        + x2.min(x1) * x3.min(x1) / (d(x2) * d(x3)))
        / 3.0
}

/// Symmetric kernel behind the second U-statistic of the nonnegative-shape
/// test: minimum of each coordinate against the maximum of the other two.
pub fn h2(x1: f64, x2: f64, x3: f64, p: &Gpd) -> f64 {
    let d = |x: f64| p.theta() + p.beta() * x;
    (x1.min(x2.max(x3)) / d(x1) + x2.min(x1.max(x3)) / d(x2) + x3.min(x1.max(x2)) / d(x3)) / 3.0
}

/// Combined kernel of the negative-shape statistic: pairwise minima plus a
/// `(6 kappa - 3)`-weighted triple minimum.
pub fn g(x1: f64, x2: f64, x3: f64, kappa: f64) -> f64 {
    (x1.min(x2) + x2.min(x3) + x1.min(x3) + (6.0 * kappa - 3.0) * x1.min(x2).min(x3)) / 3.0
}

fn triple_average<F: Fn(f64, f64, f64) -> f64>(values: &[f64], kernel: F) -> f64 {
    let n = values.len();
    assert!(n >= 3, "need at least 3 observations");
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                sum += kernel(values[i], values[j], values[k]);
            }
        }
    }
    let triples = (n * (n - 1) * (n - 2) / 6) as f64;
    sum / triples
}

/// `U_1` by direct enumeration.
pub fn u1_direct(values: &[f64], p: &Gpd) -> f64 {
    triple_average(values, |a, b, c| h1(a, b, c, p))
}

/// `U_2` by direct enumeration.
pub fn u2_direct(values: &[f64], p: &Gpd) -> f64 {
    triple_average(values, |a, b, c| h2(a, b, c, p))
}

/// The negative-shape departure statistic by direct enumeration.
pub fn delta_n_direct(values: &[f64], kappa: f64) -> f64 {
    triple_average(values, |a, b, c| g(a, b, c, kappa))
}

/// The censored departure statistic by direct enumeration:
/// `6/(n(n-1)(n-2)) * sum over i<j<k of g * w_i w_j w_k`, where the weights
/// already fold in the event indicators.
pub fn delta_n_censored_direct(times: &[f64], weights: &[f64], kappa: f64) -> f64 {
    let n = times.len();
    assert_eq!(n, weights.len());
    assert!(n >= 3, "need at least 3 observations");
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let w = weights[i] * weights[j] * weights[k];
                if w != 0.0 {
                    sum += g(times[i], times[j], times[k], kappa) * w;
                }
            }
        }
    }
    6.0 / (n as f64 * (n as f64 - 1.0) * (n as f64 - 2.0)) * sum
}

/// The reweighted variance estimator transcribed term by term, indexing the
/// formulas literally. Returns the pre-scaling estimate
/// `9/(n-1) * sum (V_i - Vbar)^2`.
pub fn censored_variance_direct(
    times: &[f64],
    deltas: &[bool],
    weights: &[f64],
    kappa: f64,
) -> f64 {
    let n = times.len();
    let nf = n as f64;

    // h1hat(x) = (1/n^2) sum_{j<k} g(x, t_j, t_k) w_j w_k
    let h1hat = |x: f64| {
        let mut acc = 0.0;
        for j in 0..n {
            for k in (j + 1)..n {
                acc += g(x, times[j], times[k], kappa) * weights[j] * weights[k];
            }
        }
        acc / (nf * nf)
    };

    // xi_i = h1hat(t_i) delta_i / Kc(t_i-); the weight vector is delta/Kc
    let xi: Vec<f64> = (0..n).map(|i| h1hat(times[i]) * weights[i]).collect();

    // what(t_i) = sum_j xi_j I(t_j > t_i) / sum_j I(t_j >= t_i)
    let what: Vec<f64> = (0..n)
        .map(|i| {
            let mut num = 0.0;
            let mut den = 0.0;
            for j in 0..n {
                if times[j] > times[i] {
                    num += xi[j];
                }
                if times[j] >= times[i] {
                    den += 1.0;
                }
            }
            num / den
        })
        .collect();

    // phi_i = what(t_i) (1 - delta_i)
    let phi: Vec<f64> = (0..n)
        .map(|i| if deltas[i] { 0.0 } else { what[i] })
        .collect();

    // V_i = xi_i + phi_i - sum_j phi_j I(t_i >= t_j) / #{l: t_l >= t_j}
    let v: Vec<f64> = (0..n)
        .map(|i| {
            let mut compensator = 0.0;
            for j in 0..n {
                if phi[j] != 0.0 && times[i] >= times[j] {
                    let mut at_risk = 0.0;
                    for l in 0..n {
                        if times[l] >= times[j] {
                            at_risk += 1.0;
                        }
                    }
                    compensator += phi[j] / at_risk;
                }
            }
            xi[i] + phi[i] - compensator
        })
        .collect();

    let vbar = v.iter().sum::<f64>() / nf;
    9.0 / (nf - 1.0) * v.iter().map(|&vi| (vi - vbar) * (vi - vbar)).sum::<f64>()
}
