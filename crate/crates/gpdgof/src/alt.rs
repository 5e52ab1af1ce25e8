//! Alternative distributions for the power experiments.

use crate::data::Sample;
use crate::dist::Gpd;
use crate::error::{Error, Result};
use crate::rng;
use rand::Rng;
use rand_distr::{Beta, ChiSquared, Distribution, Gamma, Gumbel, Normal, Weibull};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A positive-valued alternative to sample from in power studies.
///
/// `GenGamma(a1, a2)` is a `Gamma(a1, 1)` variate raised to the power `a2`.
/// The absolute-value families take `|X|` of the underlying draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AltSpec {
    /// Beta with both shape parameters positive.
    Beta { a: f64, b: f64 },
    /// Weibull with shape `a` and scale `b`.
    Weibull { shape: f64, scale: f64 },
    /// Gamma with shape `a` and scale `b`.
    Gamma { shape: f64, scale: f64 },
    /// Power `power` of a Gamma(`shape`, 1) variate.
    GenGamma { shape: f64, power: f64 },
    /// Absolute value of a normal draw.
    AbsNormal { mean: f64, sd: f64 },
    /// Chi-square with `df` degrees of freedom.
    ChiSquare { df: f64 },
    /// Absolute value of a Gumbel draw with location `loc` and scale `scale`.
    AbsGumbel { loc: f64, scale: f64 },
    /// Generalized Pareto itself (the null family, useful for level checks).
    Gpd { theta: f64, beta: f64 },
}

impl fmt::Display for AltSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AltSpec::Beta { a, b } => write!(f, "Beta({a},{b})"),
            AltSpec::Weibull { shape, scale } => write!(f, "Weibull({shape},{scale})"),
            AltSpec::Gamma { shape, scale } => write!(f, "Gamma({shape},{scale})"),
            AltSpec::GenGamma { shape, power } => write!(f, "GenGamma({shape},{power})"),
            AltSpec::AbsNormal { mean, sd } => write!(f, "AbsNormal({mean},{sd})"),
            AltSpec::ChiSquare { df } => write!(f, "ChiSquare({df})"),
            AltSpec::AbsGumbel { loc, scale } => write!(f, "AbsGumbel({loc},{scale})"),
            AltSpec::Gpd { theta, beta } => write!(f, "Gpd({theta},{beta})"),
        }
    }
}

fn bad(family: &'static str, message: String) -> Error {
    Error::InvalidAltParams { family, message }
}

impl AltSpec {
    /// Check the family-specific parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64| v.is_finite() && v > 0.0;
        match *self {
            AltSpec::Beta { a, b } => {
                if !(pos(a) && pos(b)) {
                    return Err(bad("Beta", format!("shapes must be positive, got ({a}, {b})")));
                }
            }
            AltSpec::Weibull { shape, scale } => {
                if !(pos(shape) && pos(scale)) {
                    return Err(bad(
                        "Weibull",
                        format!("shape and scale must be positive, got ({shape}, {scale})"),
                    ));
                }
            }
            AltSpec::Gamma { shape, scale } => {
                if !(pos(shape) && pos(scale)) {
                    return Err(bad(
                        "Gamma",
                        format!("shape and scale must be positive, got ({shape}, {scale})"),
                    ));
                }
            }
            AltSpec::GenGamma { shape, power } => {
                if !(pos(shape) && pos(power)) {
                    return Err(bad(
                        "GenGamma",
                        format!("shape and power must be positive, got ({shape}, {power})"),
                    ));
                }
            }
            AltSpec::AbsNormal { mean, sd } => {
                if !mean.is_finite() || !pos(sd) {
                    return Err(bad(
                        "AbsNormal",
                        format!("mean must be finite and sd positive, got ({mean}, {sd})"),
                    ));
                }
            }
            AltSpec::ChiSquare { df } => {
                if !pos(df) {
                    return Err(bad("ChiSquare", format!("df must be positive, got {df}")));
                }
            }
            AltSpec::AbsGumbel { loc, scale } => {
                if !loc.is_finite() || !pos(scale) {
                    return Err(bad(
                        "AbsGumbel",
                        format!("location must be finite and scale positive, got ({loc}, {scale})"),
                    ));
                }
            }
            AltSpec::Gpd { theta, beta } => {
                Gpd::new(theta, beta)?;
            }
        }
        Ok(())
    }

    /// One draw. Absolute-value families fold the sign after drawing; draws
    /// that land exactly on zero are redrawn so samples stay strictly positive.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let x = match *self {
                AltSpec::Beta { a, b } => Beta::new(a, b).unwrap().sample(rng),
                AltSpec::Weibull { shape, scale } => {
                    Weibull::new(scale, shape).unwrap().sample(rng)
                }
                AltSpec::Gamma { shape, scale } => Gamma::new(shape, scale).unwrap().sample(rng),
                AltSpec::GenGamma { shape, power } => {
                    Gamma::new(shape, 1.0).unwrap().sample(rng).powf(power)
                }
                AltSpec::AbsNormal { mean, sd } => {
                    Normal::new(mean, sd).unwrap().sample(rng).abs()
                }
                AltSpec::ChiSquare { df } => ChiSquared::new(df).unwrap().sample(rng),
                AltSpec::AbsGumbel { loc, scale } => {
                    Gumbel::new(loc, scale).unwrap().sample(rng).abs()
                }
                AltSpec::Gpd { theta, beta } => {
                    Gpd::new(theta, beta).unwrap().draw(rng)
                }
            };
            if x > 0.0 && x.is_finite() {
                return x;
            }
        }
    }

    /// `n` i.i.d. draws from the stream derived from `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sample> {
        self.validate()?;
        let mut rng = rng::stream(seed, 0);
        Sample::new((0..n).map(|_| self.draw(&mut rng)).collect())
    }
}
