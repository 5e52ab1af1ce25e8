//! Goodness-of-fit testing for the generalized Pareto distribution.
//!
//! Two complementary U-statistic tests cover the full shape range:
//!
//! - **Nonnegative shape**: a Cramér-von-Mises-type statistic built from a
//!   fixed-point representation of the distribution function
//!   ([`gof::delta_p`]), fitted by the asymptotic ML estimator
//!   ([`estimate::aml`]) and calibrated by resampling.
//! - **Negative shape**: a departure statistic derived from the constancy of
//!   the product of hazard rate and dynamic survival extropy
//!   ([`gof::delta_n_star`]), fitted by the combined estimator
//!   ([`estimate::cmm`]) and calibrated by the bootstrap of
//!   [`montecarlo::bootstrap_a1`] or the simulated tables of
//!   [`montecarlo::build_table`].
//!
//! Right-censored data run through the inverse-probability-of-censoring
//! weighted statistic [`gof::delta_n_censored`] with an asymptotically
//! normal decision ([`gof::censored_test`]).
//!
//! All Monte Carlo components are deterministic functions of a master seed,
//! independent of thread count.

pub mod alt;
pub mod data;
pub mod dist;
pub mod error;
pub mod estimate;
pub mod gof;
pub mod montecarlo;
pub mod oracle;
pub mod quad;
pub mod rng;

pub use alt::AltSpec;
pub use data::{CensoredRecord, CensoredSample, Sample};
pub use dist::Gpd;
pub use error::{Error, Result};
pub use estimate::{StepSurvival, TailPolicy};
pub use gof::{Decision, TestCase, TestReport};
pub use montecarlo::{CriticalTable, PowerResult};
