//! The three-sample test and the threshold homogeneity test.

use crate::error::Result;
use crate::sample::Sample;
use crate::telescope::{telescope_distance, TelescopeConfig};
use serde::{Deserialize, Serialize};

/// Which of the two reference samples the test sample was attributed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attribution {
    First,
    Second,
}

/// Outcome of the three-sample test: `z` is attributed to the nearer of
/// `x` and `y` under the telescope distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeSampleVerdict {
    pub matches: Attribution,
    pub d_zx: f64,
    pub d_zy: f64,
    /// Set when the two distances are exactly equal; the tie goes to the
    /// first sample.
    pub tie: bool,
}

/// Attribute `z` to whichever of `x`, `y` is closer in telescope distance;
/// ties (exact equality) go to the first.
pub fn three_sample_test(
    cfg: &TelescopeConfig,
    x: &Sample,
    y: &Sample,
    z: &Sample,
) -> Result<ThreeSampleVerdict> {
    let d_zx = telescope_distance(cfg, z, x)?;
    let d_zy = telescope_distance(cfg, z, y)?;
    let matches = if d_zx <= d_zy { Attribution::First } else { Attribution::Second };
    Ok(ThreeSampleVerdict { matches, d_zx, d_zy, tie: d_zx == d_zy })
}

/// Decision threshold `n^(-exponent)` for the homogeneity test. The
/// default exponent 1/8 matches the rate derived for halfspace classes
/// with linearly growing VC dimension.
pub fn homogeneity_threshold(n: usize, exponent: f64) -> f64 {
    assert!(n >= 1, "threshold requires n >= 1");
    assert!(exponent > 0.0, "threshold requires a positive exponent");
    (n as f64).powf(-exponent)
}

pub const DEFAULT_HOMOGENEITY_EXPONENT: f64 = 0.125;

/// Outcome of the homogeneity (two-sample) test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityVerdict {
    pub same_distribution: bool,
    /// The computed empirical telescope distance.
    pub statistic: f64,
    /// `min(len x, len y)^(-exponent)`.
    pub threshold: f64,
}

/// Declare the samples identically distributed iff the empirical telescope
/// distance is strictly below the threshold.
pub fn homogeneity_test(
    cfg: &TelescopeConfig,
    x: &Sample,
    y: &Sample,
    exponent: f64,
) -> Result<HomogeneityVerdict> {
    let statistic = telescope_distance(cfg, x, y)?;
    let threshold = homogeneity_threshold(x.len().min(y.len()), exponent);
    Ok(HomogeneityVerdict { same_distribution: statistic < threshold, statistic, threshold })
}
