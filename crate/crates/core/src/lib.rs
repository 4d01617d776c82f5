//! Telescope distance between time-series samples, estimated through
//! weighted binary classification, with the statistical machinery built on
//! top of it: the three-sample test, homogeneity testing, distance-based
//! clustering with known or unknown cluster count, finite-sample error
//! bounds under geometric mixing, and generators for the synthetic
//! processes used by the test harness.

pub mod bounds;
pub mod clustering;
pub mod error;
pub mod experiment;
pub mod hypothesis;
pub mod inference;
pub mod io;
pub mod sample;
pub mod synthgen;
pub mod telescope;
pub mod weights;

pub use error::{Error, Result};
pub use hypothesis::{exact_tv, train_weighted_erm, Kernel, SummandEstimator, SvmConfig};
pub use sample::{extract_windows, Sample, Window, WindowSet};
pub use telescope::{distance_matrix, telescope_distance, DistanceMatrix, TelescopeConfig};
pub use weights::{DepthPolicy, WeightScheme};
