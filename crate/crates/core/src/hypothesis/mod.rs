//! Classification back-ends that estimate one telescope summand.
//!
//! Each summand of the empirical telescope distance is a supremum, over a
//! class of indicator functions, of the gap between the weighted class-1 and
//! class-0 means. Estimating it is a weighted binary classification problem
//! over the sliding windows. Two back-ends are provided: an exact oracle for
//! finite alphabets (the indicator class is all subsets of the window
//! domain, so the supremum is the total variation distance between window
//! histograms) and a soft-margin kernel SVM trained by SMO.

mod oracle;
mod svm;

pub use oracle::exact_tv;
pub use svm::{
    train_weighted_erm, Kernel, RbfBandwidth, SvmConfig, TrainedClassifier,
};
pub(crate) use svm::{
    assemble_summand_sums, multi_depth_kernel_sums, svm_summand, svm_summand_from_sums,
    MultiDepthSums,
};

use crate::error::Result;
use crate::sample::WindowSet;
use serde::{Deserialize, Serialize};

/// A back-end that turns one [`WindowSet`] into one summand estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SummandEstimator {
    /// Brute-force supremum over all indicator sets of a finite window
    /// domain; exact, but requires discrete samples.
    ExactTvOracle,
    /// Weighted soft-margin SVM; works on any real-valued windows.
    KernelSvm {
        #[serde(default)]
        config: SvmConfig,
    },
}

impl SummandEstimator {
    pub fn svm_default() -> Self {
        SummandEstimator::KernelSvm { config: SvmConfig::default() }
    }

    /// Estimate `sup_h |weighted class-1 mean of h - weighted class-0 mean of h|`
    /// for the windows in `ws`. Always in `[0, 1]`; exact for the oracle.
    pub fn estimate_summand(&self, ws: &WindowSet) -> Result<f64> {
        match self {
            SummandEstimator::ExactTvOracle => exact_tv(ws),
            SummandEstimator::KernelSvm { config } => svm_summand(config, ws),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{extract_windows, Sample};

    fn bits(id: &str, s: &str) -> Sample {
        let codes: Vec<i64> = s.bytes().map(|b| (b - b'0') as i64).collect();
        Sample::discrete(id, &codes, &[0, 1]).unwrap()
    }

    #[test]
    fn oracle_and_svm_agree_that_identical_samples_are_indistinguishable() {
        let x = bits("x", "01011010010110");
        for est in [SummandEstimator::ExactTvOracle, SummandEstimator::svm_default()] {
            let ws = extract_windows(&x, &x, 2).unwrap();
            assert_eq!(est.estimate_summand(&ws).unwrap(), 0.0);
        }
    }

    #[test]
    fn estimates_stay_in_unit_interval() {
        let x = bits("x", "0101010101");
        let y = bits("y", "0000000000");
        for est in [SummandEstimator::ExactTvOracle, SummandEstimator::svm_default()] {
            for k in 1..=3 {
                let ws = extract_windows(&x, &y, k).unwrap();
                let v = est.estimate_summand(&ws).unwrap();
                assert!((0.0..=1.0).contains(&v), "estimate {v} out of range");
            }
        }
    }
}
