//! The empirical telescope distance and pairwise distance matrices.
//!
//! The distance between two samples is the weighted sum, over window orders
//! `k = 1..depth`, of the estimated supremum gap between the order-`k`
//! window distributions. The depth is evaluated on the shorter of the two
//! samples, so a matrix over unequal-length samples uses different depths
//! per pair.

use crate::error::{Error, Result};
use crate::hypothesis::{
    multi_depth_kernel_sums, svm_summand_from_sums, MultiDepthSums, SummandEstimator, SvmConfig,
};
use crate::hypothesis::{assemble_summand_sums};
use crate::sample::{extract_windows, Sample};
use crate::weights::{DepthPolicy, WeightScheme};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Everything the empirical telescope distance leaves as a parameter:
/// summand weights, truncation depth, and the summand estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TelescopeConfig {
    pub weights: WeightScheme,
    pub depth: DepthPolicy,
    pub estimator: SummandEstimator,
}

impl Default for TelescopeConfig {
    fn default() -> Self {
        TelescopeConfig {
            weights: WeightScheme::InverseSquare,
            depth: DepthPolicy::LogLength,
            estimator: SummandEstimator::svm_default(),
        }
    }
}

impl TelescopeConfig {
    pub fn with_oracle(mut self) -> Self {
        self.estimator = SummandEstimator::ExactTvOracle;
        self
    }

    /// Number of summands evaluated for a pair whose shorter sample has
    /// length `l` (a finite custom weight list truncates further).
    pub fn effective_depth(&self, l: usize) -> usize {
        let mut depth = self.depth.depth(l);
        if let Some(max) = self.weights.max_order() {
            depth = depth.min(max);
        }
        depth.max(1)
    }
}

/// Per-order summand values together with the weighted total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceBreakdown {
    pub summands: Vec<f64>,
    pub weights: Vec<f64>,
    pub total: f64,
}

/// Empirical telescope distance between two samples.
pub fn telescope_distance(cfg: &TelescopeConfig, x: &Sample, y: &Sample) -> Result<f64> {
    Ok(telescope_breakdown(cfg, x, y)?.total)
}

/// Like [`telescope_distance`] but keeps the per-order summands.
pub fn telescope_breakdown(
    cfg: &TelescopeConfig,
    x: &Sample,
    y: &Sample,
) -> Result<DistanceBreakdown> {
    if x.dim() != y.dim() {
        return Err(Error::IncompatibleSamples { left: x.dim(), right: y.dim() });
    }
    let l = x.len().min(y.len());
    let depth = cfg.effective_depth(l);
    let summands = match &cfg.estimator {
        SummandEstimator::ExactTvOracle => {
            let mut out = Vec::with_capacity(depth);
            for k in 1..=depth {
                let ws = extract_windows(x, y, k)?;
                out.push(crate::hypothesis::exact_tv(&ws)?);
            }
            out
        }
        SummandEstimator::KernelSvm { config } => {
            config.validate()?;
            let self_x = multi_depth_kernel_sums(x, x, depth, &config.kernel, 1, false);
            let self_y = multi_depth_kernel_sums(y, y, depth, &config.kernel, 1, false);
            svm_pair_summands(config, x, &self_x, y, &self_y, depth)?
        }
    };
    let mut weights = Vec::with_capacity(depth);
    let mut total = 0.0;
    for (idx, s) in summands.iter().enumerate() {
        let w = cfg.weights.weight(idx + 1)?;
        weights.push(w);
        total += w * s;
    }
    Ok(DistanceBreakdown { summands, weights, total })
}

/// SVM summands for orders `1..=depth` of one pair, reusing precomputed
/// self-block kernel sums.
fn svm_pair_summands(
    config: &SvmConfig,
    x: &Sample,
    self_x: &MultiDepthSums,
    y: &Sample,
    self_y: &MultiDepthSums,
    depth: usize,
) -> Result<Vec<f64>> {
    let cross = multi_depth_kernel_sums(x, y, depth, &config.kernel, 1, true);
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        let ws = extract_windows(x, y, k)?;
        let sums = assemble_summand_sums(
            &self_x.row_raw[k - 1],
            &self_y.row_raw[k - 1],
            &cross.row_raw[k - 1],
            &cross.col_raw[k - 1],
        );
        out.push(svm_summand_from_sums(config, &ws, &sums));
    }
    Ok(out)
}

/// Symmetric pairwise distance matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    ids: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Build from explicit parts; checks symmetry, zero diagonal, and
    /// non-negativity.
    pub fn from_parts(ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if values.len() != n * n {
            return Err(Error::Malformed {
                what: "distance matrix".into(),
                reason: format!("{} values for {} ids", values.len(), n),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for id in &ids {
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::Malformed {
                    what: "distance matrix".into(),
                    reason: format!("nonzero diagonal at {i}"),
                });
            }
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Malformed {
                        what: "distance matrix".into(),
                        reason: format!("entry ({i},{j}) = {v}"),
                    });
                }
                if v != values[j * n + i] {
                    return Err(Error::Malformed {
                        what: "distance matrix".into(),
                        reason: format!("asymmetry at ({i},{j})"),
                    });
                }
            }
        }
        Ok(DistanceMatrix { ids, values })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.len() + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }
}

/// Pairwise telescope distances between all samples. Each unordered pair is
/// computed exactly once; the diagonal is forced to zero.
pub fn distance_matrix(cfg: &TelescopeConfig, samples: &[Sample]) -> Result<DistanceMatrix> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: samples.len() });
    }
    let dim = samples[0].dim();
    for s in samples {
        if s.dim() != dim {
            return Err(Error::IncompatibleSamples { left: dim, right: s.dim() });
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for s in samples {
        if !seen.insert(s.id().to_string()) {
            return Err(Error::DuplicateId(s.id().to_string()));
        }
    }

    let n = samples.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();

    let entries: Vec<Result<f64>> = match &cfg.estimator {
        SummandEstimator::ExactTvOracle => pairs
            .par_iter()
            .map(|&(i, j)| telescope_distance(cfg, &samples[i], &samples[j]))
            .collect(),
        SummandEstimator::KernelSvm { config } => {
            config.validate()?;
            // Self-block kernel sums depend only on (sample, order), so they
            // are shared across every pair the sample participates in.
            let self_depths: Vec<usize> =
                samples.iter().map(|s| cfg.effective_depth(s.len())).collect();
            let self_sums: Vec<MultiDepthSums> = samples
                .par_iter()
                .zip(&self_depths)
                .map(|(s, &d)| multi_depth_kernel_sums(s, s, d, &config.kernel, 1, false))
                .collect();
            pairs
                .par_iter()
                .map(|&(i, j)| {
                    let (x, y) = (&samples[i], &samples[j]);
                    let depth = cfg.effective_depth(x.len().min(y.len()));
                    let summands =
                        svm_pair_summands(config, x, &self_sums[i], y, &self_sums[j], depth)?;
                    let mut total = 0.0;
                    for (idx, s) in summands.iter().enumerate() {
                        total += cfg.weights.weight(idx + 1)? * s;
                    }
                    Ok(total)
                })
                .collect()
        }
    };

    let mut values = vec![0.0; n * n];
    for (&(i, j), entry) in pairs.iter().zip(entries) {
        let v = entry?;
        values[i * n + j] = v;
        values[j * n + i] = v;
    }
    let ids = samples.iter().map(|s| s.id().to_string()).collect();
    Ok(DistanceMatrix { ids, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(id: &str, s: &str) -> Sample {
        let codes: Vec<i64> = s.bytes().map(|b| (b - b'0') as i64).collect();
        Sample::discrete(id, &codes, &[0, 1]).unwrap()
    }

    fn oracle_cfg() -> TelescopeConfig {
        TelescopeConfig::default().with_oracle()
    }

    #[test]
    fn self_distance_is_zero() {
        let x = bits("x", "0110100101");
        assert_eq!(telescope_distance(&oracle_cfg(), &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn hand_derived_value_for_alternating_vs_constant() {
        // Summands 0.5 (k=1) and 1.0 (k=2); weights 1 and 1/4; depth
        // floor(ln 10) = 2. Total 0.75.
        let x = bits("x", "0101010101");
        let y = bits("y", "0000000000");
        let b = telescope_breakdown(&oracle_cfg(), &x, &y).unwrap();
        assert_eq!(b.summands, vec![0.5, 1.0]);
        assert_eq!(b.weights, vec![1.0, 0.25]);
        assert_eq!(b.total, 0.75);
    }

    #[test]
    fn geometric_weights_with_full_depth_stay_below_one() {
        let x = bits("x", "01011001");
        let y = bits("y", "11100110");
        let cfg = TelescopeConfig {
            weights: WeightScheme::Geometric,
            depth: DepthPolicy::Full,
            estimator: SummandEstimator::ExactTvOracle,
        };
        let d = telescope_distance(&cfg, &x, &y).unwrap();
        assert!(d <= 1.0);
    }

    #[test]
    fn distance_is_symmetric() {
        let x = bits("x", "010110");
        let y = bits("y", "111000");
        let cfg = oracle_cfg();
        assert_eq!(
            telescope_distance(&cfg, &x, &y).unwrap(),
            telescope_distance(&cfg, &y, &x).unwrap()
        );
    }

    #[test]
    fn custom_weight_list_truncates_depth() {
        let x = bits("x", "0101010101010101");
        let y = bits("y", "0000000000000000");
        let cfg = TelescopeConfig {
            weights: WeightScheme::custom(vec![1.0]).unwrap(),
            depth: DepthPolicy::Full,
            estimator: SummandEstimator::ExactTvOracle,
        };
        let b = telescope_breakdown(&cfg, &x, &y).unwrap();
        assert_eq!(b.summands.len(), 1);
    }

    #[test]
    fn matrix_of_duplicate_and_distinct_samples() {
        let x = bits("x", "0101010101");
        let y = bits("y", "0000000000");
        let x2 = x.clone().with_id("x2");
        let dm = distance_matrix(&oracle_cfg(), &[x, y, x2]).unwrap();
        assert_eq!(dm.get(0, 2), 0.0);
        assert_eq!(dm.get(0, 1), 0.75);
        assert_eq!(dm.get(2, 1), 0.75);
        for i in 0..3 {
            assert_eq!(dm.get(i, i), 0.0);
            for j in 0..3 {
                assert_eq!(dm.get(i, j), dm.get(j, i));
            }
        }
    }

    #[test]
    fn matrix_entries_match_pairwise_calls_bit_for_bit_with_svm() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let samples: Vec<Sample> = (0..4)
            .map(|i| {
                let vals: Vec<f64> = (0..120).map(|_| rng.random::<f64>()).collect();
                Sample::from_flat(format!("s{i}"), 2, vals).unwrap()
            })
            .collect();
        let cfg = TelescopeConfig::default();
        let dm = distance_matrix(&cfg, &samples).unwrap();
        for i in 0..samples.len() {
            for j in i + 1..samples.len() {
                let direct = telescope_distance(&cfg, &samples[i], &samples[j]).unwrap();
                assert_eq!(dm.get(i, j), direct, "entry ({i},{j}) differs from direct call");
            }
        }
    }

    #[test]
    fn two_sample_matrix_mirrors_single_value() {
        let x = bits("x", "0101010101");
        let y = bits("y", "0000000000");
        let dm = distance_matrix(&oracle_cfg(), &[x, y]).unwrap();
        assert_eq!(dm.len(), 2);
        assert_eq!(dm.get(0, 1), 0.75);
        assert_eq!(dm.get(1, 0), 0.75);
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let x = bits("x", "0101");
        let y = bits("x", "0000");
        assert!(matches!(distance_matrix(&oracle_cfg(), &[x, y]), Err(Error::DuplicateId(_))));
    }
}
