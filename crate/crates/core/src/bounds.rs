//! Closed-form finite-sample bound calculators under geometric mixing.
//!
//! All formulas fix the summand weights to `w_k = 2^{-k}` and the blocking
//! schedule to `t_n = l_n = sqrt(n)` (kept real-valued, not rounded). The
//! deviation bound is meaningful when `k < sqrt(n)`; it is reported
//! unclamped even when vacuous (> 1).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// VC-dimension growth rule `k -> d_k`, non-decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VcDims {
    /// Halfspaces over the window space: `d_k = k + 1`.
    Halfspaces,
    Constant { value: u32 },
    Custom { values: Vec<u32> },
}

impl VcDims {
    pub fn dim(&self, k: usize) -> Result<u32> {
        if k == 0 {
            return Err(Error::InvalidOrder(k));
        }
        match self {
            VcDims::Halfspaces => {
                u32::try_from(k + 1).map_err(|_| Error::InvalidBoundParams(format!("order {k} too large")))
            }
            VcDims::Constant { value } => Ok(*value),
            VcDims::Custom { values } => values
                .get(k - 1)
                .copied()
                .ok_or_else(|| Error::InvalidBoundParams(format!("no VC dimension listed for order {k}"))),
        }
    }
}

/// Parameters of the geometric-mixing bounds: the mixing rate `gamma` with
/// `beta(rho, t) <= gamma^t`, and the VC-dimension growth of the hypothesis
/// classes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingBoundParams {
    pub gamma: f64,
    pub vc_dims: VcDims,
}

impl MixingBoundParams {
    pub fn new(gamma: f64, vc_dims: VcDims) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::InvalidBoundParams(format!("gamma must be in (0,1), got {gamma}")));
        }
        if let VcDims::Custom { values } = &vc_dims {
            if values.is_empty() {
                return Err(Error::InvalidBoundParams("custom VC list must be non-empty".into()));
            }
            if values.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidBoundParams("VC dimensions must be non-decreasing".into()));
            }
            if values.iter().any(|&v| v == 0) {
                return Err(Error::InvalidBoundParams("VC dimensions must be positive".into()));
            }
        }
        if let VcDims::Constant { value: 0 } = vc_dims {
            return Err(Error::InvalidBoundParams("VC dimension must be positive".into()));
        }
        Ok(MixingBoundParams { gamma, vc_dims })
    }

    pub fn halfspaces(gamma: f64) -> Result<Self> {
        MixingBoundParams::new(gamma, VcDims::Halfspaces)
    }
}

/// Probability that the order-`k` empirical supremum deviates from its
/// expectation by more than `epsilon`:
/// `n * gamma^(sqrt(n) - k) + 8 * n^((d_k + 1) / 2) * exp(-sqrt(n) * epsilon^2 / 8)`.
pub fn q_bound(p: &MixingBoundParams, n: u64, k: usize, epsilon: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidBoundParams("n must be >= 1".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidBoundParams(format!("epsilon must be positive, got {epsilon}")));
    }
    let d_k = p.vc_dims.dim(k)? as f64;
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let mixing_term = nf * p.gamma.powf(sqrt_n - k as f64);
    let deviation_term = 8.0 * nf.powf((d_k + 1.0) / 2.0) * (-sqrt_n * epsilon * epsilon / 8.0).exp();
    Ok(mixing_term + deviation_term)
}

/// Telescope-level deviation weight
/// `-log2(eps) * (n * gamma^(sqrt(n) + log2(eps)) + 8 * n^((d + 1) / 2) * exp(-sqrt(n) * eps^2 / 8))`
/// with the VC dimension indexed at `ceil(-log2(eps))`.
pub fn delta(p: &MixingBoundParams, n: u64, epsilon: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidBoundParams("n must be >= 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    let levels = -epsilon.log2();
    let d_index = levels.ceil() as usize;
    let d = p.vc_dims.dim(d_index.max(1))? as f64;
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let mixing_term = nf * p.gamma.powf(sqrt_n + epsilon.log2());
    let deviation_term = 8.0 * nf.powf((d + 1.0) / 2.0) * (-sqrt_n * epsilon * epsilon / 8.0).exp();
    Ok(levels * (mixing_term + deviation_term))
}

/// The error-probability expressions of the homogeneity and clustering
/// theorems, as closed forms over [`delta`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "kebab-case")]
pub enum BoundScenario {
    /// Type I error of the threshold homogeneity test: `2 * delta(eps/4, n)`.
    HomogeneityType1 { epsilon: f64, n: u64 },
    /// Type II error given true distance `separation`:
    /// `2 * delta((separation - eps)/4, n)`.
    HomogeneityType2 { epsilon: f64, separation: f64, n: u64 },
    /// Failure probability of known-count clustering over `num_samples`
    /// samples with minimal inter-distribution distance `separation`:
    /// `N(N-1) * delta(separation/12, n)`; success is 1 minus this.
    ClusteringKnownK { separation: f64, num_samples: u64, n: u64 },
    /// Misclustering probability with unknown count and threshold `epsilon`:
    /// `N(N-1) * max(delta(eps/4, n), delta((separation - eps)/4, n))`.
    ClusteringUnknownK { epsilon: f64, separation: f64, num_samples: u64, n: u64 },
}

/// Evaluate one theorem bound; compositions call [`delta`] directly, so
/// they are bit-identical to assembling the formula by hand.
pub fn theorem_bounds(p: &MixingBoundParams, scenario: BoundScenario) -> Result<f64> {
    match scenario {
        BoundScenario::HomogeneityType1 { epsilon, n } => Ok(2.0 * delta(p, n, epsilon / 4.0)?),
        BoundScenario::HomogeneityType2 { epsilon, separation, n } => {
            if separation <= epsilon {
                return Err(Error::SeparationTooSmall { separation, epsilon });
            }
            Ok(2.0 * delta(p, n, (separation - epsilon) / 4.0)?)
        }
        BoundScenario::ClusteringKnownK { separation, num_samples, n } => {
            let pairs = num_samples as f64 * (num_samples as f64 - 1.0);
            Ok(pairs * delta(p, n, separation / 12.0)?)
        }
        BoundScenario::ClusteringUnknownK { epsilon, separation, num_samples, n } => {
            if separation <= epsilon {
                return Err(Error::SeparationTooSmall { separation, epsilon });
            }
            let pairs = num_samples as f64 * (num_samples as f64 - 1.0);
            let a = delta(p, n, epsilon / 4.0)?;
            let b = delta(p, n, (separation - epsilon) / 4.0)?;
            Ok(pairs * a.max(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> MixingBoundParams {
        MixingBoundParams::halfspaces(0.5).unwrap()
    }

    #[test]
    fn q_bound_hand_check() {
        // gamma = 0.5, d_1 = 2, n = 10^4, k = 1, eps = 0.5:
        // 10^4 * 0.5^99 + 8 * 10^6 * exp(-25/8).
        let v = q_bound(&params(), 10_000, 1, 0.5).unwrap();
        let expected = 1e4 * 0.5f64.powi(99) + 8.0 * 1e6 * (-3.125f64).exp();
        assert!((v - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn q_bound_large_epsilon_leaves_mixing_term() {
        let p = params();
        let v = q_bound(&p, 10_000, 2, 1e6).unwrap();
        let mixing = 1e4 * 0.5f64.powf(98.0);
        assert!((v - mixing).abs() <= mixing * 1e-12 + 1e-300);
    }

    #[test]
    fn q_bound_at_n_one() {
        // gamma^(1-1) * 1 + 8 * exp(-eps^2/8); d_1 = 2 gives n^1.5 = 1.
        let eps = 0.7;
        let v = q_bound(&params(), 1, 1, eps).unwrap();
        let expected = 1.0 + 8.0 * (-eps * eps / 8.0f64).exp();
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn q_bound_decreases_in_epsilon() {
        let p = params();
        let mut prev = f64::INFINITY;
        for eps in [0.1, 0.2, 0.4, 0.8] {
            let v = q_bound(&p, 400, 2, eps).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn delta_uses_ceil_log_index_and_matches_hand_formula() {
        // eps = 0.5: -log2(eps) = 1, index d_1 = 2.
        let p = params();
        let n = 4096u64;
        let v = delta(&p, n, 0.5).unwrap();
        let nf = n as f64;
        let expected =
            1.0 * (nf * 0.5f64.powf(nf.sqrt() - 1.0) + 8.0 * nf.powf(1.5) * (-nf.sqrt() / 32.0).exp());
        assert!((v - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn delta_rejects_epsilon_outside_unit_interval() {
        let p = params();
        assert!(matches!(delta(&p, 100, 1.0), Err(Error::EpsilonOutOfRange(_))));
        assert!(matches!(delta(&p, 100, 0.0), Err(Error::EpsilonOutOfRange(_))));
        assert!(delta(&p, 100, 0.999).is_ok());
    }

    #[test]
    fn delta_eventually_decreases_in_n() {
        // The polynomial factor n^((d+1)/2) wins until exp(-sqrt(n) eps^2/8)
        // takes over, so the grid shows a single knee and a decaying tail.
        let p = params();
        let grid: Vec<u64> = (2..=10).map(|e| 10u64.pow(e)).collect();
        let values: Vec<f64> = grid.iter().map(|&n| delta(&p, n, 0.25).unwrap()).collect();
        let peak = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        for w in values[peak..].windows(2) {
            assert!(w[1] <= w[0], "delta rose from {} to {} past the knee", w[0], w[1]);
        }
        assert!(peak < values.len() - 1, "no decay observed on the grid");
        assert!(*values.last().unwrap() < values[0]);
    }

    #[test]
    fn delta_blows_up_as_epsilon_vanishes() {
        let p = params();
        let n = 10_000u64;
        let v1 = delta(&p, n, 1e-1).unwrap();
        let v3 = delta(&p, n, 1e-3).unwrap();
        let v6 = delta(&p, n, 1e-6).unwrap();
        assert!(v1 < v3 && v3 < v6);
    }

    #[test]
    fn theorem_bounds_are_exact_compositions() {
        let p = params();
        let t1 = theorem_bounds(&p, BoundScenario::HomogeneityType1 { epsilon: 0.2, n: 900 }).unwrap();
        assert_eq!(t1, 2.0 * delta(&p, 900, 0.05).unwrap());

        let known =
            theorem_bounds(&p, BoundScenario::ClusteringKnownK { separation: 0.9, num_samples: 2, n: 900 })
                .unwrap();
        assert_eq!(known, 2.0 * delta(&p, 900, 0.075).unwrap());

        // separation = 2 * epsilon makes both arguments of the max equal.
        let unk = theorem_bounds(
            &p,
            BoundScenario::ClusteringUnknownK { epsilon: 0.3, separation: 0.6, num_samples: 5, n: 900 },
        )
        .unwrap();
        assert_eq!(unk, 20.0 * delta(&p, 900, 0.075).unwrap());
    }

    #[test]
    fn separation_must_exceed_threshold() {
        let p = params();
        let err = theorem_bounds(
            &p,
            BoundScenario::HomogeneityType2 { epsilon: 0.5, separation: 0.4, n: 100 },
        )
        .unwrap_err();
        assert!(err.to_string().contains("separation must exceed threshold"));
    }

    #[test]
    fn slower_mixing_never_shrinks_bounds() {
        let lo = MixingBoundParams::halfspaces(0.3).unwrap();
        let hi = MixingBoundParams::halfspaces(0.8).unwrap();
        for n in [100u64, 10_000] {
            for k in [1usize, 3] {
                assert!(q_bound(&hi, n, k, 0.2).unwrap() >= q_bound(&lo, n, k, 0.2).unwrap());
            }
            assert!(delta(&hi, n, 0.2).unwrap() >= delta(&lo, n, 0.2).unwrap());
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(MixingBoundParams::halfspaces(0.0).is_err());
        assert!(MixingBoundParams::halfspaces(1.0).is_err());
        assert!(MixingBoundParams::new(0.5, VcDims::Custom { values: vec![3, 2] }).is_err());
        assert!(MixingBoundParams::new(0.5, VcDims::Custom { values: vec![] }).is_err());
        let custom = MixingBoundParams::new(0.5, VcDims::Custom { values: vec![2, 3] }).unwrap();
        assert!(q_bound(&custom, 100, 3, 0.5).is_err());
    }
}
