//! Summand weights `w_k` and truncation-depth policies.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Positive summable weights `w_k` attached to the telescope summands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightScheme {
    /// `w_k = k^{-2}`.
    InverseSquare,
    /// `w_k = 2^{-k}`.
    Geometric,
    /// Explicit finite list; `w_k = values[k - 1]`. Finite length is what
    /// makes the scheme summable, so orders past the end are an error and
    /// the telescope truncates there.
    CustomList { values: Vec<f64> },
}

impl WeightScheme {
    pub fn custom(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidWeightScheme("custom list must be non-empty".into()));
        }
        if let Some(bad) = values.iter().find(|w| !w.is_finite() || **w <= 0.0) {
            return Err(Error::InvalidWeightScheme(format!("weights must be positive, got {bad}")));
        }
        Ok(WeightScheme::CustomList { values })
    }

    /// `w_k` for `k >= 1`.
    pub fn weight(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::InvalidOrder(k));
        }
        match self {
            WeightScheme::InverseSquare => Ok(1.0 / (k as f64 * k as f64)),
            WeightScheme::Geometric => Ok((2.0f64).powi(-(k as i32))),
            WeightScheme::CustomList { values } => values
                .get(k - 1)
                .copied()
                .ok_or_else(|| Error::InvalidOrder(k)),
        }
    }

    /// Largest order the scheme defines, when finite.
    pub fn max_order(&self) -> Option<usize> {
        match self {
            WeightScheme::CustomList { values } => Some(values.len()),
            _ => None,
        }
    }
}

/// How many summands of the telescope sum to evaluate for samples of
/// (effective) length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DepthPolicy {
    /// `max(1, floor(ln l))` — grows without bound but slowly enough that
    /// every evaluated summand still sees plenty of windows.
    LogLength,
    /// All `l` summands.
    Full,
    /// `min(depth, l)`.
    Fixed { depth: usize },
}

impl DepthPolicy {
    pub fn fixed(depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidOrder(depth));
        }
        Ok(DepthPolicy::Fixed { depth })
    }

    /// Truncation depth for length `l >= 1`; always in `[1, l]`.
    pub fn depth(&self, l: usize) -> usize {
        assert!(l >= 1, "depth policy requires l >= 1");
        match self {
            DepthPolicy::LogLength => ((l as f64).ln().floor() as usize).clamp(1, l),
            DepthPolicy::Full => l,
            DepthPolicy::Fixed { depth } => (*depth).clamp(1, l),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_square_weights() {
        let s = WeightScheme::InverseSquare;
        assert_eq!(s.weight(1).unwrap(), 1.0);
        assert_eq!(s.weight(2).unwrap(), 0.25);
    }

    #[test]
    fn geometric_weights() {
        let s = WeightScheme::Geometric;
        assert_eq!(s.weight(3).unwrap(), 0.125);
    }

    #[test]
    fn custom_list_lookup() {
        let s = WeightScheme::custom(vec![0.5, 0.3, 0.2]).unwrap();
        assert_eq!(s.weight(2).unwrap(), 0.3);
        assert!(s.weight(4).is_err());
        assert_eq!(s.max_order(), Some(3));
    }

    #[test]
    fn order_zero_is_invalid() {
        for s in [WeightScheme::InverseSquare, WeightScheme::Geometric] {
            assert!(matches!(s.weight(0), Err(Error::InvalidOrder(0))));
        }
    }

    #[test]
    fn custom_list_rejects_nonpositive() {
        assert!(WeightScheme::custom(vec![]).is_err());
        assert!(WeightScheme::custom(vec![0.5, 0.0]).is_err());
        assert!(WeightScheme::custom(vec![0.5, -1.0]).is_err());
    }

    #[test]
    fn log_depth_examples() {
        assert_eq!(DepthPolicy::LogLength.depth(1000), 6);
        assert_eq!(DepthPolicy::LogLength.depth(2), 1);
        assert_eq!(DepthPolicy::LogLength.depth(1), 1);
        assert_eq!(DepthPolicy::Full.depth(7), 7);
        assert_eq!(DepthPolicy::fixed(4).unwrap().depth(10), 4);
        assert_eq!(DepthPolicy::fixed(4).unwrap().depth(3), 3);
    }

    #[test]
    fn log_depth_is_monotone_and_unbounded() {
        let grid = [2usize, 10, 100, 1_000, 10_000, 1_000_000];
        let mut prev = 0;
        for &l in &grid {
            let d = DepthPolicy::LogLength.depth(l);
            assert!(d >= prev);
            assert!(d >= 1 && d <= l);
            prev = d;
        }
        assert_eq!(prev, 13); // floor(ln 1e6)
    }

    #[test]
    fn builtin_schemes_are_summable() {
        let mut inv = 0.0;
        let mut geo = 0.0;
        for k in 1..=1_000_000usize {
            inv += WeightScheme::InverseSquare.weight(k).unwrap();
            geo += WeightScheme::Geometric.weight(k).unwrap();
        }
        assert!(inv <= std::f64::consts::PI.powi(2) / 6.0 + 1e-6);
        assert!(geo <= 1.0 + 1e-12);
    }
}
