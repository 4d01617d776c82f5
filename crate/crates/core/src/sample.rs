//! Time-series samples and sliding-window extraction.
//!
//! A [`Sample`] is one multivariate series: `n` points of fixed dimension
//! `d`, stored flat in time-major order (all coordinates of step 0, then
//! step 1, ...). A length-`k` window is therefore a contiguous slice of
//! `k * d` values, which is exactly the flattened vector the classification
//! back-ends consume.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One time-series sample: `n` points of dimension `d`, optionally over a
/// finite symbol alphabet (integer codes stored as floats).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    id: String,
    dim: usize,
    values: Vec<f64>,
    alphabet: Option<Vec<i64>>,
}

impl Sample {
    /// Build a continuous-valued sample from points given as rows.
    pub fn from_points(id: impl Into<String>, points: &[Vec<f64>]) -> Result<Self> {
        let id = id.into();
        if points.is_empty() {
            return Err(Error::InvalidSample { id, reason: "length must be >= 1".into() });
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidSample { id, reason: "dimension must be >= 1".into() });
        }
        let mut values = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.len() != dim {
                return Err(Error::InvalidSample {
                    id,
                    reason: format!("point dimension {} != {}", p.len(), dim),
                });
            }
            values.extend_from_slice(p);
        }
        Ok(Sample { id, dim, values, alphabet: None })
    }

    /// Build a sample from an already-flat buffer (`values.len() = n * dim`).
    pub fn from_flat(id: impl Into<String>, dim: usize, values: Vec<f64>) -> Result<Self> {
        let id = id.into();
        if dim == 0 {
            return Err(Error::InvalidSample { id, reason: "dimension must be >= 1".into() });
        }
        if values.is_empty() || values.len() % dim != 0 {
            return Err(Error::InvalidSample {
                id,
                reason: format!("flat length {} is not a positive multiple of dim {}", values.len(), dim),
            });
        }
        Ok(Sample { id, dim, values, alphabet: None })
    }

    /// Build a univariate discrete sample from integer symbol codes.
    pub fn discrete(id: impl Into<String>, codes: &[i64], alphabet: &[i64]) -> Result<Self> {
        let values = codes.iter().map(|&c| c as f64).collect();
        Sample::from_flat(id, 1, values)?.with_alphabet(alphabet)
    }

    /// Attach a finite alphabet; every coordinate must be an integer code
    /// that is a member of it.
    pub fn with_alphabet(mut self, alphabet: &[i64]) -> Result<Self> {
        let mut sorted: Vec<i64> = alphabet.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(Error::InvalidSample {
                id: self.id.clone(),
                reason: "alphabet must be non-empty".into(),
            });
        }
        for &v in &self.values {
            let code = v as i64;
            if code as f64 != v || sorted.binary_search(&code).is_err() {
                return Err(Error::InvalidSample {
                    id: self.id.clone(),
                    reason: format!("value {v} is not an alphabet symbol"),
                });
            }
        }
        self.alphabet = Some(sorted);
        Ok(self)
    }

    /// Replace the reporting label.
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Number of time steps.
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Point dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat time-major buffer of length `n * d`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Coordinates of the point at time step `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    /// The window covering steps `start .. start + k`, flattened time-major.
    pub fn window(&self, start: usize, k: usize) -> Window<'_> {
        &self.values[start * self.dim..(start + k) * self.dim]
    }

    pub fn alphabet(&self) -> Option<&[i64]> {
        self.alphabet.as_deref()
    }

    pub fn is_discrete(&self) -> bool {
        self.alphabet.is_some()
    }
}

/// A length-`k` window flattened to a `k * d` vector in time-major order.
pub type Window<'a> = &'a [f64];

/// The weighted binary-classification dataset for one telescope summand:
/// all length-`k` windows of `x` (class 1) against those of `y` (class 0),
/// each class carrying total weight exactly 1.
#[derive(Debug, Clone, Copy)]
pub struct WindowSet<'a> {
    x: &'a Sample,
    y: &'a Sample,
    k: usize,
}

/// Slide length-`k` windows over both samples.
pub fn extract_windows<'a>(x: &'a Sample, y: &'a Sample, k: usize) -> Result<WindowSet<'a>> {
    if k == 0 {
        return Err(Error::InvalidOrder(k));
    }
    if x.dim() != y.dim() {
        return Err(Error::IncompatibleSamples { left: x.dim(), right: y.dim() });
    }
    let shorter = x.len().min(y.len());
    if k > shorter {
        return Err(Error::WindowLongerThanSample { k, len: shorter });
    }
    Ok(WindowSet { x, y, k })
}

impl<'a> WindowSet<'a> {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Dimension of the window vectors, `k * d`.
    pub fn vector_dim(&self) -> usize {
        self.k * self.x.dim()
    }

    pub fn point_dim(&self) -> usize {
        self.x.dim()
    }

    pub fn class1_sample(&self) -> &'a Sample {
        self.x
    }

    pub fn class0_sample(&self) -> &'a Sample {
        self.y
    }

    /// `n - k + 1` windows from `x`.
    pub fn class1_count(&self) -> usize {
        self.x.len() - self.k + 1
    }

    /// `m - k + 1` windows from `y`.
    pub fn class0_count(&self) -> usize {
        self.y.len() - self.k + 1
    }

    /// Per-window weight for class 1, `1 / (n - k + 1)`.
    pub fn weight1(&self) -> f64 {
        1.0 / self.class1_count() as f64
    }

    /// Per-window weight for class 0, `1 / (m - k + 1)`.
    pub fn weight0(&self) -> f64 {
        1.0 / self.class0_count() as f64
    }

    pub fn class1_window(&self, i: usize) -> Window<'a> {
        self.x.window(i, self.k)
    }

    pub fn class0_window(&self, i: usize) -> Window<'a> {
        self.y.window(i, self.k)
    }

    pub fn class1_windows(&self) -> impl Iterator<Item = Window<'a>> + '_ {
        (0..self.class1_count()).map(move |i| self.class1_window(i))
    }

    pub fn class0_windows(&self) -> impl Iterator<Item = Window<'a>> + '_ {
        (0..self.class0_count()).map(move |i| self.class0_window(i))
    }

    /// True when both source samples carry a finite alphabet.
    pub fn is_discrete(&self) -> bool {
        self.x.is_discrete() && self.y.is_discrete()
    }

    /// Swap the class roles (used by symmetry tests).
    pub fn swapped(&self) -> WindowSet<'a> {
        WindowSet { x: self.y, y: self.x, k: self.k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(id: &str, bits: &[i64]) -> Sample {
        Sample::discrete(id, bits, &[0, 1]).unwrap()
    }

    #[test]
    fn windows_unroll_the_definition() {
        let x = binary("x", &[0, 1, 0]);
        let y = binary("y", &[1, 1]);
        let ws = extract_windows(&x, &y, 2).unwrap();
        assert_eq!(ws.class1_count(), 2);
        assert_eq!(ws.class0_count(), 1);
        assert_eq!(ws.class1_window(0), &[0.0, 1.0]);
        assert_eq!(ws.class1_window(1), &[1.0, 0.0]);
        assert_eq!(ws.class0_window(0), &[1.0, 1.0]);
        assert_eq!(ws.weight1(), 0.5);
        assert_eq!(ws.weight0(), 1.0);
    }

    #[test]
    fn unit_windows_are_points() {
        let x = binary("x", &[0, 1, 1, 0]);
        let ws = extract_windows(&x, &x, 1).unwrap();
        assert_eq!(ws.class1_count(), 4);
        assert_eq!(ws.class0_count(), 4);
        assert_eq!(ws.weight1(), 0.25);
        assert_eq!(ws.weight0(), 0.25);
    }

    #[test]
    fn window_count_is_length_minus_k_plus_one() {
        let x = binary("x", &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let y = binary("y", &[0; 10]);
        let ws = extract_windows(&x, &y, 2).unwrap();
        assert_eq!(ws.class1_count(), 9);
        assert_eq!(ws.class0_count(), 9);
        assert!((ws.weight1() - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_one_per_class() {
        let x = binary("x", &[0, 1, 0, 1, 1, 0, 1]);
        let y = binary("y", &[1, 0, 0]);
        for k in 1..=3 {
            let ws = extract_windows(&x, &y, k).unwrap();
            let s1: f64 = ws.class1_windows().map(|_| ws.weight1()).sum();
            let s0: f64 = ws.class0_windows().map(|_| ws.weight0()).sum();
            assert!((s1 - 1.0).abs() <= 1e-12);
            assert!((s0 - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn oversized_window_is_rejected() {
        let x = binary("x", &[0, 1]);
        let y = binary("y", &[1, 1, 1]);
        let err = extract_windows(&x, &y, 3).unwrap_err();
        assert!(err.to_string().contains("window longer than sample"));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let x = Sample::from_points("x", &[vec![0.0, 1.0]]).unwrap();
        let y = Sample::from_points("y", &[vec![0.0]]).unwrap();
        let err = extract_windows(&x, &y, 1).unwrap_err();
        assert!(err.to_string().contains("incompatible samples"));
    }

    #[test]
    fn alphabet_membership_is_enforced() {
        assert!(Sample::discrete("x", &[0, 2], &[0, 1]).is_err());
        let s = Sample::from_flat("x", 1, vec![0.5]).unwrap();
        assert!(s.with_alphabet(&[0, 1]).is_err());
    }

    #[test]
    fn flattening_is_time_major() {
        let s = Sample::from_points("x", &[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!(s.window(0, 2), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.window(1, 2), &[3.0, 4.0, 5.0, 6.0]);
    }
}
