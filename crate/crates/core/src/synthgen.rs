//! Synthetic process generators: the rotation process driving the
//! clustering experiments, and finite-state Markov sources for the exact
//! oracle's test suites.

use crate::error::{Error, Result};
use crate::sample::Sample;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// The deterministic-rotation process: a hidden phase walks around the unit
/// interval in steps of `alpha`, and each step emits a 3-dimensional
/// spherical Gaussian whose mean depends on which half of the interval the
/// phase is in. Irrational `alpha` makes the process stationary ergodic;
/// its single-point marginal does not depend on `alpha` at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RotationProcessSpec {
    pub alpha: f64,
    pub length: usize,
    pub mean0: f64,
    pub mean1: f64,
    pub variance: f64,
    pub seed: u64,
}

impl Default for RotationProcessSpec {
    fn default() -> Self {
        RotationProcessSpec {
            alpha: default_alpha_pair().0,
            length: 1000,
            mean0: 0.0,
            mean1: 1.0,
            variance: 0.25,
            seed: 0,
        }
    }
}

/// Emitted point dimension of the rotation process.
pub const ROTATION_DIM: usize = 3;

/// Irrational rotation steps used by the two-cluster experiments:
/// `0.31 + sqrt(2) * 1e-4` and `0.35 + sqrt(2) * 1e-4`.
pub fn default_alpha_pair() -> (f64, f64) {
    let nudge = std::f64::consts::SQRT_2 * 1e-4;
    (0.31 + nudge, 0.35 + nudge)
}

impl RotationProcessSpec {
    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidGeneratorSpec(format!("alpha must be in (0,1), got {}", self.alpha)));
        }
        if self.length == 0 {
            return Err(Error::InvalidGeneratorSpec("length must be >= 1".into()));
        }
        if !(self.variance > 0.0) {
            return Err(Error::InvalidGeneratorSpec(format!(
                "variance must be positive, got {}",
                self.variance
            )));
        }
        Ok(())
    }
}

/// The phase orbit `r_1..r_n` started from `r_0`.
pub fn rotation_orbit(r0: f64, alpha: f64, length: usize) -> Vec<f64> {
    let mut r = r0;
    (0..length)
        .map(|_| {
            r = (r + alpha).fract();
            r
        })
        .collect()
}

/// Regime label per step: 1 when the phase is in `[0.5, 1)`.
pub fn regime_labels(orbit: &[f64]) -> Vec<u8> {
    orbit.iter().map(|&r| u8::from(r >= 0.5)).collect()
}

/// Generate one rotation-process sample. The phase start is drawn uniformly
/// from the seed, then each step draws three standard normals; the regime
/// labels therefore depend only on `(r_0, alpha)`.
pub fn generate_rotation(spec: &RotationProcessSpec) -> Result<Sample> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r0: f64 = rng.random();
    let sd = spec.variance.sqrt();
    let mut values = Vec::with_capacity(spec.length * ROTATION_DIM);
    let mut r = r0;
    for _ in 0..spec.length {
        r = (r + spec.alpha).fract();
        let mean = if r < 0.5 { spec.mean0 } else { spec.mean1 };
        for _ in 0..ROTATION_DIM {
            let z: f64 = rng.sample(StandardNormal);
            values.push(mean + sd * z);
        }
    }
    let id = format!("rotation-{:x}-{}", spec.alpha.to_bits(), spec.seed);
    Sample::from_flat(id, ROTATION_DIM, values)
}

/// A finite-state Markov source over integer symbols `0..S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovSpec {
    /// Row-stochastic transition matrix.
    pub transition: Vec<Vec<f64>>,
    /// Initial state distribution.
    pub initial: Vec<f64>,
    pub length: usize,
    pub seed: u64,
}

impl MarkovSpec {
    /// Two-state chain with `P(next = 1 | 0) = p01` and `P(next = 1 | 1) = p11`,
    /// started from its fifty-fifty mixture.
    pub fn binary(p01: f64, p11: f64, length: usize, seed: u64) -> MarkovSpec {
        MarkovSpec {
            transition: vec![vec![1.0 - p01, p01], vec![1.0 - p11, p11]],
            initial: vec![0.5, 0.5],
            length,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let s = self.transition.len();
        if s == 0 {
            return Err(Error::NonStochasticMatrix("no states".into()));
        }
        for (i, row) in self.transition.iter().enumerate() {
            if row.len() != s {
                return Err(Error::NonStochasticMatrix(format!("row {i} has {} entries, need {s}", row.len())));
            }
            if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                return Err(Error::NonStochasticMatrix(format!("row {i} has a negative entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::NonStochasticMatrix(format!("row {i} sums to {sum}")));
            }
        }
        if self.initial.len() != s {
            return Err(Error::NonStochasticMatrix(format!(
                "initial distribution has {} entries, need {s}",
                self.initial.len()
            )));
        }
        if self.initial.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::NonStochasticMatrix("initial distribution has a negative entry".into()));
        }
        let sum: f64 = self.initial.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NonStochasticMatrix(format!("initial distribution sums to {sum}")));
        }
        if self.length == 0 {
            return Err(Error::InvalidGeneratorSpec("length must be >= 1".into()));
        }
        Ok(())
    }
}

fn draw_index(rng: &mut ChaCha8Rng, dist: &[f64]) -> usize {
    let u: f64 = rng.random();
    let mut cum = 0.0;
    for (i, &p) in dist.iter().enumerate() {
        cum += p;
        if u < cum {
            return i;
        }
    }
    dist.len() - 1
}

/// Simulate the chain; the output carries the alphabet `0..S` so the exact
/// oracle accepts it.
pub fn generate_markov(spec: &MarkovSpec) -> Result<Sample> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut state = draw_index(&mut rng, &spec.initial);
    let mut codes = Vec::with_capacity(spec.length);
    codes.push(state as i64);
    for _ in 1..spec.length {
        state = draw_index(&mut rng, &spec.transition[state]);
        codes.push(state as i64);
    }
    let alphabet: Vec<i64> = (0..spec.transition.len() as i64).collect();
    let id = format!("markov-{}", spec.seed);
    Sample::discrete(id, &codes, &alphabet)
}
