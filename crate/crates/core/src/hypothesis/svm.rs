//! Weighted soft-margin kernel SVM trained by sequential minimal
//! optimization, used as the inexact summand estimator.
//!
//! The dual problem is `min 1/2 a'Qa - e'a` subject to `0 <= a_i <= C_i`
//! and `y'a = 0`, where `C_i = cost * class_weight` and the class weights
//! are `1/(n-k+1)` and `1/(m-k+1)`. Because each class's weights sum to
//! exactly 1, the point with every variable at its upper bound is always
//! dual-feasible; the solver starts there and runs maximal-violating-pair
//! SMO until the KKT gap drops below the tolerance. For heavily
//! overlapping classes that starting point is already optimal, which keeps
//! the per-summand cost at one kernel pass.
//!
//! Kernel evaluations accumulate squared distances point by point in time
//! order. The multi-depth pass below exploits that: for a fixed pair of
//! window positions, the order-(k+1) squared distance extends the order-k
//! one by a single point term, so summands for every depth come out of one
//! sweep over the point-pair grid.

use crate::error::{Error, Result};
use crate::sample::{Sample, WindowSet};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Kernel choice for the SVM back-end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Kernel {
    /// `K(u, v) = exp(-bandwidth * |u - v|^2)`. `bandwidth = None` scales
    /// automatically to `1 / (k * d)`, one over the window vector length.
    Rbf {
        #[serde(default)]
        bandwidth: Option<f64>,
    },
    Linear,
}

/// Bandwidth resolution mode, re-exported for config builders.
pub type RbfBandwidth = Option<f64>;

impl Kernel {
    fn resolve(&self, vector_dim: usize) -> ResolvedKernel {
        match self {
            Kernel::Rbf { bandwidth } => ResolvedKernel {
                kind: KernelKind::Rbf,
                gamma: bandwidth.unwrap_or(1.0 / vector_dim as f64),
            },
            Kernel::Linear => ResolvedKernel { kind: KernelKind::Linear, gamma: 0.0 },
        }
    }
}

/// Configuration of the SVM summand estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SvmConfig {
    pub kernel: Kernel,
    /// Soft-margin penalty; per-instance bounds are `cost * class_weight`.
    pub cost: f64,
    /// KKT violation threshold that stops the SMO loop.
    pub tolerance: f64,
    /// Cap on SMO iterations; `None` means `10 * (total window count)`.
    pub max_iterations: Option<usize>,
    /// Reserved for estimator variants that randomize; the SMO solver
    /// itself is fully deterministic.
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            kernel: Kernel::Rbf { bandwidth: None },
            cost: 1.0,
            tolerance: 1e-3,
            max_iterations: None,
            seed: 0,
        }
    }
}

impl SvmConfig {
    pub fn validate(&self) -> Result<()> {
        if let Kernel::Rbf { bandwidth: Some(b) } = self.kernel {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::InvalidWeightScheme(format!(
                    "rbf bandwidth must be positive and finite, got {b}"
                )));
            }
        }
        if !(self.cost > 0.0) || !self.cost.is_finite() {
            return Err(Error::InvalidBoundParams(format!("cost must be positive, got {}", self.cost)));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::InvalidBoundParams(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidBoundParams("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum KernelKind {
    Rbf,
    Linear,
}

#[derive(Debug, Clone, Copy)]
struct ResolvedKernel {
    kind: KernelKind,
    gamma: f64,
}

impl ResolvedKernel {
    /// Kernel between two flattened windows. Squared distances / dot
    /// products are grouped per point, matching the multi-depth pass.
    fn between(&self, d: usize, a: &[f64], b: &[f64]) -> f64 {
        let mut s = 0.0;
        match self.kind {
            KernelKind::Rbf => {
                for (p, q) in a.chunks_exact(d).zip(b.chunks_exact(d)) {
                    let mut c = 0.0;
                    for t in 0..d {
                        let df = p[t] - q[t];
                        c += df * df;
                    }
                    s += c;
                }
                (-self.gamma * s).exp()
            }
            KernelKind::Linear => {
                for (p, q) in a.chunks_exact(d).zip(b.chunks_exact(d)) {
                    let mut c = 0.0;
                    for t in 0..d {
                        c += p[t] * q[t];
                    }
                    s += c;
                }
                s
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Multi-depth kernel sums
// ---------------------------------------------------------------------------

/// Raw (unweighted) kernel sums for windows of every order `1..=depth`.
///
/// `row_raw[k-1][i] = sum_j K_k(a_i, b_j)` over all order-`k` windows `b_j`,
/// accumulated in ascending `j`; `col_raw[k-1][j] = sum_i K_k(a_i, b_j)`
/// accumulated in ascending `i` (empty when columns were not requested).
pub(crate) struct MultiDepthSums {
    pub row_raw: Vec<Vec<f64>>,
    pub col_raw: Vec<Vec<f64>>,
}

const ROW_CHUNK: usize = 256;

trait KernelOp: Copy + Sync {
    fn term(d: usize, p: &[f64], q: &[f64]) -> f64;
    fn value(&self, kidx: usize, s: f64) -> f64;
}

#[derive(Copy, Clone)]
struct RbfOp<'g> {
    gammas: &'g [f64],
}

impl KernelOp for RbfOp<'_> {
    #[inline(always)]
    fn term(d: usize, p: &[f64], q: &[f64]) -> f64 {
        let mut c = 0.0;
        for t in 0..d {
            let df = p[t] - q[t];
            c += df * df;
        }
        c
    }

    #[inline(always)]
    fn value(&self, kidx: usize, s: f64) -> f64 {
        (-self.gammas[kidx] * s).exp()
    }
}

#[derive(Copy, Clone)]
struct LinearOp;

impl KernelOp for LinearOp {
    #[inline(always)]
    fn term(d: usize, p: &[f64], q: &[f64]) -> f64 {
        let mut c = 0.0;
        for t in 0..d {
            c += p[t] * q[t];
        }
        c
    }

    #[inline(always)]
    fn value(&self, _kidx: usize, s: f64) -> f64 {
        s
    }
}

struct ChunkOut {
    start: usize,
    rows: Vec<f64>, // (chunk rows) x depth, row-major
    cols: Vec<f64>, // depth x b_len, or empty
}

fn sweep_chunk<K: KernelOp, const COLS: bool>(
    op: K,
    a: &Sample,
    b: &Sample,
    depth: usize,
    min_emit: usize,
    start: usize,
    end: usize,
) -> ChunkOut {
    let d = a.dim();
    let av = a.values();
    let bv = b.values();
    let a_len = a.len();
    let b_len = b.len();
    let mut rows = vec![0.0f64; (end - start) * depth];
    let mut cols = if COLS { vec![0.0f64; depth * b_len] } else { Vec::new() };
    let mut local = vec![0.0f64; depth];
    for i in start..end {
        let kmax_i = depth.min(a_len - i);
        local[..kmax_i].fill(0.0);
        let pa_full = &av[i * d..];
        for j in 0..b_len {
            let kmax = kmax_i.min(b_len - j);
            let pa = &pa_full[..kmax * d];
            let pb = &bv[j * d..(j + kmax) * d];
            let mut s = 0.0;
            for (kidx, (p, q)) in pa.chunks_exact(d).zip(pb.chunks_exact(d)).enumerate() {
                s += K::term(d, p, q);
                if kidx + 1 >= min_emit {
                    let kv = op.value(kidx, s);
                    local[kidx] += kv;
                    if COLS {
                        cols[kidx * b_len + j] += kv;
                    }
                }
            }
        }
        rows[(i - start) * depth..(i - start) * depth + kmax_i].copy_from_slice(&local[..kmax_i]);
    }
    ChunkOut { start, rows, cols }
}

fn sweep<K: KernelOp, const COLS: bool>(
    op: K,
    a: &Sample,
    b: &Sample,
    depth: usize,
    min_emit: usize,
) -> MultiDepthSums {
    let a_len = a.len();
    let b_len = b.len();
    let n_chunks = a_len.div_ceil(ROW_CHUNK);
    let chunks: Vec<ChunkOut> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * ROW_CHUNK;
            let end = (start + ROW_CHUNK).min(a_len);
            sweep_chunk::<K, COLS>(op, a, b, depth, min_emit, start, end)
        })
        .collect();

    let mut row_raw: Vec<Vec<f64>> =
        (1..=depth).map(|k| vec![0.0; a_len.saturating_sub(k - 1)]).collect();
    let mut col_raw: Vec<Vec<f64>> = if COLS {
        (1..=depth).map(|k| vec![0.0; b_len.saturating_sub(k - 1)]).collect()
    } else {
        Vec::new()
    };
    // Chunks are folded in ascending row order, so column sums accumulate
    // over i ascending exactly as a sequential sweep would.
    for chunk in &chunks {
        let chunk_rows = chunk.rows.len() / depth;
        for r in 0..chunk_rows {
            let i = chunk.start + r;
            for (kidx, row) in row_raw.iter_mut().enumerate() {
                if i < row.len() {
                    row[i] = chunk.rows[r * depth + kidx];
                }
            }
        }
        if COLS {
            for (kidx, col) in col_raw.iter_mut().enumerate() {
                for (j, v) in col.iter_mut().enumerate() {
                    *v += chunk.cols[kidx * b_len + j];
                }
            }
        }
    }
    MultiDepthSums { row_raw, col_raw }
}

/// One sweep over the point-pair grid of `a` x `b`, producing raw kernel
/// sums for every window order in `min_emit..=depth`.
pub(crate) fn multi_depth_kernel_sums(
    a: &Sample,
    b: &Sample,
    depth: usize,
    kernel: &Kernel,
    min_emit: usize,
    with_cols: bool,
) -> MultiDepthSums {
    let d = a.dim();
    let gammas: Vec<f64> = (1..=depth)
        .map(|k| match kernel {
            Kernel::Rbf { bandwidth } => bandwidth.unwrap_or(1.0 / (k * d) as f64),
            Kernel::Linear => 0.0,
        })
        .collect();
    match kernel {
        Kernel::Rbf { .. } => {
            let op = RbfOp { gammas: &gammas };
            if with_cols {
                sweep::<_, true>(op, a, b, depth, min_emit)
            } else {
                sweep::<_, false>(op, a, b, depth, min_emit)
            }
        }
        Kernel::Linear => {
            if with_cols {
                sweep::<_, true>(LinearOp, a, b, depth, min_emit)
            } else {
                sweep::<_, false>(LinearOp, a, b, depth, min_emit)
            }
        }
    }
}

/// Raw kernel sums for one summand, indexed by global training point
/// (class-1 windows first, then class-0).
pub(crate) struct SummandSums {
    pub vs_class1: Vec<f64>,
    pub vs_class0: Vec<f64>,
}

pub(crate) fn assemble_summand_sums(
    self_x: &[f64],
    self_y: &[f64],
    cross_rows: &[f64],
    cross_cols: &[f64],
) -> SummandSums {
    let mut vs_class1 = Vec::with_capacity(self_x.len() + cross_cols.len());
    vs_class1.extend_from_slice(self_x);
    vs_class1.extend_from_slice(cross_cols);
    let mut vs_class0 = Vec::with_capacity(cross_rows.len() + self_y.len());
    vs_class0.extend_from_slice(cross_rows);
    vs_class0.extend_from_slice(self_y);
    SummandSums { vs_class1, vs_class0 }
}

// ---------------------------------------------------------------------------
// Degeneracy guard
// ---------------------------------------------------------------------------

fn cmp_windows(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// True when both classes carry the same empirical window distribution
/// (identical multisets up to the per-class normalization). The supremum is
/// exactly zero then, so no training is needed.
fn empirical_distributions_equal(ws: &WindowSet) -> bool {
    let n1 = ws.class1_count();
    let n0 = ws.class0_count();
    let mut w1: Vec<&[f64]> = ws.class1_windows().collect();
    let mut w0: Vec<&[f64]> = ws.class0_windows().collect();
    w1.sort_unstable_by(|a, b| cmp_windows(a, b));
    w0.sort_unstable_by(|a, b| cmp_windows(a, b));
    let mut i = 0;
    let mut j = 0;
    while i < w1.len() && j < w0.len() {
        if cmp_windows(w1[i], w0[j]) != Ordering::Equal {
            return false;
        }
        let v = w1[i];
        let mut c1 = 0u64;
        while i < w1.len() && cmp_windows(w1[i], v) == Ordering::Equal {
            c1 += 1;
            i += 1;
        }
        let mut c0 = 0u64;
        while j < w0.len() && cmp_windows(w0[j], v) == Ordering::Equal {
            c0 += 1;
            j += 1;
        }
        if c1 as u128 * n0 as u128 != c0 as u128 * n1 as u128 {
            return false;
        }
    }
    i == w1.len() && j == w0.len()
}

fn all_windows_identical(ws: &WindowSet) -> bool {
    let first = ws.class1_window(0);
    ws.class1_windows().all(|w| cmp_windows(w, first) == Ordering::Equal)
        && ws.class0_windows().all(|w| cmp_windows(w, first) == Ordering::Equal)
}

// ---------------------------------------------------------------------------
// SMO solver
// ---------------------------------------------------------------------------

struct SolveOutput {
    alpha: Vec<f64>,
    rho: f64,
    iterations: usize,
    converged: bool,
    objective: f64,
    summand: f64,
    weighted_risk: f64,
}

struct Solver<'a> {
    ws: &'a WindowSet<'a>,
    kernel: ResolvedKernel,
    n1: usize,
    n: usize,
    c1: f64,
    c0: f64,
    alpha: Vec<f64>,
    grad: Vec<f64>,
    tol: f64,
    max_iter: usize,
}

impl<'a> Solver<'a> {
    fn warm_started(cfg: &SvmConfig, ws: &'a WindowSet<'a>, sums: &SummandSums) -> Solver<'a> {
        let n1 = ws.class1_count();
        let n0 = ws.class0_count();
        let n = n1 + n0;
        let c1 = cfg.cost * ws.weight1();
        let c0 = cfg.cost * ws.weight0();
        let w1 = ws.weight1();
        let w0 = ws.weight0();
        let alpha: Vec<f64> = (0..n).map(|i| if i < n1 { c1 } else { c0 }).collect();
        // At the all-at-bound point, (Qa)_i = y_i * cost * (weighted mean
        // kernel vs class 1 - vs class 0); G = Qa - e.
        let grad: Vec<f64> = (0..n)
            .map(|i| {
                let y = if i < n1 { 1.0 } else { -1.0 };
                y * cfg.cost * (sums.vs_class1[i] * w1 - sums.vs_class0[i] * w0) - 1.0
            })
            .collect();
        Solver {
            ws,
            kernel: cfg.kernel.resolve(ws.vector_dim()),
            n1,
            n,
            c1,
            c0,
            alpha,
            grad,
            tol: cfg.tolerance,
            max_iter: cfg.max_iterations.unwrap_or(10 * n),
        }
    }

    #[inline]
    fn label(&self, i: usize) -> f64 {
        if i < self.n1 {
            1.0
        } else {
            -1.0
        }
    }

    #[inline]
    fn bound(&self, i: usize) -> f64 {
        if i < self.n1 {
            self.c1
        } else {
            self.c0
        }
    }

    #[inline]
    fn window(&self, i: usize) -> &'a [f64] {
        if i < self.n1 {
            self.ws.class1_window(i)
        } else {
            self.ws.class0_window(i - self.n1)
        }
    }

    fn fill_row(&self, i: usize, out: &mut [f64]) {
        let d = self.ws.point_dim();
        let wi = self.window(i);
        for (t, slot) in out.iter_mut().enumerate() {
            *slot = self.kernel.between(d, wi, self.window(t));
        }
    }

    /// Maximal-violating pair; ties keep the lowest index. `None` when the
    /// KKT gap is below the tolerance.
    fn select_working_pair(&self) -> Option<(usize, usize)> {
        let mut up_val = f64::NEG_INFINITY;
        let mut up_idx = usize::MAX;
        let mut low_val = f64::INFINITY;
        let mut low_idx = usize::MAX;
        for t in 0..self.n {
            let y = self.label(t);
            let v = -y * self.grad[t];
            let at_upper = self.alpha[t] >= self.bound(t);
            let at_lower = self.alpha[t] <= 0.0;
            let in_up = if y > 0.0 { !at_upper } else { !at_lower };
            let in_low = if y > 0.0 { !at_lower } else { !at_upper };
            if in_up && v > up_val {
                up_val = v;
                up_idx = t;
            }
            if in_low && v < low_val {
                low_val = v;
                low_idx = t;
            }
        }
        if up_idx == usize::MAX || low_idx == usize::MAX || up_val - low_val < self.tol {
            None
        } else {
            Some((up_idx, low_idx))
        }
    }

    fn update_pair(&mut self, i: usize, j: usize, row_i: &[f64], row_j: &[f64]) {
        let yi = self.label(i);
        let yj = self.label(j);
        let ci = self.bound(i);
        let cj = self.bound(j);
        let kii = row_i[i];
        let kjj = row_j[j];
        let kij = row_i[j];
        let old_ai = self.alpha[i];
        let old_aj = self.alpha[j];

        if yi != yj {
            let mut quad = kii + kjj + 2.0 * kij;
            if quad <= 0.0 {
                quad = 1e-12;
            }
            let delta = (-self.grad[i] - self.grad[j]) / quad;
            let diff = self.alpha[i] - self.alpha[j];
            self.alpha[i] += delta;
            self.alpha[j] += delta;
            if diff > 0.0 {
                if self.alpha[j] < 0.0 {
                    self.alpha[j] = 0.0;
                    self.alpha[i] = diff;
                }
            } else if self.alpha[i] < 0.0 {
                self.alpha[i] = 0.0;
                self.alpha[j] = -diff;
            }
            if diff > ci - cj {
                if self.alpha[i] > ci {
                    self.alpha[i] = ci;
                    self.alpha[j] = ci - diff;
                }
            } else if self.alpha[j] > cj {
                self.alpha[j] = cj;
                self.alpha[i] = cj + diff;
            }
        } else {
            let mut quad = kii + kjj - 2.0 * kij;
            if quad <= 0.0 {
                quad = 1e-12;
            }
            let delta = (self.grad[i] - self.grad[j]) / quad;
            let sum = self.alpha[i] + self.alpha[j];
            self.alpha[i] -= delta;
            self.alpha[j] += delta;
            if sum > ci {
                if self.alpha[i] > ci {
                    self.alpha[i] = ci;
                    self.alpha[j] = sum - ci;
                }
            } else if self.alpha[j] < 0.0 {
                self.alpha[j] = 0.0;
                self.alpha[i] = sum;
            }
            if sum > cj {
                if self.alpha[j] > cj {
                    self.alpha[j] = cj;
                    self.alpha[i] = sum - cj;
                }
            } else if self.alpha[i] < 0.0 {
                self.alpha[i] = 0.0;
                self.alpha[j] = sum;
            }
        }

        let dai = self.alpha[i] - old_ai;
        let daj = self.alpha[j] - old_aj;
        for t in 0..self.n {
            let y = self.label(t);
            self.grad[t] += y * (yi * row_i[t] * dai + yj * row_j[t] * daj);
        }
    }

    fn calculate_rho(&self) -> f64 {
        let mut nfree = 0usize;
        let mut sum_free = 0.0;
        let mut ub = f64::INFINITY;
        let mut lb = f64::NEG_INFINITY;
        for i in 0..self.n {
            let y = self.label(i);
            let yg = y * self.grad[i];
            if self.alpha[i] >= self.bound(i) {
                if y > 0.0 {
                    lb = lb.max(yg);
                } else {
                    ub = ub.min(yg);
                }
            } else if self.alpha[i] <= 0.0 {
                if y > 0.0 {
                    ub = ub.min(yg);
                } else {
                    lb = lb.max(yg);
                }
            } else {
                nfree += 1;
                sum_free += yg;
            }
        }
        if nfree > 0 {
            sum_free / nfree as f64
        } else {
            (ub + lb) / 2.0
        }
    }

    fn solve(mut self) -> SolveOutput {
        let mut iterations = 0usize;
        let mut converged = false;
        let mut row_i = vec![0.0; self.n];
        let mut row_j = vec![0.0; self.n];
        loop {
            match self.select_working_pair() {
                None => {
                    converged = true;
                    break;
                }
                Some((i, j)) => {
                    if iterations >= self.max_iter {
                        break;
                    }
                    self.fill_row(i, &mut row_i);
                    self.fill_row(j, &mut row_j);
                    self.update_pair(i, j, &row_i, &row_j);
                    iterations += 1;
                }
            }
        }

        let rho = self.calculate_rho();
        let n1 = self.n1;
        let n0 = self.n - n1;
        let mut pos1 = 0u64;
        let mut pos0 = 0u64;
        for i in 0..self.n {
            let f = self.label(i) * (self.grad[i] + 1.0) - rho;
            if f >= 0.0 {
                if i < n1 {
                    pos1 += 1;
                } else {
                    pos0 += 1;
                }
            }
        }
        let mean1 = pos1 as f64 / n1 as f64;
        let mean0 = pos0 as f64 / n0 as f64;
        let objective =
            0.5 * (0..self.n).map(|i| self.alpha[i] * (self.grad[i] - 1.0)).sum::<f64>();
        SolveOutput {
            summand: (mean1 - mean0).abs().clamp(0.0, 1.0),
            weighted_risk: 0.5 * ((1.0 - mean1) + mean0),
            rho,
            iterations,
            converged,
            objective,
            alpha: self.alpha,
        }
    }
}

fn solve_summand(cfg: &SvmConfig, ws: &WindowSet, sums: &SummandSums) -> SolveOutput {
    Solver::warm_started(cfg, ws, sums).solve()
}

fn single_order_sums(cfg: &SvmConfig, ws: &WindowSet) -> SummandSums {
    let k = ws.k();
    let x = ws.class1_sample();
    let y = ws.class0_sample();
    let self_x = multi_depth_kernel_sums(x, x, k, &cfg.kernel, k, false);
    let self_y = multi_depth_kernel_sums(y, y, k, &cfg.kernel, k, false);
    let cross = multi_depth_kernel_sums(x, y, k, &cfg.kernel, k, true);
    assemble_summand_sums(
        &self_x.row_raw[k - 1],
        &self_y.row_raw[k - 1],
        &cross.row_raw[k - 1],
        &cross.col_raw[k - 1],
    )
}

/// Summand estimate via the SVM: `|weighted class-1 mean - weighted
/// class-0 mean|` of the trained decision rule over the training windows.
pub(crate) fn svm_summand(cfg: &SvmConfig, ws: &WindowSet) -> Result<f64> {
    cfg.validate()?;
    if empirical_distributions_equal(ws) {
        return Ok(0.0);
    }
    let sums = single_order_sums(cfg, ws);
    Ok(solve_summand(cfg, ws, &sums).summand)
}

/// Same as [`svm_summand`] but with the kernel sums already computed (the
/// telescope fast path shares self-block sums across pairs).
pub(crate) fn svm_summand_from_sums(cfg: &SvmConfig, ws: &WindowSet, sums: &SummandSums) -> f64 {
    if empirical_distributions_equal(ws) {
        return 0.0;
    }
    solve_summand(cfg, ws, sums).summand
}

// ---------------------------------------------------------------------------
// Trained classifier
// ---------------------------------------------------------------------------

/// A frozen decision rule `h: R^{k*d} -> {0, 1}` with training metadata.
#[derive(Debug, Clone)]
pub struct TrainedClassifier {
    kernel: ResolvedKernelOwned,
    point_dim: usize,
    vector_dim: usize,
    support: Vec<f64>,
    coeffs: Vec<f64>,
    rho: f64,
    /// SMO iterations actually used.
    pub iterations: usize,
    /// False when the iteration cap was hit; the best iterate is returned.
    pub converged: bool,
    /// Final dual objective value.
    pub objective: f64,
    /// Balanced weighted empirical risk on the training windows,
    /// `((1 - mean_1 h) + mean_0 h) / 2`; 0.5 is chance level.
    pub weighted_risk: f64,
    /// `|mean_1 h - mean_0 h|` on the training windows.
    pub summand: f64,
}

#[derive(Debug, Clone)]
struct ResolvedKernelOwned {
    kind: KernelKind,
    gamma: f64,
}

impl TrainedClassifier {
    /// Signed decision value; `h(v) = 1` iff it is `>= 0`.
    pub fn decision(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.vector_dim, "window vector has wrong length");
        let kernel = ResolvedKernel { kind: self.kernel.kind, gamma: self.kernel.gamma };
        let mut acc = 0.0;
        for (sv, coeff) in self.support.chunks_exact(self.vector_dim).zip(&self.coeffs) {
            acc += coeff * kernel.between(self.point_dim, sv, v);
        }
        acc - self.rho
    }

    pub fn classify(&self, v: &[f64]) -> bool {
        self.decision(v) >= 0.0
    }
}

/// Train the weighted-ERM classifier for one window set.
pub fn train_weighted_erm(cfg: &SvmConfig, ws: &WindowSet) -> Result<TrainedClassifier> {
    cfg.validate()?;
    let resolved = cfg.kernel.resolve(ws.vector_dim());
    let kernel = ResolvedKernelOwned { kind: resolved.kind, gamma: resolved.gamma };
    if all_windows_identical(ws) {
        // Degenerate kernel matrix: every window equal. The constant rule
        // h = 1 is returned and the summand is exactly 0.
        return Ok(TrainedClassifier {
            kernel,
            point_dim: ws.point_dim(),
            vector_dim: ws.vector_dim(),
            support: Vec::new(),
            coeffs: Vec::new(),
            rho: -1.0,
            iterations: 0,
            converged: true,
            objective: 0.0,
            weighted_risk: 0.5,
            summand: 0.0,
        });
    }
    let sums = single_order_sums(cfg, ws);
    let out = solve_summand(cfg, ws, &sums);
    let n1 = ws.class1_count();
    let mut support = Vec::new();
    let mut coeffs = Vec::new();
    for (i, &a) in out.alpha.iter().enumerate() {
        if a > 0.0 {
            let (w, y) = if i < n1 {
                (ws.class1_window(i), 1.0)
            } else {
                (ws.class0_window(i - n1), -1.0)
            };
            support.extend_from_slice(w);
            coeffs.push(y * a);
        }
    }
    Ok(TrainedClassifier {
        kernel,
        point_dim: ws.point_dim(),
        vector_dim: ws.vector_dim(),
        support,
        coeffs,
        rho: out.rho,
        iterations: out.iterations,
        converged: out.converged,
        objective: out.objective,
        weighted_risk: out.weighted_risk,
        summand: out.summand,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::extract_windows;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn gaussian_cloud(id: &str, n: usize, mean: f64, sd: f64, dim: usize, seed: u64) -> Sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<f64> =
            (0..n * dim).map(|_| mean + sd * rng.sample::<f64, _>(StandardNormal)).collect();
        Sample::from_flat(id, dim, values).unwrap()
    }

    #[test]
    fn single_window_per_class_is_perfectly_separated() {
        let x = Sample::from_points("x", &[vec![0.0, 0.0]]).unwrap();
        let y = Sample::from_points("y", &[vec![1.0, 1.0]]).unwrap();
        let ws = extract_windows(&x, &y, 1).unwrap();
        let clf = train_weighted_erm(&SvmConfig::default(), &ws).unwrap();
        assert_eq!(clf.summand, 1.0);
        assert_eq!(clf.weighted_risk, 0.0);
        assert!(clf.classify(&[0.0, 0.0]));
        assert!(!clf.classify(&[1.0, 1.0]));
    }

    #[test]
    fn separable_gaussian_clouds_reach_near_bayes_risk() {
        // Unit-separated 3-d Gaussians with sd 0.5 per coordinate have
        // Bayes error Phi(-sqrt(3)) ~ 0.042; the empirical risk of 200
        // windows per class fluctuates around that, so the check averages
        // over seeds and also compares against the nearest-mean rule on
        // the same draw.
        let mut risks = Vec::new();
        for seed in 0..10u64 {
            let x = gaussian_cloud("x", 200, 0.0, 0.5, 3, 2 * seed + 1);
            let y = gaussian_cloud("y", 200, 1.0, 0.5, 3, 2 * seed + 2);
            let ws = extract_windows(&x, &y, 1).unwrap();
            let clf = train_weighted_erm(&SvmConfig::default(), &ws).unwrap();
            let nearest_mean_err = |s: &Sample, want_one: bool| -> f64 {
                let bad = (0..s.len())
                    .filter(|&i| {
                        let p = s.point(i);
                        let d0: f64 = p.iter().map(|v| v * v).sum();
                        let d1: f64 = p.iter().map(|v| (v - 1.0) * (v - 1.0)).sum();
                        (d1 < d0) != want_one
                    })
                    .count();
                bad as f64 / s.len() as f64
            };
            let bayes = 0.5 * (nearest_mean_err(&x, false) + nearest_mean_err(&y, true));
            assert!(
                clf.weighted_risk <= bayes + 0.02,
                "seed {seed}: risk {} far above nearest-mean rule {}",
                clf.weighted_risk,
                bayes
            );
            assert!(clf.summand >= 0.8);
            risks.push(clf.weighted_risk);
        }
        let mean = risks.iter().sum::<f64>() / risks.len() as f64;
        assert!(mean <= 0.05, "mean risk {mean} exceeds 0.05");
    }

    #[test]
    fn identically_drawn_classes_show_no_separation() {
        let x = gaussian_cloud("x", 250, 0.0, 1.0, 2, 21);
        let y = gaussian_cloud("y", 250, 0.0, 1.0, 2, 22);
        let ws = extract_windows(&x, &y, 1).unwrap();
        let clf = train_weighted_erm(&SvmConfig::default(), &ws).unwrap();
        assert!(clf.summand <= 0.1, "summand {} too high", clf.summand);
        assert!((0.4..=0.5).contains(&clf.weighted_risk), "risk {}", clf.weighted_risk);
    }

    #[test]
    fn degenerate_identical_windows_yield_constant_rule() {
        let x = Sample::from_points("x", &[vec![3.0], vec![3.0], vec![3.0]]).unwrap();
        let y = Sample::from_points("y", &[vec![3.0], vec![3.0]]).unwrap();
        let ws = extract_windows(&x, &y, 1).unwrap();
        let clf = train_weighted_erm(&SvmConfig::default(), &ws).unwrap();
        assert_eq!(clf.summand, 0.0);
        assert!(clf.classify(&[3.0]));
        assert!(clf.classify(&[-100.0]));
        assert_eq!(svm_summand(&SvmConfig::default(), &ws).unwrap(), 0.0);
    }

    #[test]
    fn equal_multisets_short_circuit_to_zero() {
        let x = Sample::from_points("x", &[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let y = Sample::from_points("y", &[vec![3.0], vec![1.0], vec![2.0]]).unwrap();
        let ws = extract_windows(&x, &y, 1).unwrap();
        assert_eq!(svm_summand(&SvmConfig::default(), &ws).unwrap(), 0.0);
    }

    #[test]
    fn label_swap_is_nearly_symmetric() {
        let x = gaussian_cloud("x", 120, 0.0, 0.7, 2, 31);
        let y = gaussian_cloud("y", 150, 0.6, 0.7, 2, 32);
        let ws = extract_windows(&x, &y, 2).unwrap();
        let a = svm_summand(&SvmConfig::default(), &ws).unwrap();
        let b = svm_summand(&SvmConfig::default(), &ws.swapped()).unwrap();
        assert!((a - b).abs() <= 1e-6, "|{a} - {b}| > 1e-6");
    }

    #[test]
    fn linear_kernel_separates_shifted_clouds() {
        let x = gaussian_cloud("x", 150, 0.0, 0.4, 2, 41);
        let y = gaussian_cloud("y", 150, 2.0, 0.4, 2, 42);
        let ws = extract_windows(&x, &y, 1).unwrap();
        let cfg = SvmConfig { kernel: Kernel::Linear, ..SvmConfig::default() };
        let clf = train_weighted_erm(&cfg, &ws).unwrap();
        assert!(clf.weighted_risk <= 0.05);
    }

    #[test]
    fn multi_depth_sums_match_direct_kernel_accumulation() {
        let x = gaussian_cloud("x", 17, 0.0, 1.0, 2, 51);
        let y = gaussian_cloud("y", 13, 0.5, 1.0, 2, 52);
        let kernel = Kernel::Rbf { bandwidth: None };
        let depth = 4;
        let sums = multi_depth_kernel_sums(&x, &y, depth, &kernel, 1, true);
        for k in 1..=depth {
            let ws = extract_windows(&x, &y, k).unwrap();
            let resolved = kernel.resolve(ws.vector_dim());
            let d = ws.point_dim();
            for i in 0..ws.class1_count() {
                let mut acc = 0.0;
                for j in 0..ws.class0_count() {
                    acc += resolved.between(d, ws.class1_window(i), ws.class0_window(j));
                }
                assert_eq!(acc, sums.row_raw[k - 1][i], "row mismatch at k={k} i={i}");
            }
            for j in 0..ws.class0_count() {
                let mut acc = 0.0;
                for i in 0..ws.class1_count() {
                    acc += resolved.between(d, ws.class1_window(i), ws.class0_window(j));
                }
                assert_eq!(acc, sums.col_raw[k - 1][j], "col mismatch at k={k} j={j}");
            }
        }
    }

    #[test]
    fn multi_depth_sums_are_thread_count_invariant() {
        let x = gaussian_cloud("x", 700, 0.0, 1.0, 1, 61);
        let y = gaussian_cloud("y", 650, 0.3, 1.0, 1, 62);
        let kernel = Kernel::Rbf { bandwidth: None };
        let parallel = multi_depth_kernel_sums(&x, &y, 3, &kernel, 1, true);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| multi_depth_kernel_sums(&x, &y, 3, &kernel, 1, true));
        for k in 0..3 {
            assert_eq!(parallel.row_raw[k], serial.row_raw[k]);
            assert_eq!(parallel.col_raw[k], serial.col_raw[k]);
        }
    }

    #[test]
    fn iteration_cap_is_respected_and_flagged() {
        let x = gaussian_cloud("x", 60, 0.0, 0.5, 2, 71);
        let y = gaussian_cloud("y", 60, 5.0, 0.5, 2, 72);
        let ws = extract_windows(&x, &y, 1).unwrap();
        // Force a huge cost so the warm start is far from optimal, and one
        // iteration so the cap must trigger.
        let cfg = SvmConfig { cost: 1e6, max_iterations: Some(1), ..SvmConfig::default() };
        let clf = train_weighted_erm(&cfg, &ws).unwrap();
        assert_eq!(clf.iterations, 1);
        assert!(!clf.converged);
        let full = SvmConfig { cost: 1e6, ..SvmConfig::default() };
        let clf2 = train_weighted_erm(&full, &ws).unwrap();
        assert!(clf2.converged);
        assert!(clf2.weighted_risk <= 0.05);
    }

    #[test]
    fn config_validation_rejects_bad_values() {
        let bad_cost = SvmConfig { cost: 0.0, ..SvmConfig::default() };
        assert!(bad_cost.validate().is_err());
        let bad_bw = SvmConfig { kernel: Kernel::Rbf { bandwidth: Some(-1.0) }, ..SvmConfig::default() };
        assert!(bad_bw.validate().is_err());
        let bad_tol = SvmConfig { tolerance: 0.0, ..SvmConfig::default() };
        assert!(bad_tol.validate().is_err());
    }
}
