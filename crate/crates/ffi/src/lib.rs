//! C ABI for the telescope-distance library.
//!
//! Objects cross the boundary as opaque handles created by `td_*_new`
//! constructors and released by the matching `td_*_free`; passing a handle
//! to any other allocator or freeing it twice is undefined behavior. Every
//! fallible call returns a [`TdStatus`]; on failure a message is stored in
//! thread-local storage and can be read with [`td_last_error_message`]
//! until the next failing call on the same thread. Out-parameters are only
//! written on `TD_STATUS_OK`. Panics are caught at the boundary and
//! reported as `TD_STATUS_PANIC`.

use libc::{c_char, size_t};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use teledist::bounds::{theorem_bounds, BoundScenario, MixingBoundParams, VcDims};
use teledist::clustering;
use teledist::inference;
use teledist::synthgen::{generate_markov, generate_rotation, MarkovSpec, RotationProcessSpec};
use teledist::{
    distance_matrix, telescope_distance, DepthPolicy, DistanceMatrix, Kernel, Sample,
    SummandEstimator, SvmConfig, TelescopeConfig, WeightScheme,
};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Utf8Error = 3,
    ComputationFailed = 4,
    Panic = 5,
    BufferTooSmall = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn fail(status: TdStatus, msg: &str) -> TdStatus {
    set_error(msg);
    status
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn td_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn td_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn guard(f: impl FnOnce() -> TdStatus) -> TdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(TdStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, TdStatus> {
    if ptr.is_null() {
        return Err(TdStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| TdStatus::Utf8Error)
}

fn computation_error(e: teledist::Error) -> TdStatus {
    fail(TdStatus::ComputationFailed, &e.to_string())
}

// ---------------------------------------------------------------------------
// Samples
// ---------------------------------------------------------------------------

/// Opaque time-series sample.
pub struct TdSample {
    inner: Sample,
}

/// Build a continuous sample from `len * dim` doubles in time-major order.
///
/// # Safety
/// `id` must be a NUL-terminated string, `values` must point to
/// `len * dim` readable doubles, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_sample_new(
    id: *const c_char,
    values: *const f64,
    len: size_t,
    dim: size_t,
    out: *mut *mut TdSample,
) -> TdStatus {
    guard(|| {
        if values.is_null() || out.is_null() {
            return fail(TdStatus::NullPointer, "values/out must not be null");
        }
        let id = match read_str(id) {
            Ok(s) => s,
            Err(status) => return fail(status, "id must be valid UTF-8"),
        };
        if len == 0 || dim == 0 {
            return fail(TdStatus::InvalidArgument, "len and dim must be >= 1");
        }
        let slice = std::slice::from_raw_parts(values, len * dim);
        match Sample::from_flat(id, dim, slice.to_vec()) {
            Ok(sample) => {
                *out = Box::into_raw(Box::new(TdSample { inner: sample }));
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Build a univariate discrete sample from integer codes over an alphabet.
///
/// # Safety
/// `codes` must point to `len` readable values, `alphabet` to
/// `alphabet_len`, `id` must be NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_sample_new_discrete(
    id: *const c_char,
    codes: *const i64,
    len: size_t,
    alphabet: *const i64,
    alphabet_len: size_t,
    out: *mut *mut TdSample,
) -> TdStatus {
    guard(|| {
        if codes.is_null() || alphabet.is_null() || out.is_null() {
            return fail(TdStatus::NullPointer, "codes/alphabet/out must not be null");
        }
        let id = match read_str(id) {
            Ok(s) => s,
            Err(status) => return fail(status, "id must be valid UTF-8"),
        };
        if len == 0 || alphabet_len == 0 {
            return fail(TdStatus::InvalidArgument, "len and alphabet_len must be >= 1");
        }
        let codes = std::slice::from_raw_parts(codes, len);
        let alphabet = std::slice::from_raw_parts(alphabet, alphabet_len);
        match Sample::discrete(id, codes, alphabet) {
            Ok(sample) => {
                *out = Box::into_raw(Box::new(TdSample { inner: sample }));
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Generate a rotation-process sample (3-dimensional Gaussian regimes
/// driven by an irrational rotation).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_sample_generate_rotation(
    alpha: f64,
    length: size_t,
    seed: u64,
    out: *mut *mut TdSample,
) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        let spec = RotationProcessSpec { alpha, length, seed, ..Default::default() };
        match generate_rotation(&spec) {
            Ok(sample) => {
                *out = Box::into_raw(Box::new(TdSample { inner: sample }));
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Generate a binary Markov-chain sample with transition-to-one
/// probabilities `p01` (from state 0) and `p11` (from state 1).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_sample_generate_binary_markov(
    p01: f64,
    p11: f64,
    length: size_t,
    seed: u64,
    out: *mut *mut TdSample,
) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        match generate_markov(&MarkovSpec::binary(p01, p11, length, seed)) {
            Ok(sample) => {
                *out = Box::into_raw(Box::new(TdSample { inner: sample }));
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Number of time steps.
///
/// # Safety
/// `sample` must be a live handle from a `td_sample_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn td_sample_len(sample: *const TdSample) -> size_t {
    if sample.is_null() {
        return 0;
    }
    (*sample).inner.len()
}

/// Point dimension.
///
/// # Safety
/// `sample` must be a live handle from a `td_sample_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn td_sample_dim(sample: *const TdSample) -> size_t {
    if sample.is_null() {
        return 0;
    }
    (*sample).inner.dim()
}

/// Release a sample handle; a null pointer is ignored.
///
/// # Safety
/// `sample` must come from a `td_sample_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn td_sample_free(sample: *mut TdSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

// ---------------------------------------------------------------------------
// Telescope configuration
// ---------------------------------------------------------------------------

/// Summand estimator back-end.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TdEstimator {
    ExactTvOracle = 0,
    KernelSvm = 1,
}

/// Summand weight scheme.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TdWeights {
    InverseSquare = 0,
    Geometric = 1,
}

/// Truncation-depth policy.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TdDepth {
    LogLength = 0,
    Full = 1,
    Fixed = 2,
}

/// Opaque telescope configuration.
pub struct TdConfig {
    inner: TelescopeConfig,
}

/// Create a configuration. `fixed_depth` is read only when `depth` is
/// `TD_DEPTH_FIXED`. The SVM estimator starts from its defaults; adjust
/// with [`td_config_set_svm`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_config_new(
    estimator: TdEstimator,
    weights: TdWeights,
    depth: TdDepth,
    fixed_depth: size_t,
    out: *mut *mut TdConfig,
) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        let depth = match depth {
            TdDepth::LogLength => DepthPolicy::LogLength,
            TdDepth::Full => DepthPolicy::Full,
            TdDepth::Fixed => match DepthPolicy::fixed(fixed_depth) {
                Ok(d) => d,
                Err(e) => return computation_error(e),
            },
        };
        let cfg = TelescopeConfig {
            weights: match weights {
                TdWeights::InverseSquare => WeightScheme::InverseSquare,
                TdWeights::Geometric => WeightScheme::Geometric,
            },
            depth,
            estimator: match estimator {
                TdEstimator::ExactTvOracle => SummandEstimator::ExactTvOracle,
                TdEstimator::KernelSvm => SummandEstimator::svm_default(),
            },
        };
        *out = Box::into_raw(Box::new(TdConfig { inner: cfg }));
        TdStatus::Ok
    })
}

/// Tune the SVM estimator of a configuration. `bandwidth <= 0` selects the
/// automatic `1/(k*d)` scaling; `max_iterations == 0` selects the
/// automatic `10 * window count` cap. Fails unless the configuration uses
/// the SVM estimator.
///
/// # Safety
/// `config` must be a live handle from [`td_config_new`].
#[no_mangle]
pub unsafe extern "C" fn td_config_set_svm(
    config: *mut TdConfig,
    bandwidth: f64,
    cost: f64,
    tolerance: f64,
    max_iterations: size_t,
    seed: u64,
) -> TdStatus {
    guard(|| {
        if config.is_null() {
            return fail(TdStatus::NullPointer, "config must not be null");
        }
        let svm = SvmConfig {
            kernel: Kernel::Rbf { bandwidth: (bandwidth > 0.0).then_some(bandwidth) },
            cost,
            tolerance,
            max_iterations: (max_iterations > 0).then_some(max_iterations),
            seed,
        };
        if let Err(e) = svm.validate() {
            return computation_error(e);
        }
        match &mut (*config).inner.estimator {
            SummandEstimator::KernelSvm { config: c } => {
                *c = svm;
                TdStatus::Ok
            }
            _ => fail(TdStatus::InvalidArgument, "configuration does not use the SVM estimator"),
        }
    })
}

/// Release a configuration handle; a null pointer is ignored.
///
/// # Safety
/// `config` must come from [`td_config_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn td_config_free(config: *mut TdConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

unsafe fn deref<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, TdStatus> {
    if ptr.is_null() {
        set_error(&format!("{name} must not be null"));
        Err(TdStatus::NullPointer)
    } else {
        Ok(&*ptr)
    }
}

/// Empirical telescope distance between two samples.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_distance(
    config: *const TdConfig,
    x: *const TdSample,
    y: *const TdSample,
    out: *mut f64,
) -> TdStatus {
    guard(|| {
        let (config, x, y) = match (deref(config, "config"), deref(x, "x"), deref(y, "y")) {
            (Ok(c), Ok(x), Ok(y)) => (c, x, y),
            _ => return TdStatus::NullPointer,
        };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        match telescope_distance(&config.inner, &x.inner, &y.inner) {
            Ok(d) => {
                *out = d;
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Opaque symmetric distance matrix.
pub struct TdMatrix {
    inner: DistanceMatrix,
    ids: Vec<CString>,
}

/// Pairwise distance matrix over `count >= 2` samples with unique ids.
///
/// # Safety
/// `samples` must point to `count` live sample handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_distance_matrix(
    config: *const TdConfig,
    samples: *const *const TdSample,
    count: size_t,
    out: *mut *mut TdMatrix,
) -> TdStatus {
    guard(|| {
        let config = match deref(config, "config") {
            Ok(c) => c,
            Err(s) => return s,
        };
        if samples.is_null() || out.is_null() {
            return fail(TdStatus::NullPointer, "samples/out must not be null");
        }
        let handles = std::slice::from_raw_parts(samples, count);
        let mut owned = Vec::with_capacity(count);
        for (i, &h) in handles.iter().enumerate() {
            if h.is_null() {
                return fail(TdStatus::NullPointer, &format!("sample {i} is null"));
            }
            owned.push((*h).inner.clone());
        }
        match distance_matrix(&config.inner, &owned) {
            Ok(dm) => {
                let ids = dm
                    .ids()
                    .iter()
                    .map(|s| CString::new(s.replace('\0', " ")).unwrap())
                    .collect();
                *out = Box::into_raw(Box::new(TdMatrix { inner: dm, ids }));
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Number of rows (= columns).
///
/// # Safety
/// `matrix` must be a live handle from [`td_distance_matrix`].
#[no_mangle]
pub unsafe extern "C" fn td_matrix_len(matrix: *const TdMatrix) -> size_t {
    if matrix.is_null() {
        return 0;
    }
    (*matrix).inner.len()
}

/// Entry `(i, j)`.
///
/// # Safety
/// `matrix` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_matrix_get(
    matrix: *const TdMatrix,
    i: size_t,
    j: size_t,
    out: *mut f64,
) -> TdStatus {
    guard(|| {
        let m = match deref(matrix, "matrix") {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        if i >= m.inner.len() || j >= m.inner.len() {
            return fail(TdStatus::InvalidArgument, "index out of range");
        }
        *out = m.inner.get(i, j);
        TdStatus::Ok
    })
}

/// Id of row `i`; the pointer stays valid while the matrix is alive.
///
/// # Safety
/// `matrix` must be a live handle from [`td_distance_matrix`].
#[no_mangle]
pub unsafe extern "C" fn td_matrix_id(matrix: *const TdMatrix, i: size_t) -> *const c_char {
    if matrix.is_null() {
        return ptr::null();
    }
    let ids = &(*matrix).ids;
    if i >= ids.len() {
        return ptr::null();
    }
    ids[i].as_ptr()
}

/// Release a matrix handle; a null pointer is ignored.
///
/// # Safety
/// `matrix` must come from [`td_distance_matrix`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn td_matrix_free(matrix: *mut TdMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

// ---------------------------------------------------------------------------
// Inference
// ---------------------------------------------------------------------------

/// Result of the three-sample test.
#[repr(C)]
pub struct TdThreeSampleVerdict {
    /// 1 when z is attributed to x, 0 when attributed to y.
    pub matches_first: u8,
    /// 1 when the two distances were exactly equal (tie goes to x).
    pub tie: u8,
    pub d_zx: f64,
    pub d_zy: f64,
}

/// Attribute `z` to the nearer of `x` and `y`.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_three_sample(
    config: *const TdConfig,
    x: *const TdSample,
    y: *const TdSample,
    z: *const TdSample,
    out: *mut TdThreeSampleVerdict,
) -> TdStatus {
    guard(|| {
        let (config, x, y, z) =
            match (deref(config, "config"), deref(x, "x"), deref(y, "y"), deref(z, "z")) {
                (Ok(c), Ok(x), Ok(y), Ok(z)) => (c, x, y, z),
                _ => return TdStatus::NullPointer,
            };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        match inference::three_sample_test(&config.inner, &x.inner, &y.inner, &z.inner) {
            Ok(v) => {
                *out = TdThreeSampleVerdict {
                    matches_first: u8::from(v.matches == inference::Attribution::First),
                    tie: u8::from(v.tie),
                    d_zx: v.d_zx,
                    d_zy: v.d_zy,
                };
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Result of the homogeneity test.
#[repr(C)]
pub struct TdHomogeneityVerdict {
    /// 1 when the statistic is strictly below the threshold.
    pub same_distribution: u8,
    pub statistic: f64,
    pub threshold: f64,
}

/// Threshold homogeneity test with threshold `min(len x, len y)^(-exponent)`.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_homogeneity(
    config: *const TdConfig,
    x: *const TdSample,
    y: *const TdSample,
    exponent: f64,
    out: *mut TdHomogeneityVerdict,
) -> TdStatus {
    guard(|| {
        let (config, x, y) = match (deref(config, "config"), deref(x, "x"), deref(y, "y")) {
            (Ok(c), Ok(x), Ok(y)) => (c, x, y),
            _ => return TdStatus::NullPointer,
        };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        if !(exponent > 0.0) {
            return fail(TdStatus::InvalidArgument, "exponent must be positive");
        }
        match inference::homogeneity_test(&config.inner, &x.inner, &y.inner, exponent) {
            Ok(v) => {
                *out = TdHomogeneityVerdict {
                    same_distribution: u8::from(v.same_distribution),
                    statistic: v.statistic,
                    threshold: v.threshold,
                };
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

// ---------------------------------------------------------------------------
// Clustering
// ---------------------------------------------------------------------------

/// Opaque clustering result; labels are aligned with the matrix rows it
/// was computed from.
pub struct TdClustering {
    labels: Vec<u32>,
    k: usize,
}

unsafe fn clustering_out(
    matrix: &TdMatrix,
    result: teledist::Result<clustering::Clustering>,
    out: *mut *mut TdClustering,
) -> TdStatus {
    match result {
        Ok(c) => {
            let labels = matrix
                .inner
                .ids()
                .iter()
                .map(|id| c.cluster_of(id).expect("clustering covers all ids") as u32)
                .collect();
            *out = Box::into_raw(Box::new(TdClustering { labels, k: c.k() }));
            TdStatus::Ok
        }
        Err(e) => computation_error(e),
    }
}

/// Agglomerative average-linkage clustering into `k` clusters.
///
/// # Safety
/// `matrix` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_average_linkage(
    matrix: *const TdMatrix,
    k: size_t,
    out: *mut *mut TdClustering,
) -> TdStatus {
    guard(|| {
        let m = match deref(matrix, "matrix") {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        clustering_out(m, clustering::average_linkage(&m.inner, k), out)
    })
}

/// Farthest-point clustering into `k` clusters.
///
/// # Safety
/// `matrix` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_farthest_point(
    matrix: *const TdMatrix,
    k: size_t,
    out: *mut *mut TdClustering,
) -> TdStatus {
    guard(|| {
        let m = match deref(matrix, "matrix") {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        clustering_out(m, clustering::farthest_point(&m.inner, k), out)
    })
}

/// Unknown-count clustering: connected components at threshold `epsilon`.
///
/// # Safety
/// `matrix` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_threshold_clustering(
    matrix: *const TdMatrix,
    epsilon: f64,
    out: *mut *mut TdClustering,
) -> TdStatus {
    guard(|| {
        let m = match deref(matrix, "matrix") {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        clustering_out(m, clustering::threshold_clustering(&m.inner, epsilon), out)
    })
}

/// Number of clusters.
///
/// # Safety
/// `clustering` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn td_clustering_k(clustering: *const TdClustering) -> size_t {
    if clustering.is_null() {
        return 0;
    }
    (*clustering).k
}

/// Number of labelled samples.
///
/// # Safety
/// `clustering` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn td_clustering_len(clustering: *const TdClustering) -> size_t {
    if clustering.is_null() {
        return 0;
    }
    (*clustering).labels.len()
}

/// Copy the labels (one per matrix row) into `out`.
///
/// # Safety
/// `clustering` must be live; `out` must point to `capacity` writable slots.
#[no_mangle]
pub unsafe extern "C" fn td_clustering_labels(
    clustering: *const TdClustering,
    out: *mut u32,
    capacity: size_t,
) -> TdStatus {
    guard(|| {
        let c = match deref(clustering, "clustering") {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        if capacity < c.labels.len() {
            return fail(
                TdStatus::BufferTooSmall,
                &format!("need {} slots, got {capacity}", c.labels.len()),
            );
        }
        std::ptr::copy_nonoverlapping(c.labels.as_ptr(), out, c.labels.len());
        TdStatus::Ok
    })
}

/// Release a clustering handle; a null pointer is ignored.
///
/// # Safety
/// `clustering` must come from a clustering call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn td_clustering_free(clustering: *mut TdClustering) {
    if !clustering.is_null() {
        drop(Box::from_raw(clustering));
    }
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// VC-dimension growth rule.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TdVcKind {
    /// `d_k = k + 1`; `vc_value` is ignored.
    Halfspaces = 0,
    /// `d_k = vc_value` for every k.
    Constant = 1,
}

fn bound_params(gamma: f64, vc_kind: TdVcKind, vc_value: u32) -> teledist::Result<MixingBoundParams> {
    let vc = match vc_kind {
        TdVcKind::Halfspaces => VcDims::Halfspaces,
        TdVcKind::Constant => VcDims::Constant { value: vc_value },
    };
    MixingBoundParams::new(gamma, vc)
}

/// Deviation bound for one summand order.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_q_bound(
    gamma: f64,
    vc_kind: TdVcKind,
    vc_value: u32,
    n: u64,
    k: size_t,
    epsilon: f64,
    out: *mut f64,
) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        let result = bound_params(gamma, vc_kind, vc_value)
            .and_then(|p| teledist::bounds::q_bound(&p, n, k, epsilon));
        match result {
            Ok(v) => {
                *out = v;
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Telescope-level deviation bound.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_delta(
    gamma: f64,
    vc_kind: TdVcKind,
    vc_value: u32,
    n: u64,
    epsilon: f64,
    out: *mut f64,
) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        let result = bound_params(gamma, vc_kind, vc_value)
            .and_then(|p| teledist::bounds::delta(&p, n, epsilon));
        match result {
            Ok(v) => {
                *out = v;
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}

/// Theorem-level bound scenario.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TdScenario {
    /// Needs `epsilon`, `n`.
    HomogeneityType1 = 0,
    /// Needs `epsilon`, `separation`, `n`.
    HomogeneityType2 = 1,
    /// Needs `separation`, `num_samples`, `n`.
    ClusteringKnownK = 2,
    /// Needs `epsilon`, `separation`, `num_samples`, `n`.
    ClusteringUnknownK = 3,
}

/// Closed-form error-probability bound for one scenario; unused arguments
/// are ignored.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_theorem_bound(
    scenario: TdScenario,
    gamma: f64,
    vc_kind: TdVcKind,
    vc_value: u32,
    epsilon: f64,
    separation: f64,
    num_samples: u64,
    n: u64,
    out: *mut f64,
) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TdStatus::NullPointer, "out must not be null");
        }
        let scenario = match scenario {
            TdScenario::HomogeneityType1 => BoundScenario::HomogeneityType1 { epsilon, n },
            TdScenario::HomogeneityType2 => {
                BoundScenario::HomogeneityType2 { epsilon, separation, n }
            }
            TdScenario::ClusteringKnownK => {
                BoundScenario::ClusteringKnownK { separation, num_samples, n }
            }
            TdScenario::ClusteringUnknownK => {
                BoundScenario::ClusteringUnknownK { epsilon, separation, num_samples, n }
            }
        };
        let result = bound_params(gamma, vc_kind, vc_value).and_then(|p| theorem_bounds(&p, scenario));
        match result {
            Ok(v) => {
                *out = v;
                TdStatus::Ok
            }
            Err(e) => computation_error(e),
        }
    })
}
