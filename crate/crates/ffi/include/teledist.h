#ifndef TELEDIST_H
#define TELEDIST_H

/* Generated by cbindgen from the teledist-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible function.
typedef enum TdStatus {
  TD_STATUS_OK = 0,
  TD_STATUS_NULL_POINTER = 1,
  TD_STATUS_INVALID_ARGUMENT = 2,
  TD_STATUS_UTF8_ERROR = 3,
  TD_STATUS_COMPUTATION_FAILED = 4,
  TD_STATUS_PANIC = 5,
  TD_STATUS_BUFFER_TOO_SMALL = 6,
} TdStatus;

// Summand estimator back-end.
typedef enum TdEstimator {
  TD_ESTIMATOR_EXACT_TV_ORACLE = 0,
  TD_ESTIMATOR_KERNEL_SVM = 1,
} TdEstimator;

// Summand weight scheme.
typedef enum TdWeights {
  TD_WEIGHTS_INVERSE_SQUARE = 0,
  TD_WEIGHTS_GEOMETRIC = 1,
} TdWeights;

// Truncation-depth policy.
typedef enum TdDepth {
  TD_DEPTH_LOG_LENGTH = 0,
  TD_DEPTH_FULL = 1,
  TD_DEPTH_FIXED = 2,
} TdDepth;

// VC-dimension growth rule.
typedef enum TdVcKind {
  // `d_k = k + 1`; `vc_value` is ignored.
  TD_VC_KIND_HALFSPACES = 0,
  // `d_k = vc_value` for every k.
  TD_VC_KIND_CONSTANT = 1,
} TdVcKind;

// Theorem-level bound scenario.
typedef enum TdScenario {
  // Needs `epsilon`, `n`.
  TD_SCENARIO_HOMOGENEITY_TYPE1 = 0,
  // Needs `epsilon`, `separation`, `n`.
  TD_SCENARIO_HOMOGENEITY_TYPE2 = 1,
  // Needs `separation`, `num_samples`, `n`.
  TD_SCENARIO_CLUSTERING_KNOWN_K = 2,
  // Needs `epsilon`, `separation`, `num_samples`, `n`.
  TD_SCENARIO_CLUSTERING_UNKNOWN_K = 3,
} TdScenario;

// Opaque clustering result; labels are aligned with the matrix rows it
// was computed from.
typedef struct TdClustering TdClustering;

// Opaque telescope configuration.
typedef struct TdConfig TdConfig;

// Opaque symmetric distance matrix.
typedef struct TdMatrix TdMatrix;

// Opaque time-series sample.
typedef struct TdSample TdSample;

// Result of the three-sample test.
typedef struct TdThreeSampleVerdict {
  // 1 when z is attributed to x, 0 when attributed to y.
  uint8_t matches_first;
  // 1 when the two distances were exactly equal (tie goes to x).
  uint8_t tie;
  double d_zx;
  double d_zy;
} TdThreeSampleVerdict;

// Result of the homogeneity test.
typedef struct TdHomogeneityVerdict {
  // 1 when the statistic is strictly below the threshold.
  uint8_t same_distribution;
  double statistic;
  double threshold;
} TdHomogeneityVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *td_last_error_message(void);

// Library version as a static string.
const char *td_version(void);

// Build a continuous sample from `len * dim` doubles in time-major order.
//
// # Safety
// `id` must be a NUL-terminated string, `values` must point to
// `len * dim` readable doubles, and `out` must be writable.
enum TdStatus td_sample_new(const char *id,
                            const double *values,
                            size_t len,
                            size_t dim,
                            struct TdSample **out);

// Build a univariate discrete sample from integer codes over an alphabet.
//
// # Safety
// `codes` must point to `len` readable values, `alphabet` to
// `alphabet_len`, `id` must be NUL-terminated, `out` writable.
enum TdStatus td_sample_new_discrete(const char *id,
                                     const int64_t *codes,
                                     size_t len,
                                     const int64_t *alphabet,
                                     size_t alphabet_len,
                                     struct TdSample **out);

// Generate a rotation-process sample (3-dimensional Gaussian regimes
// driven by an irrational rotation).
//
// # Safety
// `out` must be writable.
enum TdStatus td_sample_generate_rotation(double alpha,
                                          size_t length,
                                          uint64_t seed,
                                          struct TdSample **out);

// Generate a binary Markov-chain sample with transition-to-one
// probabilities `p01` (from state 0) and `p11` (from state 1).
//
// # Safety
// `out` must be writable.
enum TdStatus td_sample_generate_binary_markov(double p01,
                                               double p11,
                                               size_t length,
                                               uint64_t seed,
                                               struct TdSample **out);

// Number of time steps.
//
// # Safety
// `sample` must be a live handle from a `td_sample_*` constructor.
size_t td_sample_len(const struct TdSample *sample);

// Point dimension.
//
// # Safety
// `sample` must be a live handle from a `td_sample_*` constructor.
size_t td_sample_dim(const struct TdSample *sample);

// Release a sample handle; a null pointer is ignored.
//
// # Safety
// `sample` must come from a `td_sample_*` constructor and not be freed twice.
void td_sample_free(struct TdSample *sample);

// Create a configuration. `fixed_depth` is read only when `depth` is
// `TD_DEPTH_FIXED`. The SVM estimator starts from its defaults; adjust
// with [`td_config_set_svm`].
//
// # Safety
// `out` must be writable.
enum TdStatus td_config_new(enum TdEstimator estimator,
                            enum TdWeights weights,
                            enum TdDepth depth,
                            size_t fixed_depth,
                            struct TdConfig **out);

// Tune the SVM estimator of a configuration. `bandwidth <= 0` selects the
// automatic `1/(k*d)` scaling; `max_iterations == 0` selects the
// automatic `10 * window count` cap. Fails unless the configuration uses
// the SVM estimator.
//
// # Safety
// `config` must be a live handle from [`td_config_new`].
enum TdStatus td_config_set_svm(struct TdConfig *config,
                                double bandwidth,
                                double cost,
                                double tolerance,
                                size_t max_iterations,
                                uint64_t seed);

// Release a configuration handle; a null pointer is ignored.
//
// # Safety
// `config` must come from [`td_config_new`] and not be freed twice.
void td_config_free(struct TdConfig *config);

// Empirical telescope distance between two samples.
//
// # Safety
// All handles must be live; `out` must be writable.
enum TdStatus td_distance(const struct TdConfig *config,
                          const struct TdSample *x,
                          const struct TdSample *y,
                          double *out);

// Pairwise distance matrix over `count >= 2` samples with unique ids.
//
// # Safety
// `samples` must point to `count` live sample handles; `out` writable.
enum TdStatus td_distance_matrix(const struct TdConfig *config,
                                 const struct TdSample *const *samples,
                                 size_t count,
                                 struct TdMatrix **out);

// Number of rows (= columns).
//
// # Safety
// `matrix` must be a live handle from [`td_distance_matrix`].
size_t td_matrix_len(const struct TdMatrix *matrix);

// Entry `(i, j)`.
//
// # Safety
// `matrix` must be live; `out` writable.
enum TdStatus td_matrix_get(const struct TdMatrix *matrix, size_t i, size_t j, double *out);

// Id of row `i`; the pointer stays valid while the matrix is alive.
//
// # Safety
// `matrix` must be a live handle from [`td_distance_matrix`].
const char *td_matrix_id(const struct TdMatrix *matrix, size_t i);

// Release a matrix handle; a null pointer is ignored.
//
// # Safety
// `matrix` must come from [`td_distance_matrix`] and not be freed twice.
void td_matrix_free(struct TdMatrix *matrix);

// Attribute `z` to the nearer of `x` and `y`.
//
// # Safety
// All handles must be live; `out` must be writable.
enum TdStatus td_three_sample(const struct TdConfig *config,
                              const struct TdSample *x,
                              const struct TdSample *y,
                              const struct TdSample *z,
                              struct TdThreeSampleVerdict *out);

// Threshold homogeneity test with threshold `min(len x, len y)^(-exponent)`.
//
// # Safety
// All handles must be live; `out` must be writable.
enum TdStatus td_homogeneity(const struct TdConfig *config,
                             const struct TdSample *x,
                             const struct TdSample *y,
                             double exponent,
                             struct TdHomogeneityVerdict *out);

// Agglomerative average-linkage clustering into `k` clusters.
//
// # Safety
// `matrix` must be live; `out` must be writable.
enum TdStatus td_average_linkage(const struct TdMatrix *matrix,
                                 size_t k,
                                 struct TdClustering **out);

// Farthest-point clustering into `k` clusters.
//
// # Safety
// `matrix` must be live; `out` must be writable.
enum TdStatus td_farthest_point(const struct TdMatrix *matrix, size_t k, struct TdClustering **out);

// Unknown-count clustering: connected components at threshold `epsilon`.
//
// # Safety
// `matrix` must be live; `out` must be writable.
enum TdStatus td_threshold_clustering(const struct TdMatrix *matrix,
                                      double epsilon,
                                      struct TdClustering **out);

// Number of clusters.
//
// # Safety
// `clustering` must be a live handle.
size_t td_clustering_k(const struct TdClustering *clustering);

// Number of labelled samples.
//
// # Safety
// `clustering` must be a live handle.
size_t td_clustering_len(const struct TdClustering *clustering);

// Copy the labels (one per matrix row) into `out`.
//
// # Safety
// `clustering` must be live; `out` must point to `capacity` writable slots.
enum TdStatus td_clustering_labels(const struct TdClustering *clustering,
                                   uint32_t *out,
                                   size_t capacity);

// Release a clustering handle; a null pointer is ignored.
//
// # Safety
// `clustering` must come from a clustering call and not be freed twice.
void td_clustering_free(struct TdClustering *clustering);

// Deviation bound for one summand order.
//
// # Safety
// `out` must be writable.
enum TdStatus td_q_bound(double gamma,
                         enum TdVcKind vc_kind,
                         uint32_t vc_value,
                         uint64_t n,
                         size_t k,
                         double epsilon,
                         double *out);

// Telescope-level deviation bound.
//
// # Safety
// `out` must be writable.
enum TdStatus td_delta(double gamma,
                       enum TdVcKind vc_kind,
                       uint32_t vc_value,
                       uint64_t n,
                       double epsilon,
                       double *out);

// Closed-form error-probability bound for one scenario; unused arguments
// are ignored.
//
// # Safety
// `out` must be writable.
enum TdStatus td_theorem_bound(enum TdScenario scenario,
                               double gamma,
                               enum TdVcKind vc_kind,
                               uint32_t vc_value,
                               double epsilon,
                               double separation,
                               uint64_t num_samples,
                               uint64_t n,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TELEDIST_H */
