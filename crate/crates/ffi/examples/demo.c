/* Minimal C consumer of the teledist C ABI.
 *
 * Build (from the repository root, after `cargo build --release -p teledist-ffi`):
 *   cc crates/ffi/examples/demo.c \
 *      -Icrates/ffi/include \
 *      target/release/libteledist_ffi.a -lm -lpthread -ldl \
 *      -o /tmp/teledist-demo && /tmp/teledist-demo
 */
#include <stdio.h>
#include <teledist.h>

static int check(TdStatus status, const char *what) {
  if (status != TD_STATUS_OK) {
    fprintf(stderr, "%s failed: %s\n", what, td_last_error_message());
    return 1;
  }
  return 0;
}

int main(void) {
  int64_t xs[10] = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  int64_t ys[10] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  int64_t alphabet[2] = {0, 1};

  TdSample *x = NULL, *y = NULL;
  TdConfig *cfg = NULL;
  double d = 0.0;

  if (check(td_sample_new_discrete("x", xs, 10, alphabet, 2, &x), "sample x") ||
      check(td_sample_new_discrete("y", ys, 10, alphabet, 2, &y), "sample y") ||
      check(td_config_new(TD_ESTIMATOR_EXACT_TV_ORACLE, TD_WEIGHTS_INVERSE_SQUARE,
                          TD_DEPTH_LOG_LENGTH, 0, &cfg),
            "config") ||
      check(td_distance(cfg, x, y, &d), "distance"))
    return 1;

  printf("teledist %s: distance = %.6f (expected 0.750000)\n", td_version(), d);

  td_sample_free(x);
  td_sample_free(y);
  td_config_free(cfg);
  return d == 0.75 ? 0 : 1;
}
