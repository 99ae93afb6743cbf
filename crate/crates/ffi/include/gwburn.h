#ifndef GWBURN_H
#define GWBURN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GwbStatus {
  GWB_STATUS_OK = 0,
  GWB_STATUS_NULL_POINTER = 1,
  GWB_STATUS_INVALID_PARAMETER = 2,
  GWB_STATUS_INVALID_SEQUENCE = 3,
  GWB_STATUS_CAP_EXCEEDED = 4,
  GWB_STATUS_INCOMPATIBLE_SIZE = 5,
  GWB_STATUS_REJECTION_LIMIT = 6,
  GWB_STATUS_SOURCE_ALREADY_BURNING = 7,
  GWB_STATUS_INVARIANT_VIOLATION = 8,
  GWB_STATUS_PARSE = 9,
  GWB_STATUS_IO = 10,
  GWB_STATUS_BUFFER_TOO_SMALL = 11,
  GWB_STATUS_PANIC = 12,
} GwbStatus;

/**
 * Offspring law handle.
 */
typedef struct GwbDistribution GwbDistribution;

/**
 * Rooted ordered tree handle.
 */
typedef struct GwbTree GwbTree;

/**
 * Closed-form upper bounds on the burning number of any `n`-vertex
 * connected graph.
 */
typedef struct GwbKnownBounds {
  uint64_t dfs_cycle;
  uint64_t bessy;
  uint64_t land_lu;
  uint64_t bastide;
  uint64_t min;
} GwbKnownBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *gwb_last_error_message(void);

/**
 * Builds a law from `poisson`, `geometric`, `binomial:d`, `two_point:m` or
 * `custom:FILE`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum GwbStatus gwb_distribution_new(const char *spec, struct GwbDistribution **out);

/**
 * # Safety
 * `dist` must be NULL or a handle from [`gwb_distribution_new`], not yet freed.
 */
void gwb_distribution_free(struct GwbDistribution *dist);

/**
 * Mean, variance and lattice span of the law.
 *
 * # Safety
 * `dist` must be a live handle; the out pointers must be writable.
 */
enum GwbStatus gwb_distribution_moments(const struct GwbDistribution *dist,
                                        double *mean,
                                        double *variance,
                                        uint32_t *span);

/**
 * Tree from a preorder degree sequence of length `len`.
 *
 * # Safety
 * `degrees` must point to `len` readable values; `out` must be writable.
 */
enum GwbStatus gwb_tree_from_degrees(const uint32_t *degrees, size_t len, struct GwbTree **out);

/**
 * Tree from whitespace-separated degrees, e.g. `"2 0 0"`.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be writable.
 */
enum GwbStatus gwb_tree_parse(const char *text, struct GwbTree **out);

/**
 * Exact draw of the tree conditioned on `n` vertices from stream
 * `(seed, stream)`. `max_attempts = 0` selects the default budget.
 * `attempts` may be NULL.
 *
 * # Safety
 * `dist` must be a live handle; `out` must be writable; `attempts` must be
 * NULL or writable.
 */
enum GwbStatus gwb_tree_sample(const struct GwbDistribution *dist,
                               size_t n,
                               uint64_t seed,
                               uint64_t stream,
                               uint64_t max_attempts,
                               struct GwbTree **out,
                               uint64_t *attempts);

/**
 * # Safety
 * `tree` must be NULL or a live tree handle, not yet freed.
 */
void gwb_tree_free(struct GwbTree *tree);

/**
 * Vertex count, height and diameter.
 *
 * # Safety
 * `tree` must be a live handle; the out pointers must be writable.
 */
enum GwbStatus gwb_tree_shape(const struct GwbTree *tree,
                              size_t *n,
                              size_t *height,
                              size_t *diameter);

/**
 * Copies the preorder degree sequence into `buf`. `len` receives the
 * sequence length even when `capacity` is too small (status
 * `GWB_STATUS_BUFFER_TOO_SMALL`), so callers can size a second call.
 *
 * # Safety
 * `buf` must hold `capacity` writable values (or be NULL with capacity 0);
 * `len` must be writable.
 */
enum GwbStatus gwb_tree_degrees(const struct GwbTree *tree,
                                uint32_t *buf,
                                size_t capacity,
                                size_t *len);

/**
 * Smallest `k` such that `k` balls of radius `k` cover the tree.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum GwbStatus gwb_bhat(const struct GwbTree *tree, size_t *out);

/**
 * Exact burning number for trees of at most `node_cap` (and 64) vertices.
 * The witness schedule is copied to `schedule` (`schedule_len` receives its
 * length, which may be one less than the burning number when the last
 * round only spreads). `schedule` may be NULL with capacity 0.
 *
 * # Safety
 * `tree` must be a live handle; `out` and `schedule_len` must be writable;
 * `schedule` must hold `capacity` writable values.
 */
enum GwbStatus gwb_burning_number_exact(const struct GwbTree *tree,
                                        size_t node_cap,
                                        size_t *out,
                                        size_t *schedule,
                                        size_t capacity,
                                        size_t *schedule_len);

/**
 * `4k` for the first `k` with `min_j |C_k^j| <= 2k - 1`.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum GwbStatus gwb_scheme_upper_bound(const struct GwbTree *tree, size_t *out);

/**
 * Certified `k` of the pair-count lower bound (`b >= k + 1`). `pair_cap = 0`
 * selects the default work cap.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum GwbStatus gwb_pair_lower_bound(const struct GwbTree *tree, uint64_t pair_cap, size_t *out);

/**
 * Closed-form bounds for `n >= 2` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum GwbStatus gwb_known_bounds(uint64_t n, struct GwbKnownBounds *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GWBURN_H */
