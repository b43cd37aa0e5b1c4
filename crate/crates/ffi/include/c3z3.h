#ifndef C3Z3_H
#define C3Z3_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum C3z3RelationKind {
  C3Z3_RELATION_KIND_MUMFORD = 0,
  C3Z3_RELATION_KIND_G_MUMFORD = 1,
} C3z3RelationKind;

typedef enum C3z3Status {
  C3Z3_STATUS_OK = 0,
  /**
   * The value is well defined but out of reach; see `c3z3_last_error`.
   */
  C3Z3_STATUS_UNSUPPORTED = 1,
  C3Z3_STATUS_INVALID_ARGUMENT = 2,
  C3Z3_STATUS_NULL_POINTER = 3,
  C3Z3_STATUS_INTERNAL = 4,
} C3z3Status;

/**
 * Mirror map data at a fixed working order.
 */
typedef struct C3z3MirrorFrame C3z3MirrorFrame;

/**
 * Truncated power series with exact rational coefficients.
 */
typedef struct C3z3Series C3z3Series;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last non-Ok status on this thread. Valid until the next
 * failing call on the same thread; do not free.
 */
const char *c3z3_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void c3z3_string_free(char *s);

/**
 * `B_k(psi)` through `psi^order`, `k` in {1, 2}.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum C3z3Status c3z3_series_bk(int64_t k, size_t order, struct C3z3Series **out);

/**
 * Parse the text form (`series <var> order <n>` then `<exp> <p/q>` lines).
 *
 * # Safety
 * `text` must be a nul-terminated string, `out` valid for writes.
 */
enum C3z3Status c3z3_series_parse(const char *text, struct C3z3Series **out);

/**
 * # Safety
 * `s` must be a live handle or null; `out` valid for writes.
 */
enum C3z3Status c3z3_series_order(const struct C3z3Series *s, size_t *out);

/**
 * Coefficient of `var^exp` as `"p/q"`; `exp` beyond the order is invalid.
 *
 * # Safety
 * `s` must be a live handle or null; `out` valid for writes.
 */
enum C3z3Status c3z3_series_coeff(const struct C3z3Series *s, size_t exp, char **out);

/**
 * Text form of the series.
 *
 * # Safety
 * `s` must be a live handle or null; `out` valid for writes.
 */
enum C3z3Status c3z3_series_to_string(const struct C3z3Series *s, char **out);

/**
 * Compositional inverse; needs zero constant and nonzero linear term.
 *
 * # Safety
 * `s` must be a live handle or null; `out` valid for writes.
 */
enum C3z3Status c3z3_series_revert(const struct C3z3Series *s, struct C3z3Series **out);

/**
 * # Safety
 * `s` must come from this library or be null; it is invalid afterwards.
 */
void c3z3_series_free(struct C3z3Series *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum C3z3Status c3z3_mirror_frame_new(size_t working_order, struct C3z3MirrorFrame **out);

/**
 * Prepotential `F0(sigma1)`.
 *
 * # Safety
 * `frame` must be a live handle or null; `out` valid for writes.
 */
enum C3z3Status c3z3_mirror_prepotential(const struct C3z3MirrorFrame *frame,
                                         struct C3z3Series **out);

/**
 * `N_{0,k}`; needs `3k <= working_order`.
 *
 * # Safety
 * `frame` must be a live handle or null; `out` valid for writes.
 */
enum C3z3Status c3z3_mirror_genus0(const struct C3z3MirrorFrame *frame, size_t k, char **out);

/**
 * # Safety
 * `f` must come from this library or be null; it is invalid afterwards.
 */
void c3z3_mirror_frame_free(struct C3z3MirrorFrame *f);

/**
 * `int lambda_g lambda_{g-1} lambda_{g-2}`, `g >= 2`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum C3z3Status c3z3_fp_integral(uint32_t g, char **out);

/**
 * Unpointed invariant; `Unsupported` from genus 4 on.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum C3z3Status c3z3_unpointed_invariant(uint32_t g, char **out);

/**
 * Embedded `N_{g,k}`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum C3z3Status c3z3_reference_ngk(uint32_t g, uint32_t k, char **out);

/**
 * Normal form of a lambda polynomial such as `"3 * l2 * l1 - l1^3"`.
 *
 * # Safety
 * `poly` must be a nul-terminated string, `out` valid for writes.
 */
enum C3z3Status c3z3_lambda_reduce(enum C3z3RelationKind kind,
                                   uint32_t g,
                                   const char *poly,
                                   char **out);

/**
 * `Gamma_2` of a JSON amplitude document.
 *
 * # Safety
 * `json` must be a nul-terminated string, `out` valid for writes.
 */
enum C3z3Status c3z3_gamma2_json(const char *json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* C3Z3_H */
