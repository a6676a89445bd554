#ifndef DOMKIT_H
#define DOMKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; the first four match the `domkit` CLI exit statuses.
 */
typedef enum DkStatus {
  DK_STATUS_OK = 0,
  DK_STATUS_PREDICATE_FAILED = 1,
  DK_STATUS_INPUT_ERROR = 2,
  DK_STATUS_CAP_EXCEEDED = 3,
  DK_STATUS_NULL_POINTER = 4,
  DK_STATUS_INTERNAL = 5,
} DkStatus;

typedef enum DkStopReason {
  DK_STOP_REASON_CONVERGED = 0,
  DK_STOP_REASON_ITER_CAP = 1,
  DK_STOP_REASON_CARD_CAP = 2,
} DkStopReason;

/**
 * A finite pointed basis.
 */
typedef struct DkBasis DkBasis;

/**
 * A bounded iteration trace of the object equation.
 */
typedef struct DkTrace DkTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next `dk_*` call on the same thread.
 */
const char *dk_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void dk_string_free(char *s);

/**
 * Parses a basis from its JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DkStatus dk_basis_parse(const char *json, struct DkBasis **out);

/**
 * # Safety
 * `b` must be NULL or a handle from this library, not yet freed.
 */
void dk_basis_free(struct DkBasis *b);

/**
 * The one-point basis `{bot}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DkStatus dk_basis_one_point(struct DkBasis **out);

/**
 * The flat basis over `n` atom names.
 *
 * # Safety
 * `names` must point to `n` NUL-terminated strings; `out` must be writable.
 */
enum DkStatus dk_basis_flat(const char *const *names, size_t n, struct DkBasis **out);

/**
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_basis_len(const struct DkBasis *b, size_t *out);

/**
 * Canonical JSON text of the basis.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_basis_to_json(const struct DkBasis *b, char **out);

/**
 * DOT rendering: covers only, or every non-reflexive pair if `full_order`.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_basis_export_dot(const struct DkBasis *b, bool full_order, char **out);

/**
 * `DK_STATUS_OK` if every bounded subset has a lub, else
 * `DK_STATUS_PREDICATE_FAILED` (the witness is in `dk_last_error`).
 *
 * # Safety
 * `b` must be a live handle.
 */
enum DkStatus dk_basis_is_finitary(const struct DkBasis *b);

/**
 * Number of ideals (elements of the completion).
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_basis_ideal_count(const struct DkBasis *b, size_t *out);

/**
 * `DK_STATUS_OK` if `d` is a subdomain of `e`, else
 * `DK_STATUS_PREDICATE_FAILED` with the failing clause in `dk_last_error`.
 *
 * # Safety
 * `d` and `e` must be live handles.
 */
enum DkStatus dk_basis_is_subdomain(const struct DkBasis *d, const struct DkBasis *e);

/**
 * Coalesced sum.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum DkStatus dk_basis_sum(const struct DkBasis *a,
                           const struct DkBasis *b,
                           size_t max_card,
                           struct DkBasis **out);

/**
 * Strict product.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum DkStatus dk_basis_product(const struct DkBasis *a,
                               const struct DkBasis *b,
                               size_t max_card,
                               struct DkBasis **out);

/**
 * Function space; `strict` keeps only strict mappings.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum DkStatus dk_basis_fun(const struct DkBasis *a,
                           const struct DkBasis *b,
                           bool strict,
                           size_t max_card,
                           struct DkBasis **out);

/**
 * Strict sequences of length at most `max_len`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_basis_star(const struct DkBasis *a,
                            size_t max_len,
                            size_t max_card,
                            struct DkBasis **out);

/**
 * Records over `n` labels with fields in `m` (pointwise ordering).
 *
 * # Safety
 * `labels` must point to `n` NUL-terminated strings; `m` must be a live
 * handle; `out` must be writable.
 */
enum DkStatus dk_basis_rec(const char *const *labels,
                           size_t n,
                           const struct DkBasis *m,
                           size_t max_card,
                           struct DkBasis **out);

/**
 * Iterates the object equation from the one-point basis.
 *
 * `*out` is set both on `DK_STATUS_OK` and on `DK_STATUS_CAP_EXCEEDED`; in
 * the latter case the trace holds the stages completed before the cap.
 *
 * # Safety
 * `base` must be a live handle; `labels` must point to `n` NUL-terminated
 * strings; `out` must be writable.
 */
enum DkStatus dk_coop_construct(const struct DkBasis *base,
                                const char *const *labels,
                                size_t n,
                                size_t max_seq_len,
                                size_t max_iters,
                                size_t max_card,
                                struct DkTrace **out);

/**
 * # Safety
 * `t` must be NULL or a handle from this library, not yet freed.
 */
void dk_trace_free(struct DkTrace *t);

/**
 * Number of stages `O_0..O_k`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_trace_stage_count(const struct DkTrace *t, size_t *out);

/**
 * A copy of stage `i` as a new basis handle.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_trace_stage(const struct DkTrace *t, size_t i, struct DkBasis **out);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_trace_stop_reason(const struct DkTrace *t, enum DkStopReason *out);

/**
 * JSON summary: stage sizes, stop reason, embedding reports.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_trace_summary_json(const struct DkTrace *t, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOMKIT_H */
