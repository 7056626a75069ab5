#ifndef LRCONE_H
#define LRCONE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LrcStatus {
  LRC_STATUS_OK = 0,
  LRC_STATUS_NULL_POINTER = 1,
  LRC_STATUS_INVALID_ARGUMENT = 2,
  LRC_STATUS_LENGTH_MISMATCH = 3,
  LRC_STATUS_INTERNAL = 4,
  LRC_STATUS_PANIC = 5,
} LrcStatus;

/**
 * Verdict of `lrc_classify`.
 */
typedef enum LrcVerdict {
  LRC_VERDICT_ZERO = 0,
  LRC_VERDICT_ONE = 1,
  LRC_VERDICT_AT_LEAST_TWO = 2,
} LrcVerdict;

typedef enum LrcGroup {
  LRC_GROUP_A = 0,
  LRC_GROUP_B = 1,
  LRC_GROUP_C = 2,
} LrcGroup;

/**
 * Memoizing classifier; safe to share between threads.
 */
typedef struct LrcClassifier LrcClassifier;

/**
 * An inequality list of one group and rank.
 */
typedef struct LrcFacetList LrcFacetList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *lrc_status_message(enum LrcStatus status);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *lrc_last_error(void);

/**
 * New classifier using `seed` and `trials` for its dense-orbit sampler.
 */
struct LrcClassifier *lrc_classifier_new(uint64_t seed, uint32_t trials);

void lrc_classifier_free(struct LrcClassifier *classifier);

/**
 * Decides whether the triple coefficient of three dominant weights of
 * length `n` is 0, 1 or at least 2.
 */
enum LrcStatus lrc_classify(const struct LrcClassifier *classifier,
                            size_t n,
                            const int64_t *lam,
                            const int64_t *mu,
                            const int64_t *nu,
                            enum LrcVerdict *verdict_out);

/**
 * Exact triple coefficient.
 */
enum LrcStatus lrc_triple_coefficient(size_t n,
                                      const int64_t *lam,
                                      const int64_t *mu,
                                      const int64_t *nu,
                                      uint64_t *value_out);

/**
 * Computes the inequality list of `group` in rank `rank`.
 */
enum LrcStatus lrc_facets_new(const struct LrcClassifier *classifier,
                              enum LrcGroup group,
                              size_t rank,
                              struct LrcFacetList **list_out);

void lrc_facets_free(struct LrcFacetList *list);

/**
 * Number of inequalities, 0 for a null list.
 */
size_t lrc_facets_len(const struct LrcFacetList *list);

/**
 * Copies inequality `index`: its subset size to `r_out` and its
 * coefficients to `coeffs_out`, which must hold `3 * rank` entries laid out
 * as ξ, ζ, η blocks.
 */
enum LrcStatus lrc_facets_get(const struct LrcFacetList *list,
                              size_t index,
                              size_t *r_out,
                              int64_t *coeffs_out,
                              size_t coeffs_len);

/**
 * Membership of `(ξ, ζ, η)` given as `3 * rank` fractions `num[k] / den[k]`.
 */
enum LrcStatus lrc_eigencone_member(const struct LrcFacetList *list,
                                    const int64_t *num,
                                    const int64_t *den,
                                    size_t len,
                                    bool *member_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LRCONE_H */
