#ifndef AGBOUND_H
#define AGBOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define AGB_OK 0

#define AGB_ERR_NULL_POINTER -1

#define AGB_ERR_BUFFER_TOO_SMALL -2

#define AGB_ERR_PANIC -3

#define AGB_ERR_EMPTY_GENERATORS 10

#define AGB_ERR_NON_POSITIVE_GENERATOR 11

#define AGB_ERR_GCD_NOT_ONE 12

#define AGB_ERR_LENGTH_TOO_SMALL 20

#define AGB_ERR_WRONG_CARDINALITY 21

#define AGB_ERR_NOT_SUBSET_OF_H 22

#define AGB_ERR_LOW_RANGE_MISMATCH 23

#define AGB_ERR_CLOSURE_VIOLATION 24

#define AGB_ERR_MALFORMED_ABUNDANCE 25

#define AGB_ERR_RESULT_INVALID 26

#define AGB_ERR_MALFORMED_CHAIN 27

#define AGB_ERR_INDEX_OUT_OF_RANGE 30

#define AGB_ERR_DELTA_OUT_OF_RANGE 31

#define AGB_ERR_NOT_A_MEMBER 32

#define AGB_ERR_NOT_ISOMETRY_DUAL 33

#define AGB_ERR_ENUMERATION_CAP_EXCEEDED 34

#define AGB_ERR_INTERNAL_INVARIANT_VIOLATION 35

/**
 * A validated set of pole orders with its cached `#Λ*` profile.
 */
typedef struct AgbHStar AgbHStar;

/**
 * A numerical semigroup.
 */
typedef struct AgbSemigroup AgbSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Name of a status code, e.g. `"GcdNotOne"`; never NULL.
 */
const char *agb_status_name(int32_t status);

/**
 * Copies the last error message of this thread, NUL-terminated and
 * truncated to `cap` bytes. Returns the full message length without NUL.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes, or NULL when `cap` is 0.
 */
size_t agb_last_error(char *buf, size_t cap);

/**
 * # Safety
 * `gens` must point to `len` values; `out` must be writable.
 */
int32_t agb_semigroup_new(const int64_t *gens, size_t len, struct AgbSemigroup **out);

/**
 * # Safety
 * `s` must be NULL or a handle from `agb_semigroup_new` not yet freed.
 */
void agb_semigroup_free(struct AgbSemigroup *s);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t agb_semigroup_genus(const struct AgbSemigroup *s, size_t *out);

/**
 * Largest gap, or -1 when there are none.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t agb_semigroup_frobenius(const struct AgbSemigroup *s, int64_t *out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t agb_semigroup_contains(const struct AgbSemigroup *s, int64_t m, bool *out);

/**
 * `h_i` for 1-based `i`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t agb_semigroup_nth_element(const struct AgbSemigroup *s, size_t i, int64_t *out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t agb_semigroup_is_symmetric(const struct AgbSemigroup *s, bool *out);

/**
 * `H* = (H ∩ [0, n-1]) ∪ {n + l : l a gap}`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t agb_hstar_equiv_divisor(const struct AgbSemigroup *s, size_t n, struct AgbHStar **out);

/**
 * `H* = {m ∈ H : n + 2g - 1 - m ∈ H}`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t agb_hstar_isometry_dual(const struct AgbSemigroup *s, size_t n, struct AgbHStar **out);

/**
 * # Safety
 * `s` must be a live handle; `members` must point to `len` values;
 * `out` must be writable.
 */
int32_t agb_hstar_explicit(const struct AgbSemigroup *s,
                           size_t n,
                           const int64_t *members,
                           size_t len,
                           struct AgbHStar **out);

/**
 * `ell[m] = ℓ(mQ - D)` for `m = 0..n+2g-1`.
 *
 * # Safety
 * `s` must be a live handle; `ell` must point to `len` values;
 * `out` must be writable.
 */
int32_t agb_hstar_abundance(const struct AgbSemigroup *s,
                            size_t n,
                            const int64_t *ell,
                            size_t len,
                            struct AgbHStar **out);

/**
 * # Safety
 * `h` must be NULL or a live handle.
 */
void agb_hstar_free(struct AgbHStar *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_hstar_n(const struct AgbHStar *h, size_t *out);

/**
 * Copies the members `m_1 < ... < m_n`. `*out_len` is always set to `n`;
 * returns `AGB_ERR_BUFFER_TOO_SMALL` without copying when `cap < n`.
 *
 * # Safety
 * `h` must be a live handle; `buf` must be valid for `cap` values.
 */
int32_t agb_hstar_members(const struct AgbHStar *h, int64_t *buf, size_t cap, size_t *out_len);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_hstar_is_isometry_dual(const struct AgbHStar *h, bool *out);

/**
 * Smallest element of `H` missing from `H*`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_hstar_pi(const struct AgbHStar *h, int64_t *out);

/**
 * Copies `#Λ*_1, ..., #Λ*_n`, with the same buffer protocol as
 * `agb_hstar_members`.
 *
 * # Safety
 * `h` must be a live handle; `buf` must be valid for `cap` values.
 */
int32_t agb_lambda_counts(const struct AgbHStar *h, size_t *buf, size_t cap, size_t *out_len);

/**
 * `d*(i)`, 1-based.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_d_star(const struct AgbHStar *h, size_t i, size_t *out);

/**
 * Order bound at index `i`; requires an isometry-dual set.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_d_ord(const struct AgbHStar *h, size_t i, size_t *out);

/**
 * Dimension of the improved code of designed distance `delta`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_improved_dimension(const struct AgbHStar *h, size_t delta, size_t *out);

/**
 * `n - #{i : #A[m_i] < delta}`; requires an isometry-dual set.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_feng_rao_dimension(const struct AgbHStar *h, size_t delta, size_t *out);

/**
 * `d*_r(i)`, searching at most `cap` nodes.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
int32_t agb_ghw_bound(const struct AgbHStar *h, size_t i, size_t r, uint64_t cap, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AGBOUND_H */
