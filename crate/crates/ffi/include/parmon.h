#ifndef PARMON_H
#define PARMON_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PmStatus {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_UTF8 = 2,
  /**
   * The table text is malformed.
   */
  PM_STATUS_PARSE = 3,
  /**
   * A word names an element not in the carrier.
   */
  PM_STATUS_UNKNOWN_ELEMENT = 4,
  /**
   * An operand of `pm_star` is not irreducible.
   */
  PM_STATUS_NOT_IRREDUCIBLE = 5,
  /**
   * A size cap was exceeded.
   */
  PM_STATUS_LIMIT = 6,
  PM_STATUS_INVALID_ARGUMENT = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  PM_STATUS_PANIC = 8,
} PmStatus;

/**
 * A parsed multiplication table.
 */
typedef struct PmMonoid PmMonoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a table. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PmStatus pm_monoid_parse(const char *text, struct PmMonoid **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void pm_monoid_free(struct PmMonoid *m);

/**
 * Number of elements, identity included; 0 for null.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t pm_monoid_size(const struct PmMonoid *m);

/**
 * Whether the table satisfies the partial monoid axiom.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum PmStatus pm_monoid_validate(const struct PmMonoid *m, bool *out);

/**
 * Whether the rewriting system is confluent.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum PmStatus pm_monoid_is_confluent(const struct PmMonoid *m, bool *out);

/**
 * Whether the monoid is catenary.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum PmStatus pm_monoid_is_catenary(const struct PmMonoid *m, bool *out);

/**
 * The table in canonical text form.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum PmStatus pm_monoid_serialize(const struct PmMonoid *m, char **out);

/**
 * Left-standard normal form of a space-separated word, rendered with
 * spaces (`eps` for the empty word).
 *
 * # Safety
 * `m` must be a live handle, `word` NUL-terminated, `out` valid.
 */
enum PmStatus pm_normalize(const struct PmMonoid *m, const char *word, char **out);

/**
 * `u ⋆ v` for irreducible words, rendered like `pm_normalize`.
 *
 * # Safety
 * `m` must be a live handle, `u` and `v` NUL-terminated, `out` valid.
 */
enum PmStatus pm_star(const struct PmMonoid *m, const char *u, const char *v, char **out);

/**
 * Words over `letters` with pairwise distinct letters.
 *
 * # Safety
 * `letters` must be NUL-terminated and `out` valid.
 */
enum PmStatus pm_gen_no_common_letters(const char *letters, struct PmMonoid **out);

/**
 * Subsets of an `n`-element set under disjoint union.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PmStatus pm_gen_disjoint_union(uint32_t n, struct PmMonoid **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void pm_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *pm_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARMON_H */
