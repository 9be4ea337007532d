#ifndef COMPATLIE_H
#define COMPATLIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `Ok` is zero.
 */
typedef enum CompatlieStatus {
  COMPATLIE_STATUS_OK = 0,
  COMPATLIE_STATUS_NULL_POINTER = 1,
  COMPATLIE_STATUS_INVALID_UTF8 = 2,
  COMPATLIE_STATUS_PARSE = 3,
  COMPATLIE_STATUS_INVALID = 4,
  COMPATLIE_STATUS_UNKNOWN_NAME = 5,
  COMPATLIE_STATUS_PARAMETRIC = 6,
  COMPATLIE_STATUS_NOT_LIE = 7,
  COMPATLIE_STATUS_INTERNAL = 99,
} CompatlieStatus;

/**
 * Selects one of the two brackets, or both for compatible derivations.
 */
typedef enum CompatlieBracket {
  COMPATLIE_BRACKET_FIRST = 1,
  COMPATLIE_BRACKET_SECOND = 2,
  COMPATLIE_BRACKET_BOTH = 3,
} CompatlieBracket;

/**
 * Opaque handle to a compatible Lie algebra.
 */
typedef struct CompatlieAlgebra CompatlieAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *compatlie_last_error(void);

/**
 * Parses an algebra from its JSON file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CompatlieStatus compatlie_parse_json(const char *json, struct CompatlieAlgebra **out);

/**
 * Builds a named family member, e.g. `("lr", "9")` or `("ls", "3,3")`.
 *
 * # Safety
 * `name` and `arg` must be NUL-terminated strings; `out` must be writable.
 */
enum CompatlieStatus compatlie_from_family(const char *name,
                                           const char *arg,
                                           struct CompatlieAlgebra **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `a` must come from this library and not be freed twice.
 */
void compatlie_free(struct CompatlieAlgebra *a);

/**
 * Dimension of the underlying space.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CompatlieStatus compatlie_dimension(const struct CompatlieAlgebra *a, size_t *out);

/**
 * Writes 1 if every combination of the two brackets is a Lie bracket.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CompatlieStatus compatlie_check_compatibility(const struct CompatlieAlgebra *a, int32_t *out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CompatlieStatus compatlie_is_nilpotent(const struct CompatlieAlgebra *a, int32_t *out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CompatlieStatus compatlie_is_solvable(const struct CompatlieAlgebra *a, int32_t *out);

/**
 * Dimension of the derivation algebra of one bracket, or of the common
 * derivations when `which` is `Both`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CompatlieStatus compatlie_derivation_dim(const struct CompatlieAlgebra *a,
                                              enum CompatlieBracket which,
                                              size_t *out);

/**
 * Serializes to the JSON file format. Free the result with
 * `compatlie_string_free`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CompatlieStatus compatlie_to_json(const struct CompatlieAlgebra *a, char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void compatlie_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMPATLIE_H */
