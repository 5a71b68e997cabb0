#ifndef SITU_H
#define SITU_H

/* Generated by cbindgen from situ-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every API call.
 */
typedef enum situ_status {
  SITU_STATUS_OK = 0,
  /**
   * The input text does not parse.
   */
  SITU_STATUS_SYNTAX_ERROR = 1,
  /**
   * A global type violates the two-role discipline.
   */
  SITU_STATUS_ROLE_ERROR = 2,
  /**
   * A parameter exceeds a configured cap.
   */
  SITU_STATUS_LIMIT_ERROR = 3,
  /**
   * State-space exploration exceeded its cap.
   */
  SITU_STATUS_EXPLORATION_LIMIT = 4,
  /**
   * A global type cannot be projected onto the requested role.
   */
  SITU_STATUS_PROJECTION_ERROR = 5,
  /**
   * A required pointer argument was null.
   */
  SITU_STATUS_NULL_ARGUMENT = 6,
  /**
   * A string argument was not valid UTF-8.
   */
  SITU_STATUS_INVALID_UTF8 = 7,
} situ_status;

/**
 * An opaque process handle.
 */
typedef struct situ_process situ_process;

/**
 * An opaque session type handle.
 */
typedef struct situ_type situ_type;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the last error message recorded on this thread, or null. The
 * caller frees it with `situ_string_free`.
 */
char *situ_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `text` must have been returned by this library and not freed before.
 */
void situ_string_free(char *text);

/**
 * Parses a session type from text into a fresh handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum situ_status situ_type_parse(const char *text, struct situ_type **out);

/**
 * Parses a process from text into a fresh handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum situ_status situ_process_parse(const char *text, struct situ_process **out);

/**
 * Releases a type handle. Null is ignored.
 *
 * # Safety
 * `t` must have come from this library and not been freed before.
 */
void situ_type_free(struct situ_type *t);

/**
 * Releases a process handle. Null is ignored.
 *
 * # Safety
 * `p` must have come from this library and not been freed before.
 */
void situ_process_free(struct situ_process *p);

/**
 * Renders a type in the canonical re-parseable syntax.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum situ_status situ_type_render(const struct situ_type *t, char **out);

/**
 * Renders a process in the canonical re-parseable syntax.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum situ_status situ_process_render(const struct situ_process *p, char **out);

/**
 * Writes the normal form of `t` into a fresh handle.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum situ_status situ_type_normalize(const struct situ_type *t, struct situ_type **out);

/**
 * Writes the syntactic dual of `t` into a fresh handle.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum situ_status situ_type_dual(const struct situ_type *t, struct situ_type **out);

/**
 * Writes the greatest lower bound of `t` and `s` into a fresh handle.
 *
 * # Safety
 * `t` and `s` must be live handles; `out` must be writable.
 */
enum situ_status situ_type_meet(const struct situ_type *t,
                                const struct situ_type *s,
                                struct situ_type **out);

/**
 * Writes the least upper bound of `t` and `s` into a fresh handle.
 *
 * # Safety
 * `t` and `s` must be live handles; `out` must be writable.
 */
enum situ_status situ_type_join(const struct situ_type *t,
                                const struct situ_type *s,
                                struct situ_type **out);

/**
 * Writes whether `t` is semantically distinct from `Bot` and `Top`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum situ_status situ_type_viable(const struct situ_type *t, bool *out);

/**
 * Writes whether `t` is a subtype of `s`.
 *
 * # Safety
 * `t` and `s` must be live handles; `out` must be writable.
 */
enum situ_status situ_subtype(const struct situ_type *t, const struct situ_type *s, bool *out);

/**
 * Writes whether `t` and `s` are equivalent.
 *
 * # Safety
 * `t` and `s` must be live handles; `out` must be writable.
 */
enum situ_status situ_equivalent(const struct situ_type *t, const struct situ_type *s, bool *out);

/**
 * Writes whether process `p` inhabits type `t`.
 *
 * # Safety
 * `p` and `t` must be live handles; `out` must be writable.
 */
enum situ_status situ_member(const struct situ_process *p, const struct situ_type *t, bool *out);

/**
 * Writes whether process `p` checks against type `t`.
 *
 * # Safety
 * `t` and `p` must be live handles; `out` must be writable.
 */
enum situ_status situ_check(const struct situ_type *t, const struct situ_process *p, bool *out);

/**
 * Writes whether `p` and `q` are orthogonal.
 *
 * # Safety
 * `p` and `q` must be live handles; `out` must be writable.
 */
enum situ_status situ_orthogonal(const struct situ_process *p,
                                 const struct situ_process *q,
                                 bool *out);

/**
 * Searches for a test orthogonal to `p` but not to `q` up to `depth`.
 * On success writes whether the refinement holds up to the bound; when it
 * fails, `witness` (if non-null) receives the separating test.
 *
 * # Safety
 * `p` and `q` must be live handles; `holds` must be writable; `witness`
 * may be null or writable.
 */
enum situ_status situ_refines_bounded(const struct situ_process *p,
                                      const struct situ_process *q,
                                      size_t depth,
                                      bool *holds,
                                      struct situ_process **witness);

/**
 * Parses a two-party global type and projects it onto `role`, writing the
 * projection into a fresh type handle.
 *
 * # Safety
 * `global` and `role` must be valid NUL-terminated strings; `out` must be
 * writable.
 */
enum situ_status situ_project(const char *global, const char *role, struct situ_type **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SITU_H */
