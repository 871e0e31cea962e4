#ifndef MODSPRINGER_H
#define MODSPRINGER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MsStatus {
  MS_STATUS_OK = 0,
  MS_STATUS_NULL_POINTER = 1,
  MS_STATUS_INVALID_UTF8 = 2,
  MS_STATUS_USAGE = 3,
  MS_STATUS_COMPUTATION = 4,
  MS_STATUS_DATA = 5,
  MS_STATUS_PANIC = 6,
} MsStatus;

/**
 * Opaque group handle.
 */
typedef struct MsGroup MsGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a group descriptor such as `"Sp 8"`, `"SO 9"` or `"GL 2 x Sp 4"`.
 *
 * # Safety
 * `descriptor` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum MsStatus ms_group_parse(const char *descriptor, struct MsGroup **out);

/**
 * Releases a handle from [`ms_group_parse`]. Null is ignored.
 *
 * # Safety
 * `g` must come from [`ms_group_parse`] and not be freed twice.
 */
void ms_group_free(struct MsGroup *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum MsStatus ms_rather_good(const struct MsGroup *g, uint32_t l, bool *out);

/**
 * Number of pairs (orbit, local system).
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum MsStatus ms_pair_count(const struct MsGroup *g, size_t *out);

/**
 * Number of ℓ-cuspidal data; ℓ = 0 means characteristic zero.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum MsStatus ms_cuspidal_count(const struct MsGroup *g, uint32_t l, size_t *out);

/**
 * Checks the counting identity for (n, ℓ); `lhs`, `rhs` may be null.
 *
 * # Safety
 * `holds` must be a valid pointer; `lhs` and `rhs` valid or null.
 */
enum MsStatus ms_verify_counting_identity(uint32_t n,
                                          uint32_t l,
                                          bool *holds,
                                          uint64_t *lhs,
                                          uint64_t *rhs);

/**
 * Runs a bundled report (`"E8-l7"` or `"B4-l3"`); writes whether every
 * check passed and, if `json` is non-null, the report as JSON.
 *
 * # Safety
 * `name` must be a valid string, `pass` a valid pointer, `json` valid or
 * null. A returned string must be freed with [`ms_string_free`].
 */
enum MsStatus ms_report(const char *name, bool *pass, char **json);

/**
 * Runs the command-line front end with `argc` arguments (program name
 * excluded). Writes the exit code and, if non-null, captured stdout and
 * stderr.
 *
 * # Safety
 * `argv` must hold `argc` valid strings; output pointers valid or null.
 */
enum MsStatus ms_cli_run(size_t argc,
                         const char *const *argv,
                         int32_t *exit_code,
                         char **out,
                         char **err);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ms_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *ms_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODSPRINGER_H */
