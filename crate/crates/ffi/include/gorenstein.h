#ifndef GORENSTEIN_H
#define GORENSTEIN_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes. The first four match the command-line exit codes.
 */
typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_INPUT_ERROR = 1,
  GS_STATUS_THEOREM_VIOLATION = 2,
  GS_STATUS_CONJECTURE_FAILURE = 3,
  GS_STATUS_NULL_POINTER = 4,
  GS_STATUS_INVALID_UTF8 = 5,
  GS_STATUS_BUFFER_TOO_SMALL = 6,
  GS_STATUS_PANIC = 7,
} GsStatus;

/**
 * Opaque polytope handle.
 */
typedef struct GsPolytope GsPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *gs_last_error(void);

/**
 * Parses a polytope file (JSON text) into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GsStatus gs_polytope_from_json(const char *json, struct GsPolytope **out);

/**
 * Builds a polytope from `n` integral points stored row-major in `coords`
 * (`n * ambient_dim` entries).
 *
 * # Safety
 * `coords` must point to `n * ambient_dim` integers and `out` be valid.
 */
enum GsStatus gs_polytope_from_points(uintptr_t ambient_dim,
                                      const int64_t *coords,
                                      uintptr_t n,
                                      struct GsPolytope **out);

/**
 * # Safety
 * `p` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void gs_polytope_free(struct GsPolytope *p);

/**
 * Dimension of the polytope (`-1` when empty).
 *
 * # Safety
 * `p` must be a live handle and `out` valid.
 */
enum GsStatus gs_polytope_dim(const struct GsPolytope *p, int64_t *out);

/**
 * Writes the h*-coefficients (constant term first) into `coeffs`. `len`
 * receives the number of coefficients; when it exceeds `cap` nothing is
 * written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `coeffs` must hold `cap` integers; `p` and `len` must be valid.
 */
enum GsStatus gs_hstar(const struct GsPolytope *p, int64_t *coeffs, uintptr_t cap, uintptr_t *len);

/**
 * Gorenstein index, or 0 when the polytope is not Gorenstein.
 *
 * # Safety
 * `p` must be a live handle and `out` valid.
 */
enum GsStatus gs_gorenstein_index(const struct GsPolytope *p, uintptr_t *out);

/**
 * Irreducibility of a Gorenstein polytope.
 *
 * # Safety
 * `p` must be a live handle and `out` valid.
 */
enum GsStatus gs_is_irreducible(const struct GsPolytope *p, bool *out);

/**
 * The stringy E-function as JSON `[[i, j, c], ..]` for `c·u^i v^j`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid; free the result with
 * `gs_string_free`.
 */
enum GsStatus gs_stringy_e_json(const struct GsPolytope *p, char **out);

/**
 * Runs a command-line command (`info`, `stringy`, `nef-build`, ..) on the
 * text of one input file and returns its JSON report line. The status
 * mirrors the report's exit code.
 *
 * # Safety
 * `command` and `input` must be NUL-terminated strings, `out` valid; free
 * the result with `gs_string_free`.
 */
enum GsStatus gs_run_command(const char *command, const char *input, char **out);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void gs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GORENSTEIN_H */
