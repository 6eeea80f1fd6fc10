#ifndef CY3LAB_H
#define CY3LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum Cy3Status {
  CY3_STATUS_OK = 0,
  CY3_STATUS_NULL_POINTER = 1,
  CY3_STATUS_INVALID_UTF8 = 2,
  /**
   * Input rejected by validation; see the last error code.
   */
  CY3_STATUS_INVALID = 3,
  CY3_STATUS_NOT_FOUND = 4,
  CY3_STATUS_INTERNAL = 5,
} Cy3Status;

/**
 * Quiver with potential.
 */
typedef struct Cy3Quiver Cy3Quiver;

/**
 * Truncated power series with integer coefficients.
 */
typedef struct Cy3Series Cy3Series;

/**
 * Brane tiling.
 */
typedef struct Cy3Tiling Cy3Tiling;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Error code of the last failed call on this thread, or null.
 * The pointer stays valid until the next `cy3_*` call on the same thread.
 */
const char *cy3_last_error_code(void);

/**
 * Human-readable message of the last failed call on this thread, or null.
 */
const char *cy3_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void cy3_string_free(char *s);

/**
 * Catalog quiver with potential. `n = 0` means no parameter.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum Cy3Status cy3_catalog_quiver(const char *name, uint32_t n, struct Cy3Quiver **out);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum Cy3Status cy3_quiver_from_json(const char *json, struct Cy3Quiver **out);

/**
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum Cy3Status cy3_quiver_to_json(const struct Cy3Quiver *q, char **out);

/**
 * Vertex, arrow and potential term counts.
 *
 * # Safety
 * `q` must be a live handle; the out pointers must be writable.
 */
enum Cy3Status cy3_quiver_counts(const struct Cy3Quiver *q,
                                 size_t *vertices,
                                 size_t *arrows,
                                 size_t *terms);

/**
 * Isomorphism up to a global potential scale.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum Cy3Status cy3_quiver_isomorphic(const struct Cy3Quiver *a,
                                     const struct Cy3Quiver *b,
                                     bool *out);

/**
 * Quotient by the group action given as JSON.
 *
 * # Safety
 * `q` must be a live handle, `action_json` a nul-terminated string and
 * `out` writable.
 */
enum Cy3Status cy3_quiver_quotient(const struct Cy3Quiver *q,
                                   const char *action_json,
                                   bool by_group_order,
                                   struct Cy3Quiver **out);

/**
 * # Safety
 * `q` must be null or a handle from this library, not used afterwards.
 */
void cy3_quiver_free(struct Cy3Quiver *q);

/**
 * Catalog tiling. `n = 0` means no parameter.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum Cy3Status cy3_catalog_tiling(const char *name, uint32_t n, struct Cy3Tiling **out);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum Cy3Status cy3_tiling_from_json(const char *json, struct Cy3Tiling **out);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum Cy3Status cy3_tiling_to_json(const struct Cy3Tiling *t, char **out);

/**
 * Dual quiver with potential.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum Cy3Status cy3_tiling_dual(const struct Cy3Tiling *t, struct Cy3Quiver **out);

/**
 * Toric polygon as `[[x,y,multiplicity],...]`, from the Kasteleyn
 * determinant or from perfect matchings.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum Cy3Status cy3_tiling_polygon(const struct Cy3Tiling *t, bool kasteleyn, char **out);

/**
 * # Safety
 * `t` must be null or a handle from this library, not used afterwards.
 */
void cy3_tiling_free(struct Cy3Tiling *t);

/**
 * Degree-zero product for the `Z_n` orbifold of the conifold, truncated
 * at total degree `order`.
 *
 * # Safety
 * `out` must be writable.
 */
enum Cy3Status cy3_dt0_product(uint32_t n, uint32_t order, struct Cy3Series **out);

/**
 * Number of variables.
 *
 * # Safety
 * `s` must be a live handle.
 */
size_t cy3_series_vars(const struct Cy3Series *s);

/**
 * Coefficient of the monomial with exponents `exps[0..len]`, as a decimal
 * string. Monomials beyond the truncation report `0`.
 *
 * # Safety
 * `s` must be a live handle, `exps` must point to `len` values and `out`
 * must be writable.
 */
enum Cy3Status cy3_series_coefficient(const struct Cy3Series *s,
                                      const uint32_t *exps,
                                      size_t len,
                                      char **out);

/**
 * Sorted `[e1,...]: c` text dump.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum Cy3Status cy3_series_to_text(const struct Cy3Series *s, char **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not used afterwards.
 */
void cy3_series_free(struct Cy3Series *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CY3LAB_H */
