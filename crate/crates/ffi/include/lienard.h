#ifndef LIENARD_H
#define LIENARD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LienardStatus {
  LIENARD_STATUS_OK = 0,
  LIENARD_STATUS_NULL_POINTER = 1,
  LIENARD_STATUS_INVALID_ARGUMENT = 2,
  LIENARD_STATUS_DIMENSION = 3,
  // The flow left the region where the return map is defined.
  LIENARD_STATUS_DOMAIN = 4,
  LIENARD_STATUS_INTEGRATION = 5,
  // The result was computed but an asserted check failed.
  LIENARD_STATUS_CHECK_FAILED = 6,
  LIENARD_STATUS_INTERNAL = 7,
  LIENARD_STATUS_PANIC = 8,
} LienardStatus;

// Opaque coefficient table.
typedef struct LienardTable LienardTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread; do not free it.
const char *lienard_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void lienard_string_free(char *s);

// Computes `v_1 ... v_K` for `d` parameters.
//
// # Safety
// `out` must be a valid pointer to write a table handle to.
enum LienardStatus lienard_table_compute(uintptr_t d, uintptr_t order, struct LienardTable **out);

// Releases a table. Null is ignored.
//
// # Safety
// `table` must come from [`lienard_table_compute`] and not have been freed.
void lienard_table_free(struct LienardTable *table);

// Writes `d` and `K` of a table.
//
// # Safety
// `table` must be a live handle; `d` and `order` valid for writes.
enum LienardStatus lienard_table_shape(const struct LienardTable *table,
                                       uintptr_t *d,
                                       uintptr_t *order);

// The whole table as JSON (exact values as strings).
//
// # Safety
// `table` must be a live handle; `out` valid for writes.
enum LienardStatus lienard_table_json(const struct LienardTable *table, char **out);

// `v_k(2π)` evaluated at `λ` (length must equal `d`).
//
// # Safety
// `table` must be a live handle, `lambda` must hold `len` doubles and `out`
// must be valid for writes.
enum LienardStatus lienard_table_eval(const struct LienardTable *table,
                                      uintptr_t k,
                                      const double *lambda,
                                      uintptr_t len,
                                      double *out);

// Ideal certificate for the table, as JSON. A certificate that does not
// hold is still written, with status `CheckFailed`.
//
// # Safety
// `table` must be a live handle; `out` valid for writes.
enum LienardStatus lienard_bautin_certificate_json(const struct LienardTable *table, char **out);

// Root of `Σ ρ^i |λ_i| = 1`; `+∞` when `λ = 0`.
//
// # Safety
// `lambda` must hold `len` doubles and `out` must be valid for writes.
enum LienardStatus lienard_rho(const double *lambda, uintptr_t len, double *out);

// Convergence and zero-count radii for `n` generators, as JSON.
//
// # Safety
// `lambda` must hold `len` doubles and `out` must be valid for writes.
enum LienardStatus lienard_radius_report_json(uintptr_t n,
                                              const double *lambda,
                                              uintptr_t len,
                                              char **out);

// First return of the orbit through `(r0, 0)` to the positive x-axis.
//
// # Safety
// `lambda` must hold `len` doubles and `out` must be valid for writes.
enum LienardStatus lienard_return_map(const double *lambda,
                                      uintptr_t len,
                                      double r0,
                                      double tol,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIENARD_H */
