#ifndef NHMF_H
#define NHMF_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero library errors match the command line exit codes.
 */
typedef enum NhmfStatus {
  NHMF_STATUS_OK = 0,
  NHMF_STATUS_STRUCTURAL = 1,
  NHMF_STATUS_TRUNCATION_TOO_SMALL = 2,
  NHMF_STATUS_PARSE = 3,
  NHMF_STATUS_NOT_IN_SPACE = 4,
  NHMF_STATUS_DOMAIN = 5,
  /**
   * Null pointer or invalid UTF-8 argument.
   */
  NHMF_STATUS_INVALID_ARGUMENT = 6,
  /**
   * A panic was caught at the boundary.
   */
  NHMF_STATUS_INTERNAL = 7,
} NhmfStatus;

/**
 * Opaque nearly holomorphic form.
 */
typedef struct NhmfForm NhmfForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into the library from the same thread.
 */
const char *nhmf_last_error(void);

/**
 * # Safety
 * `s` must come from this library (or be null).
 */
void nhmf_string_free(char *s);

/**
 * # Safety
 * `f` must come from this library (or be null) and not be used afterwards.
 */
void nhmf_form_free(struct NhmfForm *f);

/**
 * Parse a form document.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum NhmfStatus nhmf_form_from_json(const char *json, struct NhmfForm **out);

/**
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum NhmfStatus nhmf_form_to_json(const struct NhmfForm *f, char **out);

/**
 * `one`, `e2`, `e2star`, `delta` or `e<k>`, truncated at `q^truncation`.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` is writable.
 */
enum NhmfStatus nhmf_form_named(const char *name, size_t truncation, struct NhmfForm **out);

/**
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum NhmfStatus nhmf_form_raise(const struct NhmfForm *f, struct NhmfForm **out);

/**
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum NhmfStatus nhmf_form_lower(const struct NhmfForm *f, struct NhmfForm **out);

/**
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum NhmfStatus nhmf_form_casimir(const struct NhmfForm *f, struct NhmfForm **out);

/**
 * # Safety
 * `a`, `b` are live handles; `out` is writable.
 */
enum NhmfStatus nhmf_form_mul(const struct NhmfForm *a,
                              const struct NhmfForm *b,
                              struct NhmfForm **out);

/**
 * Weight of `f`; 0 for a null handle.
 *
 * # Safety
 * `f` is a live handle or null.
 */
int64_t nhmf_form_weight(const struct NhmfForm *f);

/**
 * X-degree of `f`, -1 for the zero form or a null handle.
 *
 * # Safety
 * `f` is a live handle or null.
 */
int64_t nhmf_form_degree(const struct NhmfForm *f);

/**
 * Double-precision value at `tau = re + i im`.
 *
 * # Safety
 * `f` is a live handle; `out_re`, `out_im` are writable.
 */
enum NhmfStatus nhmf_form_evaluate(const struct NhmfForm *f,
                                   double re,
                                   double im,
                                   double *out_re,
                                   double *out_im);

/**
 * Decomposition document of `f` in `N_k^degree` (or its cusp forms).
 *
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum NhmfStatus nhmf_decompose_json(const struct NhmfForm *f,
                                    size_t degree,
                                    bool cuspidal,
                                    char **out);

size_t nhmf_dim_n(int64_t k, size_t p);

/**
 * Ladder constant `c_{k,v}` as a rational string.
 *
 * # Safety
 * `out` is writable.
 */
enum NhmfStatus nhmf_petersson_constant(int64_t k, size_t v, char **out);

/**
 * JSON report on the truncated Verma module `N(lambda)`.
 *
 * # Safety
 * `out` is writable.
 */
enum NhmfStatus nhmf_verma_report_json(int64_t lambda, size_t depth, char **out);

/**
 * JSON report on the module generated by `E2*`; `Structural` if it does not
 * match the dual Verma module (the report is still written).
 *
 * # Safety
 * `out` is writable.
 */
enum NhmfStatus nhmf_e2_module_report_json(size_t depth, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NHMF_H */
