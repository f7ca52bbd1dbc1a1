#ifndef PFE_H
#define PFE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum PfeStatus {
  PFE_STATUS_OK = 0,
  PFE_STATUS_NULL_ARGUMENT = 1,
  PFE_STATUS_INVALID_UTF8 = 2,
  // Malformed rational, polynomial or document text.
  PFE_STATUS_SYNTAX = 3,
  // Parameter outside its domain, such as `u = 1` or an unknown model.
  PFE_STATUS_INVALID_PARAMETER = 4,
  // Index or order beyond what the object holds.
  PFE_STATUS_OUT_OF_RANGE = 5,
  // Division by zero or a series without the required shape.
  PFE_STATUS_ARITHMETIC = 6,
  // The library panicked; the handle arguments are still valid.
  PFE_STATUS_INTERNAL = 7,
} PfeStatus;

// Coefficients of a polynomial in a family basis.
typedef struct PfeExpansion PfeExpansion;

// Polynomials `P_0..P_nmax` of one family.
typedef struct PfeFamily PfeFamily;

// Random-variable model.
typedef struct PfeModel PfeModel;

// Triangular Stirling-number table.
typedef struct PfeTable PfeTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null if none failed.
// The pointer stays valid until the next failing call on the same thread.
const char *pfe_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` is null or a string returned by this library and not yet freed.
void pfe_string_free(char *s);

// Creates a model by name (`unit`, `bernoulli`, `poisson`, `geometric`,
// `exponential`) with `count` parameters given as parallel arrays of names
// (`p`, `alpha`) and rational values.
//
// # Safety
// `kind` is a valid string; `names` and `values` each point to `count` valid
// strings (they may be null when `count` is 0); `out` is writable.
enum PfeStatus pfe_model_new(const char *kind,
                             const char *const *names,
                             const char *const *values,
                             size_t count,
                             struct PfeModel **out);

// Creates a model from raw moments `E[Y^0], ..., E[Y^(count-1)]`.
//
// # Safety
// `moments` points to `count` valid strings; `out` is writable.
enum PfeStatus pfe_model_custom(const char *const *moments, size_t count, struct PfeModel **out);

// # Safety
// `model` is null or a live model handle.
void pfe_model_free(struct PfeModel *model);

// Builds a Stirling table by family code (`s1`, `s2`, `s1l`, `s2l`, `s1y`,
// `s2y`, `s1yl`, `s2yl`). `lambda` may be null for 0; `model` may be null for
// the non-probabilistic families.
//
// # Safety
// String arguments are null or valid; `model` is null or live; `out` is writable.
enum PfeStatus pfe_table_new(const char *family,
                             size_t nmax,
                             const char *lambda,
                             const struct PfeModel *model,
                             struct PfeTable **out);

// # Safety
// `table` is a live handle; `out` is writable.
enum PfeStatus pfe_table_nmax(const struct PfeTable *table, size_t *out);

// Entry `(n, k)` as a newly allocated string; zero above the diagonal.
//
// # Safety
// `table` is a live handle; `out` is writable.
enum PfeStatus pfe_table_get(const struct PfeTable *table, size_t n, size_t k, char **out);

// # Safety
// `table` is a live handle; `out` is writable.
enum PfeStatus pfe_table_to_json(const struct PfeTable *table, char **out);

// # Safety
// `table` is null or a live handle.
void pfe_table_free(struct PfeTable *table);

// Builds `P_0..P_nmax` of order `order`. `model` may be null for the unit
// model and `lambda` may be null for 0.
//
// # Safety
// `u` is a valid string; other pointers are null or valid; `out` is writable.
enum PfeStatus pfe_family_new(const struct PfeModel *model,
                              const char *u,
                              const char *lambda,
                              size_t order,
                              size_t nmax,
                              struct PfeFamily **out);

// Coefficient of `x^j` in `P_n`.
//
// # Safety
// `family` is a live handle; `out` is writable.
enum PfeStatus pfe_family_coefficient(const struct PfeFamily *family,
                                      size_t n,
                                      size_t j,
                                      char **out);

// # Safety
// `family` is a live handle; `out` is writable.
enum PfeStatus pfe_family_to_json(const struct PfeFamily *family, char **out);

// # Safety
// `family` is null or a live handle.
void pfe_family_free(struct PfeFamily *family);

// Expands the polynomial `poly` (text such as `"x^3 - 2/3*x + 1"`) in the
// basis of the given family. `formula` is a tag such as `"thm33-2"`; null
// picks the first formula of the most specific applicable theorem.
//
// # Safety
// `u` and `poly` are valid strings; other pointers are null or valid; `out`
// is writable.
enum PfeStatus pfe_expand(const struct PfeModel *model,
                          const char *u,
                          const char *lambda,
                          size_t order,
                          const char *poly,
                          const char *formula,
                          struct PfeExpansion **out);

// Number of coefficients (degree plus one).
//
// # Safety
// `expansion` is a live handle; `out` is writable.
enum PfeStatus pfe_expansion_len(const struct PfeExpansion *expansion, size_t *out);

// # Safety
// `expansion` is a live handle; `out` is writable.
enum PfeStatus pfe_expansion_coefficient(const struct PfeExpansion *expansion,
                                         size_t k,
                                         char **out);

// # Safety
// `expansion` is a live handle; `out` is writable.
enum PfeStatus pfe_expansion_to_json(const struct PfeExpansion *expansion, char **out);

// # Safety
// `expansion` is null or a live handle.
void pfe_expansion_free(struct PfeExpansion *expansion);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PFE_H */
