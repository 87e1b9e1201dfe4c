#ifndef PFSYM_H
#define PFSYM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Result codes. `PF_STATUS_OK` is zero; everything else is an error.
 */
typedef enum PfStatus {
  PF_STATUS_OK = 0,
  PF_STATUS_NULL_POINTER = 1,
  PF_STATUS_INVALID_UTF8 = 2,
  PF_STATUS_PARSE = 3,
  PF_STATUS_SCHEMA = 4,
  PF_STATUS_ODD_SIZE = 5,
  PF_STATUS_CAP_EXCEEDED = 6,
  PF_STATUS_WRONG_MODE = 7,
  PF_STATUS_INVALID_ARGUMENT = 8,
  PF_STATUS_PANIC = 9,
} PfStatus;

/**
 * A triangular array read from JSON.
 */
typedef struct PfArray PfArray;

/**
 * An exact polynomial.
 */
typedef struct PfPoly PfPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *pf_last_error(void);

/**
 * Library version as a static string.
 */
const char *pf_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void pf_string_free(char *s);

/**
 * Parses an array file (`{"two_n": .., "mode": .., "entries": {..}}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PfStatus pf_array_from_json(const char *json, struct PfArray **out);

/**
 * # Safety
 * `arr` must come from [`pf_array_from_json`] and not be freed twice.
 */
void pf_array_free(struct PfArray *arr);

/**
 * Order of the array, or 0 for null.
 *
 * # Safety
 * `arr` must be null or a live handle.
 */
size_t pf_array_order(const struct PfArray *arr);

/**
 * Pfaffian as text: a rational, a float, or a polynomial.
 *
 * # Safety
 * `arr` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_array_pfaffian(const struct PfArray *arr, char **out);

/**
 * Pfaffian of a numeric array as a double.
 *
 * # Safety
 * `arr` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_array_pfaffian_f64(const struct PfArray *arr, double *out);

/**
 * Determinant of the completed matrix, as text.
 *
 * # Safety
 * `arr` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_array_determinant(const struct PfArray *arr, char **out);

/**
 * The generic pfaffian of order `two_n` in generators `a(i,j)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PfStatus pf_expand(size_t two_n, struct PfPoly **out);

/**
 * Parses a polynomial such as `"a(1,2)a(3,4) - 2x1^2"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PfStatus pf_poly_parse(const char *text, struct PfPoly **out);

/**
 * Reads a polynomial from its JSON term list.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PfStatus pf_poly_from_json(const char *json, struct PfPoly **out);

/**
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void pf_poly_free(struct PfPoly *p);

/**
 * Juxtaposed text form, e.g. `a(1,2)a(3,4) - a(1,3)a(2,4) + a(1,4)a(2,3)`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_poly_to_text(const struct PfPoly *p, char **out);

/**
 * JSON term list.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_poly_to_json(const struct PfPoly *p, char **out);

/**
 * 1 if equal, 0 if not, -1 if either handle is null.
 *
 * # Safety
 * Both arguments must be null or live handles.
 */
int pf_poly_equal(const struct PfPoly *a, const struct PfPoly *b);

/**
 * Number of terms, or 0 for null.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t pf_poly_term_count(const struct PfPoly *p);

/**
 * `(two_n - 1)!!`, the number of perfect matchings.
 *
 * # Safety
 * `out` must be writable.
 */
enum PfStatus pf_matching_count(size_t two_n, uint64_t *out);

/**
 * Brute-force symmetry group of `p` inside `S_m` as JSON
 * (`{"degree", "order", "equals_dihedral", "elements", ...}`). With
 * `skew` nonzero generators satisfy `a(j,i) = -a(i,j)`; with `is_signed`
 * nonzero the group keeps `p -> sign(σ) p` instead of `p -> p`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_symmetry_group_json(const struct PfPoly *p,
                                     size_t m,
                                     int skew,
                                     int is_signed,
                                     char **out);

/**
 * Runs a named check (or `"all"`) for `n_min..=n_max` and writes a JSON
 * array of reports. A failing check is not an error: `*all_passed` is set
 * to 0 instead. Skipped cases are omitted.
 *
 * # Safety
 * `check` must be a NUL-terminated string; `out` and `all_passed` must be
 * writable.
 */
enum PfStatus pf_verify(const char *check,
                        size_t n_min,
                        size_t n_max,
                        uint64_t seed,
                        int expensive,
                        char **out,
                        int *all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PFSYM_H */
