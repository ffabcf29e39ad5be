#ifndef SEGALKIT_H
#define SEGALKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; `SK_OK` is success.
 */
typedef enum SkStatus {
  SK_OK = 0,
  SK_NULL_POINTER = 1,
  SK_INVALID_UTF8 = 2,
  SK_INVALID_PARAMETER = 3,
  SK_BUDGET_EXCEEDED = 4,
  SK_PARSE = 5,
  SK_MALFORMED = 6,
  SK_SEGAL_DEFECT = 7,
  SK_MISSING_COMPOSITE = 8,
  SK_NON_TERMINATION = 9,
  SK_UNSUPPORTED = 10,
  SK_WINDOW_EXCEEDED = 11,
  SK_IO = 12,
  SK_PANIC = 13,
} SkStatus;

/**
 * Three-valued answer of a decision procedure.
 */
typedef enum SkVerdict {
  SK_YES = 0,
  SK_NO = 1,
  SK_UNKNOWN = 2,
} SkVerdict;

/**
 * A bisimplicial set, possibly computed lazily row by row.
 */
typedef struct SkBss SkBss;

/**
 * A finite simplicial set.
 */
typedef struct SkSset SkSset;

/**
 * Enumeration limits; see `sk_budget_default`.
 */
typedef struct SkBudget {
  size_t simplices;
  size_t dim;
  uint64_t nodes;
} SkBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct SkBudget sk_budget_default(void);

/**
 * Message of the last failure on this thread, or NULL. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *sk_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sk_string_free(char *s);

/**
 * Parses an SSET v1 document.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum SkStatus sk_sset_parse(const char *text_ptr, struct SkSset **out);

/**
 * `kind` is "simplex", "boundary" or "horn"; `k` is used by horns only.
 *
 * # Safety
 * `kind` must be a NUL-terminated string and `out` writable.
 */
enum SkStatus sk_sset_standard(const char *kind, size_t n, size_t k, struct SkSset **out);

/**
 * # Safety
 * `x` must be a live handle or NULL.
 */
void sk_sset_free(struct SkSset *x);

/**
 * Number of nondegenerate simplices.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_sset_len(const struct SkSset *x, size_t *out);

/**
 * Nondegenerate simplices of dimension `d`.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_sset_count(const struct SkSset *x, size_t d, size_t *out);

/**
 * The SSET v1 text; free with `sk_string_free`.
 *
 * # Safety
 * `x` must be a live handle, `name` a NUL-terminated string, `out` writable.
 */
enum SkStatus sk_sset_emit(const struct SkSset *x, const char *name, char **out);

/**
 * Number of connected components.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_sset_pi0(const struct SkSset *x, size_t *out);

/**
 * Homology through degree `max_deg` as a JSON array of
 * `{"rank": r, "torsion": [..]}`; free with `sk_string_free`.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_sset_homology_json(const struct SkSset *x,
                                    size_t max_deg,
                                    struct SkBudget budget,
                                    char **out);

/**
 * Horn filling through dimension `dim_bound`.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_sset_is_kan(const struct SkSset *x,
                             size_t dim_bound,
                             struct SkBudget budget,
                             enum SkVerdict *out);

/**
 * Parses a BSS v1 document, virtual or stored.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum SkStatus sk_bss_parse(const char *text_ptr, struct SkBss **out);

/**
 * The nerve of the category `name` of a CAT v1 document, or of its only
 * category when `name` is NULL.
 *
 * # Safety
 * `text` must be a NUL-terminated string, `name` one or NULL, `out` writable.
 */
enum SkStatus sk_bss_nerve(const char *text_ptr,
                           const char *name,
                           struct SkBudget budget,
                           struct SkBss **out);

/**
 * `G(k)^t`, `Delta[k]^t` or `E^t` for `kind` "G", "Delta" or "E".
 *
 * # Safety
 * `kind` must be a NUL-terminated string and `out` writable.
 */
enum SkStatus sk_bss_spine(const char *kind, size_t k, struct SkBss **out);

/**
 * # Safety
 * `x` must be a live handle or NULL.
 */
void sk_bss_free(struct SkBss *x);

/**
 * Row `n` as a new simplicial set handle.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_bss_row(const struct SkBss *x,
                         size_t n,
                         struct SkBudget budget,
                         struct SkSset **out);

/**
 * The BSS v1 text through row `window`; free with `sk_string_free`.
 *
 * # Safety
 * `x` must be a live handle, `name` a NUL-terminated string, `out` writable.
 */
enum SkStatus sk_bss_emit(const struct SkBss *x,
                          const char *name,
                          size_t window,
                          struct SkBudget budget,
                          char **out);

/**
 * Whether the Segal maps are weak equivalences for `2 <= k <= k_max`.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_bss_segal_check(const struct SkBss *x,
                                 size_t k_max,
                                 struct SkBudget budget,
                                 enum SkVerdict *out);

/**
 * Completeness of a Segal precategory.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum SkStatus sk_bss_complete_check(const struct SkBss *x,
                                    struct SkBudget budget,
                                    enum SkVerdict *out);

/**
 * Runs one command-line invocation in-process. `argv` excludes the program
 * name. The JSON report is written to `report` (free with
 * `sk_string_free`) and the exit code to `code`.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `report` and `code`
 * must be writable.
 */
enum SkStatus sk_run(size_t argc, const char *const *argv, char **report, int32_t *code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEGALKIT_H */
