#ifndef TALPHA_H
#define TALPHA_H

#include <stddef.h>
#include <stdint.h>

typedef enum TalphaStatus {
  TALPHA_STATUS_OK = 0,
  TALPHA_STATUS_NULL_POINTER = 1,
  TALPHA_STATUS_INVALID_ARGUMENT = 2,
  TALPHA_STATUS_FORMAT = 3,
  TALPHA_STATUS_INVALID_GRAPH = 4,
  TALPHA_STATUS_NOT_IN_CLASS = 5,
  TALPHA_STATUS_TOO_LARGE = 6,
  TALPHA_STATUS_ASSERTION_FAILED = 7,
  TALPHA_STATUS_ORACLE_FAILURE = 8,
  TALPHA_STATUS_BUDGET_EXHAUSTED = 9,
  TALPHA_STATUS_INTERNAL = 10,
} TalphaStatus;

typedef enum TalphaVerdict {
  TALPHA_VERDICT_IN = 0,
  TALPHA_VERDICT_OUT = 1,
  TALPHA_VERDICT_UNKNOWN = 2,
} TalphaVerdict;

/**
 * Opaque graph.
 */
typedef struct TalphaGraph TalphaGraph;

/**
 * Opaque tree decomposition together with its statistics.
 */
typedef struct TalphaTd TalphaTd;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (nul-terminated,
 * truncated to `cap`). Returns the full message length without the nul, or 0
 * when there is no error.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t talpha_last_error(char *buf, size_t cap);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2m` vertex ids.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values; `graph` must be writable.
 */
enum TalphaStatus talpha_graph_new(size_t n,
                                   const uint32_t *edges,
                                   size_t m,
                                   struct TalphaGraph **graph);

/**
 * Parses a graph in the `p edge` text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `graph` must be writable.
 */
enum TalphaStatus talpha_graph_parse(const char *text, struct TalphaGraph **graph);

/**
 * # Safety
 * `graph` must be null or come from a `talpha_graph_*` constructor, and not be freed twice.
 */
void talpha_graph_free(struct TalphaGraph *graph);

/**
 * # Safety
 * `graph` must be a live graph; `n` and `m` must be writable.
 */
enum TalphaStatus talpha_graph_size(const struct TalphaGraph *graph, size_t *n, size_t *m);

/**
 * Decides membership in C and C*. `budget_ms` of 0 means unlimited.
 *
 * # Safety
 * `graph` must be a live graph; `c` and `c_star` must be writable.
 */
enum TalphaStatus talpha_check_class(const struct TalphaGraph *graph,
                                     uint64_t budget_ms,
                                     enum TalphaVerdict *c,
                                     enum TalphaVerdict *c_star);

/**
 * Builds a tree decomposition of a graph in C.
 *
 * # Safety
 * `graph` must be a live graph; `td` must be writable.
 */
enum TalphaStatus talpha_decompose(const struct TalphaGraph *graph, struct TalphaTd **td);

/**
 * # Safety
 * `td` must be null or come from [`talpha_decompose`], and not be freed twice.
 */
void talpha_td_free(struct TalphaTd *td);

/**
 * Bag count, width, largest bag independence and largest bag clique cover.
 *
 * # Safety
 * `td` must be live; every output pointer must be writable.
 */
enum TalphaStatus talpha_td_stats(const struct TalphaTd *td,
                                  size_t *bags,
                                  size_t *width,
                                  size_t *independence,
                                  size_t *cover);

/**
 * Writes bag `index` into `buf` (up to `cap` ids) and its size into `len`.
 * Returns `InvalidArgument` when the bag does not fit; `len` is still set.
 *
 * # Safety
 * `td` must be live; `buf` must point to `cap` writable values; `len` must be writable.
 */
enum TalphaStatus talpha_td_bag(const struct TalphaTd *td,
                                size_t index,
                                uint32_t *buf,
                                size_t cap,
                                size_t *len);

/**
 * Maximum weight independent set over `td` with integer weights. The chosen
 * vertices go to `set_out` (capacity n) as a 0/1 indicator and the optimum to `value`.
 *
 * # Safety
 * `graph` and `td` must be live; `weights` and `set_out` must hold n values; `value` must be writable.
 */
enum TalphaStatus talpha_mwis(const struct TalphaGraph *graph,
                              const struct TalphaTd *td,
                              const uint64_t *weights,
                              uint8_t *set_out,
                              uint64_t *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TALPHA_H */
