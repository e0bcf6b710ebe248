#ifndef BRANCHWIDTH_H
#define BRANCHWIDTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Solver selection.
typedef enum BwAlgorithm {
  BW_ALGORITHM_HYPER = 0,
  BW_ALGORITHM_BLOCKS = 1,
  BW_ALGORITHM_ROOT = 2,
  BW_ALGORITHM_ORACLE = 3,
} BwAlgorithm;

// Instance text format.
typedef enum BwFormat {
  BW_FORMAT_GR = 0,
  BW_FORMAT_HGR = 1,
} BwFormat;

// Result code of every fallible call.
typedef enum BwStatus {
  BW_STATUS_OK = 0,
  BW_STATUS_NULL_POINTER = 1,
  BW_STATUS_INVALID_ARGUMENT = 2,
  BW_STATUS_PARSE = 3,
  BW_STATUS_INVALID_INPUT = 4,
  BW_STATUS_TOO_LARGE = 5,
  BW_STATUS_NOT_A_GRAPH = 6,
  BW_STATUS_TIMEOUT = 7,
  BW_STATUS_INVARIANT = 8,
  BW_STATUS_IO = 9,
  BW_STATUS_PANIC = 10,
} BwStatus;

// Opaque hypergraph handle.
typedef struct BwGraph BwGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses instance text (`.gr` or `.hgr`) into a new handle stored in `*out`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum BwStatus bw_graph_parse(const char *text, enum BwFormat format, struct BwGraph **out);

// Builds a handle from `m` edges over vertices `0..n`. Edge `i` consists of
// `vertices[offsets[i] .. offsets[i + 1]]`; `offsets` has `m + 1` entries.
//
// # Safety
// `offsets` must point to `m + 1` values, `vertices` to `offsets[m]`
// values (it may be null when that is 0), and `out` must be valid.
enum BwStatus bw_graph_from_edges(size_t n,
                                  size_t m,
                                  const size_t *offsets,
                                  const size_t *vertices,
                                  struct BwGraph **out);

// Releases a handle; null is ignored.
//
// # Safety
// `g` must be null or a handle from this library that was not freed.
void bw_graph_free(struct BwGraph *g);

// Vertex count, 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t bw_graph_vertex_count(const struct BwGraph *g);

// Edge count, 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t bw_graph_edge_count(const struct BwGraph *g);

// Computes the branchwidth into `*width`. A negative or non-finite
// `timeout_secs` means no limit.
//
// # Safety
// `g` must be a live handle and `width` a valid pointer.
enum BwStatus bw_solve(const struct BwGraph *g,
                       enum BwAlgorithm alg,
                       double timeout_secs,
                       size_t *width);

// Decides whether the branchwidth is at most `k`; the answer goes to `*yes`.
//
// # Safety
// `g` must be a live handle and `yes` a valid pointer.
enum BwStatus bw_decide(const struct BwGraph *g,
                        enum BwAlgorithm alg,
                        size_t k,
                        double timeout_secs,
                        bool *yes);

// Computes the branchwidth and an optimal decomposition in the text
// format read by `bw solve --check`. The text is stored in `*text` and must
// be released with `bw_string_free`.
//
// # Safety
// `g` must be a live handle; `width` and `text` must be valid pointers.
enum BwStatus bw_solve_decomposition(const struct BwGraph *g,
                                     enum BwAlgorithm alg,
                                     double timeout_secs,
                                     size_t *width,
                                     char **text);

// Checks decomposition text against `g`; the width goes to `*width`.
// Fails with `BW_STATUS_INVARIANT` if the text is not a decomposition of
// every edge or its width exceeds `k`.
//
// # Safety
// `g` must be a live handle, `text` a NUL-terminated string and `width` a
// valid pointer.
enum BwStatus bw_check_decomposition(const struct BwGraph *g,
                                     const char *text,
                                     size_t k,
                                     size_t *width);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must be null or a string from this library that was not freed.
void bw_string_free(char *s);

// Message of the last failed call on this thread, or null after a success.
// The pointer stays valid until the next call on the same thread.
const char *bw_last_error_message(void);

// Static name of a status code.
const char *bw_status_name(enum BwStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRANCHWIDTH_H */
