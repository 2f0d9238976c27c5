#ifndef DIFFNET_H
#define DIFFNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Number of values written by `dn_features`.
#define DN_FEATURE_COUNT 7

// Number of orbit columns per node written by `dn_orbit_counts`.
#define DN_ORBIT_COUNT 13

// Result code of every fallible call.
typedef enum DnStatus {
  DN_STATUS_OK = 0,
  DN_STATUS_NULL_POINTER = 1,
  DN_STATUS_INVALID_UTF8 = 2,
  DN_STATUS_PARSE = 3,
  DN_STATUS_EMPTY_GRAPH = 4,
  DN_STATUS_INVALID_ARGUMENT = 5,
  DN_STATUS_IO = 6,
  DN_STATUS_BUFFER_TOO_SMALL = 7,
  DN_STATUS_PANIC = 8,
} DnStatus;

// Opaque network handle.
typedef struct DnNetwork DnNetwork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a tab- or whitespace-separated edge list (`src dst` per line,
// `#` comments allowed) into a new network.
//
// # Safety
// `edges` must be a NUL-terminated string and `out` a valid pointer.
enum DnStatus dn_network_from_edge_list(const char *edges, struct DnNetwork **out);

// Builds a network over nodes `0..n_nodes` from parallel `src`/`dst`
// arrays of length `n_edges`. Duplicate edges are merged; self-loops and
// out-of-range indices are rejected.
//
// # Safety
// `src` and `dst` must point to `n_edges` readable values and `out` must be
// a valid pointer.
enum DnStatus dn_network_from_edges(size_t n_nodes,
                                    const uint32_t *src,
                                    const uint32_t *dst,
                                    size_t n_edges,
                                    struct DnNetwork **out);

// Loads an edge-list file (and its `.nodes` manifest, when present).
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum DnStatus dn_network_load(const char *path, struct DnNetwork **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `network` must come from a `dn_network_*` constructor and not be used
// afterwards.
void dn_network_free(struct DnNetwork *network);

// Node count, or 0 for a null handle.
//
// # Safety
// `network` must be null or a live handle.
size_t dn_network_node_count(const struct DnNetwork *network);

// Edge count, or 0 for a null handle.
//
// # Safety
// `network` must be null or a live handle.
size_t dn_network_edge_count(const struct DnNetwork *network);

// Writes the seven global features in the order
// scc, lscc, wcc, lwcc, dwcc, cc, kc.
//
// # Safety
// `out` must point to `DN_FEATURE_COUNT` writable doubles.
enum DnStatus dn_features(const struct DnNetwork *network, double *out);

// Writes per-node orbit counts row-major (`node_count * DN_ORBIT_COUNT`
// values). `capacity` is the length of `out` in elements.
//
// # Safety
// `out` must point to `capacity` writable values.
enum DnStatus dn_orbit_counts(const struct DnNetwork *network, uint64_t *out, size_t capacity);

// Graphlet correlation distance over the 13 directed orbits.
//
// # Safety
// Both handles must be live and `out` writable.
enum DnStatus dn_dgcd13(const struct DnNetwork *a, const struct DnNetwork *b, double *out);

// Portrait divergence in [0, 1]. Nonzero `undirected` ignores edge
// direction when measuring path lengths.
//
// # Safety
// Both handles must be live and `out` writable.
enum DnStatus dn_portrait_divergence(const struct DnNetwork *a,
                                     const struct DnNetwork *b,
                                     int undirected,
                                     double *out);

// Area under the ROC curve. `labels` holds 0 (negative) or nonzero
// (positive) per score.
//
// # Safety
// `scores` and `labels` must point to `n` readable values; `out` writable.
enum DnStatus dn_roc_auc(const double *scores, const uint8_t *labels, size_t n, double *out);

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
//
// # Safety
// `xs`/`ys` must point to `nx`/`ny` readable values; outputs writable.
enum DnStatus dn_ks_two_sample(const double *xs,
                               size_t nx,
                               const double *ys,
                               size_t ny,
                               double *statistic,
                               double *p_value);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next `dn_*` call on the same thread.
const char *dn_last_error(void);

// Library version as a static NUL-terminated string.
const char *dn_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIFFNET_H */
