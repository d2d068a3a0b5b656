#ifndef RENYI_H
#define RENYI_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RenyiKernelKind {
  /**
   * `f(x, y) = c`; the parameter is `c`.
   */
  RENYI_KERNEL_KIND_CONSTANT = 0,
  /**
   * `f(x, y) = e^{-κx} e^{-κy}`; the parameter is `κ`.
   */
  RENYI_KERNEL_KIND_EXPONENTIAL = 1,
} RenyiKernelKind;

typedef enum RenyiStatus {
  RENYI_STATUS_OK = 0,
  RENYI_STATUS_NULL_POINTER = 1,
  RENYI_STATUS_INVALID_ARGUMENT = 2,
  RENYI_STATUS_PARSE = 3,
  /**
   * The input has no positive weight (for a graph: no edges).
   */
  RENYI_STATUS_DEGENERATE = 4,
  RENYI_STATUS_BUFFER_TOO_SMALL = 5,
  RENYI_STATUS_PANIC = 6,
} RenyiStatus;

/**
 * A graph, plus the truncated weights when it came from the power-law model.
 */
typedef struct RenyiGraph RenyiGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *renyi_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *renyi_version(void);

/**
 * Rényi index of `len` nonnegative values.
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be writable.
 */
enum RenyiStatus renyi_index(const double *values, size_t len, double alpha, double *out);

/**
 * Parse edge-list text into a new graph handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RenyiStatus renyi_graph_parse(const char *text, struct RenyiGraph **out);

/**
 * Sample a heterogeneous Erdős–Rényi graph.
 *
 * # Safety
 * `cell_id` must be a NUL-terminated string; `out` must be writable.
 */
enum RenyiStatus renyi_graph_sample_hetero_er(size_t n,
                                              double p,
                                              enum RenyiKernelKind kernel,
                                              double kernel_param,
                                              uint64_t master_seed,
                                              const char *cell_id,
                                              uint64_t replicate,
                                              struct RenyiGraph **out);

/**
 * Sample a power-law graph; the truncated weights are kept on the handle.
 *
 * # Safety
 * `cell_id` must be a NUL-terminated string; `out` must be writable.
 */
enum RenyiStatus renyi_graph_sample_power_law(size_t n,
                                              double tau,
                                              double p,
                                              uint64_t master_seed,
                                              const char *cell_id,
                                              uint64_t replicate,
                                              struct RenyiGraph **out);

/**
 * Release a handle. NULL is ignored.
 *
 * # Safety
 * `g` must be NULL or a handle from this library not yet freed.
 */
void renyi_graph_free(struct RenyiGraph *g);

/**
 * Node count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t renyi_graph_node_count(const struct RenyiGraph *g);

/**
 * Edge count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t renyi_graph_edge_count(const struct RenyiGraph *g);

/**
 * Copy the degree sequence into `buf`, which must hold at least
 * `renyi_graph_node_count(g)` entries.
 *
 * # Safety
 * `g` must be a live handle; `buf` must point to `len` writable `uint32_t`s.
 */
enum RenyiStatus renyi_graph_degrees(const struct RenyiGraph *g, uint32_t *buf, size_t len);

/**
 * Copy the truncated weights of a power-law graph into `buf`.
 *
 * # Safety
 * `g` must be a live handle; `buf` must point to `len` writable doubles.
 */
enum RenyiStatus renyi_graph_truncated_weights(const struct RenyiGraph *g, double *buf, size_t len);

/**
 * Rényi index of the graph's degree sequence.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum RenyiStatus renyi_graph_index(const struct RenyiGraph *g, double alpha, double *out);

/**
 * Limit of the index for the exponential kernel.
 *
 * # Safety
 * `out` must be writable.
 */
enum RenyiStatus renyi_limit_exponential(double alpha, double kappa, double *out);

/**
 * `g(κ)` for the exponential kernel.
 *
 * # Safety
 * `out` must be writable.
 */
enum RenyiStatus renyi_g_kappa(double kappa, double *out);

/**
 * `α = 1` limit `1 − e^{−g(κ)}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RenyiStatus renyi_limit_r1_exponential(double kappa, double *out);

/**
 * Finite-n plug-in prediction from the kernel moments.
 *
 * # Safety
 * `out` must be writable.
 */
enum RenyiStatus renyi_plugin_prediction(enum RenyiKernelKind kernel,
                                         double kernel_param,
                                         size_t n,
                                         double alpha,
                                         double *out);

/**
 * `E[ω̃^k]` for Pareto(τ) weights truncated at `√n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RenyiStatus renyi_truncated_pareto_moment(size_t n, double tau, double k, double *out);

/**
 * Rate `n^{τ/2 − 1}` for `1 − R₂` in the power-law model.
 *
 * # Safety
 * `out` must be writable.
 */
enum RenyiStatus renyi_powerlaw_gap_rate(size_t n, double tau, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RENYI_H */
