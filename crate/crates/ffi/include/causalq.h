#ifndef CAUSALQ_H
#define CAUSALQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible `cq_*` call.
 */
typedef enum CqStatus {
  CQ_STATUS_OK = 0,
  CQ_STATUS_NULL_POINTER = 1,
  CQ_STATUS_INVALID_UTF8 = 2,
  CQ_STATUS_INVALID_TOPOLOGY = 3,
  CQ_STATUS_RESOURCE_LIMIT = 4,
  CQ_STATUS_NOTHING_TO_AMPLIFY = 5,
  CQ_STATUS_VERIFICATION_FAILED = 6,
  CQ_STATUS_INTERNAL = 7,
} CqStatus;

/**
 * Opaque handle to a validated topology.
 */
typedef struct CqTopology CqTopology;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread; empty if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *cq_last_error(void);

/**
 * Parses and validates a topology JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CqStatus cq_topology_from_json(const char *json, struct CqTopology **out);

/**
 * Loads a built-in topology: `bubble`, `triangle` or `four-eloop`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CqStatus cq_topology_builtin(const char *name, struct CqTopology **out);

/**
 * Releases a handle. Passing null is a no-op.
 *
 * # Safety
 * `topology` must come from this library and not be used afterwards.
 */
void cq_topology_free(struct CqTopology *topology);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `topology` must be null or a live handle.
 */
size_t cq_topology_edge_count(const struct CqTopology *topology);

/**
 * Whether `bits` (bit i = edge i, 1 = reference direction) is acyclic.
 *
 * # Safety
 * `topology` must be a live handle and `out` a writable pointer.
 */
enum CqStatus cq_is_acyclic(const struct CqTopology *topology, uint64_t bits, bool *out);

/**
 * Counts all acyclic orientations and the causal ones marked by the default
 * oracle (fixed edge applied).
 *
 * # Safety
 * `topology` must be a live handle; both outputs must be writable.
 */
enum CqStatus cq_count_causal(const struct CqTopology *topology,
                              uint64_t *acyclic_total,
                              uint64_t *causal_marked);

/**
 * Optimal Grover iteration count for `marked` solutions out of `size`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CqStatus cq_optimal_iterations(uint64_t size, uint64_t marked, uint64_t *out);

/**
 * OpenQASM 3.0 text of the query circuit. Negative `iterations` selects
 * the optimal count.
 *
 * # Safety
 * `topology` must be a live handle and `out` writable; free the result
 * with `cq_string_free`.
 */
enum CqStatus cq_export_qasm(const struct CqTopology *topology, int64_t iterations, char **out);

/**
 * Simulates and samples the query; writes the report as JSON. Negative
 * `iterations` selects the optimal count.
 *
 * # Safety
 * `topology` must be a live handle and `report_json` writable; free the
 * result with `cq_string_free`.
 */
enum CqStatus cq_run_query(const struct CqTopology *topology,
                           uint64_t shots,
                           uint64_t seed,
                           int64_t iterations,
                           bool single_precision,
                           char **report_json);

/**
 * Cross-checks the oracle against classical enumeration. Returns
 * `CQ_STATUS_VERIFICATION_FAILED` on mismatch; the report is written either
 * way when `report_json` is non-null.
 *
 * # Safety
 * `topology` must be a live handle; `report_json` may be null.
 */
enum CqStatus cq_verify(const struct CqTopology *topology, char **report_json);

/**
 * Frees a string returned by this library. Passing null is a no-op.
 *
 * # Safety
 * `text` must come from this library and not be used afterwards.
 */
void cq_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAUSALQ_H */
