#ifndef TENSOR_DUALITY_H
#define TENSOR_DUALITY_H

/* Generated by cbindgen from the tensor-duality-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum TdStatus {
  TD_STATUS_OK = 0,
  TD_STATUS_NULL_POINTER = 1,
  TD_STATUS_INVALID_UTF8 = 2,
  TD_STATUS_PARSE = 3,
  TD_STATUS_INVALID_INPUT = 4,
  TD_STATUS_CAP_EXCEEDED = 5,
  TD_STATUS_DEGENERATE = 6,
  TD_STATUS_PANIC = 7,
} TdStatus;

/**
 * A Gaussian expectation value, exact in `N`.
 */
typedef struct TdAmplitude TdAmplitude;

/**
 * A stranded graph: the contraction pattern of an invariant.
 */
typedef struct TdGraph TdGraph;

/**
 * A propagator: a weighted sum of pairings of two tensors' indices.
 */
typedef struct TdPropagator TdPropagator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *td_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *td_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned through a `char **` output of this
 * library, not yet freed.
 */
void td_string_free(char *s);

/**
 * Parses a stranded graph from JSON such as
 * `{"D":2,"vertices":2,"strands":[[[1,1],[2,1]],[[1,2],[2,2]]]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TdStatus td_graph_from_json(const char *json, struct TdGraph **out);

/**
 * Number of strands per tensor, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
uintptr_t td_graph_strands(const struct TdGraph *graph);

/**
 * Number of tensors, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
uintptr_t td_graph_vertices(const struct TdGraph *graph);

/**
 * # Safety
 * `graph` must be null or a handle from [`td_graph_from_json`], not yet freed.
 */
void td_graph_free(struct TdGraph *graph);

/**
 * Parses a propagator on `d` strands from JSON: either explicit
 * `{"terms":[{"pairs":[[1,3],[2,4]],"gamma":"1"}]}` or a named projector
 * `{"projector":{"lambda":[2]}}`. The grading bit `b` only matters for
 * projectors built at a concrete `N`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TdStatus td_propagator_from_json(const char *json,
                                      uintptr_t d,
                                      uint8_t b,
                                      struct TdPropagator **out);

/**
 * # Safety
 * `propagator` must be null or a handle from [`td_propagator_from_json`],
 * not yet freed.
 */
void td_propagator_free(struct TdPropagator *propagator);

/**
 * Gaussian expectation of the invariant `graph` with propagator
 * `propagator` at grading `b`, using `threads` workers (0 means 1).
 *
 * # Safety
 * Handles must be live; `out` must be a valid pointer.
 */
enum TdStatus td_gaussian_expectation(const struct TdGraph *graph,
                                      const struct TdPropagator *propagator,
                                      uint8_t b,
                                      uintptr_t threads,
                                      struct TdAmplitude **out);

/**
 * Text form of an amplitude, e.g. `N^2 + N`.
 *
 * # Safety
 * `amplitude` must be live; `out` must be a valid pointer.
 */
enum TdStatus td_amplitude_to_string(const struct TdAmplitude *amplitude, char **out);

/**
 * JSON form of an amplitude: grading bit, coefficient map and text.
 *
 * # Safety
 * `amplitude` must be live; `out` must be a valid pointer.
 */
enum TdStatus td_amplitude_to_json(const struct TdAmplitude *amplitude, char **out);

/**
 * Value of an amplitude at a concrete `N`, as a `"p/q"` string.
 *
 * # Safety
 * `amplitude` must be live; `out` must be a valid pointer.
 */
enum TdStatus td_amplitude_eval(const struct TdAmplitude *amplitude, int64_t n, char **out);

/**
 * # Safety
 * `amplitude` must be null or a handle from [`td_gaussian_expectation`],
 * not yet freed.
 */
void td_amplitude_free(struct TdAmplitude *amplitude);

/**
 * Writes whether the `b = 1` expectation equals the `b = 0` one at `-N`.
 *
 * # Safety
 * Handles must be live; `holds` must be a valid pointer.
 */
enum TdStatus td_duality_check(const struct TdGraph *graph,
                               const struct TdPropagator *propagator,
                               uintptr_t threads,
                               bool *holds);

/**
 * Compares the face-counting expectation at `n` with brute-force index
 * summation and writes whether they agree.
 *
 * # Safety
 * Handles must be live; `agrees` must be a valid pointer.
 */
enum TdStatus td_oracle_check(const struct TdGraph *graph,
                              const struct TdPropagator *propagator,
                              uintptr_t n,
                              uint8_t b,
                              bool *agrees);

/**
 * Factored `GL(N)` dimension of the Young diagram with comma-separated
 * rows `lambda`, e.g. `"2,1,1"`.
 *
 * # Safety
 * `lambda` must be a nul-terminated string and `out` a valid pointer.
 */
enum TdStatus td_dimension(const char *lambda, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TENSOR_DUALITY_H */
