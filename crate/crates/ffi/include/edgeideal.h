#ifndef EDGEIDEAL_H
#define EDGEIDEAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum EiStatus {
  EI_STATUS_OK = 0,
  EI_STATUS_NULL_ARGUMENT = 1,
  EI_STATUS_INVALID_UTF8 = 2,
  EI_STATUS_PARSE = 3,
  EI_STATUS_INVALID_PARAMETER = 4,
  /**
   * A variable cap was exceeded; raise the cap argument.
   */
  EI_STATUS_CAP_EXCEEDED = 5,
  /**
   * No closed form covers the parameters.
   */
  EI_STATUS_OUT_OF_STATED_RANGE = 6,
  /**
   * Any other library error.
   */
  EI_STATUS_FAILED = 7,
  /**
   * A panic was caught at the boundary.
   */
  EI_STATUS_PANIC = 8,
} EiStatus;

/**
 * Opaque graph handle.
 */
typedef struct EiGraph EiGraph;

/**
 * Opaque monomial ideal handle, with the variable names of its graph.
 */
typedef struct EiIdeal EiIdeal;

/**
 * Homological invariants of `S/I`.
 */
typedef struct EiInvariants {
  size_t reg;
  size_t pdim;
  size_t depth;
  size_t n_vars;
} EiInvariants;

/**
 * Predicted invariants; a field is meaningful only when its `has_` flag is set.
 */
typedef struct EiPrediction {
  bool has_depth;
  int64_t depth;
  bool has_sdepth;
  int64_t sdepth;
  bool has_reg;
  int64_t reg;
  bool has_pdim;
  int64_t pdim;
  int64_t n_vars;
} EiPrediction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library and valid until the next call on the same thread.
 */
const char *ei_last_error(void);

/**
 * Library version as a static string.
 */
const char *ei_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ei_string_free(char *s);

/**
 * Builds the graph of a family spec such as `brs(q=1,tsnake(n=2,p=1))`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` writable.
 */
enum EiStatus ei_graph_from_spec(const char *spec, struct EiGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from [`ei_graph_from_spec`] and not have been freed.
 */
void ei_graph_free(struct EiGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum EiStatus ei_graph_vertex_count(const struct EiGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum EiStatus ei_graph_edge_count(const struct EiGraph *g, size_t *out);

/**
 * DOT rendering of the graph; free with [`ei_string_free`].
 *
 * # Safety
 * `g` must be a live graph handle, `name` a nul-terminated string and `out`
 * writable.
 */
enum EiStatus ei_graph_to_dot(const struct EiGraph *g, const char *name, char **out);

/**
 * Edge ideal of a graph.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum EiStatus ei_edge_ideal(const struct EiGraph *g, struct EiIdeal **out);

/**
 * Releases an ideal. Null is ignored.
 *
 * # Safety
 * `i` must come from [`ei_edge_ideal`] and not have been freed.
 */
void ei_ideal_free(struct EiIdeal *i);

/**
 * Generators as text, one per line; free with [`ei_string_free`].
 *
 * # Safety
 * `i` must be a live ideal handle and `out` writable.
 */
enum EiStatus ei_ideal_to_text(const struct EiIdeal *i, char **out);

/**
 * `reg`, `pdim` and `depth` of `S/I` over GF(`characteristic`), refusing
 * supports larger than `max_vars`.
 *
 * # Safety
 * `i` must be a live ideal handle and `out` writable.
 */
enum EiStatus ei_ideal_invariants(const struct EiIdeal *i,
                                  uint32_t characteristic,
                                  size_t max_vars,
                                  struct EiInvariants *out);

/**
 * Graded Betti numbers as `i,j,beta` CSV; free with [`ei_string_free`].
 *
 * # Safety
 * `i` must be a live ideal handle and `out` writable.
 */
enum EiStatus ei_ideal_betti_csv(const struct EiIdeal *i,
                                 uint32_t characteristic,
                                 size_t max_vars,
                                 char **out);

/**
 * Exact Stanley depth of `S/I`, refusing more than `max_vars` effective
 * variables.
 *
 * # Safety
 * `i` must be a live ideal handle and `out` writable.
 */
enum EiStatus ei_ideal_sdepth(const struct EiIdeal *i, size_t max_vars, size_t *out);

/**
 * Closed-form prediction for a family spec.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` writable.
 */
enum EiStatus ei_closed_form(const char *spec, struct EiPrediction *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EDGEIDEAL_H */
