#ifndef GRAPHSTATE_H
#define GRAPHSTATE_H

#include <stddef.h>

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_POINTER = 1,
  GS_STATUS_INVALID_UTF8 = 2,
  GS_STATUS_PARSE = 3,
  GS_STATUS_PRECONDITION = 4,
  GS_STATUS_DIMENSION_MISMATCH = 5,
  GS_STATUS_BUFFER_TOO_SMALL = 6,
  GS_STATUS_NUMERICAL = 7,
  GS_STATUS_PANIC = 8,
} GsStatus;

typedef enum GsSeparability {
  GS_SEPARABILITY_SEPARABLE = 0,
  GS_SEPARABILITY_ENTANGLED_NPT = 1,
  GS_SEPARABILITY_PPT_INCONCLUSIVE = 2,
} GsSeparability;

/**
 * Opaque graph handle.
 */
typedef struct GsGraph GsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the edge-list text format (`n N` then `e U V` lines, 1-based).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GsStatus gs_graph_parse(const char *text_ptr, struct GsGraph **out);

/**
 * Builds a graph on `n` vertices from `m` pairs of 0-based vertices
 * stored consecutively in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * m` values and `out` must be valid.
 */
enum GsStatus gs_graph_from_edges(size_t n, const size_t *edges, size_t m, struct GsGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice. Null is a no-op.
 */
void gs_graph_free(struct GsGraph *g);

/**
 * Number of vertices, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gs_graph_vertex_count(const struct GsGraph *g);

/**
 * Number of edges, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gs_graph_edge_count(const struct GsGraph *g);

/**
 * Writes `σ(G)` row-major into `out`, which holds `len` doubles. Fails
 * with `BufferTooSmall` when `len < n * n`.
 *
 * # Safety
 * `out` must point to `len` writable doubles.
 */
enum GsStatus gs_density_matrix(const struct GsGraph *g, double *out, size_t len);

/**
 * Von Neumann entropy of `σ(G)` in bits.
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum GsStatus gs_von_neumann_entropy(const struct GsGraph *g, double *out);

/**
 * Partial-transpose test in `C^p ⊗ C^q`. `labeling` is null for the
 * default placement or a `v:s:t,...` string.
 *
 * # Safety
 * Pointers must be valid; `labeling` may be null.
 */
enum GsStatus gs_ppt_test(const struct GsGraph *g,
                          size_t p,
                          size_t q,
                          const char *labeling_spec,
                          double tol,
                          enum GsSeparability *status_out,
                          double *min_eigenvalue_out);

/**
 * Concurrence of a four-vertex graph state under a 2⊗2 labeling.
 *
 * # Safety
 * Pointers must be valid; `labeling` may be null.
 */
enum GsStatus gs_concurrence(const struct GsGraph *g, const char *labeling_spec, double *out);

/**
 * Full analysis as a JSON string. Pass `p = q = 0` to skip the
 * separability section. Release the result with `gs_string_free`.
 *
 * # Safety
 * Pointers must be valid; `labeling` may be null.
 */
enum GsStatus gs_analyze_json(const struct GsGraph *g,
                              size_t p,
                              size_t q,
                              const char *labeling_spec,
                              double tol,
                              char **out);

/**
 * # Safety
 * `s` must come from this library. Null is a no-op.
 */
void gs_string_free(char *s);

/**
 * Message for the last failed call on this thread, empty after a
 * successful one. Valid until the next call into the library.
 */
const char *gs_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHSTATE_H */
