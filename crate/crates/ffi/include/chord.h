#ifndef CHORD_H
#define CHORD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum {
  CHORD_STATUS_OK = 0,
  CHORD_STATUS_NULL_POINTER = 1,
  CHORD_STATUS_INVALID_UTF8 = 2,
  CHORD_STATUS_PARSE = 3,
  CHORD_STATUS_PRECONDITION = 4,
  CHORD_STATUS_INTERNAL = 5,
  CHORD_STATUS_PANIC = 6,
} ChordStatus;

// Opaque metric graph.
typedef struct ChordGraph ChordGraph;

// Opaque step function bound to the graph it was built for.
typedef struct ChordStepFunction ChordStepFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *chord_last_error(void);

// Library version as a static string.
const char *chord_version(void);

// Releases a string returned through an `out_json` parameter.
//
// # Safety
// `s` must be null or a string produced by this library and not yet freed.
void chord_string_free(char *s);

// Parses a graph from `{"vertices": [...], "edges": [{"id", "ends"}]}`.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
ChordStatus chord_graph_from_json(const char *json, ChordGraph **out);

// # Safety
// `g` must be null or a handle from `chord_graph_from_json` not yet freed.
void chord_graph_free(ChordGraph *g);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
size_t chord_graph_edge_count(const ChordGraph *g);

// Parses `{"edge": [{"from", "to", "value"}, ...]}` against `graph`.
//
// # Safety
// `graph` must be a live handle, `json` nul-terminated, `out` writable.
ChordStatus chord_step_from_json(const ChordGraph *graph,
                                 const char *json,
                                 ChordStepFunction **out);

// # Safety
// `f` must be null or a handle from `chord_step_from_json` not yet freed.
void chord_step_free(ChordStepFunction *f);

// Double cover as a JSON list of paths such as `"a -b c"`.
//
// # Safety
// `graph` must be a live handle; `out_json` writable.
ChordStatus chord_double_cover(const ChordGraph *graph, char **out_json);

// Connected subset of measure `r` (a `"p/q"` string) on which `f`
// integrates to zero. `euler` selects the Euler-circuit solver.
//
// # Safety
// Handles must be live and built for the same graph; `r` nul-terminated;
// `out_json` writable.
ChordStatus chord_solve(const ChordGraph *graph,
                        const ChordStepFunction *f,
                        const char *r,
                        bool euler,
                        char **out_json);

// Verifies a partition certificate `{"subsets": [...], "r", "n"}`.
//
// # Safety
// `graph` must be live, `cert_json` nul-terminated, `out_valid` writable.
ChordStatus chord_partition_verify(const ChordGraph *graph, const char *cert_json, bool *out_valid);

// Common chord of two densities on `[0, 1]` given as piece lists.
//
// # Safety
// All strings nul-terminated; `out_json` writable.
ChordStatus chord_interval_chord(const char *f_json,
                                 const char *g_json,
                                 const char *r,
                                 char **out_json);

// Two-cut fair split of a `B`/`W` necklace.
//
// # Safety
// `pearls` nul-terminated; `out_json` writable.
ChordStatus chord_necklace(const char *pearls, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHORD_H */
