#ifndef PLSPLIT_PLSPLIT_H
#define PLSPLIT_PLSPLIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define PLSPLIT_API __attribute__((visibility("default")))
#else
#define PLSPLIT_API
#endif

/* Status codes. Values match the library's internal error codes. */
typedef enum plsplit_status {
  PLSPLIT_OK = 0,
  PLSPLIT_E_PARSE = 1,
  PLSPLIT_E_INVALID_ARGUMENT,
  PLSPLIT_E_INVALID_GLUING,
  PLSPLIT_E_NOT_COVERED,
  PLSPLIT_E_DISCONNECTED,
  PLSPLIT_E_GENERATOR_EXHAUSTED,
  PLSPLIT_E_BOUND_VIOLATED,
  PLSPLIT_E_SAME_SIDE,
  PLSPLIT_E_NOT_NORMAL,
  PLSPLIT_E_QUAD_CONFLICT,
  PLSPLIT_E_WINDOW_TOO_LARGE,
  PLSPLIT_E_NOT_GENERAL_POSITION,
  PLSPLIT_E_NOT_TRANSVERSE,
  PLSPLIT_E_NO_ESSENTIAL_INTERSECTIONS,
  PLSPLIT_E_NON_PARALLEL_CIRCLES,
  PLSPLIT_E_NOT_MONOTONE,
  PLSPLIT_E_UNSTABLE,
  PLSPLIT_E_BUDGET_EXCEEDED,
  PLSPLIT_E_ONE_SIDED,
  PLSPLIT_E_OVERLAP_UNRESOLVED,
  PLSPLIT_E_SEED_DEGENERATE,
  PLSPLIT_E_UNKNOWN_EXAMPLE,
  PLSPLIT_E_IO,
  PLSPLIT_E_INTERNAL = 99
} plsplit_status;

/* A finite complex of glued tetrahedra. */
typedef struct plsplit_complex plsplit_complex;
/* A periodic generator of an infinite complex. */
typedef struct plsplit_generator plsplit_generator;
/* Named normal surfaces in `.nsc` form. */
typedef struct plsplit_surfaces plsplit_surfaces;

/* Hypothesis constants; negative values are rejected. */
typedef struct plsplit_constants {
  long c1, c2, c3, c4;
} plsplit_constants;

PLSPLIT_API const char* plsplit_version(void);
PLSPLIT_API const char* plsplit_status_name(plsplit_status status);
/* Nonzero for WINDOW_TOO_LARGE and BUDGET_EXCEEDED. */
PLSPLIT_API int plsplit_is_budget_error(plsplit_status status);
/* Message of the last failure on the calling thread. */
PLSPLIT_API const char* plsplit_last_error(void);
/* Releases any string returned through a char** out parameter. */
PLSPLIT_API void plsplit_free_string(char* s);
/* Lowercase hex SHA-256 of a byte buffer; `out` holds 65 bytes. */
PLSPLIT_API plsplit_status plsplit_sha256_hex(const void* data, size_t len, char* out);

/* Complexes (`.tri` text). */
PLSPLIT_API plsplit_status plsplit_complex_parse(const char* text, plsplit_complex** out);
PLSPLIT_API void plsplit_complex_free(plsplit_complex* cx);
PLSPLIT_API int plsplit_complex_size(const plsplit_complex* cx);
PLSPLIT_API plsplit_status plsplit_complex_emit(const plsplit_complex* cx, char** text);
/* Cell counts, vertex degrees, orientability and Betti numbers as JSON. */
PLSPLIT_API plsplit_status plsplit_complex_audit(const plsplit_complex* cx, char** json);

/* Generators (`.gen` text). */
PLSPLIT_API plsplit_status plsplit_generator_parse(const char* text, plsplit_generator** out);
PLSPLIT_API void plsplit_generator_free(plsplit_generator* gen);
PLSPLIT_API plsplit_status plsplit_generator_emit(const plsplit_generator* gen, char** text);
/* Tets within distance radius + 1 of local tet `local` in block `block`. */
PLSPLIT_API plsplit_status plsplit_generator_window(plsplit_generator* gen, long block, int local, int radius,
                                                    plsplit_complex** out);
/* Blocks lo..hi glued together. */
PLSPLIT_API plsplit_status plsplit_generator_blocks(const plsplit_generator* gen, long lo, long hi,
                                                    plsplit_complex** out);

/* Surfaces (`.nsc` text). */
PLSPLIT_API plsplit_status plsplit_surfaces_parse(const char* text, plsplit_surfaces** out);
PLSPLIT_API void plsplit_surfaces_free(plsplit_surfaces* s);
PLSPLIT_API int plsplit_surfaces_count(const plsplit_surfaces* s);
PLSPLIT_API const char* plsplit_surfaces_name(const plsplit_surfaces* s, int index);
/* Index of the named surface, or -1. */
PLSPLIT_API int plsplit_surfaces_find(const plsplit_surfaces* s, const char* name);
PLSPLIT_API plsplit_status plsplit_surfaces_emit(const plsplit_surfaces* s, char** text);

/* Operations. Each writes a JSON report to `json`. */

/* Embedded surfaces of weight at most `max_weight` (closed ones only when
   `closed` is nonzero); `found` (may be NULL) receives them as s0, s1, ... */
PLSPLIT_API plsplit_status plsplit_enumerate(const plsplit_complex* cx, long max_weight, int closed, long budget,
                                             char** json, plsplit_surfaces** found);
/* Components, Euler characteristic, kind and PL area of one surface. */
PLSPLIT_API plsplit_status plsplit_analyze(const plsplit_complex* cx, const plsplit_surfaces* s, int index,
                                           char** json);
/* Length minimization over crossing positions in the regular metric. */
PLSPLIT_API plsplit_status plsplit_minimize(const plsplit_complex* cx, const plsplit_surfaces* s, int index,
                                            char** json);
PLSPLIT_API plsplit_status plsplit_intersect(const plsplit_complex* cx, const plsplit_surfaces* s, int a, int b,
                                             char** json);
/* Special class of surface `torus` from its patterns with each partner, and
   the fibered neighbourhood of each pair when it exists. */
PLSPLIT_API plsplit_status plsplit_special(const plsplit_complex* cx, const plsplit_surfaces* s, int torus,
                                           const int* partners, int count, char** json);
PLSPLIT_API plsplit_status plsplit_cut(const plsplit_complex* cx, const plsplit_surfaces* s, int index,
                                       char** json);
/* Torus census of weight at most `census_weight` and one hypothesis check;
   `hypothesis` is one of "A", "B", "C", "D". */
PLSPLIT_API plsplit_status plsplit_check(const plsplit_complex* cx, const char* hypothesis,
                                         const plsplit_constants* consts, long census_weight, long budget,
                                         char** json);
/* Splitting validation: every surface of `s` is a member; member labels
   and piece labels are comma-separated names. */
PLSPLIT_API plsplit_status plsplit_validate(const plsplit_complex* cx, const plsplit_surfaces* s,
                                            const char* member_labels, const char* piece_labels,
                                            long census_weight, long budget, char** json);
/* Limit of the surfaces of `s`, read as a sequence, over blocks lo..hi, and
   the end classification of the limit about local tet 0 of block 0. */
PLSPLIT_API plsplit_status plsplit_limit(plsplit_generator* gen, const plsplit_surfaces* s, long lo, long hi,
                                         int radius, long disk_slack_bound, long max_tets, char** json);

/* Example generation. Texts that do not apply come back as NULL. */
PLSPLIT_API plsplit_status plsplit_generate_example(const char* name, int param, char** tri_text,
                                                    char** gen_text, char** nsc_text, char** meta_json);
/* Default parameter of a named example. */
PLSPLIT_API plsplit_status plsplit_example_default_param(const char* name, int* param);

#ifdef __cplusplus
}
#endif

#endif
