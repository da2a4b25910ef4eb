/* kindbench C API: exact verification of the kind-ring property and finite
 * groupoid convolution algebras behind a flat, ABI-stable surface.
 *
 * Conventions:
 *   - every object is an opaque handle freed by its kb_*_free function;
 *   - functions returning kb_status set *out only on KB_OK and, when `err`
 *     is non-NULL, store a malloc'd message on failure (free with
 *     kb_string_free);
 *   - returned strings are malloc'd copies owned by the caller;
 *   - reports are deterministic byte for byte for identical inputs,
 *     including across thread counts.
 */
#ifndef KINDBENCH_H
#define KINDBENCH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kb_status {
    KB_OK = 0,
    KB_ERR_PARSE = 1,    /* malformed ring spec or literal */
    KB_ERR_USAGE = 2,    /* precondition violated (bad condition, non-witness input, ...) */
    KB_ERR_INPUT = 3,    /* unusable document (file contents, broken groupoid) */
    KB_ERR_BUDGET = 4,   /* candidate budget exceeded */
    KB_ERR_INTERNAL = 5  /* invariant breakage; always a bug */
} kb_status;

typedef struct kb_ring kb_ring;
typedef struct kb_groupoid kb_groupoid;
typedef struct kb_report kb_report;

typedef struct kb_bounds {
    int32_t max_len;    /* tuple length cap for conditions 1 and 2 */
    int32_t max_height; /* coefficient height cap */
    int32_t max_dim;    /* matrix dimension cap for condition 6 */
    int32_t max_degree; /* polynomial degree cap for transcendental extensions */
    uint64_t budget;    /* covered-candidate cap */
    int32_t threads;    /* worker threads; never changes any reported byte */
} kb_bounds;

const char* kb_version(void);
void kb_bounds_default(kb_bounds* out);
void kb_string_free(char* s);

/* Ring-spec grammar: Z | Q with suffixes [i], [sqrt D], [1/M], [t]. */
kb_status kb_ring_parse(const char* text, kb_ring** out, char** err);
void kb_ring_free(kb_ring* ring);
char* kb_ring_name(const kb_ring* ring);

/* Accepts the builtin name "Rn:k" or a JSON groupoid document; the handle is
 * validated (KB_ERR_INPUT lists the violations). `name` labels the groupoid
 * in reports (a file path, say); NULL falls back to a generic label. */
kb_status kb_groupoid_parse(const char* text, const char* name, kb_groupoid** out, char** err);
void kb_groupoid_free(kb_groupoid* g);

/* Bounded search for the given condition (1, 2 or 6) merged with the
 * closure-rule certifier: kind-certified / unkind-witness / inconclusive. */
kb_status kb_ring_check(const kb_ring* ring, int condition, const kb_bounds* bounds,
                        kb_report** out, char** err);

/* Parses and validates; violations land in the report, not in err. */
kb_status kb_groupoid_validate(const char* text, const char* name, kb_report** out, char** err);

/* Census of all projections with coefficient heights <= max_height. */
kb_status kb_algebra_projections(const kb_ring* ring, const kb_groupoid* g, int max_height,
                                 uint64_t budget, int32_t threads, kb_report** out, char** err);

/* matrix_json: row-major nested lists of ring-element strings. */
kb_status kb_matrix_probe(const kb_ring* ring, const char* matrix_json, kb_report** out,
                          char** err);

/* from_condition in {1, 2}; target one of "1", "2", "6", "projection";
 * witness_json an array of ring-element strings. */
kb_status kb_witness_convert(const kb_ring* ring, int from_condition, const char* target,
                             const char* witness_json, kb_report** out, char** err);

/* 1 when the report carries a verified witness or validator violations;
 * the CLI maps this to exit code 1. */
int kb_report_has_witness(const kb_report* report);
char* kb_report_json(const kb_report* report);
char* kb_report_text(const kb_report* report);
void kb_report_free(kb_report* report);

#ifdef __cplusplus
}
#endif

#endif /* KINDBENCH_H */
