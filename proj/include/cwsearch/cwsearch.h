/*
 * cwsearch C API.
 *
 * Every function returning cw_status reports failures through the code and
 * leaves a message retrievable with cw_last_error() on the calling thread.
 * Strings handed out by the library are freed with cw_string_free.
 * Sequences are passed as (const int*, length) pairs.
 */
#ifndef CWSEARCH_CWSEARCH_H_
#define CWSEARCH_CWSEARCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CWSEARCH_BUILDING)
#    define CWS_API __declspec(dllexport)
#  else
#    define CWS_API __declspec(dllimport)
#  endif
#else
#  define CWS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cw_status {
    CW_OK = 0,
    CW_E_INVALID_ARGUMENT = 1,
    CW_E_NOT_SQUARE = 2,
    CW_E_MODULUS_MISMATCH = 3,
    CW_E_NOT_DIVISOR = 4,
    CW_E_OUT_OF_RANGE = 5,
    CW_E_PARSE = 6,
    CW_E_IO = 7,
    CW_E_INTERNAL = 8
} cw_status;

CWS_API const char* cw_version(void);
CWS_API const char* cw_status_name(cw_status status);
CWS_API const char* cw_last_error(void);
CWS_API void cw_string_free(char* s);

/* ---- sequences ---------------------------------------------------------- */

/* out receives n values. */
CWS_API cw_status cw_paf_vector(const int* seq, size_t n, long long* out);
CWS_API cw_status cw_is_paf_zero(const int* seq, size_t n, int* result);
CWS_API cw_status cw_psd(const int* seq, size_t n, size_t s, double* out);

/* Ternary input: weight == w and zero PAF, cross-checked against the
 * explicit circulant product W W^T. Other integer input: sum of squares == w
 * and zero PAF. CW_E_NOT_SQUARE if w is not a perfect square. */
CWS_API cw_status cw_verify_sequence(const int* seq, size_t n, int w, int* result);

/* ---- affine group ------------------------------------------------------- */

typedef struct cw_affine {
    int u;
    int v;
    int k;
} cw_affine;

/* out[sigma(i)] = seq[i]; n must equal sigma.k. */
CWS_API cw_status cw_affine_apply(cw_affine sigma, const int* seq, size_t n, int* out);
CWS_API cw_status cw_affine_lift(cw_affine sigma, int n, cw_affine* out);

/* Lexicographic minimum of the orbit under the full affine group of Z_n,
 * colors ordered 0 < 1 < -1 < ... < m < -m with m = max |seq[i]|. */
CWS_API cw_status cw_orbit_canonical(const int* seq, size_t n, int* out);

/* ---- compression -------------------------------------------------------- */

/* out receives d values. */
CWS_API cw_status cw_compress(const int* seq, size_t n, size_t d, int* out);

/* Decimal string of the fiber size. */
CWS_API cw_status cw_fiber_size(const int* b, size_t d, int m, char** decimal_out);

/* ---- contents ----------------------------------------------------------- */

typedef struct cw_content_list cw_content_list;

CWS_API cw_status cw_contents_solve(int d, int w, int a, int m, cw_content_list** out);
CWS_API size_t cw_content_list_size(const cw_content_list* list);
/* Number of entries per content, 2m + 1. */
CWS_API size_t cw_content_list_width(const cw_content_list* list);
CWS_API cw_status cw_content_list_get(const cw_content_list* list, size_t index, int* mu_out);
CWS_API void cw_content_list_free(cw_content_list* list);

/* ---- bracelets ---------------------------------------------------------- */

/* Return nonzero to stop the enumeration. */
typedef int (*cw_bracelet_callback)(const int* seq, size_t d, int paf_zero, void* user);

/* Streams the orbit representatives of content mu (length 2m + 1) in
 * lexicographic order. */
CWS_API cw_status cw_bracelets(const int* mu, size_t mu_len, int paf_zero_only, cw_bracelet_callback callback,
                               void* user);

/* ---- lift search -------------------------------------------------------- */

typedef struct cw_plan cw_plan;

CWS_API cw_status cw_plan_create(const int* b, size_t d, int m, uint64_t shard_hint, cw_plan** out);
CWS_API uint64_t cw_plan_shard_count(const cw_plan* plan);
CWS_API cw_status cw_plan_to_json(const cw_plan* plan, char** json_out);
CWS_API void cw_plan_free(cw_plan* plan);

typedef enum cw_search_status {
    CW_SEARCH_EXHAUSTED = 0,
    CW_SEARCH_WITNESS_FOUND = 1,
    CW_SEARCH_ABORTED = 2
} cw_search_status;

typedef struct cw_search_options {
    int use_filter;
    uint64_t max_checked;        /* 0 = unlimited */
    double max_seconds;          /* 0 = unlimited */
    const char* checkpoint_path; /* NULL = no checkpoint ledger */
    uint64_t checkpoint_every;
} cw_search_options;

CWS_API void cw_search_options_init(cw_search_options* options);

typedef struct cw_search_result cw_search_result;

/* n is the length of the ternary sequences, m * d. */
CWS_API cw_status cw_search_shard(const cw_plan* plan, uint64_t shard_index, int n, const cw_search_options* options,
                                  cw_search_result** out);
CWS_API cw_search_status cw_search_result_status(const cw_search_result* result);
CWS_API uint64_t cw_search_result_checked(const cw_search_result* result);
/* Copies the witness into out (capacity cap); returns its length, 0 if none. */
CWS_API size_t cw_search_result_witness(const cw_search_result* result, int* out, size_t cap);
/* Ledger record without timing fields. */
CWS_API cw_status cw_search_result_to_json(const cw_search_result* result, char** json_out);
CWS_API void cw_search_result_free(cw_search_result* result);

/* Asks running searches and pipelines to stop at their next poll. */
CWS_API void cw_request_stop(void);
CWS_API void cw_clear_stop(void);

/* ---- pipeline ----------------------------------------------------------- */

typedef enum cw_verdict {
    CW_VERDICT_EXISTS = 0,
    CW_VERDICT_NOT_EXISTS = 1,
    CW_VERDICT_INCONCLUSIVE = 2
} cw_verdict;

typedef struct cw_pipeline_config {
    uint64_t shards;
    unsigned workers;
    uint64_t max_lifts_per_shard; /* 0 = unlimited */
    double max_seconds;           /* 0 = unlimited */
    int use_filter;
    const char* checkpoint_dir;   /* NULL = none */
} cw_pipeline_config;

CWS_API void cw_pipeline_config_init(cw_pipeline_config* config);

CWS_API cw_status cw_pipeline_run(int n, int w, int m, const cw_pipeline_config* config, cw_verdict* verdict,
                                  char** manifest_json);

/* *ok = 1 if the manifest re-verifies; otherwise *reason names the first
 * failing condition (free with cw_string_free). */
CWS_API cw_status cw_ledger_verify(const char* manifest_json, int regenerate_bracelets, int* ok, char** reason);

#ifdef __cplusplus
}
#endif

#endif /* CWSEARCH_CWSEARCH_H_ */
