#ifndef QSUB_QSUB_H
#define QSUB_QSUB_H

#include <stddef.h>

#if defined(QSUB_BUILDING_LIBRARY)
#define QSUB_API __attribute__((visibility("default")))
#else
#define QSUB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qsub_filter qsub_filter;
typedef struct qsub_scheme qsub_scheme;
typedef struct qsub_grid qsub_grid;

typedef enum qsub_status {
  QSUB_OK = 0,
  QSUB_ERR_INVALID_ARGUMENT,
  QSUB_ERR_INVALID_DIMENSION,
  QSUB_ERR_INCOMPATIBLE_OPERANDS,
  QSUB_ERR_INVALID_COSET,
  QSUB_ERR_INVALID_COSET_FAMILY,
  QSUB_ERR_INVALID_DIRECTION,
  QSUB_ERR_NOT_DIVISIBLE,
  QSUB_ERR_INVALID_DILATION,
  QSUB_ERR_LEVEL_TOO_LARGE,
  QSUB_ERR_HYPOTHESIS_VIOLATED,
  QSUB_ERR_INSUFFICIENT_SUM_RULES,
  QSUB_ERR_INVALID_PARAMETERS,
  QSUB_ERR_PARSE,
  QSUB_ERR_IO,
  QSUB_ERR_UNSUPPORTED,
  QSUB_ERR_UNSUPPORTED_DIMENSION,
  QSUB_ERR_NUMERICAL_FAILURE,
  QSUB_ERR_NO_CONVERGENCE,
  QSUB_ERR_INTERNAL
} qsub_status;

typedef enum qsub_backend { QSUB_RATIONAL = 0, QSUB_FLOAT = 1 } qsub_backend;
typedef enum qsub_normalize { QSUB_NORMALIZE_MINMAX = 0, QSUB_NORMALIZE_SYMMETRIC = 1 } qsub_normalize;

/* Message of the last failed call on this thread; never NULL. */
QSUB_API const char* qsub_last_error_message(void);
QSUB_API const char* qsub_status_name(qsub_status s);
/* 1 when the status reports a numerical failure rather than bad input. */
QSUB_API int qsub_status_is_numerical(qsub_status s);

/* Strings and buffers returned by the library. */
QSUB_API void qsub_string_free(char* s);
QSUB_API void qsub_buffer_free(unsigned char* b);

/* Filters */
QSUB_API qsub_status qsub_filter_parse(const char* text, qsub_filter** out);
QSUB_API qsub_status qsub_filter_load(const char* path, qsub_filter** out);
QSUB_API qsub_status qsub_filter_save(const qsub_filter* f, const char* path);
QSUB_API qsub_status qsub_filter_format(const qsub_filter* f, char** out);
QSUB_API qsub_status qsub_filter_delta(int dim, qsub_backend backend, qsub_filter** out);
QSUB_API qsub_status qsub_filter_clone(const qsub_filter* f, qsub_filter** out);
QSUB_API void qsub_filter_free(qsub_filter* f);
QSUB_API qsub_status qsub_filter_dim(const qsub_filter* f, int* out);
QSUB_API qsub_status qsub_filter_backend(const qsub_filter* f, qsub_backend* out);
QSUB_API qsub_status qsub_filter_value(const qsub_filter* f, const int* k, double* out);
QSUB_API qsub_status qsub_filter_convolve(const qsub_filter* u, const qsub_filter* v, qsub_filter** out);
QSUB_API qsub_status qsub_filter_upsample(const qsub_filter* u, int M, qsub_filter** out);
QSUB_API qsub_status qsub_filter_to_float(const qsub_filter* u, qsub_filter** out);
QSUB_API qsub_status qsub_filter_fourier_eval(const qsub_filter* u, const double* xi, double* re, double* im);
/* max_sr < 0 selects the default cap. */
QSUB_API qsub_status qsub_filter_sum_rules(const qsub_filter* a, int M, int max_sr, int* out);
QSUB_API qsub_status qsub_filter_is_interpolatory(const qsub_filter* a, int M, int* out);
QSUB_API qsub_status qsub_filter_sm2(const qsub_filter* a, int M, double* out);

/* Control nets: CSV with header k1,...,kd,value */
QSUB_API qsub_status qsub_control_net_parse(const char* text, qsub_backend backend, qsub_filter** out);
QSUB_API qsub_status qsub_control_net_format(const qsub_filter* v, char** out);

/* Schemes. Masks are copied; all must share dimension and backend and sum to 1. */
QSUB_API qsub_status qsub_scheme_create(const qsub_filter* const* masks, size_t count, int M, qsub_scheme** out);
QSUB_API void qsub_scheme_free(qsub_scheme* s);
QSUB_API qsub_status qsub_scheme_period(const qsub_scheme* s, int* out);
QSUB_API qsub_status qsub_scheme_dilation(const qsub_scheme* s, int* out);
QSUB_API qsub_status qsub_scheme_mask(const qsub_scheme* s, int index, qsub_filter** out);
QSUB_API qsub_status qsub_scheme_subdivide(const qsub_scheme* s, int levels, const qsub_filter* v, qsub_filter** out);
QSUB_API qsub_status qsub_scheme_combined_mask(const qsub_scheme* s, qsub_filter** out);

/* Reports as JSON text. */
/* symmetry may be NULL (detect); center is "h1,...,hd" or NULL for the origin. */
QSUB_API qsub_status qsub_analyze_json(const qsub_filter* a, int M, int max_sr, const char* symmetry,
                                       const char* center, char** out);
QSUB_API qsub_status qsub_certify_json(const qsub_scheme* s, int order, int level, char** out);
QSUB_API qsub_status qsub_convergence_json(const qsub_scheme* s, int order, int reference_level, char** out);

/* Newline separated ids. */
QSUB_API qsub_status qsub_family_ids(char** out);
QSUB_API qsub_status qsub_example_ids(char** out);

/* Solves a family for interpolation. Exactly one of family_id / family_text is non-NULL. fixes are
   "name=expr" strings, starts "name=value". On success the scheme holds the solved masks (float
   unless every parameter is fixed to a rational constant). */
QSUB_API qsub_status qsub_construct(const char* family_id, const char* family_text, const char* const* fixes,
                                    size_t nfix, const char* const* starts, size_t nstart, char** json_out,
                                    qsub_scheme** scheme_out);
QSUB_API qsub_status qsub_verify_example(const char* id, char** json_out, qsub_scheme** scheme_out);

/* Polynomial with coefficients high degree first; roots arrays hold degree entries. */
QSUB_API qsub_status qsub_polynomial_roots(const double* coeffs, size_t count, double* re, double* im);
QSUB_API qsub_status qsub_polynomial_root_near(const double* coeffs, size_t count, double guess, double* out);

/* Cascade grids. v may be NULL for delta; mu has dim entries. */
QSUB_API qsub_status qsub_cascade(const qsub_scheme* s, int level, const int* mu, const qsub_filter* v, qsub_grid** out);
QSUB_API void qsub_grid_free(qsub_grid* g);
QSUB_API qsub_status qsub_grid_dim(const qsub_grid* g, int* out);
QSUB_API qsub_status qsub_grid_level(const qsub_grid* g, int* out);
QSUB_API qsub_status qsub_grid_size(const qsub_grid* g, size_t* out);
/* lo and hi receive dim entries; both are left untouched for an empty grid (size 0). */
QSUB_API qsub_status qsub_grid_box(const qsub_grid* g, int* lo, int* hi);
QSUB_API qsub_status qsub_grid_value(const qsub_grid* g, const int* k, double* out);
QSUB_API qsub_status qsub_grid_csv(const qsub_grid* g, char** out);
QSUB_API qsub_status qsub_grid_parse_csv(const char* text, int level, int M, qsub_grid** out);
QSUB_API qsub_status qsub_grid_pgm(const qsub_grid* g, qsub_normalize mode, unsigned char** data, size_t* len);
QSUB_API qsub_status qsub_write_file(const char* path, const unsigned char* data, size_t len);

#ifdef __cplusplus
}
#endif

#endif
