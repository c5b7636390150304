/*
 * muhankel C interface.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an mh_status; on
 * failure mh_last_error() describes the problem for the calling thread.
 * Strings returned through char** are allocated by the library and released
 * with mh_string_free(). Complex vectors and matrices are passed as
 * interleaved (re, im) doubles; matrices are row-major.
 */
#ifndef MUHANKEL_H
#define MUHANKEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MUHANKEL_BUILDING)
#    define MH_API __declspec(dllexport)
#  else
#    define MH_API __declspec(dllimport)
#  endif
#else
#  define MH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the CLI exit codes. */
typedef enum mh_status {
  MH_OK = 0,
  MH_ERR_INTERNAL = 1,
  MH_ERR_VALIDATION = 2,
  MH_ERR_NUMERICAL = 3,
  MH_ERR_INAPPLICABLE = 4,
  MH_ERR_ATTRIBUTION = 5,
  MH_ERR_LOOKUP = 6,
  MH_ERR_RESOURCE = 7,
  MH_ERR_IO = 8
} mh_status;

typedef enum mh_penalty {
  MH_PENALTY_UNWEIGHTED = 0, /* alpha * ||a||^2 */
  MH_PENALTY_WEIGHTED = 1    /* alpha * ||mu a nu||^2 */
} mh_penalty;

typedef struct mh_catalog mh_catalog;
typedef struct mh_weight mh_weight;
typedef struct mh_symbol mh_symbol;
typedef struct mh_operator mh_operator;
typedef struct mh_spectral_data mh_spectral_data;

MH_API const char* mh_version(void);
MH_API const char* mh_last_error(void);
MH_API void mh_string_free(char* s);

/* ---- truncated duals ---------------------------------------------------- */

/* group: "su2", "su2:int", "torus:d" or "product(g1,g2,...)". */
MH_API mh_status mh_catalog_enumerate(const char* group, double cutoff, mh_catalog** out);
/* Keeps the labels whose index entries are all nonnegative (Hardy-type half). */
MH_API mh_status mh_catalog_nonnegative(const mh_catalog* catalog, mh_catalog** out);
MH_API mh_status mh_catalog_from_json(const char* json, mh_catalog** out);
MH_API mh_status mh_catalog_to_json(const mh_catalog* catalog, char** out);
MH_API size_t mh_catalog_size(const mh_catalog* catalog);
MH_API size_t mh_catalog_dense_dim(const mh_catalog* catalog);
MH_API mh_status mh_catalog_label(const mh_catalog* catalog, size_t pos, int* dim, double* casimir);
MH_API void mh_catalog_free(mh_catalog* catalog);

/* ---- weights ------------------------------------------------------------ */

MH_API mh_status mh_weight_power_law(double exponent, mh_weight** out);
MH_API mh_status mh_weight_from_json(const char* json, mh_weight** out);
MH_API mh_status mh_weight_eval(const mh_weight* weight, const mh_catalog* catalog, size_t pos, double* out);
MH_API void mh_weight_free(mh_weight* weight);

/* ---- symbols ------------------------------------------------------------ */

MH_API mh_status mh_symbol_from_json(const char* json, mh_symbol** out);
MH_API mh_status mh_symbol_to_json(const mh_symbol* symbol, char** out);
MH_API mh_status mh_symbol_random(const mh_catalog* codomain, const mh_catalog* domain, double density, uint64_t seed,
                                  mh_symbol** out);
MH_API mh_status mh_symbol_random_matching(const mh_catalog* codomain, const mh_catalog* domain, double fill,
                                           uint64_t seed, mh_symbol** out);
/* a(pi,pi) = (1+l)^{-decay} I on one catalog. */
MH_API mh_status mh_symbol_diagonal(const mh_catalog* catalog, double decay, mh_symbol** out);
/* a(n,m) = coeff[n+m] on one-dimensional torus catalogs. */
MH_API mh_status mh_symbol_hankel(const int64_t* keys, const double* re, const double* im, size_t count,
                                  const mh_catalog* codomain, const mh_catalog* domain, mh_symbol** out);
MH_API mh_status mh_symbol_class_norm(const mh_symbol* symbol, double m, double n, const mh_weight* mu,
                                      const mh_weight* nu, double* out);
MH_API mh_status mh_symbol_max_difference(const mh_symbol* a, const mh_symbol* b, double* out);
MH_API size_t mh_symbol_block_count(const mh_symbol* symbol);
MH_API void mh_symbol_free(mh_symbol* symbol);

/* ---- operators ---------------------------------------------------------- */

MH_API mh_status mh_operator_assemble(const mh_symbol* symbol, const mh_weight* mu, const mh_weight* nu,
                                      mh_operator** out);
MH_API mh_status mh_operator_adjoint(const mh_operator* op, mh_operator** out);
MH_API void mh_operator_shape(const mh_operator* op, size_t* rows, size_t* cols);
/* in: 2*cols doubles, out: 2*rows doubles. */
MH_API mh_status mh_operator_apply(const mh_operator* op, const double* in, size_t in_len, double* out, size_t out_len);
/* out: 2*rows*cols doubles. */
MH_API mh_status mh_operator_to_dense(const mh_operator* op, double* out, size_t out_len);
MH_API mh_status mh_operator_dense_csv(const mh_operator* op, char** csv, char** header_json);
MH_API void mh_operator_free(mh_operator* op);

/* ---- spectral analysis -------------------------------------------------- */

/* Spectrum report with Schatten norms for the requested orders. */
MH_API mh_status mh_spectrum(const mh_operator* op, const double* orders, size_t order_count, char** json, char** csv);
/* Schur bound, norm equivalence and compactness verdicts for the assembled symbol. */
MH_API mh_status mh_criteria(const mh_symbol* symbol, double m, double n, const mh_weight* mu, const mh_weight* nu,
                             char** json, char** csv);
MH_API mh_status mh_carleson_test(const mh_weight* nu, const mh_catalog* catalog, double t, char** json);
MH_API mh_status mh_schatten_scan(double alpha, double p, const char* group, const int64_t* l_max_ladder,
                                  size_t rungs, int* converges, char** json, char** csv);

/* ---- Fredholm index ----------------------------------------------------- */

/* Returns MH_ERR_INAPPLICABLE only when both the formula and the numerical
 * index fail; a single failure is reported inside the JSON. */
MH_API mh_status mh_index_report(const mh_operator* op, double rank_tolerance, char** json);
MH_API mh_status mh_winding_number(const double* re, const double* im, size_t count, double tolerance, int64_t* out);
/* Winding number of sum_k coeff[k] e^{ik theta} sampled at `samples` points. */
MH_API mh_status mh_fourier_winding(const int64_t* keys, const double* re, const double* im, size_t count,
                                    size_t samples, int64_t* out);

/* ---- inverse problem ---------------------------------------------------- */

MH_API mh_status mh_forward(const mh_operator* op, mh_spectral_data** out);
MH_API mh_status mh_spectral_data_from_json(const char* json, mh_spectral_data** out);
MH_API mh_status mh_spectral_data_to_json(const mh_spectral_data* data, char** out);
MH_API size_t mh_spectral_data_count(const mh_spectral_data* data);
MH_API int mh_spectral_data_attributed(const mh_spectral_data* data);
MH_API void mh_spectral_data_free(mh_spectral_data* data);

MH_API mh_status mh_recover_bandlimited(const mh_spectral_data* data, const mh_weight* mu, const mh_weight* nu,
                                        mh_symbol** out);
MH_API mh_status mh_tikhonov_recover(const mh_spectral_data* data, const mh_weight* mu, const mh_weight* nu,
                                     double alpha, mh_penalty penalty, mh_symbol** out);
/* CSV table (delta,alpha,mean_error,std_error) and fitted log-log slope. */
MH_API mh_status mh_stability_scan(const mh_symbol* truth, const mh_weight* mu, const mh_weight* nu,
                                   const double* deltas, size_t delta_count, int trials, uint64_t seed,
                                   mh_penalty penalty, char** csv, double* slope);

#ifdef __cplusplus
}
#endif

#endif /* MUHANKEL_H */
