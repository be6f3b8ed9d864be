#ifndef CORRSEP_H
#define CORRSEP_H

/* C interface to the corrsep library. All functions return a cs_status;
 * on failure cs_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Strings returned through
 * char** arguments are owned by the caller and released with cs_string_free.
 * Objects returned through handle pointers are released with the matching
 * *_destroy function. */

#include <stddef.h>
#include <stdint.h>

#if defined(CORRSEP_BUILDING_LIBRARY)
#define CS_API __attribute__((visibility("default")))
#else
#define CS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_DIMENSION_MISMATCH = 2,
  CS_ERR_DOMAIN = 3,
  CS_ERR_NUMERICAL = 4,
  CS_ERR_UNSUPPORTED = 5,
  CS_ERR_PARSE = 6,
  CS_ERR_NOT_CONVERGED = 7,
  CS_ERR_RANK_DEFICIENT = 8,
  CS_ERR_INTERNAL = 9
} cs_status;

typedef struct cs_state cs_state;
typedef struct cs_witness cs_witness;

typedef struct cs_report {
  char criterion[32];
  double params[8];
  int n_params;
  double lhs;
  double rhs;
  double gap;
  int detected;
} cs_report;

/* Criterion selector used by detection and threshold calls. */
typedef enum cs_criterion {
  CS_CRIT_DV = 0,
  CS_CRIT_CCNR = 1,
  CS_CRIT_ESIC = 2,
  CS_CRIT_FEI = 3,
  CS_CRIT_POINT = 4, /* explicit (x, y) */
  CS_CRIT_PPT = 5,
  CS_CRIT_FILTERED_DV = 6
} cs_criterion;

typedef enum cs_multipartite_method {
  CS_MULTI_KY_FAN = 0,
  CS_MULTI_NUCLEAR_LB = 1
} cs_multipartite_method;

CS_API const char* cs_last_error(void);
CS_API const char* cs_status_name(cs_status status);
CS_API void cs_string_free(char* s);

/* States */
CS_API cs_status cs_state_from_json(const char* text, int rounded, cs_state** out);
CS_API cs_status cs_state_to_json(const cs_state* s, char** out);
CS_API cs_status cs_state_from_matrix(const int* dims, int n_dims, const double* re,
                                      const double* im, cs_state** out);
CS_API cs_status cs_state_dims(const cs_state* s, int* dims, int capacity, int* n_dims);
CS_API cs_status cs_state_rudolph(double r, double s, double t, cs_state** out);
/* Chessboard at the reference parameters mixed with white noise at level p. */
CS_API cs_status cs_state_chessboard(double p, cs_state** out);
/* kind: "pp" or "tiles"; mixed with white noise at level p. */
CS_API cs_status cs_state_upb(const char* kind, double p, cs_state** out);
CS_API cs_status cs_state_bell(cs_state** out);
CS_API cs_status cs_state_ghz(int n, cs_state** out);
CS_API cs_status cs_state_w(int n, cs_state** out);
CS_API cs_status cs_state_maximally_mixed(const int* dims, int n_dims, cs_state** out);
CS_API cs_status cs_state_random_product(const int* dims, int n_dims, uint64_t seed,
                                         cs_state** out);
CS_API cs_status cs_state_random_separable(const int* dims, int n_dims, int terms,
                                           uint64_t seed, cs_state** out);
CS_API cs_status cs_state_mix_noise(const cs_state* s, double p, cs_state** out);
CS_API void cs_state_destroy(cs_state* s);

/* Criteria. For CS_CRIT_POINT x and y are used; otherwise they are ignored. */
CS_API cs_status cs_detect(const cs_state* s, cs_criterion criterion, double x, double y,
                           cs_report* out);
CS_API cs_status cs_family_gap(const cs_state* s, double x, double y, cs_report* out);
CS_API cs_status cs_ppt(const cs_state* s, cs_report* out);
/* ESIC evaluated from the SIC overlap matrix. */
CS_API cs_status cs_esic_direct(const cs_state* s, cs_report* out);
CS_API cs_status cs_multipartite(const cs_state* s, const double* xs, int n,
                                 cs_multipartite_method method, cs_report* out);
CS_API cs_status cs_optimize_xy(const cs_state* s, double* x, double* y, double* gap);

/* Gap f(x_i, y_j) written row-major into gaps (nx * ny entries). */
CS_API cs_status cs_scan(const cs_state* s, const double* xs, int nx, const double* ys, int ny,
                         double* gaps);

/* family: "pp", "tiles" or "chessboard". Writes p* (1 if never detected). */
CS_API cs_status cs_threshold(const char* family, cs_criterion criterion, double x, double y,
                              double tolerance, double* p_star, int* detected);

/* Witnesses */
CS_API cs_status cs_witness_build(const cs_state* s, double x, double y, cs_witness** out);
CS_API cs_status cs_witness_expectation(const cs_witness* w, const cs_state* s, double* out);
CS_API cs_status cs_witness_to_json(const cs_witness* w, char** out);
CS_API cs_status cs_witness_from_json(const char* text, cs_witness** out);
CS_API void cs_witness_destroy(cs_witness* w);

/* Local filtering: JSON with A, B, filtered state, residual, iterations. */
CS_API cs_status cs_filter(const cs_state* s, char** out);

/* Validates the built-in bases. kind: "canonical", "sic_minus", "sic_plus". */
CS_API cs_status cs_validate_basis(const char* kind, int d, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CORRSEP_H */
