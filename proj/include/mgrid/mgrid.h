/* C interface to the mgrid library. All functions return an mgrid_status; on failure the
 * message is available from mgrid_last_error() on the calling thread. Output arrays are
 * allocated by the caller with the documented sizes. */
#ifndef MGRID_MGRID_H
#define MGRID_MGRID_H

#include <stddef.h>
#include <stdint.h>

#if defined(MGRID_BUILDING)
#define MGRID_API __attribute__((visibility("default")))
#else
#define MGRID_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MGRID_OK = 0,
  MGRID_INVALID_ARGUMENT = 1,
  MGRID_PRECONDITION = 2,
  MGRID_NONCONVERGENCE = 3,
  MGRID_UNCONVERGED = 4,
  MGRID_INTERNAL = 5
} mgrid_status;

typedef struct {
  double re, im;
} mgrid_complex;

/* Group, weight, multiplier, representation and truncation settings. */
typedef struct mgrid_config mgrid_config;
/* A computed q-expansion. */
typedef struct mgrid_series mgrid_series;

MGRID_API const char* mgrid_version(void);
MGRID_API const char* mgrid_last_error(void);

/* generators: NULL for SL_2(Z), else "a,b,c,d;a,b,c,d;...". character: "trivial", "eta:r" or
 * "dirichlet:N:t1,...". rep: "trivial" or "diag(m1,m2,...)". */
MGRID_API mgrid_status mgrid_config_create(int64_t level, const char* generators, int weight, const char* character,
                                           const char* rep, mgrid_config** out);
MGRID_API void mgrid_config_destroy(mgrid_config* cfg);
MGRID_API mgrid_status mgrid_config_set_truncation(mgrid_config* cfg, int64_t c_max, double tail_tol, int bits,
                                                   int allow_slow_convergence);
MGRID_API mgrid_status mgrid_config_dim(const mgrid_config* cfg, int* dim);
/* kappa has room for dim entries. */
MGRID_API mgrid_status mgrid_config_kappa(const mgrid_config* cfg, double* kappa);
/* Number of generators (SL_2(Z): S and T). gens receives 4 entries per generator when non-NULL. */
MGRID_API mgrid_status mgrid_config_generators(const mgrid_config* cfg, size_t* count, int64_t* gens);
/* Canonical spellings of the character and representation; writes at most cap bytes including the NUL. */
MGRID_API mgrid_status mgrid_config_character(const mgrid_config* cfg, char* buf, size_t cap);
MGRID_API mgrid_status mgrid_config_rep(const mgrid_config* cfg, char* buf, size_t cap);

typedef struct {
  int64_t l;
  int j;
  mgrid_complex value;
  double tail_bound;
} mgrid_entry;

/* P_{n,alpha} for l <= l_max, leading term included. */
MGRID_API mgrid_status mgrid_poincare_series(const mgrid_config* cfg, int64_t n, int alpha, int64_t l_max,
                                             mgrid_series** out);
/* Holomorphic and non-holomorphic parts of the harmonic form G_{n2,alpha2} (weight 2 - weight). */
MGRID_API mgrid_status mgrid_harmonic_form(const mgrid_config* cfg, int64_t n2, int alpha2, int64_t l_max,
                                           mgrid_series** holomorphic, mgrid_series** nonholomorphic);
MGRID_API void mgrid_series_destroy(mgrid_series* s);
MGRID_API size_t mgrid_series_size(const mgrid_series* s);
MGRID_API mgrid_status mgrid_series_entry(const mgrid_series* s, size_t index, mgrid_entry* out);
/* Largest c summed, and whether every tail bound meets tail_tol relative to its value. */
MGRID_API int64_t mgrid_series_c_used(const mgrid_series* s);
MGRID_API int mgrid_series_converged(const mgrid_series* s, double tail_tol);

typedef struct {
  int64_t n1, n2;
  int alpha1, alpha2;
  mgrid_complex lhs, rhs;
  double lhs_bound, rhs_bound;
  double residual, tolerance;
  int ok;
} mgrid_duality;

/* Records for every pair of (n1[i], alpha1[i]) and (n2[j], alpha2[j]); out has count1 * count2 slots,
 * row-major in i. */
MGRID_API mgrid_status mgrid_duality_grid(const mgrid_config* cfg, const int64_t* n1, const int* alpha1, size_t count1,
                                          const int64_t* n2, const int* alpha2, size_t count2, mgrid_duality* out);

enum { MGRID_METHOD_SERIES = 0, MGRID_METHOD_INTEGRAL = 1 };

typedef struct {
  int s;
  int method;
  mgrid_complex value;
  double t0;
  double err;
  int converged;
  int64_t terms;
} mgrid_lvalue;

/* L(P_n, zeta^{-d}, s) for s = 1..s_max (scalar data, gamma = {a, b, c, d} with c != 0). t0 <= 0
 * selects 1/|c|. The expansion length grows until the series converges. out has s_max slots. */
MGRID_API mgrid_status mgrid_lvalues(const mgrid_config* cfg, int64_t n, const int64_t gamma[4], int s_max, double t0,
                                     int method, double tol, mgrid_lvalue* out);

enum { MGRID_PERIOD_R = 0, MGRID_PERIOD_RH = 1, MGRID_PERIOD_RN = 2 };

/* Period polynomial of P_n at gamma; coeffs has weight - 1 slots, coefficient i multiplying
 * (tau + d/c)^i (tau^i when c = 0). */
MGRID_API mgrid_status mgrid_period(const mgrid_config* cfg, int64_t n, const int64_t gamma[4], int kind, double t0,
                                    double tol, mgrid_complex* coeffs, double* err, int* converged);

typedef struct {
  int64_t n1, n2;
  mgrid_complex predicted;       /* pairing of the period features */
  mgrid_complex from_constants;  /* the same entry assembled from L-values and constants */
  mgrid_complex reference;       /* unfolding value from the Poincare coefficient */
  double rel_error;              /* |predicted - reference| / |reference| */
  double feature_err;
  int training;
} mgrid_gram;

typedef struct {
  int rank;
  double fit_residual;
  int rank_deficient;
} mgrid_pairing_info;

/* Fits the pairing on (P_{n[0]}, P_{n[0]}) and predicts every entry for the cusp indices n; out has
 * count * count slots, row-major. */
MGRID_API mgrid_status mgrid_pairing(const mgrid_config* cfg, const int64_t* n, size_t count, double tol,
                                     mgrid_gram* out, mgrid_pairing_info* info);

#ifdef __cplusplus
}
#endif

#endif /* MGRID_MGRID_H */
