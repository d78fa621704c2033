/* hardyspec — principal spectral data of the Hardy-type quotient
 *
 *     inf  ( int |grad u|^2 dx )  /  ( int m(x)/|x|^2 u^2 dx )
 *
 * for radial bounded weights m on R^N, N >= 3.  C interface over opaque
 * handles; every entry point returns a status code and leaves a
 * description of the last failure in a thread-local buffer.
 */
#ifndef HARDYSPEC_H
#define HARDYSPEC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
    HS_OK = 0,
    HS_ERR_INVALID = 2,  /* malformed or out-of-domain input */
    HS_ERR_SOLVER = 3,   /* iteration failed or no admissible state */
    HS_ERR_INTERNAL = 4  /* invariant violation inside the library */
} hs_status;

/* Opaque weight profile and result handles. */
typedef struct hs_weight hs_weight;
typedef struct hs_result hs_result;

typedef struct hs_run_opts {
    int dim;                   /* ambient dimension N >= 3 */
    double t_min, t_max;       /* log-radial grid range */
    int n;                     /* grid node count */
    int l_max;                 /* highest angular sector */
    double tol;                /* eigensolver relative tolerance */
    long max_iter;             /* eigensolver iteration cap */
    int jobs;                  /* sector-solve parallelism */
    double classification_tol; /* relative gap threshold */
} hs_run_opts;

/* Library version string, e.g. "1.0.0". */
const char* hs_version(void);

/* Description of the most recent failure on this thread ("" if none). */
const char* hs_last_error(void);

/* Fills opts with the library defaults: dim 3, range (-30, 30), n 6001,
 * l_max 3, tol 1e-10, max_iter 200000, jobs 1, classification_tol 1e-3. */
void hs_run_opts_default(hs_run_opts* opts);

/* --- weights ---------------------------------------------------------- */

hs_status hs_weight_from_json(const char* json_text, hs_weight** out);
hs_status hs_weight_from_file(const char* path, hs_weight** out);
void hs_weight_free(hs_weight* w);

hs_status hs_weight_eval(const hs_weight* w, double t, double* out);
hs_status hs_weight_limits(const hs_weight* w, double* limit_origin,
                           double* limit_infinity);
hs_status hs_weight_sup_norm(const hs_weight* w, double* out);
hs_status hs_weight_ball_extrema(const hs_weight* w, double r,
                                 double* m_lower, double* m_upper);
/* *out = 1 when the profile is log-periodic with ratio gamma (tolerance
 * tol), 0 otherwise. */
hs_status hs_weight_check_periodic(const hs_weight* w, double gamma,
                                   double tol, int* out);

/* --- computations ------------------------------------------------------ */
/* Each computation allocates an hs_result holding a finished JSON report
 * (and CSV where noted); read it with hs_result_json / hs_result_csv and
 * release it with hs_result_free. */

/* Sector minimization + classification, eigenfunction included. */
hs_status hs_eigen(const hs_weight* w, const hs_run_opts* opts,
                   hs_result** out);

/* Same minimization, classification summary only (no eigenfunction). */
hs_status hs_classify(const hs_weight* w, const hs_run_opts* opts,
                      hs_result** out);

/* Iterative vs dense principal value on the sector-0 pencil; requires an
 * interior dimension of at most 400. */
hs_status hs_oracle(const hs_weight* w, const hs_run_opts* opts,
                    hs_result** out);

/* Periodic ground state on one cell of a gamma-periodic weight. */
hs_status hs_periodic(const hs_weight* w, double gamma, int n_cell,
                      const hs_run_opts* opts, hs_result** out);

/* Energies Q_k of the dilation-cutoff family on the periodic ground
 * state, for k_list[0..k_count-1]. */
hs_status hs_nullseq(const hs_weight* w, double gamma, int n_cell,
                     const long* k_list, size_t k_count,
                     const hs_run_opts* opts, hs_result** out);

/* Perturbation scale curve sigma(lambda); base may be NULL.  The result
 * also carries a CSV rendering (lambda,sigma,feasible). */
hs_status hs_sigma(const hs_weight* base, const hs_weight* w,
                   const double* lambdas, size_t count,
                   const hs_run_opts* opts, hs_result** out);

/* Critical bump amplitude over the constant level a_level. */
hs_status hs_threshold(const hs_weight* bump, double a_level,
                       double bracket_tol, const hs_run_opts* opts,
                       hs_result** out);

/* Ball-concentration existence bounds (no grid involved unless
 * use_sharp != 0, which solves the unit-ball Dirichlet problem). */
hs_status hs_ballbound(int dim, double r, double d, double m_origin,
                       double m_infinity, double m_peak, int use_sharp,
                       hs_result** out);

/* Near-origin decay fit of the minimizer over the window [r_lo, r_hi]
 * against the band predicted on the ball of radius band_r. */
hs_status hs_decay(const hs_weight* w, double r_lo, double r_hi,
                   double band_r, double band_margin,
                   const hs_run_opts* opts, hs_result** out);

/* --- results ----------------------------------------------------------- */

/* Borrowed pointers, valid until hs_result_free. */
const char* hs_result_json(const hs_result* r);
/* NULL when the computation has no CSV form. */
const char* hs_result_csv(const hs_result* r);
void hs_result_free(hs_result* r);

#ifdef __cplusplus
}
#endif

#endif /* HARDYSPEC_H */
