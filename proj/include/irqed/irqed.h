#ifndef IRQED_H
#define IRQED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define IRQED_API __attribute__((visibility("default")))
#else
#define IRQED_API
#endif

typedef enum {
    IRQED_OK = 0,
    IRQED_ERR_INVALID_ARGUMENT = 1,
    IRQED_ERR_DOMAIN = 2,
    IRQED_ERR_NONCONVERGENCE = 3,
    IRQED_ERR_TRUNCATION = 4,
    IRQED_ERR_BUDGET = 5,
    IRQED_ERR_INTERNAL = 6
} irqed_status;

typedef enum { IRQED_GAUGE_FGB = 0, IRQED_GAUGE_COULOMB = 1 } irqed_gauge;
typedef enum { IRQED_MODEL_BN = 0, IRQED_MODEL_DIPOLE = 1 } irqed_model;
typedef enum { IRQED_INTERP_LINEAR = 0, IRQED_INTERP_PCHIP = 1 } irqed_interp;

typedef struct irqed_form_factor irqed_form_factor;
typedef struct irqed_kinematics irqed_kinematics;

typedef struct {
    double lambda;
    double Lambda;
} irqed_window;

/* zero fields select the defaults (1e-10 absolute, 1e-8 relative) */
typedef struct {
    double abs_tol;
    double rel_tol;
} irqed_tolerances;

typedef struct {
    double total_re, total_im;
    double gamma_cross, b_ir_in, b_ir_out;
    double error;
} irqed_exponent;

typedef struct {
    double z, z_tilde, z1, z2, b_ir;
} irqed_counterterms;

typedef struct {
    double fgb, coulomb;
    double fgb_error, coulomb_error;
    double log_ratio; /* NaN when undefined */
    int undefined;
    double conservation_residual;
} irqed_gauge_report;

typedef struct {
    double eps;
    double unren_re, unren_im;
    double counterterm_re, counterterm_im;
    double sum_re, sum_im;
} irqed_ledger_row;

typedef struct {
    double extrapolated_re, extrapolated_im;
    double target;
} irqed_ledger_summary;

/* A photon sampled on n nodes: nodes[3n], weights[n], values[8n] holding
   (re, im) of the four components per node. Coulomb photons store the
   spatial part in components 1..3. */
typedef struct {
    size_t n;
    const double* nodes;
    const double* weights;
    const double* values;
} irqed_photon;

typedef struct {
    double vacuum_re, vacuum_im;
    irqed_exponent exponent;
    double total_re, total_im;
    int has_oracle;
    double oracle_re, oracle_im;
    double grid_product_re, grid_product_im;
    double oracle_truncation;
    size_t oracle_dim;
} irqed_emission_report;

typedef struct {
    int cap;
    int nodes;
    double charge;
    uint64_t seed;
} irqed_fock_config;

typedef struct {
    char name[32];
    double deviation;
    double tolerance;
    int passed;
} irqed_fock_check;

#define IRQED_MAX_CHECKS 32
#define IRQED_MAX_CONVERGENCE 32

typedef struct {
    size_t n_checks;
    irqed_fock_check checks[IRQED_MAX_CHECKS];
    size_t n_convergence;
    int convergence_cap[IRQED_MAX_CONVERGENCE];
    double convergence_deviation[IRQED_MAX_CONVERGENCE];
    int passed;
} irqed_fock_report;

/* Message of the last failed call on this thread. */
IRQED_API const char* irqed_last_error(void);
IRQED_API const char* irqed_version(void);

IRQED_API irqed_status irqed_form_factor_gaussian(double sigma, irqed_form_factor** out);
IRQED_API irqed_status irqed_form_factor_sharp(double lo, double hi, irqed_form_factor** out);
IRQED_API irqed_status irqed_form_factor_tabulated(const double* k, const double* values, size_t n,
                                                   irqed_interp rule, irqed_form_factor** out);
IRQED_API void irqed_form_factor_free(irqed_form_factor* ff);

IRQED_API irqed_status irqed_kinematics_bn(const double u_in[3], const double u_out[3], double charge,
                                           irqed_kinematics** out);
IRQED_API irqed_status irqed_kinematics_dipole(const double p_in[3], const double p_out[3], double mass,
                                               double charge, irqed_kinematics** out);
IRQED_API void irqed_kinematics_free(irqed_kinematics* kin);

IRQED_API irqed_status irqed_counterterms_eval(const irqed_form_factor* ff, const irqed_window* w,
                                               const double u[3], const irqed_tolerances* tol,
                                               irqed_counterterms* out);

IRQED_API irqed_status irqed_m_exponent(const irqed_kinematics* kin, irqed_gauge gauge,
                                        const irqed_form_factor* ff, const irqed_window* w,
                                        const irqed_tolerances* tol, irqed_exponent* out);

IRQED_API irqed_status irqed_gauge_compare(const irqed_kinematics* kin, const irqed_form_factor* ff,
                                           const irqed_window* w, const irqed_tolerances* tol,
                                           irqed_gauge_report* out);

/* rows must hold n_eps entries */
IRQED_API irqed_status irqed_renormalization_ledger(const double u[3], double charge, const double* eps,
                                                    size_t n_eps, const irqed_form_factor* ff,
                                                    const irqed_window* w, const irqed_tolerances* tol,
                                                    irqed_ledger_row* rows, irqed_ledger_summary* summary);

/* factors must hold 2*n_photons doubles; oracle_cap > 0 runs the Fock oracle */
IRQED_API irqed_status irqed_emission(const irqed_kinematics* kin, irqed_gauge gauge,
                                      const irqed_form_factor* ff, const irqed_window* w,
                                      const irqed_tolerances* tol, const irqed_photon* photons,
                                      size_t n_photons, int oracle_cap, double* factors,
                                      irqed_emission_report* out);

/* Gauss-Legendre in |k| and cos(theta), uniform in phi; nodes[3n], weights[n]
   with n = n_radial * n_polar * n_azimuth */
IRQED_API irqed_status irqed_product_grid(const irqed_window* w, int n_radial, int n_polar, int n_azimuth,
                                          double* nodes, double* weights);

IRQED_API irqed_status irqed_fock_verify(const irqed_fock_config* cfg, irqed_fock_report* out);

#ifdef __cplusplus
}
#endif

#endif
