/*
 * spde_lab.h
 * C interface to the noise-truncation error lab.  All state lives behind
 * opaque handles; every function returns a status code (SPDE_LAB_OK on
 * success) and leaves a human-readable message for spde_lab_last_error()
 * on failure.  The message buffer is thread-local.
 */

#ifndef SPDE_LAB_H
#define SPDE_LAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SPDE_LAB_OK 0
#define SPDE_LAB_ERR_CONFIG 2  /* config parse/validation failure */
#define SPDE_LAB_ERR_BUDGET 3  /* experiment exceeds the configured budget */
#define SPDE_LAB_ERR_INVALID 4 /* invalid argument or domain error */
#define SPDE_LAB_ERR_INTERNAL 5

typedef struct spde_lab_config spde_lab_config;
typedef struct spde_lab_report spde_lab_report;

const char* spde_lab_version(void);
const char* spde_lab_last_error(void);

/* Text of the bundled additive-wave demo experiment. */
const char* spde_lab_demo_config(void);

/* Configs.  Loading applies the SPDE_LAB_SEED environment variable when the
 * file itself carries no seed (lowest precedence); spde_lab_config_set_seed
 * overrides both. */
int spde_lab_config_load(const char* path, spde_lab_config** out);
int spde_lab_config_parse(const char* text, spde_lab_config** out);
void spde_lab_config_free(spde_lab_config* cfg);

int spde_lab_config_set_seed(spde_lab_config* cfg, uint64_t seed);
int spde_lab_config_set_workers(spde_lab_config* cfg, int workers);
int spde_lab_config_set_out_dir(spde_lab_config* cfg, const char* dir);
int spde_lab_config_allow_shallow_reference(spde_lab_config* cfg, int allow);
uint64_t spde_lab_config_seed(const spde_lab_config* cfg);
const char* spde_lab_config_out_dir(const spde_lab_config* cfg);

/* Run the experiment described by the config.  The report carries the
 * rendered artifacts; spde_lab_report_write persists them (report.csv,
 * summary.json) under out_dir, or under the config's out directory when
 * out_dir is NULL. */
int spde_lab_run(const spde_lab_config* cfg, spde_lab_report** out);
void spde_lab_report_free(spde_lab_report* rep);
int spde_lab_report_write(const spde_lab_report* rep, const char* out_dir);

int spde_lab_report_row_count(const spde_lab_report* rep);
int spde_lab_report_row(const spde_lab_report* rep, int index, int64_t* level,
                        double* strong_sq, double* strong_se, double* weak,
                        double* weak_se, double* bound, int* bound_available);
/* Least-squares slope of log(strong_sq) vs log(n); fails when no fit exists. */
int spde_lab_report_fit(const spde_lab_report* rep, double* slope,
                        double* intercept, double* residual);

/* Deterministic computations for the additive diagonal model with
 * lambda_k = scale * (k+1)^(-q).  A negative level means infinity. */
int spde_lab_gaussian_functional(double q, double scale, int64_t level,
                                 double* out);
int spde_lab_noise_tail(double q, double scale, int64_t level, double* out);
/* (E phi(X^n) - E phi(X^inf)) / tail(n). */
int spde_lab_weak_ratio(double q, double scale, int64_t level, double* out);

typedef struct {
  double semigroup;       /* sup_t ||S_t|| on H */
  double semigroup_v;     /* on V; < 0 reuses semigroup */
  double drift_c1b, drift_c2b;
  double diffusion_c1b, diffusion_c2b;
  double drift_lip_v, diffusion_lip_v;
  double initial_l2_v;
  double initial_l2_h;    /* < 0 reuses initial_l2_v */
  double horizon;
} spde_lab_norm_inputs;

typedef struct {
  double c1, c2, c3, c4;
  double c;        /* (horizon/2) c1 (1 + c2^2) */
  double apriori;  /* mild-solution a-priori bound on H */
} spde_lab_constants;

int spde_lab_bound_constants(const spde_lab_norm_inputs* in,
                             spde_lab_constants* out);

/* Truncation tail bound of the config's equation at the given level;
 * *available is cleared when the family has no analytic bound. */
int spde_lab_tail_bound(const spde_lab_config* cfg, int64_t level, double* out,
                        int* available);

/* Constants assembled from the config's [constants] section, when present. */
int spde_lab_config_constants(const spde_lab_config* cfg,
                              spde_lab_constants* out, int* available);

#ifdef __cplusplus
}
#endif

#endif /* SPDE_LAB_H */
