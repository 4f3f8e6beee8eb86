/* C interface to the two-site condensate dynamics library.
 *
 * All functions return a bh_status; out-parameters are written only on
 * BH_OK.  On failure, bh_last_error() returns a thread-local message.
 * Handles are opaque and must be released with the matching *_destroy.
 */
#ifndef BHDYN_H
#define BHDYN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bh_status {
    BH_OK = 0,
    BH_ERR_USAGE = 1,   /* bad arguments, config, or unknown names */
    BH_ERR_RUNTIME = 2, /* numerical aborts, I/O failures */
    BH_ERR_CHECK = 3    /* a verification check failed */
} bh_status;

typedef struct bh_model bh_model;
typedef struct bh_series bh_series;

const char* bh_last_error(void);

/* ---- model handles ---- */
bh_status bh_model_create_two_site(double eps, double u, bh_model** out);
/* coupling given as g = u * n_total */
bh_status bh_model_create_two_site_g(double eps, double g, int n_total, bh_model** out);
bh_status bh_model_create_single_site(double eps, double u, bh_model** out);
void bh_model_destroy(bh_model* model);

/* ---- time evolution (series handles) ---- */
/* Number state: amplitudes (re, im) per site, sum |lambda|^2 == n_total. */
bh_status bh_evolve_number_state(const bh_model* model, int n_total,
                                 const double* lambda_re, const double* lambda_im,
                                 double t_max, double dt, bh_series** out);
bh_status bh_evolve_coherent_state(const bh_model* model, const double* lambda_re,
                                   const double* lambda_im, double t_max, double dt,
                                   bh_series** out);

bh_status bh_series_num_points(const bh_series* s, size_t* out);
bh_status bh_series_num_columns(const bh_series* s, size_t* out);
bh_status bh_series_column_name(const bh_series* s, size_t index, const char** out);
/* Pointers stay valid until the series is destroyed. */
bh_status bh_series_times(const bh_series* s, const double** out);
bh_status bh_series_column(const bh_series* s, const char* name, const double** out);
void bh_series_destroy(bh_series* s);

/* ---- closed forms ---- */
bh_status bh_zero_d_closed_form(double lambda_re, double lambda_im, double eps, double u,
                                double t, double* out_re, double* out_im);
bh_status bh_collapse_envelope(int n_total, double u, double t, double* out);
/* regime: 0 oscillatory, 1 self-trapped, 2 critical */
bh_status bh_classify_regime(double eps, double g, int* out);

/* ---- experiment harness ---- */
/* output_dir may be NULL to keep the configured directory (the environment
 * variable BHDYN_OUTPUT_DIR still takes precedence when set). */
bh_status bh_run_config(const char* config_path, const char* output_dir);
bh_status bh_run_preset(const char* name, int full, const char* output_dir);
/* Newline-separated preset names; fails with BH_ERR_USAGE if buf is short. */
bh_status bh_list_presets(char* buf, size_t buflen);
/* Prints one line per check to stdout; *failures receives the fail count. */
bh_status bh_verify(int* failures);

#ifdef __cplusplus
}
#endif

#endif /* BHDYN_H */
