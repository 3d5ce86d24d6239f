/* gcsim — gas chromatography column transport, verification and fitting.
 *
 * C interface to the shared library. All entry points return a status code;
 * on failure gcsim_last_error() describes what went wrong (the message is
 * thread-local and valid until the next failing call on that thread).
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Pointers returned by getters stay valid until
 * the owning handle is freed.
 */
#ifndef GCSIM_H
#define GCSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gcsim_status {
    GCSIM_OK = 0,
    GCSIM_ERROR_INVALID_ARGUMENT = 1,
    GCSIM_ERROR_VALIDATION = 2,
    GCSIM_ERROR_NUMERICAL = 3,
    GCSIM_ERROR_IO = 4
} gcsim_status;

typedef enum gcsim_regime {
    GCSIM_REGIME_CONSTANT = 0,
    GCSIM_REGIME_VARIABLE = 1
} gcsim_regime;

typedef enum gcsim_solver {
    GCSIM_SOLVER_ANALYTIC = 0,
    GCSIM_SOLVER_FD = 1
} gcsim_solver;

typedef struct gcsim_config gcsim_config;
typedef struct gcsim_chromatogram gcsim_chromatogram;
typedef struct gcsim_snapshots gcsim_snapshots;
typedef struct gcsim_compare_report gcsim_compare_report;
typedef struct gcsim_calibration gcsim_calibration;
typedef struct gcsim_fit_result gcsim_fit_result;

const char* gcsim_version(void);
const char* gcsim_last_error(void);

/* ---- configuration ------------------------------------------------- */

gcsim_status gcsim_config_load(const char* path, gcsim_config** out);
gcsim_status gcsim_config_parse(const char* json_text, gcsim_config** out);
void gcsim_config_free(gcsim_config* cfg);

int gcsim_config_analyte_count(const gcsim_config* cfg);
const char* gcsim_config_analyte_name(const gcsim_config* cfg, int index);
int gcsim_config_warning_count(const gcsim_config* cfg);
const char* gcsim_config_warning(const gcsim_config* cfg, int index);
uint64_t gcsim_config_hash(const gcsim_config* cfg);
gcsim_regime gcsim_config_regime(const gcsim_config* cfg);
gcsim_solver gcsim_config_solver(const gcsim_config* cfg);
int gcsim_config_solver_both(const gcsim_config* cfg);

/* Scaled parameter set shared by all analytes. */
typedef struct gcsim_groups {
    double damkohler;
    double length_scale_m;
    double time_scale_s;
    double column_length_hat;
    double injection_time_hat;
    double outlet_pressure_hat;
    double inlet_velocity_m_s;
    int reference_index;
} gcsim_groups;

typedef struct gcsim_analyte_groups {
    double beta;
    double k_a_hat;
    double k_d_hat;
    double peclet_inverse;
} gcsim_analyte_groups;

gcsim_status gcsim_config_groups(const gcsim_config* cfg, gcsim_groups* out);
gcsim_status gcsim_config_analyte_groups(const gcsim_config* cfg, int index,
                                         gcsim_analyte_groups* out);

/* ---- simulation ----------------------------------------------------- */

gcsim_status gcsim_simulate(const gcsim_config* cfg, gcsim_regime regime,
                            gcsim_solver solver, gcsim_chromatogram** out);

int gcsim_chromatogram_analyte_count(const gcsim_chromatogram* chrom);
int gcsim_chromatogram_sample_count(const gcsim_chromatogram* chrom);
const double* gcsim_chromatogram_times_s(const gcsim_chromatogram* chrom);
const double* gcsim_chromatogram_values(const gcsim_chromatogram* chrom, int analyte);
const char* gcsim_chromatogram_analyte_name(const gcsim_chromatogram* chrom, int analyte);
const char* gcsim_chromatogram_unit(const gcsim_chromatogram* chrom);
gcsim_status gcsim_chromatogram_write_csv(const gcsim_chromatogram* chrom,
                                          const char* path);
void gcsim_chromatogram_free(gcsim_chromatogram* chrom);

/* Column profiles at the given dimensional times (seconds, ascending). */
gcsim_status gcsim_snapshots_run(const gcsim_config* cfg, gcsim_regime regime,
                                 gcsim_solver solver, const double* times_s,
                                 int count, gcsim_snapshots** out);
int gcsim_snapshots_count(const gcsim_snapshots* snaps);
double gcsim_snapshots_time_s(const gcsim_snapshots* snaps, int index);
gcsim_status gcsim_snapshots_write_csv(const gcsim_snapshots* snaps, int index,
                                       const char* path);
void gcsim_snapshots_free(gcsim_snapshots* snaps);

/* ---- analytic vs finite-difference comparison ----------------------- */

typedef struct gcsim_compare_entry {
    double peak_time_analytic_s;
    double peak_time_fd_s;
    double peak_height_analytic;
    double peak_height_fd;
    double peak_time_rel_err;
    double peak_height_rel_err;
    double max_abs_diff_over_peak;
    double rms_diff_over_peak;
} gcsim_compare_entry;

gcsim_status gcsim_compare(const gcsim_config* cfg, gcsim_regime regime,
                           gcsim_compare_report** out);
int gcsim_compare_entry_count(const gcsim_compare_report* report);
const char* gcsim_compare_analyte(const gcsim_compare_report* report, int index);
gcsim_status gcsim_compare_get(const gcsim_compare_report* report, int index,
                               gcsim_compare_entry* out);
gcsim_status gcsim_compare_write_json(const gcsim_compare_report* report,
                                      const char* path);
void gcsim_compare_free(gcsim_compare_report* report);

/* ---- detector calibration ------------------------------------------- */

gcsim_status gcsim_calibrate(const gcsim_config* cfg, gcsim_calibration** out);
int gcsim_calibration_entry_count(const gcsim_calibration* table);
const char* gcsim_calibration_analyte(const gcsim_calibration* table, int index);
/* a.u. per (mol/m^3) */
double gcsim_calibration_conversion_factor(const gcsim_calibration* table, int index);
double gcsim_calibration_peak_area(const gcsim_calibration* table, int index);
gcsim_status gcsim_calibration_write_csv(const gcsim_calibration* table,
                                         const char* path);
void gcsim_calibration_free(gcsim_calibration* table);

/* ---- parameter fitting ----------------------------------------------- */

typedef struct gcsim_fit_entry {
    double k_a_per_s;
    double k_d_per_s;
    double sse;
    double r_squared;
    double equilibrium_constant;
    double equilibrium_loading_mol_m3;
    double beta;
    double baseline_au;
    int converged;
} gcsim_fit_entry;

gcsim_status gcsim_fit(const gcsim_config* cfg, const char* data_csv_path,
                       gcsim_fit_result** out);
int gcsim_fit_entry_count(const gcsim_fit_result* fit);
const char* gcsim_fit_analyte(const gcsim_fit_result* fit, int index);
gcsim_status gcsim_fit_get(const gcsim_fit_result* fit, int index, gcsim_fit_entry* out);
gcsim_status gcsim_fit_write_json(const gcsim_fit_result* fit, const char* path);
void gcsim_fit_free(gcsim_fit_result* fit);

/* ---- unit conversions ------------------------------------------------ */

gcsim_status gcsim_ppb_to_molar(double ppb, double temperature_k, double pressure_pa,
                                double* out);
gcsim_status gcsim_molar_to_ppb(double molar, double temperature_k, double pressure_pa,
                                double* out);
gcsim_status gcsim_au_to_molar(double intensity_au, double conversion_factor,
                               double baseline_au, double* out);
gcsim_status gcsim_molar_to_au(double molar, double conversion_factor,
                               double baseline_au, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GCSIM_H */
