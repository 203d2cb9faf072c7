/*
 * vibdiag C API.
 *
 * Every function returns a vd_status. On failure a human-readable message
 * is available from vd_last_error() on the calling thread until the next
 * failing call. Objects are opaque and owned by the caller once created;
 * release them with the matching *_destroy function (NULL is accepted).
 */
#ifndef VIBDIAG_VIBDIAG_H_
#define VIBDIAG_VIBDIAG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(VD_BUILDING_LIBRARY)
#define VD_API __attribute__((visibility("default")))
#else
#define VD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vd_status {
  VD_OK = 0,
  VD_ERR_NULL_ARGUMENT = 1,
  VD_ERR_INVALID_INPUT = 2,
  VD_ERR_DEGENERATE_INPUT = 3,
  VD_ERR_INVALID_PARAMETER = 4,
  VD_ERR_CONFIGURATION = 5,
  VD_ERR_PARSE = 6,
  VD_ERR_IO = 7,
  VD_ERR_INITIALIZATION = 8,
  VD_ERR_OUT_OF_RANGE = 9,
  VD_ERR_INTERNAL = 10
} vd_status;

VD_API const char* vd_version(void);
VD_API const char* vd_status_string(vd_status status);
VD_API const char* vd_last_error(void);

/* Process exit code for a status: 0 success, 2 configuration problems
 * (bad flags, config file, filter parameters), 3 data problems (unreadable
 * or invalid records), 1 internal failures. */
VD_API int vd_status_exit_code(vd_status status);

/* ---- signals ---------------------------------------------------------- */

typedef struct vd_signal vd_signal;

VD_API vd_status vd_signal_create(const double* samples, size_t length, double sample_rate_hz,
                                  vd_signal** out);
/* format: "csv", "wav" or NULL to guess from the extension. rate_hz <= 0
 * means "not given" (mandatory for CSV, ignored for WAV). */
VD_API vd_status vd_signal_read(const char* path, const char* format, int channel,
                                double rate_hz, vd_signal** out);
VD_API vd_status vd_signal_write_csv(const vd_signal* signal, const char* path);
VD_API void vd_signal_destroy(vd_signal* signal);

VD_API size_t vd_signal_length(const vd_signal* signal);
VD_API double vd_signal_sample_rate(const vd_signal* signal);
VD_API const double* vd_signal_data(const vd_signal* signal);

/* ---- scalar metrics --------------------------------------------------- */

VD_API vd_status vd_kurtosis(const double* samples, size_t length, double* out);
VD_API vd_status vd_correlated_kurtosis(const double* samples, size_t length,
                                        double period_samples, int shift_order, double* out);
VD_API vd_status vd_period_samples(double sample_rate_hz, double fault_period_s, double* out);

/* ---- synthetic records ------------------------------------------------ */

typedef struct vd_synth_truth {
  double sample_rate_hz;
  double fault_freq_hz;
  double period_samples;
  double resonance_hz;
  double noise_snr_db;
  double signal_power;
  double noise_power;
  size_t impacts;
} vd_synth_truth;

/* Presets: "conveyor-bearing", "conveyor-gearbox". has_snr = 0 keeps the
 * preset's noise level. truth may be NULL. */
VD_API vd_status vd_synth_preset(const char* preset, int has_snr, double snr_db, uint64_t seed,
                                 vd_signal** out, vd_synth_truth* truth);
/* Writes the preset's ground truth as JSON. */
VD_API vd_status vd_synth_write_truth(const char* preset, int has_snr, double snr_db,
                                      uint64_t seed, const char* path);
VD_API size_t vd_synth_preset_count(void);
VD_API const char* vd_synth_preset_name(size_t index);

/* ---- run configuration ------------------------------------------------ */

/* Mirrors the JSON run-config schema. Keys are validated on every set;
 * a rejected set leaves the configuration unchanged. */
typedef struct vd_config vd_config;

VD_API vd_status vd_config_create(vd_config** out);
VD_API void vd_config_destroy(vd_config* config);
/* Merges the keys of a JSON run-config file into the configuration. */
VD_API vd_status vd_config_load(vd_config* config, const char* path);
VD_API vd_status vd_config_set_number(vd_config* config, const char* key, double value);
VD_API vd_status vd_config_set_integer(vd_config* config, const char* key, int64_t value);
VD_API vd_status vd_config_set_bool(vd_config* config, const char* key, int value);
VD_API vd_status vd_config_set_string(vd_config* config, const char* key, const char* value);
VD_API vd_status vd_config_set_interval(vd_config* config, const char* key, double low,
                                        double high);
/* Returns VD_ERR_OUT_OF_RANGE when the key is unset. The string stays valid
 * until the next call on the same configuration. */
VD_API vd_status vd_config_get_number(const vd_config* config, const char* key, double* out);
VD_API vd_status vd_config_get_string(const vd_config* config, const char* key,
                                      const char** out);
/* Reads the record named by the "input"/"format"/"channel"/"rate_hz" keys. */
VD_API vd_status vd_config_read_input(const vd_config* config, vd_signal** out);

/* ---- diagnosis -------------------------------------------------------- */

typedef struct vd_report vd_report;

typedef struct vd_report_summary {
  double center_freq_hz;
  double bandwidth_hz;
  double best_ck;
  double initial_period_samples;
  double final_period_samples;
  double fault_freq_hz;
  double kurtosis_raw;
  double kurtosis_processed;
  double envsi_raw;
  double envsi_processed;
  double snr_raw_db;
  double snr_processed_db;
  size_t harmonic_count;
  size_t iterations;
  size_t evaluations;
  size_t period_updates;
} vd_report_summary;

VD_API vd_status vd_diagnose(const vd_signal* signal, const vd_config* config, vd_report** out);
VD_API void vd_report_destroy(vd_report* report);
VD_API vd_status vd_report_summary_get(const vd_report* report, vd_report_summary* out);
VD_API vd_status vd_report_harmonic(const vd_report* report, size_t index, int* order,
                                    double* freq_hz, double* magnitude);
VD_API vd_status vd_report_ck_history(const vd_report* report, const double** values,
                                      size_t* length);
/* Envelope spectrum of the processed signal; bin k is at k * resolution. */
VD_API vd_status vd_report_ses(const vd_report* report, const double** magnitudes,
                               size_t* length, double* resolution_hz);
/* report.json, ses.csv, ses_raw.csv, processed.csv and SVG plots. */
VD_API vd_status vd_report_write(const vd_report* report, const char* out_dir);

/* ---- kurtogram baseline ----------------------------------------------- */

typedef struct vd_kurtogram vd_kurtogram;

VD_API vd_status vd_kurtogram_compute(const vd_signal* signal, int max_level,
                                      vd_kurtogram** out);
VD_API void vd_kurtogram_destroy(vd_kurtogram* kurtogram);
VD_API vd_status vd_kurtogram_best(const vd_kurtogram* kurtogram, double* center_hz,
                                   double* bandwidth_hz, double* kurtosis, double* level);
/* map.csv, best_band.json, ses.csv and SVG plots. fault_freq_hz <= 0 skips
 * the harmonic metrics. */
VD_API vd_status vd_kurtogram_write(const vd_kurtogram* kurtogram, const char* out_dir,
                                    double fault_freq_hz);

#ifdef __cplusplus
}
#endif

#endif /* VIBDIAG_VIBDIAG_H_ */
