#include "vibdiag/vibdiag.h"

#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "vibdiag/correlated_kurtosis.hpp"
#include "vibdiag/envelope.hpp"
#include "vibdiag/error.hpp"
#include "vibdiag/io.hpp"
#include "vibdiag/kurtogram.hpp"
#include "vibdiag/pipeline.hpp"
#include "vibdiag/report.hpp"
#include "vibdiag/run_config.hpp"
#include "vibdiag/synth.hpp"

using namespace vibdiag;

struct vd_signal {
  Signal signal;
};

struct vd_config {
  nlohmann::json doc = nlohmann::json::object();
  RunConfig parsed;
  mutable std::string scratch;
};

struct vd_report {
  DiagnosisReport report;
  RunConfig config;
  Signal signal;
};

struct vd_kurtogram {
  KurtogramResult result;
  Signal signal;
};

namespace {

thread_local std::string g_last_error;

vd_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return VD_ERR_INVALID_INPUT;
    case ErrorKind::DegenerateInput: return VD_ERR_DEGENERATE_INPUT;
    case ErrorKind::InvalidParameter: return VD_ERR_INVALID_PARAMETER;
    case ErrorKind::Configuration: return VD_ERR_CONFIGURATION;
    case ErrorKind::Parse: return VD_ERR_PARSE;
    case ErrorKind::Io: return VD_ERR_IO;
    case ErrorKind::Initialization: return VD_ERR_INITIALIZATION;
  }
  return VD_ERR_INTERNAL;
}

vd_status fail_with(vd_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
vd_status guarded(F&& body) {
  try {
    body();
    return VD_OK;
  } catch (const Error& e) {
    return fail_with(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(VD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(VD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(VD_ERR_INTERNAL, "unknown failure");
  }
}

#define VD_REQUIRE(ptr)                                              \
  do {                                                               \
    if ((ptr) == nullptr) {                                          \
      return fail_with(VD_ERR_NULL_ARGUMENT, #ptr " must not be NULL"); \
    }                                                                \
  } while (0)

vd_status set_key(vd_config* config, const char* key, nlohmann::json value) {
  VD_REQUIRE(config);
  VD_REQUIRE(key);
  return guarded([&] {
    nlohmann::json next = config->doc;
    next[key] = std::move(value);
    RunConfig parsed = parse_run_config(next);
    config->doc = std::move(next);
    config->parsed = std::move(parsed);
  });
}

synth::FaultSignalSpec preset_spec(const char* preset, int has_snr, double snr_db) {
  auto spec = synth::preset(preset);
  if (has_snr) spec.noise_snr_db = snr_db;
  return spec;
}

}  // namespace

extern "C" {

const char* vd_version(void) { return "1.0.0"; }

const char* vd_status_string(vd_status status) {
  switch (status) {
    case VD_OK: return "ok";
    case VD_ERR_NULL_ARGUMENT: return "null argument";
    case VD_ERR_INVALID_INPUT: return "invalid input";
    case VD_ERR_DEGENERATE_INPUT: return "degenerate input";
    case VD_ERR_INVALID_PARAMETER: return "invalid parameter";
    case VD_ERR_CONFIGURATION: return "configuration error";
    case VD_ERR_PARSE: return "parse error";
    case VD_ERR_IO: return "i/o error";
    case VD_ERR_INITIALIZATION: return "initialization failure";
    case VD_ERR_OUT_OF_RANGE: return "out of range";
    case VD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* vd_last_error(void) { return g_last_error.c_str(); }

int vd_status_exit_code(vd_status status) {
  switch (status) {
    case VD_OK: return 0;
    case VD_ERR_NULL_ARGUMENT:
    case VD_ERR_INVALID_PARAMETER:
    case VD_ERR_CONFIGURATION:
    case VD_ERR_OUT_OF_RANGE: return 2;
    case VD_ERR_INVALID_INPUT:
    case VD_ERR_DEGENERATE_INPUT:
    case VD_ERR_PARSE:
    case VD_ERR_IO:
    case VD_ERR_INITIALIZATION: return 3;
    case VD_ERR_INTERNAL: return 1;
  }
  return 1;
}

vd_status vd_signal_create(const double* samples, size_t length, double sample_rate_hz,
                           vd_signal** out) {
  VD_REQUIRE(out);
  if (length > 0) VD_REQUIRE(samples);
  *out = nullptr;
  return guarded([&] {
    std::vector<double> data(samples, samples + length);
    *out = new vd_signal{Signal(std::move(data), sample_rate_hz)};
  });
}

vd_status vd_signal_read(const char* path, const char* format, int channel, double rate_hz,
                         vd_signal** out) {
  VD_REQUIRE(path);
  VD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto fmt = format ? io::parse_format(format) : io::format_from_path(path);
    std::optional<double> rate;
    if (rate_hz > 0.0) rate = rate_hz;
    *out = new vd_signal{io::read_signal(path, fmt, channel, rate)};
  });
}

vd_status vd_signal_write_csv(const vd_signal* signal, const char* path) {
  VD_REQUIRE(signal);
  VD_REQUIRE(path);
  return guarded([&] { io::write_signal_csv(path, signal->signal); });
}

void vd_signal_destroy(vd_signal* signal) { delete signal; }

size_t vd_signal_length(const vd_signal* signal) { return signal ? signal->signal.size() : 0; }

double vd_signal_sample_rate(const vd_signal* signal) {
  return signal ? signal->signal.sample_rate_hz() : 0.0;
}

const double* vd_signal_data(const vd_signal* signal) {
  return signal ? signal->signal.samples().data() : nullptr;
}

vd_status vd_kurtosis(const double* samples, size_t length, double* out) {
  VD_REQUIRE(samples);
  VD_REQUIRE(out);
  return guarded([&] { *out = kurtosis(std::span<const double>(samples, length)); });
}

vd_status vd_correlated_kurtosis(const double* samples, size_t length, double period_samples,
                                 int shift_order, double* out) {
  VD_REQUIRE(samples);
  VD_REQUIRE(out);
  return guarded([&] {
    *out = correlated_kurtosis(std::span<const double>(samples, length),
                               CkSpec{shift_order, period_samples});
  });
}

vd_status vd_period_samples(double sample_rate_hz, double fault_period_s, double* out) {
  VD_REQUIRE(out);
  return guarded([&] { *out = period_samples(sample_rate_hz, fault_period_s); });
}

vd_status vd_synth_preset(const char* preset, int has_snr, double snr_db, uint64_t seed,
                          vd_signal** out, vd_synth_truth* truth) {
  VD_REQUIRE(preset);
  VD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto spec = preset_spec(preset, has_snr, snr_db);
    auto result = synth::synth_fault_signal(spec, seed);
    if (truth) {
      *truth = vd_synth_truth{spec.sample_rate_hz,         result.truth.fault_freq_hz,
                              result.truth.period_samples, result.truth.resonance_hz,
                              spec.noise_snr_db,           result.truth.signal_power,
                              result.truth.noise_power,    result.truth.impact_times_s.size()};
    }
    *out = new vd_signal{std::move(result.signal)};
  });
}

vd_status vd_synth_write_truth(const char* preset, int has_snr, double snr_db, uint64_t seed,
                               const char* path) {
  VD_REQUIRE(preset);
  VD_REQUIRE(path);
  return guarded([&] {
    const auto spec = preset_spec(preset, has_snr, snr_db);
    const auto parts = synth::synth_components(spec, seed);
    report::write_text(path, report::truth_json(preset, seed, spec, parts.truth).dump(2) + "\n");
  });
}

size_t vd_synth_preset_count(void) { return synth::preset_names().size(); }

const char* vd_synth_preset_name(size_t index) {
  const auto names = synth::preset_names();
  return index < names.size() ? names[index].data() : nullptr;
}

vd_status vd_config_create(vd_config** out) {
  VD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new vd_config{}; });
}

void vd_config_destroy(vd_config* config) { delete config; }

vd_status vd_config_load(vd_config* config, const char* path) {
  VD_REQUIRE(config);
  VD_REQUIRE(path);
  return guarded([&] {
    load_run_config(path);  // validates and reports file-level errors
    std::ifstream in(path);
    nlohmann::json loaded;
    in >> loaded;
    nlohmann::json next = config->doc;
    for (const auto& [key, value] : loaded.items()) next[key] = value;
    RunConfig parsed = parse_run_config(next);
    config->doc = std::move(next);
    config->parsed = std::move(parsed);
  });
}

vd_status vd_config_set_number(vd_config* config, const char* key, double value) {
  return set_key(config, key, value);
}

vd_status vd_config_set_integer(vd_config* config, const char* key, int64_t value) {
  return set_key(config, key, value);
}

vd_status vd_config_set_bool(vd_config* config, const char* key, int value) {
  return set_key(config, key, value != 0);
}

vd_status vd_config_set_string(vd_config* config, const char* key, const char* value) {
  VD_REQUIRE(value);
  return set_key(config, key, std::string(value));
}

vd_status vd_config_set_interval(vd_config* config, const char* key, double low, double high) {
  return set_key(config, key, nlohmann::json::array({low, high}));
}

vd_status vd_config_get_number(const vd_config* config, const char* key, double* out) {
  VD_REQUIRE(config);
  VD_REQUIRE(key);
  VD_REQUIRE(out);
  const auto echo = to_json(config->parsed);
  const auto it = echo.find(key);
  if (it == echo.end() || !(it->is_number() || it->is_boolean())) {
    return fail_with(VD_ERR_OUT_OF_RANGE, std::string("config key '") + key + "' is not set");
  }
  *out = it->is_boolean() ? (it->get<bool>() ? 1.0 : 0.0) : it->get<double>();
  return VD_OK;
}

vd_status vd_config_get_string(const vd_config* config, const char* key, const char** out) {
  VD_REQUIRE(config);
  VD_REQUIRE(key);
  VD_REQUIRE(out);
  const auto echo = to_json(config->parsed);
  const auto it = echo.find(key);
  if (it == echo.end() || !it->is_string()) {
    return fail_with(VD_ERR_OUT_OF_RANGE, std::string("config key '") + key + "' is not set");
  }
  config->scratch = it->get<std::string>();
  *out = config->scratch.c_str();
  return VD_OK;
}

vd_status vd_config_read_input(const vd_config* config, vd_signal** out) {
  VD_REQUIRE(config);
  VD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& run = config->parsed;
    if (!run.input) fail(ErrorKind::Configuration, "no input file configured");
    const auto fmt = run.format ? io::parse_format(*run.format) : io::format_from_path(*run.input);
    *out = new vd_signal{io::read_signal(*run.input, fmt, run.channel, run.rate_hz)};
  });
}

vd_status vd_diagnose(const vd_signal* signal, const vd_config* config, vd_report** out) {
  VD_REQUIRE(signal);
  VD_REQUIRE(config);
  VD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& run = config->parsed;
    if (!run.fault_freq_hz) fail(ErrorKind::Configuration, "a fault frequency is required");
    auto report = diagnose(signal->signal, run.resolved_pipeline());
    *out = new vd_report{std::move(report), run, signal->signal};
  });
}

void vd_report_destroy(vd_report* report) { delete report; }

vd_status vd_report_summary_get(const vd_report* report, vd_report_summary* out) {
  VD_REQUIRE(report);
  VD_REQUIRE(out);
  const auto& r = report->report;
  *out = vd_report_summary{r.optimal_params.center_freq_hz,
                           r.optimal_params.bandwidth_hz,
                           r.best_ck,
                           r.initial_period_samples,
                           r.final_period_samples,
                           r.fault_freq_hz,
                           r.kurtosis_raw,
                           r.kurtosis_processed,
                           r.envsi_raw,
                           r.envsi_processed,
                           r.snr_raw_db,
                           r.snr_processed_db,
                           r.harmonics.size(),
                           r.ck_history.size(),
                           r.evaluations,
                           r.period_updates};
  return VD_OK;
}

vd_status vd_report_harmonic(const vd_report* report, size_t index, int* order, double* freq_hz,
                             double* magnitude) {
  VD_REQUIRE(report);
  const auto& h = report->report.harmonics;
  if (index >= h.size()) {
    return fail_with(VD_ERR_OUT_OF_RANGE, "harmonic index " + std::to_string(index) +
                                              " out of range (" + std::to_string(h.size()) + ")");
  }
  if (order) *order = h[index].order;
  if (freq_hz) *freq_hz = h[index].freq_hz;
  if (magnitude) *magnitude = h[index].magnitude;
  return VD_OK;
}

vd_status vd_report_ck_history(const vd_report* report, const double** values, size_t* length) {
  VD_REQUIRE(report);
  VD_REQUIRE(values);
  VD_REQUIRE(length);
  *values = report->report.ck_history.data();
  *length = report->report.ck_history.size();
  return VD_OK;
}

vd_status vd_report_ses(const vd_report* report, const double** magnitudes, size_t* length,
                        double* resolution_hz) {
  VD_REQUIRE(report);
  VD_REQUIRE(magnitudes);
  VD_REQUIRE(length);
  const auto& ses = report->report.ses;
  *magnitudes = ses.magnitudes().data();
  *length = ses.size();
  if (resolution_hz) *resolution_hz = ses.resolution_hz();
  return VD_OK;
}

vd_status vd_report_write(const vd_report* report, const char* out_dir) {
  VD_REQUIRE(report);
  VD_REQUIRE(out_dir);
  return guarded([&] {
    report::write_diagnosis(out_dir, report->report, report->config, report->signal);
  });
}

vd_status vd_kurtogram_compute(const vd_signal* signal, int max_level, vd_kurtogram** out) {
  VD_REQUIRE(signal);
  VD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new vd_kurtogram{fast_kurtogram(signal->signal, max_level), signal->signal};
  });
}

void vd_kurtogram_destroy(vd_kurtogram* kurtogram) { delete kurtogram; }

vd_status vd_kurtogram_best(const vd_kurtogram* kurtogram, double* center_hz,
                            double* bandwidth_hz, double* kurtosis_out, double* level) {
  VD_REQUIRE(kurtogram);
  const auto& k = kurtogram->result;
  if (center_hz) *center_hz = k.best_center_hz;
  if (bandwidth_hz) *bandwidth_hz = k.best_bandwidth_hz;
  if (kurtosis_out) *kurtosis_out = k.best_kurtosis;
  if (level) *level = k.levels[k.best_level_index].level;
  return VD_OK;
}

vd_status vd_kurtogram_write(const vd_kurtogram* kurtogram, const char* out_dir,
                             double fault_freq_hz) {
  VD_REQUIRE(kurtogram);
  VD_REQUIRE(out_dir);
  return guarded([&] {
    std::optional<double> f;
    if (fault_freq_hz > 0.0) f = fault_freq_hz;
    report::write_kurtogram(out_dir, kurtogram->result, kurtogram->signal, f);
  });
}

}  // extern "C"
