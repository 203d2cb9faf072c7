#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vibdiag/coa.hpp"
#include "vibdiag/morlet.hpp"
#include "vibdiag/signal.hpp"

namespace vibdiag {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct PipelineConfig {
  /// Population size, iteration budget, coefficients and seed. Dimensions
  /// and bounds are overwritten from the frequency bounds below.
  coa::CoaConfig coa = default_coa();
  /// Defaults: [fs/50, 0.45 fs] and [fs/200, fs/8].
  std::optional<Interval> fc_bounds_hz;
  std::optional<Interval> sigma_bounds_hz;
  int shift_order = 1;
  double initial_fault_freq_hz = 0.0;
  bool refine_period = true;
  double refine_search_frac = 0.05;
  int envsi_harmonics = 10;
  /// Harmonic detection threshold as a multiple of the median SES level.
  double harmonic_threshold = 3.0;

  static coa::CoaConfig default_coa() {
    coa::CoaConfig c;
    c.population_size = 30;
    c.max_iterations = 50;
    return c;
  }
};

Interval default_fc_bounds(double sample_rate_hz);
Interval default_sigma_bounds(double sample_rate_hz);

struct Harmonic {
  int order = 0;
  double freq_hz = 0.0;
  double magnitude = 0.0;
};

struct DiagnosisReport {
  MorletParams optimal_params;
  double initial_period_samples = 0.0;
  double final_period_samples = 0.0;
  /// Fault frequency implied by the final period; ENVSI, SNR and the
  /// harmonic table use it.
  double fault_freq_hz = 0.0;
  double best_ck = 0.0;
  std::vector<double> ck_history;
  std::size_t evaluations = 0;
  std::size_t period_updates = 0;
  double kurtosis_raw = 0.0;
  double kurtosis_processed = 0.0;
  double envsi_raw = 0.0;
  double envsi_processed = 0.0;
  double snr_raw_db = 0.0;
  double snr_processed_db = 0.0;
  EnvelopeSpectrum ses;
  EnvelopeSpectrum ses_raw;
  std::vector<double> processed;  // real part of the optimal filter output
  std::vector<Harmonic> harmonics;
};

/// Peaks of the SES near k * fault_freq, k = 1..max_order. The largest bin
/// within +/- window_hz is reported when it exceeds threshold_ratio times the
/// median SES magnitude over (0, max_order * f + window]. threshold_ratio > 1.
std::vector<Harmonic> detect_harmonics(const EnvelopeSpectrum& ses, double fault_freq_hz,
                                       int max_order, double window_hz,
                                       double threshold_ratio);

/// Validates cfg against the record; throws Configuration on infeasibility.
void check_pipeline_config(const PipelineConfig& cfg, const Signal& s);

/// Optimizes a Morlet filter over (f_c, sigma) for maximum correlated
/// kurtosis and demodulates the best band.
DiagnosisReport diagnose(const Signal& s, const PipelineConfig& cfg);

}  // namespace vibdiag
