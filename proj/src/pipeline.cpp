#include "vibdiag/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vibdiag/correlated_kurtosis.hpp"
#include "vibdiag/envelope.hpp"
#include "vibdiag/error.hpp"

namespace vibdiag {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void config_error(const std::string& what) { fail(ErrorKind::Configuration, what); }

double envelope_max_frequency(const Signal& s) {
  return static_cast<double>(s.size() / 2) * s.sample_rate_hz() / static_cast<double>(s.size());
}

}  // namespace

Interval default_fc_bounds(double sample_rate_hz) {
  return {sample_rate_hz / 50.0, 0.45 * sample_rate_hz};
}

Interval default_sigma_bounds(double sample_rate_hz) {
  return {sample_rate_hz / 200.0, sample_rate_hz / 8.0};
}

std::vector<Harmonic> detect_harmonics(const EnvelopeSpectrum& ses, double fault_freq_hz,
                                       int max_order, double window_hz,
                                       double threshold_ratio) {
  if (!(threshold_ratio > 1.0) || !std::isfinite(threshold_ratio)) {
    fail(ErrorKind::InvalidInput, "harmonic threshold ratio must exceed 1");
  }
  // Shares the window and band preconditions of the energy split.
  harmonic_energy(ses, fault_freq_hz, max_order, window_hz);

  const auto mags = ses.magnitudes();
  const double res = ses.resolution_hz();
  const auto top_bin =
      static_cast<std::size_t>(std::floor((max_order * fault_freq_hz + window_hz) / res));
  std::vector<double> band(mags.begin() + 1, mags.begin() + static_cast<std::ptrdiff_t>(top_bin) + 1);
  double median = 0.0;
  if (!band.empty()) {
    std::nth_element(band.begin(), band.begin() + band.size() / 2, band.end());
    median = band[band.size() / 2];
  }
  const double threshold = threshold_ratio * median;

  std::vector<Harmonic> found;
  for (int k = 1; k <= max_order; ++k) {
    const double target = k * fault_freq_hz;
    const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil((target - window_hz) / res)));
    const auto hi = std::min(static_cast<std::size_t>(std::floor((target + window_hz) / res)),
                             mags.size() - 1);
    if (lo > hi) continue;
    std::size_t peak = lo;
    for (std::size_t b = lo; b <= hi; ++b) {
      if (mags[b] > mags[peak]) peak = b;
    }
    if (mags[peak] > threshold) found.push_back({k, ses.frequency(peak), mags[peak]});
  }
  return found;
}

void check_pipeline_config(const PipelineConfig& cfg, const Signal& s) {
  const double fs = s.sample_rate_hz();
  const double nyquist = 0.5 * fs;
  if (cfg.shift_order < 1) config_error("shift order must be at least 1");
  if (!std::isfinite(cfg.initial_fault_freq_hz) ||
      !(cfg.initial_fault_freq_hz > 2.0 / s.duration_s())) {
    config_error("fault frequency must allow at least two periods in the record (> " +
                 std::to_string(2.0 / s.duration_s()) + " Hz)");
  }
  const Interval fc = cfg.fc_bounds_hz.value_or(default_fc_bounds(fs));
  const Interval sigma = cfg.sigma_bounds_hz.value_or(default_sigma_bounds(fs));
  if (!(fc.lo > 0.0 && fc.lo < fc.hi && fc.hi < nyquist)) {
    config_error("centre-frequency bounds must satisfy 0 < lo < hi < fs/2");
  }
  if (!(sigma.lo > 0.0 && sigma.lo < sigma.hi) || !std::isfinite(sigma.hi)) {
    config_error("bandwidth bounds must satisfy 0 < lo < hi");
  }
  if (std::max(fc.lo, 0.5 * sigma.lo) > std::min(fc.hi, nyquist - 0.5 * sigma.lo)) {
    config_error("no (centre, bandwidth) pair within the bounds fits below Nyquist");
  }

  const double t_s = period_samples(fs, 1.0 / cfg.initial_fault_freq_hz);
  if (static_cast<double>(cfg.shift_order) * std::round(t_s) >= static_cast<double>(s.size())) {
    config_error("shift order x fault period exceeds the record length");
  }
  if (cfg.refine_period) {
    if (!(cfg.refine_search_frac > 0.0 && cfg.refine_search_frac <= 0.1)) {
      config_error("period search fraction must lie in (0, 0.1]");
    }
    if (!(t_s * (1.0 + cfg.refine_search_frac) < static_cast<double>(s.size()) / 3.0)) {
      config_error("period refinement needs a record of more than three fault periods");
    }
  }
  if (cfg.envsi_harmonics < 1) config_error("at least one harmonic is required");
  const double resolution = fs / static_cast<double>(s.size());
  if (cfg.envsi_harmonics * cfg.initial_fault_freq_hz * (1.0 + cfg.refine_search_frac) +
          kDefaultBandToleranceBins * resolution >
      envelope_max_frequency(s)) {
    config_error("harmonic count x fault frequency exceeds the envelope spectrum range");
  }
  if (!(cfg.harmonic_threshold > 1.0)) config_error("harmonic threshold must exceed 1");
}

DiagnosisReport diagnose(const Signal& s, const PipelineConfig& cfg) {
  check_pipeline_config(cfg, s);
  const double fs = s.sample_rate_hz();
  const Interval fc = cfg.fc_bounds_hz.value_or(default_fc_bounds(fs));
  const Interval sigma = cfg.sigma_bounds_hz.value_or(default_sigma_bounds(fs));

  coa::CoaConfig coa_cfg = cfg.coa;
  coa_cfg.dimensions = 2;
  coa_cfg.lower_bounds = {fc.lo, sigma.lo};
  coa_cfg.upper_bounds = {fc.hi, sigma.hi};
  coa_cfg.validate();

  const MorletFilterBank bank(s);
  const double initial_period = period_samples(fs, 1.0 / cfg.initial_fault_freq_hz);
  double period = initial_period;
  std::size_t period_updates = 0;

  const auto fitness = [&](std::span<const double> x) {
    const MorletParams p{x[0], x[1]};
    if (!band_fits(p, fs)) return kNegInf;
    const auto y = bank.apply_real(p);
    try {
      return correlated_kurtosis(y, CkSpec{cfg.shift_order, period});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateInput) return kNegInf;
      throw;
    }
  };

  // Period update on the incumbent. A new lag is adopted only when it does
  // not lower the incumbent's CK, so the best-so-far trace stays monotone.
  coa::IterationHook hook;
  if (cfg.refine_period) {
    hook = [&](const coa::Population& pop) {
      const MorletParams p{pop.best_position[0], pop.best_position[1]};
      const auto z = bank.apply(p);
      double candidate = period;
      try {
        candidate = refine_period(z, period, cfg.refine_search_frac);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidInput) throw;
        return false;
      }
      const CkSpec next{cfg.shift_order, candidate};
      if (next.lag() == CkSpec{cfg.shift_order, period}.lag()) {
        period = candidate;
        return false;
      }
      if (static_cast<double>(cfg.shift_order * next.lag()) >= static_cast<double>(s.size())) {
        return false;
      }
      if (correlated_kurtosis(z.real_part(), next) < pop.best_fitness) return false;
      period = candidate;
      ++period_updates;
      return true;
    };
  }

  const auto result = coa::optimize(fitness, coa_cfg, hook);

  const MorletParams best{result.best_position[0], result.best_position[1]};
  const auto filtered = bank.apply(best);
  auto processed = filtered.real_part();
  auto ses = squared_envelope_spectrum(filtered);
  auto ses_raw = squared_envelope_spectrum(s);
  const double fault_freq = fs / period;
  const int harmonics = cfg.envsi_harmonics;
  const double tol = default_band_tolerance(ses);

  double kurtosis_processed = 0.0;
  try {
    kurtosis_processed = kurtosis(processed);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateInput) throw;
  }

  DiagnosisReport report{
      .optimal_params = best,
      .initial_period_samples = initial_period,
      .final_period_samples = period,
      .fault_freq_hz = fault_freq,
      .best_ck = result.best_fitness,
      .ck_history = result.fitness_history,
      .evaluations = result.evaluations,
      .period_updates = period_updates,
      .kurtosis_raw = kurtosis(s),
      .kurtosis_processed = kurtosis_processed,
      .envsi_raw = envsi(ses_raw, fault_freq, harmonics, tol),
      .envsi_processed = envsi(ses, fault_freq, harmonics, tol),
      .snr_raw_db = harmonic_snr(ses_raw, fault_freq, harmonics, tol),
      .snr_processed_db = harmonic_snr(ses, fault_freq, harmonics, tol),
      .ses = std::move(ses),
      .ses_raw = std::move(ses_raw),
      .processed = std::move(processed),
      .harmonics = {},
  };
  report.harmonics =
      detect_harmonics(report.ses, fault_freq, harmonics, tol, cfg.harmonic_threshold);
  return report;
}

}  // namespace vibdiag
