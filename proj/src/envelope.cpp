#include "vibdiag/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vibdiag/error.hpp"
#include "vibdiag/fft.hpp"

namespace vibdiag {

ComplexSeries analytic_signal(const Signal& s) {
  const auto spectrum = fft::forward(s.samples());
  const auto one_sided =
      fft::one_sided(spectrum, s.sample_rate_hz(), [](double) { return 1.0; }, true);
  return ComplexSeries(fft::inverse(one_sided), s.sample_rate_hz());
}

EnvelopeSpectrum squared_envelope_spectrum(const ComplexSeries& z) {
  const std::size_t n = z.size();
  std::vector<double> env(n);
  const auto values = z.values();
  for (std::size_t i = 0; i < n; ++i) env[i] = std::norm(values[i]);
  const double mean = std::accumulate(env.begin(), env.end(), 0.0) / static_cast<double>(n);
  for (double& e : env) e -= mean;

  const auto spectrum = fft::forward(env);
  std::vector<double> magnitudes(n / 2 + 1);
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < magnitudes.size(); ++k) {
    magnitudes[k] = scale * std::abs(spectrum[k]);
  }
  return EnvelopeSpectrum(std::move(magnitudes), z.sample_rate_hz() / static_cast<double>(n));
}

EnvelopeSpectrum squared_envelope_spectrum(const Signal& s) {
  return squared_envelope_spectrum(analytic_signal(s));
}

double kurtosis(std::span<const double> x) {
  if (x.size() < 4) {
    fail(ErrorKind::InvalidInput, "kurtosis needs at least 4 samples");
  }
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0.0;
  double m4 = 0.0;
  double peak = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
    peak = std::max(peak, std::abs(v));
  }
  m2 /= n;
  m4 /= n;
  // Variance below the rounding floor of the data is treated as zero.
  const double floor = 1e-12 * peak;
  if (!(m2 > floor * floor)) {
    fail(ErrorKind::DegenerateInput, "kurtosis undefined for zero variance");
  }
  return m4 / (m2 * m2);
}

double kurtosis(const Signal& s) { return kurtosis(s.samples()); }

HarmonicEnergy harmonic_energy(const EnvelopeSpectrum& ses, double fault_freq_hz,
                               int n_harmonics, double band_tol_hz) {
  const double res = ses.resolution_hz();
  if (!(fault_freq_hz > res) || !std::isfinite(fault_freq_hz)) {
    fail(ErrorKind::InvalidInput, "fault frequency must exceed the spectral resolution");
  }
  if (n_harmonics < 1) {
    fail(ErrorKind::InvalidInput, "at least one harmonic is required");
  }
  if (!(band_tol_hz >= 0.0) || !std::isfinite(band_tol_hz)) {
    fail(ErrorKind::InvalidInput, "harmonic window half-width must be non-negative");
  }
  const double band_top = n_harmonics * fault_freq_hz + band_tol_hz;
  if (band_top > ses.max_frequency_hz()) {
    fail(ErrorKind::InvalidInput,
         "harmonic window up to " + std::to_string(band_top) +
             " Hz exceeds the spectrum limit of " + std::to_string(ses.max_frequency_hz()) +
             " Hz");
  }

  const auto mags = ses.magnitudes();
  const auto top_bin = static_cast<std::size_t>(std::floor(band_top / res));
  HarmonicEnergy energy;
  for (std::size_t k = 1; k <= top_bin; ++k) {
    const double f = ses.frequency(k);
    const double e = mags[k] * mags[k];
    energy.in_band += e;
    // Nearest harmonic decides window membership, so overlapping windows
    // never count a bin twice.
    const double order = std::max(1.0, std::min<double>(n_harmonics, std::round(f / fault_freq_hz)));
    if (std::abs(f - order * fault_freq_hz) <= band_tol_hz) energy.in_windows += e;
  }
  return energy;
}

double envsi(const EnvelopeSpectrum& ses, double fault_freq_hz, int n_harmonics,
             double band_tol_hz) {
  if (band_tol_hz < 0.0) band_tol_hz = default_band_tolerance(ses);
  const auto e = harmonic_energy(ses, fault_freq_hz, n_harmonics, band_tol_hz);
  if (e.in_band <= 0.0) return 0.0;
  return std::clamp(e.in_windows / e.in_band, 0.0, 1.0);
}

double harmonic_snr(const EnvelopeSpectrum& ses, double fault_freq_hz, int n_harmonics,
                    double band_tol_hz) {
  if (band_tol_hz < 0.0) band_tol_hz = default_band_tolerance(ses);
  const auto e = harmonic_energy(ses, fault_freq_hz, n_harmonics, band_tol_hz);
  const double outside = e.outside();
  if (!(outside > 0.0)) return std::numeric_limits<double>::infinity();
  if (!(e.in_windows > 0.0)) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(e.in_windows / outside);
}

}  // namespace vibdiag
