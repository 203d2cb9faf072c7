#include "vibdiag/kurtogram.hpp"

#include <cmath>
#include <string>

#include "vibdiag/envelope.hpp"
#include "vibdiag/error.hpp"
#include "vibdiag/fft.hpp"

namespace vibdiag {

namespace {

// Relative spectral energy below which a band is considered empty.
constexpr double kEmptyBandFloor = 1e-20;

std::vector<double> band_waveform(const std::vector<Complex>& spectrum, double fs, double lo,
                                  double hi, bool include_top) {
  const auto in_band = [&](double f) {
    return (f >= lo && (f < hi || (include_top && f <= hi))) ? 1.0 : 0.0;
  };
  const auto z = fft::inverse(fft::one_sided(spectrum, fs, in_band, false));
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

double band_energy(const std::vector<Complex>& spectrum, double fs, double lo, double hi,
                   bool include_top) {
  const std::size_t n = spectrum.size();
  double e = 0.0;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(n);
    if (f >= lo && (f < hi || (include_top && f <= hi))) e += std::norm(spectrum[k]);
  }
  return e;
}

}  // namespace

KurtogramResult fast_kurtogram(const Signal& s, int max_level) {
  if (max_level < 2) fail(ErrorKind::InvalidParameter, "kurtogram needs max_level >= 2");
  if (max_level > 30 || (std::size_t{1} << (max_level + 1)) > s.size() / 8) {
    fail(ErrorKind::InvalidParameter, "record of " + std::to_string(s.size()) +
                                      " samples is too short for kurtogram level " +
                                      std::to_string(max_level));
  }
  const double fs = s.sample_rate_hz();
  const double nyquist = 0.5 * fs;
  const auto spectrum = fft::forward(s.samples());
  const double total = band_energy(spectrum, fs, 0.0, nyquist, true);

  std::vector<std::pair<double, std::size_t>> rows;
  for (int k = 0; k <= max_level; ++k) {
    rows.emplace_back(k, std::size_t{1} << k);
    if (k >= 1 && k < max_level) {
      rows.emplace_back(k + std::log2(3.0) - 1.0, 3 * (std::size_t{1} << (k - 1)));
    }
  }

  KurtogramResult result;
  bool have_best = false;
  for (const auto& [level, count] : rows) {
    KurtogramLevel row;
    row.level = level;
    row.band_count = count;
    row.bandwidth_hz = nyquist / static_cast<double>(count);
    row.kurtosis.assign(count, 0.0);
    for (std::size_t b = 0; b < count; ++b) {
      const double lo = static_cast<double>(b) * row.bandwidth_hz;
      const double hi = (b + 1 == count) ? nyquist : lo + row.bandwidth_hz;
      const bool top = b + 1 == count;
      if (band_energy(spectrum, fs, lo, hi, top) <= kEmptyBandFloor * total) continue;
      try {
        row.kurtosis[b] = kurtosis(band_waveform(spectrum, fs, lo, hi, top));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateInput) throw;
      }
      if (!have_best || row.kurtosis[b] > result.best_kurtosis) {
        have_best = true;
        result.best_level_index = result.levels.size();
        result.best_band = b;
        result.best_kurtosis = row.kurtosis[b];
        result.best_center_hz = row.band_center_hz(b);
        result.best_bandwidth_hz = row.bandwidth_hz;
      }
    }
    result.levels.push_back(std::move(row));
  }
  if (!have_best) {
    fail(ErrorKind::DegenerateInput, "kurtogram undefined for a zero-energy signal");
  }
  return result;
}

ComplexSeries band_filter(const Signal& s, double center_hz, double bandwidth_hz) {
  const double fs = s.sample_rate_hz();
  const double lo = center_hz - 0.5 * bandwidth_hz;
  const double hi = center_hz + 0.5 * bandwidth_hz;
  if (!(bandwidth_hz > 0.0) || !std::isfinite(center_hz) || !std::isfinite(bandwidth_hz) ||
      lo < 0.0 || hi > 0.5 * fs) {
    fail(ErrorKind::InvalidParameter, "band [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "] Hz lies outside [0, " +
                                          std::to_string(0.5 * fs) + "] Hz");
  }
  const auto spectrum = fft::forward(s.samples());
  const auto in_band = [&](double f) { return (f >= lo && f <= hi) ? 1.0 : 0.0; };
  return ComplexSeries(fft::inverse(fft::one_sided(spectrum, fs, in_band, false)), fs);
}

}  // namespace vibdiag
