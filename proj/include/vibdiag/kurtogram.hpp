#pragma once

#include <cstddef>
#include <vector>

#include "vibdiag/signal.hpp"

namespace vibdiag {

/// One row of the kurtogram: either a binary level k (2^k bands) or the
/// intermediate level k + log2(3) - 1 (3 * 2^(k-1) bands).
struct KurtogramLevel {
  double level = 0.0;
  std::size_t band_count = 0;
  double bandwidth_hz = 0.0;
  std::vector<double> kurtosis;

  double band_center_hz(std::size_t band) const {
    return (static_cast<double>(band) + 0.5) * bandwidth_hz;
  }
};

struct KurtogramResult {
  std::vector<KurtogramLevel> levels;
  std::size_t best_level_index = 0;
  std::size_t best_band = 0;
  double best_center_hz = 0.0;
  double best_bandwidth_hz = 0.0;
  double best_kurtosis = 0.0;
};

inline constexpr int kDefaultKurtogramLevel = 7;

/// Band-kurtosis map over a frequency-domain binary / ternary split of
/// [0, fs/2]. Band kurtosis is the signal-core kurtosis of the band-passed
/// waveform (real part of the analytic band output); bands carrying no
/// energy score 0. Requires max_level >= 2 and 2^(max_level+1) <= N/8.
KurtogramResult fast_kurtogram(const Signal& s, int max_level = kDefaultKurtogramLevel);

/// Ideal analytic band-pass over [center - bw/2, center + bw/2].
ComplexSeries band_filter(const Signal& s, double center_hz, double bandwidth_hz);

}  // namespace vibdiag
