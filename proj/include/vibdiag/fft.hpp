#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vibdiag/signal.hpp"

// Discrete Fourier transforms over the full record length (no padding).
// Backed by FFTW; plans are cached per length and shared across threads.
namespace vibdiag::fft {

std::vector<Complex> forward(std::span<const Complex> x);
std::vector<Complex> forward(std::span<const double> x);

/// Inverse transform including the 1/N normalization.
std::vector<Complex> inverse(std::span<const Complex> spectrum);

/// Signed frequency of DFT bin k for a length-n transform.
inline double bin_frequency(std::size_t k, std::size_t n, double fs) {
  const auto signed_k = (2 * k < n) ? static_cast<double>(k)
                                    : static_cast<double>(k) - static_cast<double>(n);
  return signed_k * fs / static_cast<double>(n);
}

/// Build the analytic-signal spectrum from a full two-sided spectrum.
///
/// Strictly positive bins are doubled and weighted by gain(f); negative bins
/// are zeroed. The Nyquist bin (even n) is weighted but not doubled. DC is
/// kept unscaled when keep_dc is set, otherwise zeroed.
template <class Gain>
std::vector<Complex> one_sided(std::span<const Complex> spectrum, double fs, Gain&& gain,
                               bool keep_dc) {
  const std::size_t n = spectrum.size();
  std::vector<Complex> out(n, Complex{0.0, 0.0});
  if (n == 0) return out;
  if (keep_dc) out[0] = spectrum[0];
  const std::size_t half = n / 2;
  const std::size_t last_doubled = (n % 2 == 0) ? half - 1 : half;
  for (std::size_t k = 1; k <= last_doubled; ++k) {
    const double g = gain(static_cast<double>(k) * fs / static_cast<double>(n));
    if (g != 0.0) out[k] = 2.0 * g * spectrum[k];
  }
  if (n % 2 == 0 && half > 0) {
    out[half] = gain(fs / 2.0) * spectrum[half];
  }
  return out;
}

}  // namespace vibdiag::fft
