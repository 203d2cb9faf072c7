#include "vibdiag/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vibdiag/error.hpp"

namespace vibdiag {

namespace {

void check_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    fail(ErrorKind::InvalidInput,
         "sample rate must be positive and finite, got " + std::to_string(rate));
  }
}

void check_length(std::size_t n) {
  if (n < kMinSignalLength) {
    fail(ErrorKind::InvalidInput, "signal has " + std::to_string(n) +
                                      " samples; at least " +
                                      std::to_string(kMinSignalLength) + " required");
  }
}

}  // namespace

Signal::Signal(std::vector<double> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  check_rate(sample_rate_hz_);
  check_length(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      fail(ErrorKind::InvalidInput, "sample " + std::to_string(i) + " is not finite");
    }
  }
}

ComplexSeries::ComplexSeries(std::vector<Complex> values, double sample_rate_hz)
    : values_(std::move(values)), sample_rate_hz_(sample_rate_hz) {
  check_rate(sample_rate_hz_);
  check_length(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
      fail(ErrorKind::InvalidInput, "value " + std::to_string(i) + " is not finite");
    }
  }
}

std::vector<double> ComplexSeries::real_part() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [](const Complex& z) { return z.real(); });
  return out;
}

std::vector<double> ComplexSeries::modulus() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [](const Complex& z) { return std::abs(z); });
  return out;
}

EnvelopeSpectrum::EnvelopeSpectrum(std::vector<double> magnitudes, double resolution_hz)
    : magnitudes_(std::move(magnitudes)), resolution_hz_(resolution_hz) {
  if (!(resolution_hz_ > 0.0) || !std::isfinite(resolution_hz_)) {
    fail(ErrorKind::InvalidInput, "spectrum resolution must be positive and finite");
  }
  if (magnitudes_.empty()) {
    fail(ErrorKind::InvalidInput, "spectrum is empty");
  }
  for (std::size_t k = 0; k < magnitudes_.size(); ++k) {
    if (!std::isfinite(magnitudes_[k]) || magnitudes_[k] < 0.0) {
      fail(ErrorKind::InvalidInput,
           "spectrum magnitude at bin " + std::to_string(k) + " is negative or not finite");
    }
  }
}

std::vector<double> EnvelopeSpectrum::frequencies_hz() const {
  std::vector<double> f(magnitudes_.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = frequency(k);
  return f;
}

std::size_t EnvelopeSpectrum::nearest_bin(double freq_hz) const noexcept {
  if (!(freq_hz > 0.0)) return 0;
  const double k = std::round(freq_hz / resolution_hz_);
  return std::min(static_cast<std::size_t>(k), magnitudes_.size() - 1);
}

}  // namespace vibdiag
