#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vibdiag {

using Complex = std::complex<double>;

inline constexpr std::size_t kMinSignalLength = 16;

/// Uniformly sampled real vibration record.
///
/// Construction validates the record: at least kMinSignalLength samples, all
/// finite, positive sample rate. Instances are immutable afterwards.
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate_hz);

  std::span<const double> samples() const noexcept { return samples_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }

 private:
  std::vector<double> samples_;
  double sample_rate_hz_;
};

/// Complex companion of Signal; holds analytic or band-filtered output.
class ComplexSeries {
 public:
  ComplexSeries(std::vector<Complex> values, double sample_rate_hz);

  std::span<const Complex> values() const noexcept { return values_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::vector<double> real_part() const;
  std::vector<double> modulus() const;

 private:
  std::vector<Complex> values_;
  double sample_rate_hz_;
};

/// One-sided magnitude spectrum with bin k at k * resolution_hz.
class EnvelopeSpectrum {
 public:
  EnvelopeSpectrum(std::vector<double> magnitudes, double resolution_hz);

  std::span<const double> magnitudes() const noexcept { return magnitudes_; }
  double resolution_hz() const noexcept { return resolution_hz_; }
  std::size_t size() const noexcept { return magnitudes_.size(); }

  double frequency(std::size_t bin) const noexcept {
    return static_cast<double>(bin) * resolution_hz_;
  }
  std::vector<double> frequencies_hz() const;
  double max_frequency_hz() const noexcept { return frequency(size() - 1); }
  std::size_t nearest_bin(double freq_hz) const noexcept;

 private:
  std::vector<double> magnitudes_;
  double resolution_hz_;
};

}  // namespace vibdiag
